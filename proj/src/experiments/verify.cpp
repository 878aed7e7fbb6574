// Copyright 2026 The corrwitness Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "corrwitness/experiments/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "corrwitness/core/errors.hpp"
#include "corrwitness/core/linalg.hpp"
#include "corrwitness/distance/measures.hpp"
#include "corrwitness/experiments/experiments.hpp"
#include "corrwitness/experiments/sampling.hpp"
#include "corrwitness/models/fock_oracle.hpp"
#include "corrwitness/models/spin_star.hpp"

namespace corrwitness::experiments {

namespace {

using distance::MeasureKind;

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

CheckResult check(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok, std::move(detail)};
}

DensityMatrix random_qubit(RandomStream& rng) {
  // One in four draws is pure.
  if (rng.uniform() < 0.25) {
    CVector v(2);
    v << rng.complex_normal(), rng.complex_normal();
    return DensityMatrix::pure(StateVector::normalized(std::move(v)));
  }
  return DensityMatrix(random_density_entries(rng, 2));
}

DensityMatrix conjugate(const CMatrix& u, const DensityMatrix& rho) {
  CMatrix out = u * rho.entries() * u.adjoint();
  return DensityMatrix(0.5 * (out + out.adjoint()));
}

DensityMatrix dephase(const DensityMatrix& rho, double gamma) {
  CMatrix out = rho.entries();
  out(0, 1) *= gamma;
  out(1, 0) *= gamma;
  return DensityMatrix(std::move(out));
}

/// Tr_E U (rho (x) |phi><phi|) U^dagger for a Haar U on C^2 (x) C^d.
DensityMatrix dilate(const DensityMatrix& rho, const CMatrix& u, const DensityMatrix& env) {
  const DensityMatrix joint = conjugate(u, tensor_product(rho, env));
  return partial_trace(joint, Bipartition{2, env.dim()}, Keep::System);
}

models::CorrelatedStateSpec random_spec(RandomStream& rng, double lambda) {
  const auto [b1, b2] = random_amplitudes(rng);
  return models::family_spec(models::StateFamily::HaarRandom, b1, b2, lambda, &rng);
}

} // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed || c.informational; });
}

std::optional<Suite> parse_suite(std::string_view text) {
  if (text == "oracles") return Suite::Oracles;
  if (text == "properties") return Suite::Properties;
  if (text == "bounds") return Suite::Bounds;
  if (text == "all") return Suite::All;
  return std::nullopt;
}

std::string_view suite_name(Suite suite) {
  switch (suite) {
  case Suite::Oracles: return "oracles";
  case Suite::Properties: return "properties";
  case Suite::Bounds: return "bounds";
  case Suite::All: return "all";
  }
  return "?";
}

SuiteReport verify_oracles(const VerifyOptions& options) {
  SuiteReport report{"oracles", {}};
  RandomStream rng(derive_seed(options.seed, 1, 0));

  // Closed-form dephasing dynamics against truncated-Fock evolution.
  {
    const dephasing::DephasingParams params;
    const dephasing::FockOracle oracle(params);
    double worst = 0.0, drift = 0.0;
    for (std::size_t s = 0; s < options.oracle_specs; ++s) {
      const auto spec = random_spec(rng, 0.1 * static_cast<double>(s % 11));
      const double pe = dephasing::population_e(params, spec);
      for (std::size_t i = 0; i < options.oracle_times; ++i) {
        const double t = 4.0 * std::numbers::pi * rng.uniform();
        const DensityMatrix exact = oracle.reduced_state(spec, t);
        worst = std::max(worst, distance::trace_distance(
                                    dephasing::reduced_state(params, spec, t), exact));
        drift = std::max(drift, std::abs(exact(0, 0).real() - pe));
      }
    }
    report.checks.push_back(check("dephasing_formula_vs_fock", worst < 1e-8,
                                  fmt("max trace distance %.3e (< 1e-8)", worst)));
    report.checks.push_back(check("dephasing_population_constant", drift < 1e-8,
                                  fmt("max |p_e(t) - p_e| %.3e (< 1e-8)", drift)));
  }

  // Five-dimensional subspace against the full 2^(N+1) space.
  {
    double worst = 0.0, h_defect = 0.0, leak = 0.0, excitation = 0.0;
    for (int n : {2, 4, 6, 8}) {
      const spinstar::SpinStarParams params{1.0, n};
      const spinstar::BruteForceSpinStar brute(params);
      const Propagator sub(spinstar::hamiltonian_subspace(params));
      const auto basis = spinstar::subspace_basis_full(n);
      const CMatrix hf = spinstar::hamiltonian_full(params).entries();
      const CMatrix hs = spinstar::hamiltonian_subspace(params).entries();
      for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b)
          h_defect = std::max(h_defect, std::abs(basis[a].dot(hf * basis[b]) -
                                                 hs(static_cast<Eigen::Index>(a),
                                                    static_cast<Eigen::Index>(b))));
      // Excitation number: central up counts 1, each down bath spin -1.
      const Eigen::Index bath_dim = Eigen::Index{1} << n;
      RVector excitations(2 * bath_dim);
      for (Eigen::Index i = 0; i < 2 * bath_dim; ++i) {
        const double central = i < bath_dim ? 0.5 : -0.5;
        const int downs = __builtin_popcountll(static_cast<unsigned long long>(i % bath_dim));
        excitations[i] = central + 0.5 * n - downs;
      }
      for (std::size_t s = 0; s < options.spin_specs; ++s) {
        const auto spec = random_spec(rng, rng.uniform());
        const StateVector psi0 = spinstar::initial_full_state(params, spec);
        const double x0 = psi0.amplitudes().cwiseAbs2().dot(excitations);
        const CVector v0 = spinstar::initial_subspace_state(spec);
        for (int i = 0; i < 20; ++i) {
          const double t = 10.0 * rng.uniform();
          const StateVector psi = brute.evolve(spec, t);
          const DensityMatrix full =
              partial_trace(psi, Bipartition{2, std::size_t(bath_dim)}, Keep::System);
          worst = std::max(worst, distance::trace_distance(
                                      full, spinstar::reduce_subspace_state(sub.evolve(v0, t))));
          CVector residual = psi.amplitudes();
          for (const auto& b : basis) residual -= b.dot(psi.amplitudes()) * b;
          leak = std::max(leak, residual.norm());
          excitation = std::max(
              excitation, std::abs(psi.amplitudes().cwiseAbs2().dot(excitations) - x0));
        }
      }
    }
    report.checks.push_back(check("spinstar_subspace_vs_full", worst < 1e-10,
                                  fmt("max trace distance %.3e (< 1e-10)", worst)));
    report.checks.push_back(check("spinstar_hamiltonian_elements", h_defect < 1e-12,
                                  fmt("max element defect %.3e (< 1e-12)", h_defect)));
    report.checks.push_back(check("spinstar_subspace_closure", leak < 1e-12,
                                  fmt("max support outside subspace %.3e (< 1e-12)", leak)));
    report.checks.push_back(check("spinstar_excitation_conserved", excitation < 1e-10,
                                  fmt("max drift %.3e (< 1e-10)", excitation)));
  }

  // Batched kernels against the matrix implementations of the measures.
  {
    const std::vector<double> times = periodic_grid(2.0 * std::numbers::pi, 64);
    double worst = 0.0;
    const ModelParams models[] = {dephasing::DephasingParams{}, spinstar::SpinStarParams{1.0, 6}};
    for (const auto& model : models) {
      const TimeTable table(model, times);
      DeltaEngine engine(table);
      for (int s = 0; s < 20; ++s) {
        const auto spec = random_spec(rng, 0.05 + 0.9 * rng.uniform());
        const auto ref = spec.with_lambda(0.0);
        engine.compute(spec);
        auto reduced = [&](const models::CorrelatedStateSpec& x, double t) {
          if (const auto* d = std::get_if<dephasing::DephasingParams>(&model)) {
            return dephasing::reduced_state(*d, x, t);
          }
          return spinstar::reduced_state_spinstar(std::get<spinstar::SpinStarParams>(model), x,
                                                  t);
        };
        const DensityMatrix c0 = reduced(spec, 0.0), r0 = reduced(ref, 0.0);
        for (std::size_t i = 0; i < times.size(); i += 7) {
          const DensityMatrix ct = reduced(spec, times[i]), rt = reduced(ref, times[i]);
          for (auto kind : distance::kAllMeasures) {
            worst = std::max(worst, std::abs(engine.delta(kind)[i] -
                                             distance::delta_distance(kind, ct, rt, c0, r0)));
          }
        }
      }
    }
    report.checks.push_back(check("engine_vs_matrix_measures", worst < 1e-7,
                                  fmt("max |delta difference| %.3e (< 1e-7)", worst)));
  }
  return report;
}

SuiteReport verify_properties(const VerifyOptions& options) {
  SuiteReport report{"properties", {}};
  RandomStream rng(derive_seed(options.seed, 2, 0));
  const std::size_t n = options.property_samples;

  double range_low = 0.0, range_high = 0.0, self = 0.0, asym = 0.0, triangle = 0.0;
  double separation = 1.0;
  double contract[4] = {0, 0, 0, 0}, subadd[2] = {0, 0};
  double sqrt_err = 0.0, fid_inv = 0.0, ent_inv = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const DensityMatrix a = random_qubit(rng), b = random_qubit(rng), c = random_qubit(rng);
    const CMatrix u = haar_unitary(rng, 2);
    const double gamma = rng.uniform();
    const CMatrix w = haar_unitary(rng, 6);
    CVector phi(3);
    phi << rng.complex_normal(), rng.complex_normal(), rng.complex_normal();
    const DensityMatrix env = DensityMatrix::pure(StateVector::normalized(std::move(phi)));
    const DensityMatrix sa = random_qubit(rng), sb = random_qubit(rng);

    for (std::size_t k = 0; k < 4; ++k) {
      const MeasureKind kind = distance::kAllMeasures[k];
      const double dab = distance::distance(kind, a, b);
      range_low = std::min(range_low, dab);
      range_high = std::max(range_high, dab);
      self = std::max(self, distance::distance(kind, a, a));
      asym = std::max(asym, std::abs(dab - distance::distance(kind, b, a)));
      if (distance::trace_distance(a, b) >= 1e-6) separation = std::min(separation, dab);
      const double channel =
          std::max(distance::distance(kind, dephase(a, gamma), dephase(b, gamma)),
                   distance::distance(kind, dilate(a, w, env), dilate(b, w, env)));
      contract[k] = std::max(contract[k], channel - dab);
    }
    for (std::size_t k = 0; k < 2; ++k) {
      const MeasureKind kind = distance::kAllMeasures[k];
      triangle = std::max(triangle, distance::distance(kind, a, c) -
                                        distance::distance(kind, a, b) -
                                        distance::distance(kind, b, c));
      subadd[k] = std::max(subadd[k],
                           distance::distance(kind, tensor_product(a, sa), tensor_product(b, sb)) -
                               distance::distance(kind, a, b) - distance::distance(kind, sa, sb));
    }
    const CMatrix root = psd_sqrt(a);
    sqrt_err = std::max(sqrt_err, (root * root - a.entries()).cwiseAbs().maxCoeff());
    fid_inv = std::max(fid_inv, std::abs(fidelity(conjugate(u, a), conjugate(u, b)) -
                                         fidelity(a, b)));
    ent_inv = std::max(ent_inv, std::abs(von_neumann_entropy(conjugate(u, a)) -
                                         von_neumann_entropy(a)));
  }
  report.checks.push_back(check("range_0_1", range_low >= 0.0 && range_high <= 1.0,
                                fmt("observed [%.3e, %.17g]", range_low, range_high)));
  report.checks.push_back(check("identity_of_indiscernibles", self <= 1e-10 && separation > 0.0,
                                fmt("max D(rho,rho) %.3e, min separated D %.3e", self,
                                    separation)));
  report.checks.push_back(
      check("symmetry", asym <= 1e-10, fmt("max asymmetry %.3e (<= 1e-10)", asym)));
  report.checks.push_back(check("triangle_T_B", triangle <= 1e-10,
                                fmt("max violation %.3e (<= 1e-10)", triangle)));
  for (std::size_t k = 0; k < 4; ++k) {
    const std::string tag(distance::short_name(distance::kAllMeasures[k]));
    CheckResult r = check("contractivity_" + tag, contract[k] <= 1e-10,
                          fmt("max increase under channels %.3e (<= 1e-10)", contract[k]));
    r.informational = distance::kAllMeasures[k] == MeasureKind::JensenShannon;
    report.checks.push_back(std::move(r));
  }
  report.checks.push_back(check("subadditivity_T", subadd[0] <= 1e-10,
                                fmt("max violation %.3e (<= 1e-10)", subadd[0])));
  report.checks.push_back(check("subadditivity_B", subadd[1] <= 1e-10,
                                fmt("max violation %.3e (<= 1e-10)", subadd[1])));
  report.checks.push_back(check("psd_sqrt_reconstructs", sqrt_err <= 1e-10,
                                fmt("max |sqrt^2 - rho| %.3e (<= 1e-10)", sqrt_err)));
  report.checks.push_back(check("fidelity_unitary_invariance", fid_inv <= 1e-10,
                                fmt("max change %.3e (<= 1e-10)", fid_inv)));
  report.checks.push_back(check("entropy_unitary_invariance", ent_inv <= 1e-10,
                                fmt("max change %.3e (<= 1e-10)", ent_inv)));

  double q_min = 1.0;
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 100; ++j)
      q_min = std::min(q_min, distance::q_function(i / 99.0, j / 99.0));
  report.checks.push_back(
      check("q_function_nonnegative", q_min >= 0.0, fmt("min Q on 100x100 grid %.3e", q_min)));
  return report;
}

SuiteReport verify_bounds(const VerifyOptions& options) {
  SuiteReport report{"bounds", {}};
  const dephasing::DephasingParams params;
  const dephasing::FockCutoff cutoff{40};
  const Bipartition part{2, cutoff.n_max + 1};

  // Equal product states: every term of the bound vanishes.
  {
    const auto spec = models::family_spec(models::StateFamily::Original, 1.0, 0.0, 0.0);
    const DensityMatrix rho =
        DensityMatrix::pure(dephasing::total_state_fock(params, spec, cutoff));
    const double rhs = distance::witness_bound_rhs(rho, rho, part);
    report.checks.push_back(check("product_equal_environments", rhs <= 1e-12,
                                  fmt("rhs %.3e (<= 1e-12)", rhs)));
  }

  ExperimentConfig config;
  config.master_seed = options.seed;
  config.threads = options.threads;
  config.lambda_grid = uniform_grid(0.0, 1.0, 11);
  config.samples = std::max<std::size_t>(1, (options.bound_specs + 10) / 11);
  config.time_grid = periodic_grid(2.0 * std::numbers::pi, options.bound_times);
  const WitnessReport sweep =
      witness_bound_sweep(params, models::StateFamily::HaarRandom, config, cutoff);
  char detail[200];
  std::snprintf(detail, sizeof detail, "%zu specs, %zu violations, worst lhs - rhs %.3e",
                sweep.checked, sweep.violations.size(), sweep.worst_margin);
  report.checks.push_back(check("witness_bound_sweep", sweep.violations.empty(), detail));
  return report;
}

std::vector<SuiteReport> run_verify(Suite suite, const VerifyOptions& options) {
  std::vector<SuiteReport> out;
  if (suite == Suite::Oracles || suite == Suite::All) out.push_back(verify_oracles(options));
  if (suite == Suite::Properties || suite == Suite::All) {
    out.push_back(verify_properties(options));
  }
  if (suite == Suite::Bounds || suite == Suite::All) out.push_back(verify_bounds(options));
  return out;
}

std::string format_report(const std::vector<SuiteReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      const char* tag = c.informational ? "INFO" : (c.passed ? "PASS" : "FAIL");
      out += std::string(tag) + "  " + r.suite + "/" + c.name + "  " + c.detail + "\n";
    }
  }
  return out;
}

} // namespace corrwitness::experiments
