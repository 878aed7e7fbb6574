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

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "corrwitness/experiments/engine.hpp"
#include "corrwitness/models/fock_oracle.hpp"

namespace corrwitness::experiments {

/// n points from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, std::size_t points);
/// n points k * period / n, k < n.
std::vector<double> periodic_grid(double period, std::size_t points);

/// 0 resolves to CORRWITNESS_THREADS if set, otherwise the hardware count.
unsigned resolve_threads(unsigned requested);

struct ExperimentConfig {
  std::size_t samples = 50000;
  std::uint64_t master_seed = 1;
  std::vector<double> lambda_grid = uniform_grid(0.0, 1.0, 51);
  std::vector<double> time_grid = periodic_grid(2.0 * 3.141592653589793, 2000);
  double increase_tolerance = 1e-9;
  /// Edge probes per window added to increase detection (see TimeTable);
  /// 0 restricts detection to the grid.
  std::size_t edge_points = 64;
  unsigned threads = 0;

  /// Grids nonempty and sorted with lambdas in [0, 1]; tolerance positive.
  void validate() const;
};

struct TimeTrace {
  distance::MeasureKind measure;
  double lambda;
  std::vector<double> times;
  std::vector<double> delta_values;
};

/// All four measures from one engine pass, ordered as kAllMeasures.
std::array<TimeTrace, 4> time_traces(const ModelParams& model,
                                     const models::CorrelatedStateSpec& spec,
                                     const std::vector<double>& times);
TimeTrace time_trace(const ModelParams& model, const models::CorrelatedStateSpec& spec,
                     distance::MeasureKind measure, const std::vector<double>& times);

/// True iff some value exceeds tol.
bool has_increase(const TimeTrace& trace, double tol);

/// Spec for sample `sample_index` at `lambda_index`: amplitudes first, then a
/// Haar unitary for the HaarRandom family, all from the derived stream.
models::CorrelatedStateSpec sample_spec(models::StateFamily family, std::uint64_t master_seed,
                                        std::size_t lambda_index, std::size_t sample_index,
                                        double lambda);

struct FrequencyCurve {
  std::string model;
  models::StateFamily family;
  std::vector<double> lambdas;
  std::array<std::vector<std::size_t>, 4> counts;
  std::array<std::vector<double>, 4> frequencies;
  std::size_t samples;
  std::uint64_t master_seed;

  /// sqrt(f (1 - f) / samples).
  double standard_error(std::size_t measure, std::size_t lambda_index) const;
};

/// Counts are a pure function of the config; the thread count only changes
/// the schedule.
FrequencyCurve frequency_curve(const ModelParams& model, models::StateFamily family,
                               const ExperimentConfig& config);

struct ConcurrenceMap {
  std::vector<double> lambdas;
  std::vector<double> times;
  /// values[l * times.size() + t].
  std::vector<double> values;
  /// Largest grid lambda with max_t C(lambda, t) - C(lambda, 0) > tolerance
  /// over times in [0, pi], or -1 if none.
  double grid_threshold;
  /// grid_threshold refined by bisection towards the next grid point.
  double threshold_lambda;

  double at(std::size_t l, std::size_t t) const { return values[l * times.size() + t]; }
};

/// C = sqrt(2 (1 - Tr rho_S^2)) of the pure total state.
double concurrence(const dephasing::DephasingParams& params,
                   const models::CorrelatedStateSpec& spec, double t);

ConcurrenceMap concurrence_map(const dephasing::DephasingParams& params, Complex b1, Complex b2,
                               const std::vector<double>& lambdas,
                               const std::vector<double>& times, double tolerance = 1e-9);

struct WitnessViolation {
  double lambda;
  std::size_t sample;
  double lhs;
  double rhs;
};

struct WitnessReport {
  std::size_t checked = 0;
  /// max over specs of (max_t Delta D_T) - rhs; negative means slack.
  double worst_margin = -1.0;
  std::vector<WitnessViolation> violations;
};

/// Evolves each sampled spec and its lambda = 0 partner in the truncated
/// Fock space and checks max_t Delta D_T <= witness_bound_rhs + margin at t = 0.
/// config.samples specs are drawn per lambda.
WitnessReport witness_bound_sweep(const dephasing::DephasingParams& params,
                                  models::StateFamily family, const ExperimentConfig& config,
                                  dephasing::FockCutoff cutoff = {}, double margin = 1e-8);

} // namespace corrwitness::experiments
