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

#include "corrwitness/experiments/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "corrwitness/core/errors.hpp"
#include "corrwitness/experiments/sampling.hpp"

namespace corrwitness::experiments {

namespace {

constexpr std::size_t kChunk = 16;

/// Runs body(worker_state, item) for item < count on up to `threads` workers.
/// make_state() builds per-worker scratch. The first exception is rethrown.
template <class MakeState, class Body>
void parallel_items(std::size_t count, unsigned threads, MakeState make_state, Body body) {
  const unsigned workers = static_cast<unsigned>(
      std::max<std::size_t>(1, std::min<std::size_t>(threads, (count + kChunk - 1) / kChunk)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> stop{false};
  auto run = [&] {
    try {
      auto state = make_state();
      while (!stop.load(std::memory_order_relaxed)) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= count) break;
        const std::size_t end = std::min(count, begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) body(state, i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };
  if (workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

bool sorted_nonempty(const std::vector<double>& v) {
  return !v.empty() && std::is_sorted(v.begin(), v.end()) &&
         std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

std::string model_name(const ModelParams& model) {
  return std::holds_alternative<dephasing::DephasingParams>(model) ? "dephasing" : "spinstar";
}

} // namespace

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (points == 0 || !(hi >= lo)) throw InvalidInput("uniform_grid: invalid range or size");
  if (points == 1) return {lo};
  std::vector<double> out(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

std::vector<double> periodic_grid(double period, std::size_t points) {
  if (points == 0 || !(period > 0.0)) throw InvalidInput("periodic_grid: invalid period or size");
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) {
    out[i] = period * static_cast<double>(i) / static_cast<double>(points);
  }
  return out;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CORRWITNESS_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void ExperimentConfig::validate() const {
  if (samples == 0) throw InvalidInput("ExperimentConfig: samples must be positive");
  if (!sorted_nonempty(lambda_grid) || lambda_grid.front() < 0.0 || lambda_grid.back() > 1.0) {
    throw InvalidInput("ExperimentConfig: lambda grid must be sorted within [0, 1]");
  }
  if (!sorted_nonempty(time_grid)) {
    throw InvalidInput("ExperimentConfig: time grid must be nonempty and sorted");
  }
  if (!(increase_tolerance > 0.0)) {
    throw InvalidInput("ExperimentConfig: increase tolerance must be positive");
  }
}

std::array<TimeTrace, 4> time_traces(const ModelParams& model,
                                     const models::CorrelatedStateSpec& spec,
                                     const std::vector<double>& times) {
  const TimeTable table(model, times);
  DeltaEngine engine(table);
  engine.compute(spec);
  std::array<TimeTrace, 4> out;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto kind = distance::kAllMeasures[k];
    const auto d = engine.delta(kind);
    out[k] = TimeTrace{kind, spec.lambda, times, std::vector<double>(d.begin(), d.end())};
  }
  return out;
}

TimeTrace time_trace(const ModelParams& model, const models::CorrelatedStateSpec& spec,
                     distance::MeasureKind measure, const std::vector<double>& times) {
  auto all = time_traces(model, spec, times);
  for (auto& trace : all) {
    if (trace.measure == measure) return std::move(trace);
  }
  throw InvalidInput("time_trace: unknown measure");
}

bool has_increase(const TimeTrace& trace, double tol) {
  return std::any_of(trace.delta_values.begin(), trace.delta_values.end(),
                     [tol](double v) { return v > tol; });
}

models::CorrelatedStateSpec sample_spec(models::StateFamily family, std::uint64_t master_seed,
                                        std::size_t lambda_index, std::size_t sample_index,
                                        double lambda) {
  RandomStream rng(derive_seed(master_seed, lambda_index, sample_index));
  const auto [b1, b2] = random_amplitudes(rng);
  return models::family_spec(family, b1, b2, lambda,
                             family == models::StateFamily::HaarRandom ? &rng : nullptr);
}

double FrequencyCurve::standard_error(std::size_t measure, std::size_t lambda_index) const {
  const double f = frequencies.at(measure).at(lambda_index);
  return std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
}

FrequencyCurve frequency_curve(const ModelParams& model, models::StateFamily family,
                               const ExperimentConfig& config) {
  config.validate();
  const TimeTable table(model, config.time_grid, config.edge_points);
  const std::size_t n_lambda = config.lambda_grid.size();
  const std::size_t samples = config.samples;
  std::vector<unsigned char> masks(n_lambda * samples, 0);

  parallel_items(
      masks.size(), resolve_threads(config.threads), [&] { return DeltaEngine(table); },
      [&](DeltaEngine& engine, std::size_t item) {
        const std::size_t li = item / samples;
        const std::size_t si = item % samples;
        engine.compute(
            sample_spec(family, config.master_seed, li, si, config.lambda_grid[li]));
        masks[item] = static_cast<unsigned char>(engine.increase_mask(config.increase_tolerance));
      });

  FrequencyCurve curve{model_name(model), family, config.lambda_grid, {}, {}, samples,
                       config.master_seed};
  for (std::size_t k = 0; k < 4; ++k) {
    curve.counts[k].assign(n_lambda, 0);
    curve.frequencies[k].assign(n_lambda, 0.0);
  }
  for (std::size_t li = 0; li < n_lambda; ++li) {
    for (std::size_t si = 0; si < samples; ++si) {
      const unsigned mask = masks[li * samples + si];
      for (std::size_t k = 0; k < 4; ++k) curve.counts[k][li] += (mask >> k) & 1u;
    }
    for (std::size_t k = 0; k < 4; ++k) {
      curve.frequencies[k][li] =
          static_cast<double>(curve.counts[k][li]) / static_cast<double>(samples);
    }
  }
  return curve;
}

double concurrence(const dephasing::DephasingParams& params,
                   const models::CorrelatedStateSpec& spec, double t) {
  const double p = purity(dephasing::reduced_state(params, spec, t));
  return std::min(1.0, std::sqrt(std::max(0.0, 2.0 * (1.0 - p))));
}

ConcurrenceMap concurrence_map(const dephasing::DephasingParams& params, Complex b1, Complex b2,
                               const std::vector<double>& lambdas,
                               const std::vector<double>& times, double tolerance) {
  if (!sorted_nonempty(lambdas) || !sorted_nonempty(times)) {
    throw InvalidInput("concurrence_map: grids must be nonempty and sorted");
  }
  const auto spec_at = [&](double lambda) {
    return models::family_spec(models::StateFamily::Original, b1, b2, lambda);
  };
  std::vector<double> window;
  for (double t : times) {
    if (t >= 0.0 && t <= std::numbers::pi) window.push_back(t);
  }
  if (window.empty()) throw InvalidInput("concurrence_map: no grid time in [0, pi]");
  const auto increases = [&](double lambda) {
    const auto spec = spec_at(lambda);
    const double initial = concurrence(params, spec, 0.0);
    double best = -1.0;
    for (double t : window) best = std::max(best, concurrence(params, spec, t) - initial);
    return best > tolerance;
  };

  ConcurrenceMap map{lambdas, times, std::vector<double>(lambdas.size() * times.size()), -1.0,
                     -1.0};
  std::size_t last = lambdas.size();
  for (std::size_t l = 0; l < lambdas.size(); ++l) {
    const auto spec = spec_at(lambdas[l]);
    for (std::size_t i = 0; i < times.size(); ++i) {
      map.values[l * times.size() + i] = concurrence(params, spec, times[i]);
    }
    if (increases(lambdas[l])) last = l;
  }
  if (last == lambdas.size()) return map;
  map.grid_threshold = lambdas[last];
  double lo = lambdas[last];
  if (last + 1 < lambdas.size()) {
    double hi = lambdas[last + 1];
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
      const double mid = 0.5 * (lo + hi);
      (increases(mid) ? lo : hi) = mid;
    }
  }
  map.threshold_lambda = lo;
  return map;
}

WitnessReport witness_bound_sweep(const dephasing::DephasingParams& params,
                                  models::StateFamily family, const ExperimentConfig& config,
                                  dephasing::FockCutoff cutoff, double margin) {
  config.validate();
  const dephasing::FockOracle oracle(params, cutoff);
  const Bipartition part{2, cutoff.n_max + 1};
  const std::size_t samples = config.samples;
  const std::size_t count = config.lambda_grid.size() * samples;
  std::vector<double> lhs(count), rhs(count);

  parallel_items(
      count, resolve_threads(config.threads), [] { return 0; },
      [&](int&, std::size_t item) {
        const std::size_t li = item / samples;
        const std::size_t si = item % samples;
        const auto spec =
            sample_spec(family, config.master_seed, li, si, config.lambda_grid[li]);
        const auto ref = spec.with_lambda(0.0);
        const auto marginal = [&](const models::CorrelatedStateSpec& s, double t) {
          return partial_trace(oracle.total_state(s, t), part, Keep::System);
        };
        const double initial = distance::trace_distance(marginal(spec, 0.0), marginal(ref, 0.0));
        double worst = 0.0;
        for (double t : config.time_grid) {
          worst = std::max(worst,
                           distance::trace_distance(marginal(spec, t), marginal(ref, t)) - initial);
        }
        lhs[item] = worst;
        rhs[item] = distance::witness_bound_rhs(DensityMatrix::pure(oracle.total_state(spec, 0.0)),
                                                DensityMatrix::pure(oracle.total_state(ref, 0.0)),
                                                part);
      });

  WitnessReport report;
  report.checked = count;
  report.worst_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t item = 0; item < count; ++item) {
    const double gap = lhs[item] - rhs[item];
    report.worst_margin = std::max(report.worst_margin, gap);
    if (gap > margin) {
      report.violations.push_back(
          {config.lambda_grid[item / samples], item % samples, lhs[item], rhs[item]});
    }
  }
  return report;
}

} // namespace corrwitness::experiments
