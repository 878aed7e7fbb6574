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

#include "corrwitness/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <type_traits>
#include <iostream>
#include <numbers>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "corrwitness/cli/csv.hpp"
#include "corrwitness/core/errors.hpp"
#include "corrwitness/experiments/experiments.hpp"
#include "corrwitness/experiments/sampling.hpp"
#include "corrwitness/experiments/verify.hpp"
#include "corrwitness/simd/kernels.hpp"

#ifndef CORRWITNESS_VERSION
#define CORRWITNESS_VERSION "unknown"
#endif

namespace corrwitness::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using experiments::ExperimentConfig;
using models::StateFamily;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bound variables of one subcommand, serialized at full precision for the
/// manifest after parsing.
using Registry = std::vector<std::pair<std::string, std::function<json()>>>;

json as_json(double v) { return format_double(v); }
json as_json(const std::string& v) { return v; }
json as_json(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }
json as_json(const std::vector<double>& v) {
  std::string out;
  for (double x : v) out += (out.empty() ? "" : ",") + format_double(x);
  return out;
}
template <class T>
  requires std::is_integral_v<T>
json as_json(T v) {
  return std::to_string(v);
}

template <class T>
CLI::Option* opt(CLI::App* sub, Registry& reg, const std::string& flag, T& var,
                 const std::string& description = "") {
  reg.emplace_back(flag.substr(2), [&var] { return as_json(var); });
  CLI::Option* o = sub->add_option(flag, var, description);
  // Help text only; manifests read the bound variables.
  if constexpr (!std::is_same_v<T, std::optional<double>>) o->capture_default_str();
  return o;
}

CLI::Option* flag(CLI::App* sub, Registry& reg, const std::string& name, bool& var,
                  const std::string& description) {
  reg.emplace_back(name.substr(2), [&var] { return json(var); });
  return sub->add_flag(name, var, description);
}

struct Common {
  std::string out;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string simd = "auto";
};

struct DephasingFlags {
  dephasing::DephasingParams params;
  double z_re = 1.0, z_im = 0.0;
  dephasing::DephasingParams resolved() const {
    auto p = params;
    p.z = {z_re, z_im};
    p.validate();
    return p;
  }
};

struct AmplitudeFlags {
  bool equal_weights = false;
  double b1_re = 0.0, b1_im = 0.0, b2_re = 0.0, b2_im = 0.0;
  CLI::Option* explicit_options[4] = {};

  std::pair<Complex, Complex> resolve() const {
    bool any = false;
    for (auto* o : explicit_options) any = any || o->count() > 0;
    if (any && equal_weights) {
      throw UsageError("--equal-weights cannot be combined with --b1-*/--b2-*");
    }
    if (!any) {
      const double r = std::numbers::sqrt2 / 2.0;
      return {r, r};
    }
    const Complex b1{b1_re, b1_im}, b2{b2_re, b2_im};
    const double norm2 = std::norm(b1) + std::norm(b2);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw UsageError("amplitudes must be nonzero");
    if (std::abs(norm2 - 1.0) <= tolerance::kNorm) return {b1, b2};
    const double norm = std::sqrt(norm2);
    return {b1 / norm, b2 / norm};
  }
};

void add_common(CLI::App* sub, Registry& reg, Common& c, bool out_required) {
  auto* out = opt(sub, reg, "--out", c.out, "Output path");
  if (out_required) out->required();
  opt(sub, reg, "--seed", c.seed, "Master seed");
  opt(sub, reg, "--threads", c.threads, "Worker threads (0: CORRWITNESS_THREADS or all cores)");
  opt(sub, reg, "--simd", c.simd, "Kernel ISA: auto, scalar, avx2");
  // Expanded by expand_config before parsing.
  sub->add_option("--config", "Flat key=value file; keys are flag names");
}

void add_dephasing(CLI::App* sub, Registry& reg, DephasingFlags& d) {
  opt(sub, reg, "--epsilon", d.params.epsilon, "System splitting");
  opt(sub, reg, "--omega", d.params.omega, "Mode frequency")->check(CLI::PositiveNumber);
  opt(sub, reg, "--g0", d.params.g0, "Coupling");
  opt(sub, reg, "--z-re", d.z_re, "Coherent label, real part");
  opt(sub, reg, "--z-im", d.z_im, "Coherent label, imaginary part");
}

void add_amplitudes(CLI::App* sub, Registry& reg, AmplitudeFlags& a) {
  flag(sub, reg, "--equal-weights", a.equal_weights, "b1 = b2 = 1/sqrt 2 (default)");
  a.explicit_options[0] = opt(sub, reg, "--b1-re", a.b1_re, "Amplitude b1, real part");
  a.explicit_options[1] = opt(sub, reg, "--b1-im", a.b1_im, "Amplitude b1, imaginary part");
  a.explicit_options[2] = opt(sub, reg, "--b2-re", a.b2_re, "Amplitude b2, real part");
  a.explicit_options[3] = opt(sub, reg, "--b2-im", a.b2_im, "Amplitude b2, imaginary part");
}

StateFamily family_or_throw(const std::string& name) {
  const auto f = models::parse_family(name);
  if (!f) throw UsageError("unknown family '" + name + "'");
  return *f;
}

void apply_simd(Common& c) {
  if (c.simd == "auto") {
    c.simd = std::string(simd::isa_name(simd::active_isa()));
    return;
  }
  const auto isa = simd::parse_isa(c.simd);
  if (!isa || !simd::isa_available(*isa)) {
    throw UsageError("ISA '" + c.simd + "' is not available");
  }
  simd::set_active_isa(*isa);
}

/// Resolved amplitudes; a replay reproduces them exactly.
json amplitude_overrides(Complex b1, Complex b2) {
  return {{"equal-weights", false},
          {"b1-re", format_double(b1.real())},
          {"b1-im", format_double(b1.imag())},
          {"b2-re", format_double(b2.real())},
          {"b2-im", format_double(b2.imag())}};
}

void write_manifest(const std::string& command, const Registry& reg, const Common& c,
                    const std::vector<fs::path>& outputs,
                    const json& overrides = json::object()) {
  json manifest;
  manifest["command"] = command;
  manifest["version"] = CORRWITNESS_VERSION;
  manifest["master_seed"] = c.seed;
  json config = json::object();
  for (const auto& [name, value] : reg) config[name] = value();
  for (const auto& [key, value] : overrides.items()) config[key] = value;
  manifest["config"] = std::move(config);
  json outs = json::array();
  for (const auto& p : outputs) outs.push_back(p.string());
  manifest["outputs"] = std::move(outs);
  std::ofstream f(c.out + ".manifest.json", std::ios::binary | std::ios::trunc);
  f << manifest.dump(2) << '\n';
  if (!f) throw InvalidInput("cannot write manifest for '" + c.out + "'");
}

std::vector<std::string> frequency_row(const experiments::FrequencyCurve& curve, std::size_t l) {
  std::vector<std::string> row{format_double(curve.lambdas[l])};
  for (std::size_t k = 0; k < 4; ++k) row.push_back(format_double(curve.frequencies[k][l]));
  return row;
}

CsvTable frequency_table(const experiments::FrequencyCurve& curve) {
  CsvTable table{{"lambda", "f_T", "f_B", "f_H", "f_J", "samples", "seed"}, {}};
  for (std::size_t l = 0; l < curve.lambdas.size(); ++l) {
    auto row = frequency_row(curve, l);
    row.push_back(std::to_string(curve.samples));
    row.push_back(std::to_string(curve.master_seed));
    table.add_row(std::move(row));
  }
  return table;
}

ExperimentConfig sweep_config(const Common& c, std::size_t samples, std::size_t lambda_points,
                              std::vector<double> times, std::size_t edge_points) {
  if (samples == 0) throw UsageError("--samples must be positive");
  if (lambda_points == 0) throw UsageError("--lambda-points must be positive");
  ExperimentConfig config;
  config.samples = samples;
  config.master_seed = c.seed;
  config.threads = c.threads;
  config.lambda_grid = experiments::uniform_grid(0.0, 1.0, lambda_points);
  config.time_grid = std::move(times);
  config.edge_points = edge_points;
  return config;
}

int dispatch(const std::vector<std::string>& args);

bool mentions(const std::vector<std::string>& args, const std::string& name) {
  const std::string dashed = "--" + name;
  for (const auto& a : args) {
    if (a == dashed || a.rfind(dashed + "=", 0) == 0) return true;
  }
  return false;
}

/// Splices the keys of a --config file in front of the subcommand's own flags
/// unless the flag is already given, so flags take precedence over the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty() || rest.empty()) return args;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::FileError& e) {
    throw UsageError(e.what());
  }
  std::vector<std::string> injected;
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--" || item.inputs.empty()) continue;
    if (!item.parents.empty()) throw UsageError("config keys must be flat: " + item.fullname());
    if (mentions(rest, item.name)) continue;
    std::string value;
    for (const auto& v : item.inputs) value += (value.empty() ? "" : ",") + v;
    if (value == "true") {
      injected.push_back("--" + item.name);
    } else if (value != "false") {
      injected.push_back("--" + item.name);
      injected.push_back(value);
    }
  }
  std::vector<std::string> out{rest.front()};
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

int run_replay(const std::string& manifest_path, const std::string& out_override) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw UsageError("cannot open manifest '" + manifest_path + "'");
  const json manifest = json::parse(in);
  std::vector<std::string> args{manifest.at("command").get<std::string>()};
  for (const auto& [key, value] : manifest.at("config").items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
      continue;
    }
    std::string text = value.get<std::string>();
    if (key == "out" && !out_override.empty()) text = out_override;
    if (text.empty()) continue;
    args.push_back("--" + key);
    args.push_back(text);
  }
  return dispatch(args);
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Distance measures as witnesses of initial system-environment correlations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CORRWITNESS_VERSION);

  // timetrace
  Common tt_common;
  DephasingFlags tt_deph;
  AmplitudeFlags tt_amp;
  std::string tt_model = "dephasing", tt_family = "original";
  std::vector<double> tt_lambdas{0.1};
  std::size_t tt_points = 2000;
  std::optional<double> tt_tmax;
  spinstar::SpinStarParams tt_star;
  Registry tt_reg;
  auto* tt = app.add_subcommand("timetrace", "Delta D_k(lambda, t) for one state");
  add_common(tt, tt_reg, tt_common, true);
  add_dephasing(tt, tt_reg, tt_deph);
  add_amplitudes(tt, tt_reg, tt_amp);
  opt(tt, tt_reg, "--model", tt_model, "dephasing or spinstar")
      ->check(CLI::IsMember({"dephasing", "spinstar"}));
  opt(tt, tt_reg, "--family", tt_family, "original, swapped, sigmax, haar");
  opt(tt, tt_reg, "--lambda", tt_lambdas, "Comma-separated lambdas in [0, 1]")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  opt(tt, tt_reg, "--time-points", tt_points, "Uniform grid points over [0, t-max)")->check(CLI::PositiveNumber);
  auto* tt_tmax_opt = opt(tt, tt_reg, "--t-max", tt_tmax, "Grid end, excluded (default: one period)");
  opt(tt, tt_reg, "--n-bath", tt_star.n_bath, "Bath spins (spinstar)")->check(CLI::Range(2, 1 << 20));
  opt(tt, tt_reg, "--a0", tt_star.a0, "Coupling constant (spinstar)");

  // frequency
  Common fq_common;
  DephasingFlags fq_deph;
  std::string fq_family = "original";
  std::size_t fq_samples = 50000, fq_lambda_points = 51, fq_points = 2000, fq_edge = 64;
  Registry fq_reg;
  auto* fq = app.add_subcommand("frequency", "Frequency of increase f^k(lambda), dephasing model");
  add_common(fq, fq_reg, fq_common, true);
  add_dephasing(fq, fq_reg, fq_deph);
  opt(fq, fq_reg, "--family", fq_family, "original, swapped, sigmax, haar");
  opt(fq, fq_reg, "--samples", fq_samples, "Samples per lambda");
  opt(fq, fq_reg, "--lambda-points", fq_lambda_points, "Uniform lambda points over [0, 1]");
  opt(fq, fq_reg, "--time-points", fq_points, "Uniform grid points over one period")->check(CLI::PositiveNumber);
  opt(fq, fq_reg, "--edge-points", fq_edge, "Extra detection points per edge interval");

  // concurrence
  Common cc_common;
  DephasingFlags cc_deph;
  AmplitudeFlags cc_amp;
  std::size_t cc_lambda_points = 101, cc_points = 401;
  double cc_tmax = 2.0 * std::numbers::pi;
  Registry cc_reg;
  auto* cc = app.add_subcommand("concurrence", "Concurrence map C(lambda, t)");
  add_common(cc, cc_reg, cc_common, true);
  add_dephasing(cc, cc_reg, cc_deph);
  add_amplitudes(cc, cc_reg, cc_amp);
  opt(cc, cc_reg, "--lambda-points", cc_lambda_points, "Uniform lambda points over [0, 1]")->check(CLI::PositiveNumber);
  opt(cc, cc_reg, "--time-points", cc_points, "Uniform grid points over [0, t-max]")->check(CLI::Range(2, 1 << 24));
  opt(cc, cc_reg, "--t-max", cc_tmax, "Grid end (included)")->check(CLI::PositiveNumber);

  // spinstar
  Common ss_common;
  spinstar::SpinStarParams ss_params;
  std::string ss_family = "haar";
  std::size_t ss_samples = 50000, ss_lambda_points = 51, ss_points = 2000, ss_edge = 64;
  std::optional<double> ss_tmax;
  Registry ss_reg;
  auto* ss = app.add_subcommand("spinstar", "Frequency of increase f^k(lambda), spin star");
  add_common(ss, ss_reg, ss_common, true);
  opt(ss, ss_reg, "--n-bath", ss_params.n_bath, "Bath spins")->check(CLI::Range(2, 1 << 20));
  opt(ss, ss_reg, "--a0", ss_params.a0, "Coupling constant");
  opt(ss, ss_reg, "--family", ss_family, "original, swapped, sigmax, haar");
  opt(ss, ss_reg, "--samples", ss_samples, "Samples per lambda");
  opt(ss, ss_reg, "--lambda-points", ss_lambda_points, "Uniform lambda points over [0, 1]");
  opt(ss, ss_reg, "--time-points", ss_points, "Uniform grid points over [0, t-max)")->check(CLI::PositiveNumber);
  opt(ss, ss_reg, "--edge-points", ss_edge, "Extra detection points per edge interval");
  auto* ss_tmax_opt = opt(ss, ss_reg, "--t-max", ss_tmax, "Grid end, excluded (default: 10 pi / (|a0| sqrt N))");

  // verify
  Common vf_common;
  std::string vf_suite = "all";
  Registry vf_reg;
  auto* vf = app.add_subcommand("verify", "Oracle, property and bound suites");
  add_common(vf, vf_reg, vf_common, false);
  opt(vf, vf_reg, "--suite", vf_suite, "oracles, properties, bounds, all");

  // replay
  std::string rp_manifest, rp_out;
  auto* rp = app.add_subcommand("replay", "Rerun the command recorded in a manifest");
  rp->add_option("manifest", rp_manifest)->required();
  rp->add_option("--out", rp_out, "Override the output path");

  const std::vector<std::string> expanded = expand_config(args);
  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (rp->parsed()) return run_replay(rp_manifest, rp_out);

  if (tt->parsed()) {
    apply_simd(tt_common);
    const auto [b1, b2] = tt_amp.resolve();
    const StateFamily family = family_or_throw(tt_family);
    experiments::ModelParams model;
    double period;
    if (tt_model == "dephasing") {
      const auto p = tt_deph.resolved();
      model = p;
      period = p.period();
    } else {
      tt_star.validate();
      model = tt_star;
      period = tt_star.default_t_max();
    }
    if (tt_tmax_opt->count() && !(*tt_tmax > 0.0)) throw UsageError("--t-max must be positive");
    const auto times = experiments::periodic_grid(tt_tmax.value_or(period), tt_points);
    experiments::RandomStream rng(experiments::derive_seed(tt_common.seed, 0, 0));
    const auto base = models::family_spec(family, b1, b2, 0.0,
                                          family == StateFamily::HaarRandom ? &rng : nullptr);
    CsvTable table{{"lambda", "t", "delta_T", "delta_B", "delta_H", "delta_J"}, {}};
    for (double lambda : tt_lambdas) {
      const auto traces = experiments::time_traces(model, base.with_lambda(lambda), times);
      for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<std::string> row{format_double(lambda), format_double(times[i])};
        for (const auto& tr : traces) row.push_back(format_double(tr.delta_values[i]));
        table.add_row(std::move(row));
      }
    }
    write_csv(tt_common.out, table);
    write_manifest("timetrace", tt_reg, tt_common, {tt_common.out}, amplitude_overrides(b1, b2));
    return kExitOk;
  }

  if (fq->parsed() || ss->parsed()) {
    Common& common = fq->parsed() ? fq_common : ss_common;
    apply_simd(common);
    experiments::ModelParams model;
    ExperimentConfig config;
    StateFamily family;
    if (fq->parsed()) {
      family = family_or_throw(fq_family);
      const auto p = fq_deph.resolved();
      model = p;
      config = sweep_config(common, fq_samples, fq_lambda_points,
                            experiments::periodic_grid(p.period(), fq_points), fq_edge);
    } else {
      family = family_or_throw(ss_family);
      ss_params.validate();
      model = ss_params;
      if (ss_tmax_opt->count() && !(*ss_tmax > 0.0)) throw UsageError("--t-max must be positive");
      config = sweep_config(
          common, ss_samples, ss_lambda_points,
          experiments::periodic_grid(ss_tmax.value_or(ss_params.default_t_max()), ss_points),
          ss_edge);
    }
    const auto curve = experiments::frequency_curve(model, family, config);
    CsvTable table = frequency_table(curve);
    if (ss->parsed()) {
      CsvTable wide{{"lambda", "f_T", "f_B", "f_H", "f_J", "n_bath", "a0", "samples", "seed"},
                    {}};
      for (std::size_t l = 0; l < curve.lambdas.size(); ++l) {
        auto row = frequency_row(curve, l);
        row.push_back(std::to_string(ss_params.n_bath));
        row.push_back(format_double(ss_params.a0));
        row.push_back(std::to_string(curve.samples));
        row.push_back(std::to_string(curve.master_seed));
        wide.add_row(std::move(row));
      }
      table = std::move(wide);
    }
    write_csv(common.out, table);
    write_manifest(fq->parsed() ? "frequency" : "spinstar", fq->parsed() ? fq_reg : ss_reg, common,
                   {common.out});
    return kExitOk;
  }

  if (cc->parsed()) {
    apply_simd(cc_common);
    const auto [b1, b2] = cc_amp.resolve();
    const auto p = cc_deph.resolved();
    const auto lambdas = experiments::uniform_grid(0.0, 1.0, cc_lambda_points);
    const auto times = experiments::uniform_grid(0.0, cc_tmax, cc_points);
    const auto map = experiments::concurrence_map(p, b1, b2, lambdas, times);
    CsvTable table{{"lambda", "t", "concurrence"}, {}};
    for (std::size_t l = 0; l < lambdas.size(); ++l)
      for (std::size_t i = 0; i < times.size(); ++i)
        table.add_row({format_double(lambdas[l]), format_double(times[i]),
                       format_double(map.at(l, i))});
    write_csv(cc_common.out, table);
    const std::string summary = cc_common.out + ".summary.txt";
    {
      std::ofstream f(summary, std::ios::binary | std::ios::trunc);
      f << "threshold_lambda=" << format_double(map.threshold_lambda) << '\n'
        << "grid_threshold_lambda=" << format_double(map.grid_threshold) << '\n';
    }
    std::cout << "threshold_lambda=" << format_double(map.threshold_lambda) << '\n';
    write_manifest("concurrence", cc_reg, cc_common, {cc_common.out, summary}, amplitude_overrides(b1, b2));
    return kExitOk;
  }

  // verify
  apply_simd(vf_common);
  const auto suite = experiments::parse_suite(vf_suite);
  if (!suite) throw UsageError("unknown suite '" + vf_suite + "'");
  experiments::VerifyOptions options;
  options.seed = vf_common.seed;
  options.threads = vf_common.threads;
  const auto reports = experiments::run_verify(*suite, options);
  const std::string text = experiments::format_report(reports);
  std::cout << text;
  if (!vf_common.out.empty()) {
    std::ofstream f(vf_common.out, std::ios::binary | std::ios::trunc);
    f << text;
  }
  for (const auto& r : reports) {
    if (!r.passed()) return kExitCheckFailed;
  }
  return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

} // namespace corrwitness::cli
