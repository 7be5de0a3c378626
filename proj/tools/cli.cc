// Copyright 2026 The Vibronic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vibronic/doktorov.h"
#include "vibronic/errors.h"
#include "vibronic/fock.h"
#include "vibronic/format.h"
#include "vibronic/param_file.h"
#include "vibronic/version.h"

namespace vibronic::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct Loaded {
  MolecularParams params;
  double scale = kDefaultScale;
  DoktorovSequence sequence;
};

struct Simulation {
  TruncatedState state = TruncatedState::Vacuum({2});
  std::vector<int> cutoffs;
  double leakage = 0.0;
  bool automatic = false;
  std::vector<std::pair<int, double>> history;
};

// Collects written files so metadata can list them.
class OutputDir {
 public:
  explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw ConfigurationError("cannot create output directory " + dir_.string() +
                               ": " + ec.message());
    }
    if (::access(dir_.c_str(), W_OK) != 0) {
      throw ConfigurationError("output directory " + dir_.string() +
                               " is not writable");
    }
  }

  void write(const std::string& name, const std::string& body) {
    write_file_atomic(dir_ / name, body);
    written_.push_back(name);
  }

  const fs::path& path() const { return dir_; }
  const std::vector<std::string>& written() const { return written_; }

 private:
  fs::path dir_;
  std::vector<std::string> written_;
};

Loaded load(const RunConfig& config) {
  const ParamFile file = load_param_file(config.input_path);
  Loaded loaded;
  loaded.params = file.params;
  loaded.scale = config.scale.value_or(file.scale.value_or(kDefaultScale));
  loaded.sequence = build_sequence(loaded.params, loaded.scale);
  return loaded;
}

Simulation simulate(const Loaded& loaded, const RunConfig& config, std::ostream& err) {
  const int modes = loaded.params.num_modes();
  Simulation sim;
  if (config.cutoffs.empty()) {
    AutoCutoffOptions options;
    options.initial_cutoff = config.auto_initial_cutoff;
    options.max_cutoff = config.auto_max_cutoff;
    options.leakage_tolerance = config.leakage_tolerance;
    AutoCutoffResult result = run_with_auto_cutoff(modes, loaded.sequence.ops, options);
    sim.automatic = true;
    sim.cutoffs = result.cutoffs;
    sim.history = std::move(result.history);
    sim.leakage = leakage(result.state);
    sim.state = std::move(result.state);
    return sim;
  }
  std::vector<int> cutoffs = config.cutoffs;
  if (cutoffs.size() == 1) cutoffs.assign(modes, cutoffs.front());
  if (static_cast<int>(cutoffs.size()) != modes) {
    throw ConfigurationError("--cutoff takes one value or one per mode (" +
                             std::to_string(modes) + ")");
  }
  sim.state = apply_sequence(new_vacuum(modes, cutoffs), loaded.sequence.ops);
  sim.cutoffs = cutoffs;
  sim.leakage = leakage(sim.state);
  sim.history.emplace_back(cutoffs.front(), sim.leakage);
  if (sim.leakage >= config.leakage_tolerance) {
    err << "warning: leakage " << format_double(sim.leakage, 4)
        << " exceeds tolerance " << format_double(config.leakage_tolerance, 4)
        << "; raise --cutoff or use auto-cutoff\n";
  }
  return sim;
}

DetectionModel detection_model(const RunConfig& config) {
  DetectionModel model = DetectionModel::FromConfig(config.device);
  if (!config.fdm_table.empty() && config.fdm_per_pulse) {
    throw ConfigurationError("--fdm-table and --fdm-synthetic are exclusive");
  }
  if (!config.fdm_table.empty()) {
    model.f_dm = TransferFidelityTable::LoadFile(config.fdm_table);
  } else if (config.fdm_per_pulse) {
    model.f_dm = TransferFidelityTable::Synthetic(*config.fdm_per_pulse);
  }
  model.validate();
  return model;
}

std::string fmt(double x) { return format_double(x); }

std::string join_modes(const std::vector<int>& modes) {
  std::string out;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(modes[k]);
  }
  return out;
}

PulseSchedule schedule_for(const Loaded& loaded, const RunConfig& config) {
  PulseSchedule schedule = plan_pulses(loaded.sequence, config.device);
  if (config.omit_zero_pulses) {
    std::erase_if(schedule.pulses, [](const Pulse& p) { return p.parameter == 0.0; });
  }
  return schedule;
}

std::string pulse_table(const PulseSchedule& schedule) {
  std::ostringstream out;
  out << "stage\tkind\tmodes\tfrequency_label\traman_frequency_MHz\tparameter\t"
         "duration_us\tphase_rad\twarning\n";
  for (const Pulse& p : schedule.pulses) {
    out << p.stage << '\t' << to_string(p.kind) << '\t' << join_modes(p.modes) << '\t'
        << p.frequency_label << '\t' << fmt(p.raman_frequency_mhz) << '\t'
        << fmt(p.parameter) << '\t' << fmt(p.duration_us) << '\t' << fmt(p.phase)
        << '\t' << p.warning << '\n';
  }
  return out.str();
}

ordered_json params_json(const MolecularParams& p) {
  ordered_json j;
  j["name"] = p.name;
  j["omega_initial"] = p.omega_initial;
  j["omega_final"] = p.omega_final;
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < p.duschinsky.rows(); ++r) {
    std::vector<double> row(p.duschinsky.cols());
    for (Eigen::Index c = 0; c < p.duschinsky.cols(); ++c) row[c] = p.duschinsky(r, c);
    rows.push_back(row);
  }
  j["duschinsky"] = rows;
  if (p.delta) j["delta"] = *p.delta;
  if (p.d) j["d"] = *p.d;
  j["unit_system"] = std::string(to_string(p.unit_system));
  j["omega_00"] = p.omega_00;
  return j;
}

ordered_json sequence_json(const DoktorovSequence& seq) {
  ordered_json j;
  j["scale"] = seq.scale;
  j["zeta"] = seq.zeta;
  j["theta"] = seq.theta;
  j["zeta_prime"] = seq.zeta_prime;
  j["delta"] = seq.delta;
  ordered_json ops = ordered_json::array();
  for (const GaussianOp& op : seq.ops) ops.push_back(describe(op));
  j["ops"] = ops;
  j["warnings"] = seq.warnings;
  return j;
}

ordered_json device_json(const DeviceConfig& d) {
  ordered_json j;
  j["rate_displacement"] = d.rate_displacement;
  j["rate_squeeze"] = d.rate_squeeze;
  j["rate_rotation"] = d.rate_rotation;
  j["trap_freq_x"] = d.trap_freq_x;
  j["trap_freq_y"] = d.trap_freq_y;
  j["lamb_dicke_x"] = d.lamb_dicke_x;
  j["lamb_dicke_y"] = d.lamb_dicke_y;
  j["eta_up"] = d.eta_up;
  j["eta_down"] = d.eta_down;
  j["shots"] = d.shots;
  j["rng_seed"] = d.rng_seed;
  j["target_threshold"] = d.target_threshold;
  return j;
}

ordered_json config_json(const RunConfig& c, double scale) {
  ordered_json j;
  j["input_path"] = c.input_path.string();
  j["cutoff_mode"] = c.cutoffs.empty() ? "auto" : "fixed";
  if (c.cutoffs.empty()) {
    j["auto_initial_cutoff"] = c.auto_initial_cutoff;
    j["auto_max_cutoff"] = c.auto_max_cutoff;
  } else {
    j["cutoffs"] = c.cutoffs;
  }
  j["leakage_tolerance"] = c.leakage_tolerance;
  j["scale"] = scale;
  j["broaden_width"] = c.broaden_width;
  j["width_kind"] = std::string(to_string(c.width_kind));
  j["grid_step"] = c.grid_step;
  j["device"] = device_json(c.device);
  if (!c.fdm_table.empty()) j["fdm_table"] = c.fdm_table.string();
  if (c.fdm_per_pulse) j["fdm_synthetic_per_pulse"] = *c.fdm_per_pulse;
  j["emit"] = {{"sticks", c.emit.sticks},
               {"curve", c.emit.curve},
               {"raw_vs_corrected", c.emit.raw_vs_corrected},
               {"pulse_plan", c.emit.pulse_plan}};
  j["omit_zero_pulses"] = c.omit_zero_pulses;
  return j;
}

ordered_json simulation_json(const Simulation& sim) {
  ordered_json j;
  j["cutoffs"] = sim.cutoffs;
  j["automatic"] = sim.automatic;
  j["leakage"] = sim.leakage;
  ordered_json history = ordered_json::array();
  for (auto [cutoff, leak] : sim.history) {
    history.push_back({{"cutoff", cutoff}, {"leakage", leak}});
  }
  j["history"] = history;
  return j;
}

// Everything needed to rerun: version, command, inputs and resolved config.
ordered_json metadata(const std::string& command, const RunConfig& config,
                      const Loaded& loaded) {
  ordered_json j;
  j["tool"] = "vibronic";
  j["version"] = kVersion;
  j["command"] = command;
  j["molecule"] = params_json(loaded.params);
  j["config"] = config_json(config, loaded.scale);
  j["sequence"] = sequence_json(loaded.sequence);
  return j;
}

void finish_metadata(OutputDir& dir, ordered_json meta) {
  std::vector<std::string> outputs = dir.written();
  outputs.push_back("metadata.json");
  meta["outputs"] = outputs;
  dir.write("metadata.json", meta.dump(2) + "\n");
}

template <typename Writer>
std::string render(Writer&& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

int cmd_decompose(const RunConfig& config, std::ostream& out) {
  const Loaded loaded = load(config);
  const DoktorovSequence& seq = loaded.sequence;
  if (config.json) {
    ordered_json j = metadata("decompose", config, loaded);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  auto vec = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k) s += ", ";
      s += format_double(v[k], 6);
    }
    return "(" + s + ")";
  };
  out << "molecule    " << (loaded.params.name.empty() ? "(unnamed)" : loaded.params.name)
      << '\n'
      << "scale       " << format_double(seq.scale, 6) << '\n'
      << "zeta        " << vec(seq.zeta) << '\n'
      << "theta       " << format_double(seq.theta, 6) << '\n'
      << "zeta_prime  " << vec(seq.zeta_prime) << '\n'
      << "delta       " << vec(seq.delta) << '\n'
      << "sequence (application order):\n";
  for (std::size_t k = 0; k < seq.ops.size(); ++k) {
    out << "  " << k + 1 << ". " << describe(seq.ops[k]) << '\n';
  }
  for (const std::string& w : seq.warnings) out << "warning: " << w << '\n';
  out << "vibronic " << kVersion << '\n';
  return kExitOk;
}

int cmd_spectrum(const RunConfig& config, const fs::path& out_dir, std::ostream& out,
                 std::ostream& err) {
  const Loaded loaded = load(config);
  const Simulation sim = simulate(loaded, config, err);
  const StickSpectrum sticks =
      stick_spectrum(sim.state, loaded.params.omega_final, loaded.params.omega_00);

  OutputDir dir(out_dir);
  if (config.emit.sticks) {
    dir.write("sticks.tsv", render([&](std::ostream& o) { write_stick_table(o, sticks); }));
  }
  if (config.emit.curve) {
    const BroadenedCurve curve =
        broaden(sticks, config.broaden_width, config.width_kind, config.grid_step);
    dir.write("curve.tsv", render([&](std::ostream& o) { write_curve_table(o, curve); }));
  }
  if (config.emit.pulse_plan) {
    dir.write("pulse_plan.tsv", pulse_table(schedule_for(loaded, config)));
  }
  ordered_json meta = metadata("spectrum", config, loaded);
  meta["simulation"] = simulation_json(sim);
  meta["spectrum"] = {{"num_sticks", sticks.sticks.size()},
                      {"total_intensity", sticks.total_intensity},
                      {"stick_sum", sticks.stick_sum()},
                      {"offset", sticks.offset}};
  finish_metadata(dir, std::move(meta));

  out << sticks.sticks.size() << " sticks, cutoffs " << join_modes(sim.cutoffs)
      << ", leakage " << format_double(sim.leakage, 3) << " -> " << dir.path().string()
      << '\n';
  return kExitOk;
}

int cmd_emulate(const RunConfig& config, const fs::path& out_dir, std::ostream& out,
                std::ostream& err) {
  const Loaded loaded = load(config);
  const DetectionModel model = detection_model(config);
  const Simulation sim = simulate(loaded, config, err);
  const SampledSpectrum sampled = sampled_spectrum(
      sim.state, loaded.params.omega_final, model, config.device, loaded.params.omega_00);

  OutputDir dir(out_dir);
  dir.write("shots.tsv", render([&](std::ostream& o) { write_shot_table(o, sampled); }));
  if (config.emit.sticks) {
    dir.write("corrected_sticks.tsv",
              render([&](std::ostream& o) { write_stick_table(o, sampled.corrected); }));
    dir.write("raw_sticks.tsv",
              render([&](std::ostream& o) { write_stick_table(o, sampled.raw); }));
  }
  if (config.emit.curve) {
    const BroadenedCurve curve = broaden(sampled.corrected, config.broaden_width,
                                         config.width_kind, config.grid_step);
    dir.write("corrected_curve.tsv",
              render([&](std::ostream& o) { write_curve_table(o, curve); }));
  }
  double worst_z = 0.0;
  int out_of_model = 0;
  std::ostringstream cmp;
  cmp << "target\tfrequency_cm-1\tideal\tP4_raw\tP4_corrected\tstderr\t"
         "raw_minus_ideal\tcorrected_minus_ideal\tz_corrected\tout_of_model\n";
  for (const TargetMeasurement& t : sampled.targets) {
    const double diff = t.p4_corrected - t.ideal;
    const double z = t.stderr_corrected > 0.0 ? diff / t.stderr_corrected : 0.0;
    worst_z = std::max(worst_z, std::abs(z));
    out_of_model += t.out_of_model ? 1 : 0;
    cmp << to_string(t.target) << '\t' << fmt(t.frequency) << '\t' << fmt(t.ideal) << '\t'
        << fmt(t.record.p4) << '\t' << fmt(t.p4_corrected) << '\t'
        << fmt(t.stderr_corrected) << '\t' << fmt(t.record.p4 - t.ideal) << '\t'
        << fmt(diff) << '\t' << fmt(z) << '\t' << (t.out_of_model ? 1 : 0) << '\n';
  }
  if (config.emit.raw_vs_corrected) dir.write("comparison.tsv", cmp.str());
  if (config.emit.pulse_plan) {
    dir.write("pulse_plan.tsv", pulse_table(schedule_for(loaded, config)));
  }

  ordered_json meta = metadata("emulate", config, loaded);
  meta["simulation"] = simulation_json(sim);
  meta["emulation"] = {{"num_targets", sampled.targets.size()},
                       {"max_abs_z_corrected", worst_z},
                       {"out_of_model_targets", out_of_model},
                       {"stderr_formula",
                        "sqrt(P4 (1 - P4) / shots) / ((eta_up + eta_down - 1) F_DM)"}};
  finish_metadata(dir, std::move(meta));

  if (out_of_model) {
    err << "warning: " << out_of_model
        << " target(s) fell outside the detection model; values were clamped\n";
  }
  out << sampled.targets.size() << " targets x " << config.device.shots
      << " shots, max |z| " << format_double(worst_z, 3) << " -> "
      << dir.path().string() << '\n';
  return kExitOk;
}

int cmd_pulse_plan(const RunConfig& config, const fs::path& out_dir, std::ostream& out) {
  const Loaded loaded = load(config);
  const PulseSchedule schedule = schedule_for(loaded, config);
  const std::string table = pulse_table(schedule);

  OutputDir dir(out_dir);
  dir.write("pulse_plan.tsv", table);
  ordered_json meta = metadata("pulse-plan", config, loaded);
  meta["pulse_plan"] = {{"num_pulses", schedule.pulses.size()},
                        {"total_duration_us", schedule.total_duration_us()},
                        {"has_warnings", schedule.has_warnings()}};
  finish_metadata(dir, std::move(meta));

  out << table << "total " << format_double(schedule.total_duration_us(), 6) << " us\n";
  return kExitOk;
}

EmitFlags parse_emit(const std::vector<std::string>& names) {
  EmitFlags flags{false, false, false, false};
  for (const std::string& n : names) {
    if (n == "sticks") {
      flags.sticks = true;
    } else if (n == "curve") {
      flags.curve = true;
    } else if (n == "raw_vs_corrected") {
      flags.raw_vs_corrected = true;
    } else if (n == "pulse_plan") {
      flags.pulse_plan = true;
    } else if (n != "none") {
      throw ConfigurationError("unknown --emit item '" + n +
                               "' (sticks, curve, raw_vs_corrected, pulse_plan, none)");
    }
  }
  return flags;
}

}  // namespace

fs::path resolve_output_dir(const RunConfig& config, const char* env_value) {
  if (config.output_dir) return *config.output_dir;
  if (env_value != nullptr && *env_value != '\0') return fs::path(env_value);
  return fs::path(kDefaultOutputDir);
}

void write_file_atomic(const fs::path& path, const std::string& body) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    file << body;
    file.flush();
    if (!file) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw ConfigurationError("cannot write " + path.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigurationError("cannot move output into place at " + path.string());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const char* env_output_dir) {
  CLI::App app{"Vibronic spectra via the Doktorov decomposition on a two-mode "
               "trapped-ion emulator"};
  app.set_version_flag("--version", std::string("vibronic ") + kVersion);
  app.require_subcommand(1);

  RunConfig config;
  std::string width_kind = "fwhm";
  std::vector<std::string> emit;
  std::string output_dir;
  std::string fdm_table;
  double fdm_synthetic = 0.0;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", config.input_path, "molecular parameter file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--scale", config.scale,
                    "squeezing rescale constant (default: file value, else 25)")
        ->check(CLI::PositiveNumber);
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output-dir", output_dir,
                    std::string("output directory (overrides ") + kOutputDirEnv +
                        "; default ./" + kDefaultOutputDir + ")");
  };
  auto add_simulation = [&](CLI::App* sub) {
    auto* cutoff = sub->add_option("--cutoff", config.cutoffs,
                                   "fixed cutoff, one value or one per mode")
                       ->delimiter(',')
                       ->check(CLI::Range(2, 4096));
    sub->add_flag("--auto-cutoff", "double a uniform cutoff until leakage is small "
                                   "(default)")
        ->excludes(cutoff);
    sub->add_option("--initial-cutoff", config.auto_initial_cutoff,
                    "first cutoff tried by auto-cutoff")
        ->check(CLI::Range(2, 4096));
    sub->add_option("--max-cutoff", config.auto_max_cutoff, "auto-cutoff cap")
        ->check(CLI::Range(2, 4096));
    sub->add_option("--leakage-tol", config.leakage_tolerance,
                    "acceptable probability outside the cutoff")
        ->check(CLI::PositiveNumber);
    sub->add_option("--width", config.broaden_width, "broadening width in cm^-1")
        ->check(CLI::PositiveNumber);
    sub->add_option("--width-kind", width_kind, "fwhm or stddev")
        ->check(CLI::IsMember({"fwhm", "stddev"}));
    sub->add_option("--grid-step", config.grid_step, "curve grid spacing in cm^-1")
        ->check(CLI::PositiveNumber);
    sub->add_option("--emit", emit,
                    "comma list of sticks, curve, raw_vs_corrected, pulse_plan, none")
        ->delimiter(',');
  };
  auto add_device = [&](CLI::App* sub) {
    DeviceConfig& d = config.device;
    sub->add_option("--rate-displacement", d.rate_displacement, "|delta| per us");
    sub->add_option("--rate-squeeze", d.rate_squeeze, "|zeta| per us");
    sub->add_option("--rate-rotation", d.rate_rotation, "rad per us");
    sub->add_option("--trap-freq-x", d.trap_freq_x, "MHz");
    sub->add_option("--trap-freq-y", d.trap_freq_y, "MHz");
    sub->add_option("--lamb-dicke-x", d.lamb_dicke_x);
    sub->add_option("--lamb-dicke-y", d.lamb_dicke_y);
    sub->add_flag("--omit-zero", config.omit_zero_pulses,
                  "drop zero-parameter pulses from the schedule");
  };
  auto add_detection = [&](CLI::App* sub) {
    DeviceConfig& d = config.device;
    sub->add_option("--shots", d.shots, "shots per target")->check(CLI::PositiveNumber);
    sub->add_option("--seed", d.rng_seed, "RNG seed");
    sub->add_option("--eta-up", d.eta_up, "bright-state detection fidelity");
    sub->add_option("--eta-down", d.eta_down, "dark-state detection fidelity");
    sub->add_option("--threshold", d.target_threshold,
                    "measure targets whose ideal population exceeds this");
    sub->add_option("--fdm-table", fdm_table, "F_D.M table (nX nY F rows)")
        ->check(CLI::ExistingFile);
    sub->add_option("--fdm-synthetic", fdm_synthetic,
                    "synthetic F_D.M = f^(nX + nY + 2) with this per-pulse f");
  };

  CLI::App* decompose = app.add_subcommand("decompose", "print the Doktorov parameters");
  add_input(decompose);
  decompose->add_flag("--json", config.json, "structured output");

  CLI::App* spectrum = app.add_subcommand("spectrum", "stick spectrum and broadened curve");
  add_input(spectrum);
  add_simulation(spectrum);
  add_device(spectrum);
  add_output(spectrum);

  CLI::App* emulate = app.add_subcommand(
      "emulate", "shot-level measurement emulation with error correction");
  add_input(emulate);
  add_simulation(emulate);
  add_device(emulate);
  add_detection(emulate);
  add_output(emulate);

  CLI::App* pulse_plan = app.add_subcommand("pulse-plan", "device pulse schedule");
  add_input(pulse_plan);
  add_device(pulse_plan);
  add_output(pulse_plan);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    config.width_kind = parse_width_kind(width_kind);
    if (!output_dir.empty()) config.output_dir = fs::path(output_dir);
    if (!fdm_table.empty()) config.fdm_table = fdm_table;
    if (emulate->count("--fdm-synthetic")) config.fdm_per_pulse = fdm_synthetic;
    if (!emit.empty()) {
      config.emit = parse_emit(emit);
    } else if (spectrum->parsed()) {
      config.emit.raw_vs_corrected = false;
    }
    config.device.validate();
    const fs::path out_dir = resolve_output_dir(config, env_output_dir);

    if (decompose->parsed()) return cmd_decompose(config, out);
    if (spectrum->parsed()) return cmd_spectrum(config, out_dir, out, err);
    if (emulate->parsed()) return cmd_emulate(config, out_dir, out, err);
    return cmd_pulse_plan(config, out_dir, out);
  } catch (const LeakageError& e) {
    err << "error: " << e.what() << "\nleakage report: " << format_double(e.leakage(), 6)
        << " of the probability lies beyond the largest cutoff tried\n";
    return kExitNumeric;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    return kExitModel;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace vibronic::cli
