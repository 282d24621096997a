// Copyright 2026 The qdarwin Authors
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

#include "qdarwin/cli.hpp"

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qdarwin/error.hpp"
#include "qdarwin/pipeline.hpp"

namespace qdarwin::cli {
namespace {

struct Options {
  RunConfig cfg;
  std::string variant = "A";
  std::string noise = "0.02";
  std::string mitigation = "on";
  std::string mode = "physical";
  std::string ordering;
  std::string format = "json";
  std::string out_dir = ".";
  std::string configs = "all";
  std::uint64_t seed = 0;
  double theta_s = 0.0;
};

std::vector<std::size_t> parse_ordering(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InvalidArgument("--ordering: '" + item + "' is not an environment index");
    }
  }
  return out;
}

StrengthVariant parse_variant(const std::string& v) {
  if (v == "A") return StrengthVariant::A;
  if (v == "B") return StrengthVariant::B;
  throw InvalidArgument("--variant must be A or B");
}

void resolve(Options& o, const CLI::App& sub, bool sampled) {
  o.cfg.variant = parse_variant(o.variant);
  if (o.noise == "none") {
    o.cfg.readout_flip.reset();
  } else {
    try {
      o.cfg.readout_flip = std::stod(o.noise);
    } catch (const std::exception&) {
      throw InvalidArgument("--noise must be a probability or 'none'");
    }
  }
  if (o.mitigation != "on" && o.mitigation != "off") throw InvalidArgument("--mitigation must be on or off");
  o.cfg.mitigation = o.mitigation == "on";
  if (o.mode != "physical" && o.mode != "raw") throw InvalidArgument("--mode must be physical or raw");
  o.cfg.mode = o.mode == "physical" ? EntropyMode::Physical : EntropyMode::Raw;
  if (o.format != "json" && o.format != "csv") throw InvalidArgument("--format must be json or csv");
  o.cfg.format = o.format == "json" ? ReportFormat::Json : ReportFormat::Csv;
  if (!o.ordering.empty()) o.cfg.ordering = parse_ordering(o.ordering);
  if (sampled && sub.count("--seed") > 0) o.cfg.seed = o.seed;
  if (sub.count("--theta-s") > 0) o.cfg.theta_system = o.theta_s;
}

void add_common(CLI::App* sub, Options& o, bool sampled) {
  sub->add_option("--qubits", o.cfg.qubits, "Total qubits, system plus environment (2..6)");
  sub->add_option("--variant", o.variant, "Interaction strength row: A or B");
  sub->add_option("--theta-s", o.theta_s, "System rotation angle in radians (default pi/2)");
  sub->add_option("--ordering", o.ordering, "Environment sweep order, e.g. 3,1,2");
  sub->add_option("--out", o.out_dir, "Output directory");
  sub->add_option("--format", o.format, "Info report format: json or csv");
  sub->add_option("--mode", o.mode, "Entropy mode: physical (projected states) or raw");
  if (!sampled) return;
  sub->add_option("--shots", o.cfg.shots, "Shots per measurement setting");
  sub->add_option("--seed", o.seed, "Master RNG seed (required)");
  sub->add_option("--noise", o.noise, "Symmetric readout flip probability, or 'none'");
  sub->add_option("--depolarizing", o.cfg.depolarizing, "Depolarizing strength per controlled gate");
  sub->add_option("--mitigation", o.mitigation, "Readout mitigation: on or off");
  sub->add_option("--workers", o.cfg.workers, "Worker threads (0 = all cores); results do not depend on it");
}

std::vector<RunConfig> expand_batch(const Options& o) {
  std::vector<std::string> tags;
  if (o.configs == "all") {
    for (int q = 2; q <= 6; ++q)
      for (const char* v : {"A", "B"}) tags.push_back(std::to_string(q) + v);
  } else if (!o.configs.empty() && o.configs != "none") {
    std::stringstream ss(o.configs);
    std::string item;
    while (std::getline(ss, item, ',')) tags.push_back(item);
  }
  std::vector<RunConfig> batch;
  for (const auto& tag : tags) {
    if (tag.size() != 2 || tag[0] < '2' || tag[0] > '6') throw InvalidArgument("--configs: bad entry '" + tag + "'");
    RunConfig c = o.cfg;
    c.qubits = static_cast<std::size_t>(tag[0] - '0');
    c.variant = parse_variant(tag.substr(1));
    c.ordering.clear();
    c.validate(true);
    batch.push_back(std::move(c));
  }
  return batch;
}

void summarize(std::ostream& out, const std::vector<OutputFile>& files, const std::string& dir) {
  for (const auto& f : files) out << "wrote " << dir << "/" << f.name << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qdarwin: Darwinism-state simulation, tomography and information analysis"};
  app.require_subcommand(1);
  Options theory_opts, experiment_opts, table_opts;
  CLI::App* theory = app.add_subcommand("theory", "Exact state, density matrix and information sweep");
  add_common(theory, theory_opts, false);
  CLI::App* experiment = app.add_subcommand("experiment", "Sampled tomography with optional readout mitigation");
  add_common(experiment, experiment_opts, true);
  CLI::App* table = app.add_subcommand("table", "Fidelity/purity table over a batch of configurations");
  add_common(table, table_opts, true);
  table->add_option("--configs", table_opts.configs, "Comma-separated tags like 2A,3B, 'all' or 'none'");

  std::vector<std::string> argv_storage{"qdarwin"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  try {
    std::vector<OutputFile> files;
    std::string dir;
    if (theory->parsed()) {
      resolve(theory_opts, *theory, false);
      files = cmd_theory(theory_opts.cfg);
      dir = theory_opts.out_dir;
    } else if (experiment->parsed()) {
      resolve(experiment_opts, *experiment, true);
      files = cmd_experiment(experiment_opts.cfg);
      dir = experiment_opts.out_dir;
    } else {
      resolve(table_opts, *table, true);
      if (!table_opts.cfg.seed) throw InvalidArgument("a seed is required for sampled runs");
      const auto batch = expand_batch(table_opts);
      files = cmd_table(batch);
      dir = table_opts.out_dir;
    }
    write_outputs(dir, files);
    summarize(out, files, dir);
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  }
}

}  // namespace qdarwin::cli
