// Copyright 2026 The ota_fedsim Authors
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

#include "cli/commands.hpp"

#include <exception>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ota/errors.hpp"
#include "ota/experiment.hpp"
#include "ota/parallel.hpp"
#include "ota/verify.hpp"

namespace ota::cli {
namespace {

ExperimentConfig load_with_overrides(const CommandArgs& args) {
  ExperimentConfig cfg = load_config(args.config);
  if (args.protocol) cfg.protocol = parse_protocol(*args.protocol);
  if (args.rounds) cfg.rounds = *args.rounds;
  if (args.seed_channel) cfg.seeds.channel = *args.seed_channel;
  if (args.out) cfg.output = *args.out;
  return cfg;
}

void print_warnings(const PreparedExperiment& prepared, std::ostream& err) {
  for (const std::string& w : prepared.warnings) err << "warning: " << w << '\n';
}

// Maps library exceptions onto exit codes; everything raised while reading
// inputs or writing outputs is a configuration/IO failure.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kConfigError;
}

}  // namespace

int cmd_run(const CommandArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_with_overrides(args);
    const ExperimentResult result = run_experiment(cfg, args.threads);
    print_warnings(result.prepared, err);
    write_trace_csv(cfg.output, result.traces);

    const RoundTrace& last = result.traces.back();
    out << std::setprecision(10);
    out << "protocol     " << protocol_name(cfg.protocol) << '\n'
        << "rounds       " << last.k << '\n'
        << "epsilon      " << last.epsilon << '\n'
        << "global_loss  " << last.global_loss << '\n'
        << "slots_used   " << last.slots_used << '\n'
        << "trace        " << cfg.output.string() << '\n';
    return kOk;
  });
}

int cmd_compare(const CommandArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_with_overrides(args);
    const PreparedExperiment prepared = prepare_experiment(cfg);
    print_warnings(prepared, err);
    const auto cota =
        run_protocol(prepared, Protocol::kFedCota, cfg.rounds, cfg.seeds.channel, args.threads);
    const auto avg =
        run_protocol(prepared, Protocol::kFedAvg, cfg.rounds, cfg.seeds.channel, args.threads);
    write_compare_csv(cfg.output, cota, avg);

    const std::uint64_t n = cfg.n_agents;
    const std::uint64_t budget = cota.back().slots_used;
    const std::uint64_t r_cota = rounds_within_budget(cota, budget);
    const std::uint64_t r_avg = rounds_within_budget(avg, budget);
    out << std::setprecision(10);
    out << "slots_per_round  fedcota=2 fedavg=" << n << '\n'
        << "slot_budget      " << budget << '\n'
        << "rounds_at_budget fedcota=" << r_cota << " fedavg=" << r_avg << '\n'
        << "final_epsilon    fedcota=" << cota.back().epsilon << " fedavg=" << avg.back().epsilon
        << '\n'
        << "rows             " << cota.size() + avg.size() << '\n'
        << "output           " << cfg.output.string() << '\n';
    return kOk;
  });
}

int cmd_verify_bounds(const CommandArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_with_overrides(args);
    const PreparedExperiment prepared = prepare_experiment(cfg);
    const EnvelopeReport report = verify_envelope(prepared, args.threads);
    write_bound_report_csv(cfg.output, report);

    auto verdict = [](bool ok) { return ok ? "[PASS] " : "[FAIL] "; };
    out << std::setprecision(6);
    out << "params  eta_c=" << report.params.eta_c << " mu=" << report.params.mu
        << " M=" << report.params.grad_bound << " E0=" << report.params.e0
        << " seeds=" << cfg.verify.seeds << " k_max=" << cfg.verify.k_max << '\n';
    out << verdict(report.dominance_ok) << "envelope dominance: mean ||theta(k)-theta*||^2 <= "
        << "envelope(k) * " << 1.0 + cfg.verify.slack << " (worst ratio " << report.worst_ratio
        << ")";
    if (report.first_dominance_violation) out << " first violation k=" << *report.first_dominance_violation;
    out << '\n';
    out << verdict(report.recursion_ok) << "one-step recursion: mse(k+1) <= C_k mse(k) + "
        << "eta(k)^2 M^2 + MC slack";
    if (report.first_recursion_violation) out << " first violation k=" << *report.first_recursion_violation;
    out << '\n';
    out << "[INFO] envelope tail nonincreasing after its peak: "
        << (report.tail_decreasing ? "yes" : "no") << '\n';
    out << "report  " << cfg.output.string() << '\n';
    return report.passed() ? kOk : kVerificationFailed;
  });
}

int cmd_gen_data(const CommandArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ExperimentConfig cfg = load_with_overrides(args);
    if (cfg.loss != LossKind::kLogistic) {
      throw ConfigError("gen-data: only logistic configs have a dataset");
    }
    const LabeledDataset ds = generate_dataset(cfg);
    save_csv(ds, cfg.output);
    out << "samples " << ds.size() << " (class 0: " << ds.count(0) << ", class 1: " << ds.count(1)
        << ")\n"
        << "output  " << cfg.output.string() << '\n';
    return kOk;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Federated learning over a fading multiple-access channel"};
  app.require_subcommand(1);

  CommandArgs args;
  std::string protocol;
  std::uint64_t rounds = 0;
  std::uint64_t seed_channel = 0;
  std::string out_path;

  auto add_common = [&](CLI::App* sub, bool overrides) {
    sub->add_option("--config", args.config, "Experiment config (JSON)")->required();
    sub->add_option("--out", out_path, "Output CSV path (overrides config 'output')");
    if (overrides) {
      sub->add_option("--protocol", protocol, "fedcota or fedavg");
      sub->add_option("--rounds", rounds, "Number of communication rounds");
      sub->add_option("--seed-channel", seed_channel, "Channel RNG seed");
    }
  };

  CLI::App* run = app.add_subcommand("run", "Run one protocol and write a trace CSV");
  CLI::App* compare = app.add_subcommand("compare", "Run FedCOTA and FedAVG side by side");
  CLI::App* verify =
      app.add_subcommand("verify-bounds", "Monte-Carlo check of the expected-error envelope");
  CLI::App* gen = app.add_subcommand("gen-data", "Write the generated dataset as CSV");
  add_common(run, true);
  add_common(compare, true);
  add_common(verify, true);
  add_common(gen, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  auto given = [](CLI::App* sub, const char* name) { return sub->count(name) > 0; };
  CLI::App* active = app.get_subcommands().front();
  if (given(active, "--out")) args.out = out_path;
  if (active != gen) {
    if (given(active, "--protocol")) args.protocol = protocol;
    if (given(active, "--rounds")) args.rounds = rounds;
    if (given(active, "--seed-channel")) args.seed_channel = seed_channel;
  }
  args.threads = threads_from_env();

  if (active == run) return cmd_run(args, out, err);
  if (active == compare) return cmd_compare(args, out, err);
  if (active == verify) return cmd_verify_bounds(args, out, err);
  return cmd_gen_data(args, out, err);
}

}  // namespace ota::cli
