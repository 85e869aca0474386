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

#include "ota/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "ota/csv.hpp"
#include "ota/errors.hpp"
#include "ota/parallel.hpp"
#include "ota/protocols.hpp"
#include "ota/random.hpp"

namespace ota {

EnvelopeReport verify_envelope(std::span<const LossSpec> losses, const ConstraintSet& set,
                               double eta_c, const CoefficientDistribution& channel,
                               const ParamVec& theta0, const EnvelopeCheckOptions& opts) {
  if (losses.empty()) throw std::invalid_argument("verify_envelope: no losses");
  if (opts.seeds < 1 || opts.k_max < 1) {
    throw std::invalid_argument("verify_envelope: need seeds >= 1 and k_max >= 1");
  }

  std::vector<CurvatureConstants> per_agent;
  for (const LossSpec& l : losses) per_agent.push_back(estimate_constants(l, set));
  const CurvatureConstants constants = aggregate_constants(per_agent);
  if (eta_c > (1.0 / constants.lip) * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "Assumption 3 violated: eta_c = " << eta_c << " > 1/L = " << 1.0 / constants.lip;
    throw ConfigError(msg.str());
  }

  const FitResult fit =
      centralized_fit(losses, StepSchedule::constant(1.0 / constants.lip), set,
                      StopCriteria{1000000, 1e-10});
  const ParamVec& theta_star = fit.theta;

  BoundParams params{eta_c, constants.mu, constants.grad_bound,
                     std::pow(distance(theta0, theta_star), 2)};
  params.validate();

  const StepSchedule sched = StepSchedule::diminishing_sqrt(eta_c);
  const std::size_t n_k = opts.k_max + 1;

  // Per-seed squared errors, reduced in seed order afterwards.
  std::vector<std::vector<double>> per_seed(opts.seeds);
  parallel_for(opts.seeds, opts.threads, [&](std::size_t s) {
    const ChannelModel model(channel, derive_seed(opts.channel_seed, stream::kMonteCarlo, s));
    std::vector<double> err(n_k);
    FedState state{0, theta0, 0};
    err[0] = std::pow(distance(state.theta, theta_star), 2);
    for (std::uint64_t k = 0; k < opts.k_max; ++k) {
      state = fedcota_round(state, losses, sched, set, model).state;
      err[k + 1] = std::pow(distance(state.theta, theta_star), 2);
    }
    per_seed[s] = std::move(err);
  });

  EnvelopeReport report{.params = params, .constants = constants, .theta_star = theta_star};
  report.empirical_mse.assign(n_k, 0.0);
  report.mse_stderr.assign(n_k, 0.0);
  const double n = static_cast<double>(opts.seeds);
  for (const auto& err : per_seed) {
    for (std::size_t k = 0; k < n_k; ++k) report.empirical_mse[k] += err[k];
  }
  for (double& v : report.empirical_mse) v /= n;
  if (opts.seeds > 1) {
    for (const auto& err : per_seed) {
      for (std::size_t k = 0; k < n_k; ++k) {
        const double d = err[k] - report.empirical_mse[k];
        report.mse_stderr[k] += d * d;
      }
    }
    for (double& v : report.mse_stderr) v = std::sqrt(v / (n - 1.0) / n);
  }

  report.envelope = error_envelope(params, opts.k_max);
  const auto& env = report.envelope.envelope;
  const double m2 = params.grad_bound * params.grad_bound;

  for (std::size_t k = 0; k < n_k; ++k) {
    const double mse = report.empirical_mse[k];
    if (env[k] > 0.0) report.worst_ratio = std::max(report.worst_ratio, mse / env[k]);
    if (mse > env[k] * (1.0 + opts.slack) + 1e-15) {
      report.dominance_ok = false;
      if (!report.first_dominance_violation) report.first_dominance_violation = k;
    }
    if (k + 1 < n_k) {
      const double ck = contraction(k, params);
      const double eta = params.eta(k);
      const double rhs = ck * mse + eta * eta * m2;
      const double mc_slack =
          opts.stderr_multiple * (report.mse_stderr[k + 1] + ck * report.mse_stderr[k]);
      if (report.empirical_mse[k + 1] > rhs * (1.0 + 1e-12) + mc_slack + 1e-15) {
        report.recursion_ok = false;
        if (!report.first_recursion_violation) report.first_recursion_violation = k;
      }
    }
  }

  const auto peak = std::max_element(env.begin(), env.end());
  const auto peak_k = static_cast<std::size_t>(peak - env.begin());
  report.tail_decreasing = peak_k < opts.k_max;
  for (std::size_t k = peak_k + 1; k < n_k && report.tail_decreasing; ++k) {
    if (env[k] > env[k - 1]) report.tail_decreasing = false;
  }
  return report;
}

EnvelopeReport verify_envelope(const PreparedExperiment& prepared, unsigned threads) {
  const ExperimentConfig& cfg = prepared.config;
  if (prepared.schedule.kind() != StepSchedule::Kind::kDiminishingSqrt) {
    throw ConfigError("verify-bounds: the envelope needs schedule.kind = diminishing_sqrt");
  }
  EnvelopeCheckOptions opts;
  opts.seeds = cfg.verify.seeds;
  opts.k_max = cfg.verify.k_max;
  opts.slack = cfg.verify.slack;
  opts.channel_seed = cfg.seeds.channel;
  opts.threads = threads;
  return verify_envelope(prepared.problem.losses, cfg.constraint, prepared.schedule.scale(),
                         cfg.channel, prepared.theta0, opts);
}

void write_bound_report_csv(const std::filesystem::path& path, const EnvelopeReport& report) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file " + path.string());
  out << "k,empirical_mse,envelope,product_term,series_term\n";
  for (std::size_t k = 0; k < report.empirical_mse.size(); ++k) {
    out << k << ',' << csv::format_double(report.empirical_mse[k]) << ','
        << csv::format_double(report.envelope.envelope[k]) << ','
        << csv::format_double(report.envelope.product_terms[k]) << ','
        << csv::format_double(report.envelope.series_terms[k]) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace ota
