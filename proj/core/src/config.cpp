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

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ota/errors.hpp"
#include "ota/experiment.hpp"

namespace ota {
namespace {

using json = nlohmann::json;

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  require_object(j, where);
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

const json& require(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(where + ": missing required key '" + key + "'");
  return *it;
}

double as_double(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + ": must be finite");
  return d;
}

std::uint64_t as_uint(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) {
    throw ConfigError(where + ": expected a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + ": expected a string");
  return v.get<std::string>();
}

ParamVec as_vec(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ConfigError(where + ": expected a nonempty array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_double(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return ParamVec(std::move(out));
}

ConstraintSet parse_constraint(const json& j, std::size_t m) {
  const std::string where = "constraint";
  check_keys(j, where, {"ball_radius", "box"});
  if (j.contains("ball_radius") == j.contains("box")) {
    throw ConfigError(where + ": give exactly one of 'ball_radius' or 'box'");
  }
  try {
    if (j.contains("ball_radius")) {
      return ConstraintSet::ball(as_double(j["ball_radius"], "constraint.ball_radius"));
    }
    const json& b = j["box"];
    check_keys(b, "constraint.box", {"lower", "upper"});
    ParamVec lo = as_vec(require(b, "lower", "constraint.box"), "constraint.box.lower");
    ParamVec hi = as_vec(require(b, "upper", "constraint.box"), "constraint.box.upper");
    if (lo.dim() != m || hi.dim() != m) {
      throw ConfigError("constraint.box: bounds must have dimension m = " + std::to_string(m));
    }
    return ConstraintSet::box(std::move(lo), std::move(hi));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("constraint: ") + e.what());
  }
}

CoefficientDistribution parse_channel(const json& j) {
  check_keys(j, "channel", {"dist", "params"});
  const std::string dist = as_string(require(j, "dist", "channel"), "channel.dist");
  const json params = j.contains("params") ? j["params"] : json::object();
  auto param = [&](const char* key, double fallback) {
    return params.contains(key) ? as_double(params[key], std::string("channel.params.") + key)
                                : fallback;
  };
  CoefficientDistribution out;
  if (dist == "uniform") {
    check_keys(params, "channel.params", {"lo", "hi"});
    out = UniformPositive{param("lo", 0.5), param("hi", 1.5)};
  } else if (dist == "rayleigh") {
    check_keys(params, "channel.params", {"scale"});
    out = Rayleigh{param("scale", 1.0)};
  } else if (dist == "lognormal") {
    check_keys(params, "channel.params", {"mu_log", "sigma_log"});
    out = LogNormal{param("mu_log", 0.0), param("sigma_log", 0.5)};
  } else {
    throw ConfigError("channel.dist: expected uniform, rayleigh or lognormal, got '" + dist + "'");
  }
  ChannelModel probe(out, 0);  // validates parameters
  return out;
}

}  // namespace

std::string protocol_name(Protocol p) { return p == Protocol::kFedCota ? "fedcota" : "fedavg"; }

Protocol parse_protocol(std::string_view name) {
  if (name == "fedcota") return Protocol::kFedCota;
  if (name == "fedavg") return Protocol::kFedAvg;
  throw ConfigError("protocol: expected fedcota or fedavg, got '" + std::string(name) + "'");
}

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, "config",
             {"protocol", "N", "m", "samples_per_agent", "loss", "lambda", "constraint",
              "schedule", "channel", "rounds", "seeds", "output", "data", "quadratic", "init",
              "centralized", "verify"});

  ExperimentConfig c;
  c.protocol = parse_protocol(as_string(require(root, "protocol", "config"), "protocol"));
  c.n_agents = as_uint(require(root, "N", "config"), "N");
  c.dim = as_uint(require(root, "m", "config"), "m");
  if (c.n_agents < 1) throw ConfigError("N: must be >= 1");
  if (c.dim < 1) throw ConfigError("m: must be >= 1");
  if (root.contains("samples_per_agent")) {
    c.samples_per_agent = as_uint(root["samples_per_agent"], "samples_per_agent");
    if (c.samples_per_agent < 1) throw ConfigError("samples_per_agent: must be >= 1");
  }

  const std::string loss = as_string(require(root, "loss", "config"), "loss");
  if (loss == "logistic") {
    c.loss = LossKind::kLogistic;
  } else if (loss == "quadratic") {
    c.loss = LossKind::kQuadratic;
  } else {
    throw ConfigError("loss: expected logistic or quadratic, got '" + loss + "'");
  }
  if (root.contains("lambda")) {
    c.lambda = as_double(root["lambda"], "lambda");
    if (!(c.lambda >= 0.0 && c.lambda <= 1.0)) throw ConfigError("lambda: must lie in [0, 1]");
  }

  c.constraint = parse_constraint(require(root, "constraint", "config"), c.dim);

  if (root.contains("schedule")) {
    const json& s = root["schedule"];
    check_keys(s, "schedule", {"kind", "eta_c"});
    if (s.contains("kind")) {
      const std::string kind = as_string(s["kind"], "schedule.kind");
      if (kind == "diminishing_sqrt") {
        c.schedule_kind = StepSchedule::Kind::kDiminishingSqrt;
      } else if (kind == "constant") {
        c.schedule_kind = StepSchedule::Kind::kConstant;
      } else {
        throw ConfigError("schedule.kind: expected diminishing_sqrt or constant");
      }
    }
    if (s.contains("eta_c")) {
      c.eta_c = as_double(s["eta_c"], "schedule.eta_c");
      if (!(*c.eta_c > 0.0)) throw ConfigError("schedule.eta_c: must be positive");
    }
  }

  c.channel = parse_channel(require(root, "channel", "config"));
  c.rounds = as_uint(require(root, "rounds", "config"), "rounds");

  const json& seeds = require(root, "seeds", "config");
  check_keys(seeds, "seeds", {"data", "init", "channel"});
  c.seeds.data = as_uint(require(seeds, "data", "seeds"), "seeds.data");
  c.seeds.init = as_uint(require(seeds, "init", "seeds"), "seeds.init");
  c.seeds.channel = as_uint(require(seeds, "channel", "seeds"), "seeds.channel");

  if (root.contains("output")) c.output = as_string(root["output"], "output");

  if (root.contains("data")) {
    const json& d = root["data"];
    check_keys(d, "data", {"path", "centers", "sigma"});
    if (d.contains("path")) c.data_path = as_string(d["path"], "data.path");
    if (d.contains("centers")) {
      const json& cs = d["centers"];
      if (!cs.is_array() || cs.size() != 2) {
        throw ConfigError("data.centers: expected an array of two feature vectors");
      }
      c.blob_centers = std::array<ParamVec, 2>{as_vec(cs[0], "data.centers[0]"),
                                               as_vec(cs[1], "data.centers[1]")};
    }
    if (d.contains("sigma")) c.blob_sigma = as_double(d["sigma"], "data.sigma");
  }

  if (root.contains("quadratic")) {
    const json& q = root["quadratic"];
    check_keys(q, "quadratic", {"targets", "spread"});
    if (q.contains("targets")) {
      const json& ts = q["targets"];
      if (!ts.is_array()) throw ConfigError("quadratic.targets: expected an array");
      std::vector<ParamVec> targets;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        targets.push_back(as_vec(ts[i], "quadratic.targets[" + std::to_string(i) + "]"));
        if (targets.back().dim() != c.dim) {
          throw ConfigError("quadratic.targets: every target must have dimension m");
        }
      }
      if (targets.size() != c.n_agents) {
        throw ConfigError("quadratic.targets: need exactly N targets");
      }
      c.quadratic_targets = std::move(targets);
    }
    if (q.contains("spread")) c.target_spread = as_double(q["spread"], "quadratic.spread");
  }

  if (root.contains("init")) {
    const json& i = root["init"];
    check_keys(i, "init", {"theta0"});
    if (i.contains("theta0")) {
      c.theta0 = as_vec(i["theta0"], "init.theta0");
      if (c.theta0->dim() != c.dim) throw ConfigError("init.theta0: must have dimension m");
    }
  }

  if (root.contains("centralized")) {
    const json& f = root["centralized"];
    check_keys(f, "centralized", {"max_iters", "grad_tol"});
    if (f.contains("max_iters")) c.centralized.max_iters = as_uint(f["max_iters"], "centralized.max_iters");
    if (f.contains("grad_tol")) c.centralized.grad_tol = as_double(f["grad_tol"], "centralized.grad_tol");
    if (c.centralized.max_iters < 1 || !(c.centralized.grad_tol > 0.0)) {
      throw ConfigError("centralized: need max_iters >= 1 and grad_tol > 0");
    }
  }

  if (root.contains("verify")) {
    const json& v = root["verify"];
    check_keys(v, "verify", {"seeds", "k_max", "slack"});
    if (v.contains("seeds")) c.verify.seeds = as_uint(v["seeds"], "verify.seeds");
    if (v.contains("k_max")) c.verify.k_max = as_uint(v["k_max"], "verify.k_max");
    if (v.contains("slack")) c.verify.slack = as_double(v["slack"], "verify.slack");
    if (c.verify.seeds < 1 || c.verify.k_max < 1 || !(c.verify.slack >= 0.0)) {
      throw ConfigError("verify: need seeds >= 1, k_max >= 1, slack >= 0");
    }
  }

  if (c.loss == LossKind::kLogistic && c.dim < 2) {
    throw ConfigError("m: logistic experiments need m >= 2 (features plus bias)");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig c = parse_config(buf.str());
  if (c.data_path && c.data_path->is_relative()) {
    c.data_path = path.parent_path() / *c.data_path;
  }
  return c;
}

}  // namespace ota
