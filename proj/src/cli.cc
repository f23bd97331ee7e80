//
// Copyright 2026 The dpdepth Authors
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
//

#include "dpdepth/cli.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dpdepth/depth.h"
#include "dpdepth/harness.h"
#include "dpdepth/theory.h"
#include "json.hpp"

namespace dpdepth::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kDisclaimer = "# up to universal constants";

struct Globals {
  std::uint64_t seed = 1;
  std::string output;
  std::string format = "text";
};

// What a command produced, in every output encoding.
struct Report {
  Json config = Json::object();
  Json result = Json::object();
  std::string text;
  std::string csv;
};

Json Num(double x) {
  if (!std::isfinite(x)) return Json();
  return Json::parse(FormatReal(x));
}

Json VecJson(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) a.push_back(Num(v[j]));
  return a;
}

std::string VecText(const Vector& v) {
  std::string s;
  for (Eigen::Index j = 0; j < v.size(); ++j) s += (j ? "," : "") + FormatReal(v[j]);
  return s;
}

std::string CsvValue(const Json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

// One header line and one row; numeric arrays expand to name_1..name_k.
std::string CsvFromObject(const Json& obj) {
  std::string head, row;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (it->is_array()) {
      for (std::size_t j = 0; j < it->size(); ++j) {
        head += (head.empty() ? "" : ",") + it.key() + "_" + std::to_string(j + 1);
        row += (row.empty() ? "" : ",") + CsvValue((*it)[j]);
      }
    } else if (!it->is_object()) {
      head += (head.empty() ? "" : ",") + it.key();
      row += (row.empty() ? "" : ",") + CsvValue(*it);
    }
  }
  return head + "\n" + row + "\n";
}

std::string CsvFromArray(const Json& arr) {
  if (arr.empty()) return "";
  std::string out;
  bool first = true;
  for (const auto& obj : arr) {
    const std::string block = CsvFromObject(obj);
    const auto nl = block.find('\n');
    if (first) out += block.substr(0, nl + 1);
    out += block.substr(nl + 1);
    first = false;
  }
  return out;
}

DataFormat ResolveFormat(const std::string& path, const std::string& flag) {
  if (flag == "csv") return DataFormat::kCsv;
  if (flag == "jsonl") return DataFormat::kJsonl;
  if (!flag.empty()) throw ConfigError("unknown data format '" + flag + "'");
  const bool jsonl = path.size() >= 6 && path.substr(path.size() - 6) == ".jsonl";
  return jsonl ? DataFormat::kJsonl : DataFormat::kCsv;
}

struct DataFlags {
  std::string path;
  std::string format;
  bool header = false;

  void Add(CLI::App* cmd) {
    cmd->add_option("--data", path, "data file (CSV or JSONL)")->required();
    cmd->add_option("--data-format", format, "csv or jsonl (default: by extension)");
    cmd->add_flag("--header", header, "skip the first CSV line");
  }
  Dataset Load() const { return LoadDataset(path, ResolveFormat(path, format), header); }
  void Echo(Json& cfg) const {
    cfg["data"] = path;
    cfg["header"] = header;
  }
};

std::optional<DirectionSet> MaybeDirections(DepthKind kind, std::size_t d,
                                            std::size_t count, RngStream& rng) {
  if (!kind.UsesDirections() || d == 1) return std::nullopt;
  return SampleDirections(d, count, rng);
}

// Parses a term of the scale grammar starting at `pos`.
double ParseScale(const std::string& s, std::size_t& pos, double d) {
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  skip();
  if (s.compare(pos, 5, "sqrt(") == 0) {
    pos += 5;
    const double inner = ParseScale(s, pos, d);
    skip();
    if (pos >= s.size() || s[pos] != ')') throw ConfigError("missing ')' in '" + s + "'");
    ++pos;
    if (inner < 0.0) throw ConfigError("sqrt of a negative value in '" + s + "'");
    return std::sqrt(inner);
  }
  double value = 1.0;
  bool any = false;
  if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
    std::size_t used = 0;
    value = std::stod(s.substr(pos), &used);
    pos += used;
    any = true;
    skip();
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      skip();
      if (pos >= s.size() || s[pos] != 'd') throw ConfigError("expected 'd' after '*' in '" + s + "'");
    }
  }
  if (pos < s.size() && s[pos] == 'd') {
    value *= d;
    ++pos;
    any = true;
  }
  if (!any) throw ConfigError("cannot parse scale '" + s + "'");
  return value;
}

void Emit(const Report& r, const Globals& g, std::ostream& out, std::ostream& err) {
  std::string body;
  if (g.format == "json") {
    Json doc;
    doc["config"] = r.config;
    doc["result"] = r.result;
    body = doc.dump(2) + "\n";
  } else {
    err << "# config: " << r.config.dump() << "\n";
    body = g.format == "csv" ? r.csv : r.text;
  }
  if (g.output.empty()) {
    out << body;
    return;
  }
  std::ofstream file(g.output, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + g.output + "'");
  file << body;
  if (!file) throw std::runtime_error("write to '" + g.output + "' failed");
}

}  // namespace

double EvalScaleExpr(const std::string& text, double d) {
  std::size_t pos = 0;
  double v;
  try {
    v = ParseScale(text, pos, d);
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError("cannot parse scale '" + text + "'");
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) throw ConfigError("trailing characters in scale '" + text + "'");
  return v;
}

PriorSpec ParsePrior(const std::string& text, std::size_t d) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos) {
    throw ConfigError("prior must look like gauss:<center>:<sigma> or cube:<center>:<side>");
  }
  const std::string family = text.substr(0, a);
  const std::string center_text = text.substr(a + 1, b - a - 1);
  const double scale = EvalScaleExpr(text.substr(b + 1), static_cast<double>(d));
  Vector center;
  if (center_text == "0") {
    center = Vector::Zero(static_cast<Eigen::Index>(d));
  } else {
    try {
      center = ParseVector(center_text);
    } catch (const std::exception&) {
      throw ConfigError("cannot parse prior center '" + center_text + "'");
    }
    if (center.size() != static_cast<Eigen::Index>(d)) {
      throw ConfigError("prior center has dimension " + std::to_string(center.size()) +
                        ", expected " + std::to_string(d));
    }
  }
  if (family == "gauss") return PriorSpec::Gaussian(center, scale);
  if (family == "cube") return PriorSpec::UniformCube(center, scale);
  throw ConfigError("unknown prior family '" + family + "' (expected gauss or cube)");
}

int Dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Private multivariate medians from depth functions"};
  app.name("dpdepth");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "random seed (all randomness flows from it)");
  app.add_option("--output", g.output, "write the result here instead of stdout");
  app.add_option("--format", g.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  std::function<Report()> run;

  // depth
  auto* depth_cmd = app.add_subcommand("depth", "depth of a point");
  DataFlags depth_data;
  depth_data.Add(depth_cmd);
  std::string depth_kind, depth_point;
  std::size_t depth_dirs = 1000, depth_trials = 2000;
  double depth_s = 10.0;
  depth_cmd->add_option("--kind", depth_kind, "hd, smd, sd, msd, idd, irw or sidd")->required();
  depth_cmd->add_option("--point", depth_point, "comma-separated point")->required();
  depth_cmd->add_option("--dirs", depth_dirs, "number of random directions");
  depth_cmd->add_option("--s", depth_s, "sidd smoothing parameter");
  depth_cmd->add_option("--trials", depth_trials, "simplicial depth Monte Carlo trials");
  depth_cmd->callback([&] {
    run = [&] {
      const Dataset data = depth_data.Load();
      const DepthKind kind = DepthKind::Parse(depth_kind, depth_s);
      const Vector x = ParseVector(depth_point);
      RngStream rng(g.seed, 0);
      MechanismConfig mc;
      mc.depth = kind;
      mc.direction_count = depth_dirs;
      mc.simplicial_trials = depth_trials;
      const double v = MakeEvaluator(data, mc, rng).Value(x);
      Report r;
      depth_data.Echo(r.config);
      r.config["kind"] = kind.Name();
      if (kind.type == DepthType::kSmoothedIntegratedDual) r.config["s"] = depth_s;
      r.config["point"] = VecJson(x);
      r.config["dirs"] = depth_dirs;
      r.config["seed"] = g.seed;
      r.result["depth"] = Num(v);
      r.text = FormatReal(v) + "\n";
      return r;
    };
  });

  // median
  auto* median_cmd = app.add_subcommand("median", "non-private smoothed integrated dual median");
  DataFlags median_data;
  median_data.Add(median_cmd);
  std::size_t median_dirs = 100, median_steps = 200;
  double median_s = 10.0, median_lr = 1.0;
  median_cmd->add_option("--dirs", median_dirs, "number of random directions");
  median_cmd->add_option("--s", median_s, "smoothing parameter");
  median_cmd->add_option("--steps", median_steps, "gradient ascent steps");
  median_cmd->add_option("--lr", median_lr, "initial learning rate");
  median_cmd->callback([&] {
    run = [&] {
      const Dataset data = median_data.Load();
      RngStream rng(g.seed, 0);
      const DirectionSet dirs = data.d() == 1 ? DirectionSet::Line()
                                              : SampleDirections(data.d(), median_dirs, rng);
      OptimizerOptions opt;
      opt.steps = median_steps;
      opt.learning_rate = median_lr;
      const Vector m = NonprivateMedian(data, dirs, median_s, opt);
      Report r;
      median_data.Echo(r.config);
      r.config["s"] = median_s;
      r.config["dirs"] = median_dirs;
      r.config["steps"] = median_steps;
      r.config["seed"] = g.seed;
      r.result["median"] = VecJson(m);
      r.text = VecText(m) + "\n";
      return r;
    };
  });

  // private-median
  auto* pm_cmd = app.add_subcommand("private-median", "sample the exponential mechanism");
  DataFlags pm_data;
  pm_data.Add(pm_cmd);
  std::string pm_depth = "sidd", pm_prior = "gauss:0:sqrt(25d)", pm_sampler = "mala";
  double pm_s = 10.0, pm_eps = 1.0;
  std::optional<double> pm_step;
  std::size_t pm_dirs = 1000, pm_burn = 2000, pm_trials = 2000;
  pm_cmd->add_option("--depth", pm_depth, "depth kind");
  pm_cmd->add_option("--s", pm_s, "sidd smoothing parameter");
  pm_cmd->add_option("--epsilon", pm_eps, "privacy budget")->required();
  pm_cmd->add_option("--prior", pm_prior, "gauss:<center>:<sigma> or cube:<center>:<side>");
  pm_cmd->add_option("--sampler", pm_sampler, "mala or rwm");
  pm_cmd->add_option("--dirs", pm_dirs, "number of random directions");
  pm_cmd->add_option("--burn-in", pm_burn, "burn-in steps");
  pm_cmd->add_option("--step-size", pm_step, "proposal scale (default: tuned)");
  pm_cmd->add_option("--trials", pm_trials, "simplicial depth tuples");
  pm_cmd->callback([&] {
    run = [&] {
      const Dataset data = pm_data.Load();
      MechanismConfig mc;
      mc.epsilon = pm_eps;
      mc.depth = DepthKind::Parse(pm_depth, pm_s);
      mc.prior = ParsePrior(pm_prior, data.d());
      mc.sampler = ParseSampler(pm_sampler);
      mc.chain.burn_in = pm_burn;
      mc.chain.step_size = pm_step;
      mc.direction_count = pm_dirs;
      mc.simplicial_trials = pm_trials;
      RngStream rng(g.seed, 0);
      const MechanismResult res = PrivateMedian(data, mc, rng);
      Report r;
      pm_data.Echo(r.config);
      r.config["depth"] = mc.depth.Name();
      if (mc.depth.type == DepthType::kSmoothedIntegratedDual) r.config["s"] = pm_s;
      r.config["epsilon"] = Num(pm_eps);
      r.config["prior"] = mc.prior.Describe();
      r.config["sampler"] = res.sampler;
      r.config["dirs"] = pm_dirs;
      r.config["burn_in"] = pm_burn;
      r.config["seed"] = g.seed;
      Json diag;
      diag["beta"] = Num(res.beta);
      diag["acceptance_rate"] = Num(res.acceptance_rate);
      diag["chain_length"] = res.chain_length;
      diag["step_size"] = Num(res.step_size);
      diag["sampler"] = res.sampler;
      diag["seed"] = res.seed;
      r.result["theta"] = VecJson(res.theta);
      for (auto it = diag.begin(); it != diag.end(); ++it) r.result[it.key()] = *it;
      r.text = VecText(res.theta) + "\n" + diag.dump() + "\n";
      return r;
    };
  });

  // private-depth
  auto* pd_cmd = app.add_subcommand("private-depth", "depth value plus Laplace noise");
  DataFlags pd_data;
  pd_data.Add(pd_cmd);
  std::string pd_kind, pd_point;
  double pd_eps = 1.0, pd_s = 10.0;
  std::size_t pd_dirs = 1000;
  pd_cmd->add_option("--kind", pd_kind, "depth kind")->required();
  pd_cmd->add_option("--point", pd_point, "comma-separated point")->required();
  pd_cmd->add_option("--epsilon", pd_eps, "privacy budget")->required();
  pd_cmd->add_option("--s", pd_s, "sidd smoothing parameter");
  pd_cmd->add_option("--dirs", pd_dirs, "number of random directions");
  pd_cmd->callback([&] {
    run = [&] {
      const Dataset data = pd_data.Load();
      const DepthKind kind = DepthKind::Parse(pd_kind, pd_s);
      const Vector x = ParseVector(pd_point);
      RngStream dir_rng(g.seed, 1);
      RngStream rng(g.seed, 0);
      const double v = PrivateDepthValue(x, data, kind, pd_eps, rng,
                                         MaybeDirections(kind, data.d(), pd_dirs, dir_rng));
      Report r;
      pd_data.Echo(r.config);
      r.config["kind"] = kind.Name();
      r.config["point"] = VecJson(x);
      r.config["epsilon"] = Num(pd_eps);
      r.config["dirs"] = pd_dirs;
      r.config["seed"] = g.seed;
      r.result["private_depth"] = Num(v);
      r.result["noise_scale"] = Num(GetDepthConstants(kind, data.d()).privacy_k /
                                    (static_cast<double>(data.n()) * pd_eps));
      r.text = FormatReal(v) + "\n";
      return r;
    };
  });

  // alpha
  auto* alpha_cmd = app.add_subcommand("alpha", "discrepancy function alpha(t)");
  std::string alpha_model = "cauchy", alpha_kind = "hd", alpha_values;
  double alpha_t = 1.0;
  std::size_t alpha_d = 2, alpha_dirs = 10000, alpha_vgrid = 256;
  bool alpha_closed = false;
  alpha_cmd->add_option("--model", alpha_model, "gaussian or cauchy");
  alpha_cmd->add_option("--kind", alpha_kind, "hd, irw or idd");
  alpha_cmd->add_option("--t", alpha_t, "radius");
  alpha_cmd->add_option("--d", alpha_d, "dimension");
  alpha_cmd->add_option("--values", alpha_values,
                        "covariance eigenvalues (gaussian) or scales (cauchy); default all 1");
  alpha_cmd->add_option("--dirs", alpha_dirs, "sphere directions");
  alpha_cmd->add_option("--vgrid", alpha_vgrid, "random candidates for the extremal v");
  alpha_cmd->add_flag("--closed-form", alpha_closed, "cauchy hd closed form");
  alpha_cmd->callback([&] {
    run = [&] {
      if (alpha_d == 0) throw ConfigError("d must be positive");
      const DepthType kind = DepthKind::Parse(alpha_kind).type;
      const Vector values = alpha_values.empty()
                                ? Vector::Ones(static_cast<Eigen::Index>(alpha_d))
                                : ParseVector(alpha_values);
      if (values.size() != static_cast<Eigen::Index>(alpha_d)) {
        throw ConfigError("--values needs d entries");
      }
      RngStream dir_rng(g.seed, 1), v_rng(g.seed, 2);
      double a;
      if (alpha_model == "gaussian") {
        const DirectionSet dirs = SampleDirections(alpha_d, alpha_dirs, dir_rng);
        a = AlphaGaussian(kind, alpha_t, GaussianModel(values), dirs);
      } else if (alpha_model == "cauchy") {
        if (alpha_closed) {
          if (kind != DepthType::kHalfspace) throw ConfigError("closed form exists for hd only");
          a = AlphaCauchyHdClosedForm(alpha_t, alpha_d, values.mean());
        } else {
          const DirectionSet dirs = SampleDirections(alpha_d, alpha_dirs, dir_rng);
          const DirectionSet vgrid = MakeVGrid(alpha_d, alpha_vgrid, v_rng);
          a = AlphaDVersion(kind, alpha_t, DVersionModel::CauchyMarginals(values), dirs, vgrid);
        }
      } else {
        throw ConfigError("unknown model '" + alpha_model + "' (expected gaussian or cauchy)");
      }
      Report r;
      r.config["model"] = alpha_model;
      r.config["kind"] = alpha_kind;
      r.config["t"] = Num(alpha_t);
      r.config["d"] = alpha_d;
      r.config["values"] = VecJson(values);
      r.config["dirs"] = alpha_dirs;
      r.config["vgrid"] = alpha_vgrid;
      r.config["closed_form"] = alpha_closed;
      r.config["seed"] = g.seed;
      r.result["alpha"] = Num(a);
      r.text = FormatReal(a) + "\n";
      return r;
    };
  });

  // Shared bound inputs.
  BoundInputs bi;
  auto add_bound_flags = [&bi](CLI::App* cmd) {
    cmd->add_option("--d", bi.d, "dimension");
    cmd->add_option("--epsilon", bi.epsilon, "privacy budget");
    cmd->add_option("--K", bi.K, "regularity constant");
    cmd->add_option("--vc", bi.vc, "VC-dimension bound");
    cmd->add_option("--L", bi.L, "Lipschitz constant of the population depth");
    cmd->add_option("--c1", bi.c1, "universal constant c1");
    cmd->add_option("--c2", bi.c2, "universal constant c2");
    cmd->add_option("--C", bi.C, "universal constant C");
    cmd->add_option("--c", bi.c, "universal constant c");
  };
  auto bound_config = [&bi](Json& cfg) {
    cfg["d"] = Num(bi.d);
    cfg["epsilon"] = Num(bi.epsilon);
    cfg["K"] = Num(bi.K);
    cfg["vc"] = Num(bi.vc);
    cfg["L"] = Num(bi.L);
    cfg["c1"] = Num(bi.c1);
    cfg["c2"] = Num(bi.c2);
    cfg["C"] = Num(bi.C);
    cfg["c"] = Num(bi.c);
  };

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "concentration bound on P(error >= t)");
  double bound_alpha = 0.1, bound_rate = 0.0, bound_psi = 0.0;
  add_bound_flags(bound_cmd);
  bound_cmd->add_option("--n", bi.n, "sample size");
  bound_cmd->add_option("--alpha", bound_alpha, "alpha(t)")->required();
  bound_cmd->add_option("--rate", bound_rate, "prior rate function I(t)");
  bound_cmd->add_option("--psi", bound_psi, "calibration psi(n eps / 2K)");
  bound_cmd->callback([&] {
    run = [&] {
      const double p = ConcentrationBound(bi, bound_alpha, bound_rate, bound_psi);
      Report r;
      r.config["n"] = Num(bi.n);
      bound_config(r.config);
      r.config["alpha"] = Num(bound_alpha);
      r.config["rate"] = Num(bound_rate);
      r.config["psi"] = Num(bound_psi);
      r.config["seed"] = g.seed;
      r.result["bound"] = Num(p);
      r.result["note"] = "up to universal constants";
      r.text = FormatReal(p) + "\n" + kDisclaimer + "\n";
      return r;
    };
  });

  // sample-complexity
  auto* sc_cmd = app.add_subcommand("sample-complexity", "sufficient sample size");
  std::string sc_prior = "gauss";
  double sc_alpha = 0.1;
  PriorGeometry geo;
  add_bound_flags(sc_cmd);
  sc_cmd->add_option("--prior", sc_prior, "gauss or cube");
  sc_cmd->add_option("--alpha", sc_alpha, "alpha(t)")->required();
  sc_cmd->add_option("--gamma", bi.gamma, "failure probability");
  sc_cmd->add_option("--sigma", geo.sigma, "Gaussian prior scale");
  sc_cmd->add_option("--dist", geo.center_distance, "distance from the median set to the prior center");
  sc_cmd->add_option("--side", geo.side, "cube side");
  sc_cmd->add_option("--face", geo.face_distance, "distance from the median set to the nearest cube face");
  sc_cmd->callback([&] {
    run = [&] {
      PriorFamily fam;
      if (sc_prior == "gauss") {
        fam = PriorFamily::kGaussian;
      } else if (sc_prior == "cube") {
        fam = PriorFamily::kCube;
      } else {
        throw ConfigError("unknown prior '" + sc_prior + "' (expected gauss or cube)");
      }
      const SampleComplexity sc = ComputeSampleComplexity(fam, bi, sc_alpha, geo);
      Report r;
      r.config["prior"] = sc_prior;
      bound_config(r.config);
      r.config["alpha"] = Num(sc_alpha);
      r.config["gamma"] = Num(bi.gamma);
      if (fam == PriorFamily::kGaussian) {
        r.config["sigma"] = Num(geo.sigma);
        r.config["dist"] = Num(geo.center_distance);
      } else {
        r.config["side"] = Num(geo.side);
        r.config["face"] = Num(geo.face_distance);
      }
      r.config["seed"] = g.seed;
      r.result["n"] = static_cast<long long>(sc.n);
      r.result["statistical_term"] = Num(sc.statistical);
      r.result["privacy_term"] = Num(sc.privacy);
      r.result["note"] = "up to universal constants";
      r.text = std::to_string(static_cast<long long>(sc.n)) + "\n" + kDisclaimer + "\n";
      return r;
    };
  });

  // directions-budget
  auto* db_cmd = app.add_subcommand("directions-budget", "directions for a target sup-error");
  double db_t = 0.1, db_gamma = 0.05, db_c1 = 1.0;
  std::size_t db_d = 2, db_n = 100;
  db_cmd->add_option("--t", db_t, "target sup-error")->required();
  db_cmd->add_option("--gamma", db_gamma, "failure probability");
  db_cmd->add_option("--d", db_d, "dimension");
  db_cmd->add_option("--n", db_n, "sample size");
  db_cmd->add_option("--c1", db_c1, "universal constant c1");
  db_cmd->callback([&] {
    run = [&] {
      const double m = DirectionBudget(db_t, db_gamma, db_d, db_n, db_c1);
      Report r;
      r.config["t"] = Num(db_t);
      r.config["gamma"] = Num(db_gamma);
      r.config["d"] = db_d;
      r.config["n"] = db_n;
      r.config["c1"] = Num(db_c1);
      r.config["seed"] = g.seed;
      r.result["M"] = static_cast<long long>(m);
      r.result["note"] = "up to universal constants";
      r.text = std::to_string(static_cast<long long>(m)) + "\n" + kDisclaimer + "\n";
      return r;
    };
  });

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "location-estimation simulation");
  std::string exp_config;
  exp_cmd->add_option("--config", exp_config, "key = value configuration file");
  exp_cmd->callback([&] {
    run = [&] {
      ExperimentConfig cfg =
          exp_config.empty() ? ExperimentConfig{} : LoadExperimentConfig(exp_config);
      if (app.get_option("--seed")->count() > 0) cfg.seed = g.seed;
      const ResultTable table = RunExperiment(cfg);
      for (const auto& diag : table.diagnostics) err << "# failed: " << diag << "\n";
      Report r;
      std::istringstream lines(FormatExperimentConfig(cfg));
      std::string line;
      while (std::getline(lines, line)) {
        const auto eq = line.find(" = ");
        r.config[line.substr(0, eq)] = line.substr(eq + 3);
      }
      r.result = Json::parse(FormatResults(table, ResultFormat::kJson));
      r.csv = FormatResults(table, ResultFormat::kCsv);
      r.text = r.csv;
      return r;
    };
  });

  // figure1
  auto* fig_cmd = app.add_subcommand("figure1", "log(1/alpha(t)) under Cauchy marginals");
  std::vector<std::size_t> fig_dims = {1, 2, 5, 10, 20, 50, 100};
  double fig_t = 1.0;
  std::size_t fig_dirs = 10000, fig_vgrid = 256;
  fig_cmd->add_option("--dims", fig_dims, "dimensions")->delimiter(',');
  fig_cmd->add_option("--t", fig_t, "radius");
  fig_cmd->add_option("--dirs", fig_dirs, "sphere directions");
  fig_cmd->add_option("--vgrid", fig_vgrid, "random candidates for the extremal v");
  fig_cmd->callback([&] {
    run = [&] {
      const auto rows = Figure1Data(fig_dims, fig_t, fig_dirs, fig_vgrid, g.seed);
      Report r;
      r.config["dims"] = fig_dims;
      r.config["t"] = Num(fig_t);
      r.config["dirs"] = fig_dirs;
      r.config["vgrid"] = fig_vgrid;
      r.config["seed"] = g.seed;
      r.result = Json::array();
      for (const auto& row : rows) {
        Json o;
        o["d"] = row.d;
        o["depth"] = row.depth;
        o["alpha"] = Num(row.alpha);
        o["log_inv_alpha"] = Num(row.log_inv_alpha);
        r.result.push_back(o);
      }
      r.csv = CsvFromArray(r.result);
      r.text = r.csv;
      return r;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    Report r = run();
    if (r.csv.empty()) r.csv = CsvFromObject(r.result);
    Emit(r, g, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace dpdepth::cli
