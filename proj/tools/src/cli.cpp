#include "maxent_cli/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "maxent/error.hpp"
#include "maxent/estimators.hpp"
#include "maxent/generators.hpp"
#include "maxent/oracles.hpp"
#include "maxent/problem_io.hpp"
#include "maxent/solver.hpp"
#include "maxent_cli/report.hpp"

namespace maxent::cli {

namespace {

using Json = nlohmann::ordered_json;

PolytopeSpec load(const std::string& path, std::istream& in) {
  if (path == "-") return read_problem(in);
  std::ifstream file(path);
  if (!file) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return read_problem(file);
}

EntropyModel choose_model(const std::string& word, DomainKind domain) {
  if (word == "auto") return default_model(domain);
  if (auto m = parse_model(word)) return *m;
  throw Error(ErrorCode::ParseError, "unknown model '" + word + "'");
}

DomainKind choose_domain(const std::string& word) {
  if (auto d = parse_domain_keyword(word)) return *d;
  throw Error(ErrorCode::ParseError, "unknown domain '" + word + "'");
}

IntVector parse_int_list(std::string_view text) {
  IntVector out;
  while (true) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
      throw Error(ErrorCode::ParseError, "expected a comma-separated integer list, got '" +
                                             std::string(text) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

void put_log(Json& j, double log_value) {
  j["log_value"] = log_value;
  j["log10"] = log_value / std::numbers::ln10;
  j["scientific"] = scientific_from_log(log_value);
}

Json solver_json(const MaxEntSolution& sol) {
  return Json{{"iterations", sol.iterations}, {"residual", sol.residual}};
}

Json exact_json(const PolytopeSpec& spec) {
  Json j;
  if (is_discrete(spec.domain)) {
    const BigInt count = exact_count(spec).value;
    j["value"] = count.str();
    j["scientific"] = scientific_from_integer(count);
    if (count > 0) {
      // ln of a big integer through its leading digits and length
      const std::string digits = count.str();
      const std::size_t keep = std::min<std::size_t>(17, digits.size());
      const double head = std::stod(digits.substr(0, keep));
      j["log_value"] = std::log(head) + static_cast<double>(digits.size() - keep) * std::numbers::ln10;
    } else {
      j["log_value"] = nullptr;
    }
  } else {
    const double vol = exact_volume_ehrhart(spec);
    j["value"] = vol;
    j["scientific"] = scientific_from_log(std::log(vol));
    j["log_value"] = std::log(vol);
  }
  return j;
}

Json mc_json(const MCEstimate& mc) {
  Json j;
  j["hits"] = mc.hits;
  j["samples"] = mc.samples;
  j["std_err_log"] = mc.hits > 0 ? Json(mc.std_err_log) : Json(nullptr);
  j["seed"] = mc.seed;
  j["shards"] = mc.shards;
  if (mc.log_value) {
    put_log(j, *mc.log_value);
  } else {
    j["log_value"] = nullptr;
  }
  return j;
}

// Plain "key: value" lines; nested objects use dotted keys.
void print_human(const Json& j, std::ostream& out, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      print_human(*it, out, key);
    } else if (it->is_string()) {
      out << key << ": " << it->get<std::string>() << '\n';
    } else {
      out << key << ": " << it->dump() << '\n';
    }
  }
}

void emit(const Json& j, bool as_json, std::ostream& out) {
  if (as_json) {
    out << j.dump() << '\n';
  } else {
    print_human(j, out);
  }
}

struct Options {
  std::string file = "-";
  std::string model = "auto";
  bool json = false;
  double epsilon = 0.5;
  double gamma = 1.0;
  std::string yfamily = "builtin";
  bool with_exact = false;
  std::uint64_t mc_samples = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t shards = 1;
  std::size_t nodes = 4096;
  double max_states = 1e8;
  std::string rows, cols, dims, domain = "integer";
  std::vector<std::string> margins;
};

int cmd_solve(const Options& o, std::istream& in, std::ostream& out) {
  const PolytopeSpec spec = load(o.file, in);
  const EntropyModel model = choose_model(o.model, spec.domain);
  const MaxEntSolution sol = solve_max_entropy(spec, model);
  Json j;
  j["name"] = spec.name;
  j["domain"] = domain_keyword(spec.domain);
  j["model"] = to_string(model);
  j["entropy"] = sol.entropy;
  j["z"] = sol.z;
  j["lambda"] = sol.lambda;
  j["solver"] = solver_json(sol);
  emit(j, o.json, out);
  return 0;
}

int cmd_estimate(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const PolytopeSpec spec = load(o.file, in);
  const EntropyModel model = choose_model(o.model, spec.domain);
  const MaxEntSolution sol = solve_max_entropy(spec, model);
  const LogEstimate est =
      model == EntropyModel::Exponential ? gaussian_volume(spec, sol) : gaussian_count(spec, sol);

  std::optional<YFamily> family;
  if (o.yfamily == "builtin" && model != EntropyModel::Exponential) {
    if (auto kind = detect_family(spec)) {
      family = gen_yfamily(*kind);
    } else {
      err << "note: no built-in Y-family for '" << spec.name << "'; rho and delta omitted\n";
    }
  } else if (o.yfamily != "builtin" && o.yfamily != "none") {
    throw Error(ErrorCode::ParseError, "--yfamily takes builtin or none");
  }
  const ConditionReport rep =
      condition_report(spec, sol, family ? &*family : nullptr, o.epsilon, o.gamma);

  Json j;
  j["name"] = spec.name;
  j["domain"] = domain_keyword(spec.domain);
  j["model"] = to_string(model);
  put_log(j, est.log_value);
  j["kappa_epsilon"] = rep.epsilon;
  j["delta_bound"] = rep.delta_bound ? Json(*rep.delta_bound) : Json(nullptr);
  j["hypotheses_met"] = rep.hypotheses_met;
  j["solver"] = solver_json(sol);

  Json parts;
  parts["entropy"] = est.entropy_term;
  if (est.half_logdet_AAT) parts["half_logdet_AAT"] = *est.half_logdet_AAT;
  parts["half_logdet_BBT"] = est.half_logdet_BBT;
  parts["dim_term"] = est.dim_term;
  if (est.lattice_term) parts["lattice_term"] = *est.lattice_term;
  j["decomposition"] = parts;
  if (est.lattice_warning) {
    j["lattice_warning"] = true;
    err << "warning: A(Z^n) is a proper sublattice of Z^d; error bounds assume index 1\n";
  }

  Json cond;
  cond["lambda_q"] = rep.lambda_q;
  cond["lambda_required"] = rep.lambda_required;
  cond["theta"] = rep.theta;
  cond["alpha"] = rep.alpha ? Json(*rep.alpha) : Json(nullptr);
  cond["rho"] = rep.rho ? Json(*rep.rho) : Json(nullptr);
  if (rep.delta_exponent) cond["delta_exponent"] = *rep.delta_exponent;
  cond["gamma"] = rep.gamma_constant;
  j["condition"] = cond;

  if (o.with_exact) j["exact"] = exact_json(spec);
  if (o.mc_samples > 0) j["mc"] = mc_json(monte_carlo_count(spec, sol, o.mc_samples, o.seed, o.shards));
  emit(j, o.json, out);
  return 0;
}

int cmd_check(const Options& o, std::istream& in, std::ostream& out) {
  const PolytopeSpec spec = load(o.file, in);
  const ValidationReport rep = validate_spec(spec);
  Json j;
  j["name"] = spec.name;
  j["domain"] = domain_keyword(spec.domain);
  j["rank_ok"] = rep.rank_ok;
  j["lattice_index"] = rep.lattice_index ? Json(rep.lattice_index->str()) : Json(nullptr);
  if (const auto* p = std::get_if<InteriorPoint>(&rep.interior_hint)) {
    j["interior"] = "found";
    j["interior_point"] = p->point;
  } else if (const auto* e = std::get_if<EmptyInterior>(&rep.interior_hint)) {
    j["interior"] = "empty";
    j["certificate"] = e->certificate;
  } else {
    j["interior"] = "unknown";
  }
  emit(j, o.json, out);
  return 0;
}

int cmd_exact(const Options& o, std::istream& in, std::ostream& out) {
  const PolytopeSpec spec = load(o.file, in);
  Json j;
  j["name"] = spec.name;
  j["domain"] = domain_keyword(spec.domain);
  const ExactCountOptions opts{o.max_states};
  if (is_discrete(spec.domain)) {
    const BigInt count = exact_count(spec, opts).value;
    j["exact"] = count.str();
    j["scientific"] = scientific_from_integer(count);
  } else {
    const double vol = exact_volume_ehrhart(spec, opts);
    j["exact"] = vol;
    j["scientific"] = scientific_from_log(std::log(vol));
  }
  if (o.json) {
    emit(j, true, out);
  } else {
    out << (j["exact"].is_string() ? j["exact"].get<std::string>() : j["exact"].dump()) << '\n';
  }
  return 0;
}

int cmd_mc(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const PolytopeSpec spec = load(o.file, in);
  if (o.samples == 0) throw Error(ErrorCode::DimensionMismatch, "--samples must be positive");
  const MaxEntSolution sol = solve_max_entropy(spec, default_model(spec.domain));
  const MCEstimate mc = monte_carlo_count(spec, sol, o.samples, o.seed, o.shards);
  Json j;
  j["name"] = spec.name;
  j["domain"] = domain_keyword(spec.domain);
  if (mc.log_value) {
    put_log(j, *mc.log_value);
  } else {
    j["log_value"] = nullptr;
  }
  j["entropy"] = sol.entropy;
  j["solver"] = solver_json(sol);
  j["mc"] = Json{{"hits", mc.hits},
                 {"samples", mc.samples},
                 {"std_err_log", mc.hits > 0 ? Json(mc.std_err_log) : Json(nullptr)},
                 {"seed", mc.seed},
                 {"shards", mc.shards}};
  emit(j, o.json, out);
  if (mc.hits == 0) err << "note: no sample landed in P; log_value omitted\n";
  return 0;
}

int cmd_fourier(const Options& o, std::istream& in, std::ostream& out) {
  const PolytopeSpec spec = load(o.file, in);
  const MaxEntSolution sol = solve_max_entropy(spec, default_model(spec.domain));
  const double value = char_integral_count(spec, sol, o.nodes);
  Json j;
  j["name"] = spec.name;
  j["domain"] = domain_keyword(spec.domain);
  j["value"] = value;
  if (value > 0) {
    put_log(j, std::log(value));
  } else {
    j["log_value"] = nullptr;
  }
  j["nodes_per_axis"] = o.nodes;
  j["solver"] = solver_json(sol);
  emit(j, o.json, out);
  return 0;
}

int cmd_gen_transport(const Options& o, std::ostream& out) {
  const PolytopeSpec spec =
      gen_transport(parse_int_list(o.rows), parse_int_list(o.cols), choose_domain(o.domain));
  out << write_problem(spec) << '\n';
  return 0;
}

int cmd_gen_multiway(const Options& o, std::ostream& out) {
  const IntVector dims = parse_int_list(o.dims);
  std::vector<IntVector> margins;
  std::vector<std::string> lists;
  for (const auto& m : o.margins) {
    std::stringstream ss(m);
    std::string part;
    while (std::getline(ss, part, ';')) lists.push_back(part);
  }
  if (lists.size() == 1 && lists[0].rfind("uniform:", 0) == 0) {
    const IntVector total = parse_int_list(std::string_view(lists[0]).substr(8));
    if (total.size() != 1) throw Error(ErrorCode::ParseError, "uniform:N takes one integer");
    margins = uniform_margins(dims, total[0]);
  } else {
    for (const auto& l : lists) margins.push_back(parse_int_list(l));
  }
  out << write_problem(gen_multiway(dims, margins, choose_domain(o.domain))) << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Maximum-entropy Gaussian estimates for volumes and lattice-point counts"};
  app.name("maxent");
  app.require_subcommand(1);
  Options o;

  auto file_arg = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Problem file, or - for standard input")->required();
    sub->add_flag("--json", o.json, "Emit one JSON object");
  };

  auto* solve = app.add_subcommand("solve", "Solve the maximum-entropy program");
  file_arg(solve);
  solve->add_option("--model", o.model, "auto|exponential|geometric|bernoulli");

  auto* estimate = app.add_subcommand("estimate", "Gaussian estimate with condition report");
  file_arg(estimate);
  estimate->add_option("--model", o.model, "auto|exponential|geometric|bernoulli");
  estimate->add_option("--epsilon", o.epsilon, "Relative error target in (0, 1/2]");
  estimate->add_option("--gamma", o.gamma, "Absolute constant of the hypotheses");
  estimate->add_option("--yfamily", o.yfamily, "builtin|none");
  estimate->add_flag("--exact", o.with_exact, "Also run the exact oracle");
  estimate->add_option("--mc-samples", o.mc_samples, "Also run Monte Carlo with this many samples");
  estimate->add_option("--seed", o.seed, "Monte Carlo seed");
  estimate->add_option("--shards", o.shards, "Monte Carlo worker threads");

  auto* check = app.add_subcommand("check", "Validate a problem file");
  file_arg(check);

  auto* exact = app.add_subcommand("exact", "Exact count, or exact volume by Ehrhart fitting");
  file_arg(exact);
  exact->add_option("--max-states", o.max_states, "Dynamic-programming state guard");

  auto* mc = app.add_subcommand("mc", "Monte Carlo count from the maximum-entropy distribution");
  file_arg(mc);
  mc->add_option("--samples", o.samples, "Number of samples")->required();
  mc->add_option("--seed", o.seed, "Seed")->required();
  mc->add_option("--shards", o.shards, "Worker threads");

  auto* fourier = app.add_subcommand("fourier", "Fourier-integral count for d <= 2");
  file_arg(fourier);
  fourier->add_option("--nodes", o.nodes, "Quadrature nodes per axis");

  auto* gen = app.add_subcommand("gen", "Generate a problem file");
  gen->require_subcommand(1);
  auto* transport = gen->add_subcommand("transport", "m x n transportation polytope");
  transport->add_option("--rows", o.rows, "Row sums r1,..,rm")->required();
  transport->add_option("--cols", o.cols, "Column sums c1,..,cn")->required();
  transport->add_option("--domain", o.domain, "volume|integer|binary");
  auto* multiway = gen->add_subcommand("multiway", "Multi-index transportation polytope");
  multiway->add_option("--dims", o.dims, "Axis lengths k1,..,kv")->required();
  multiway->add_option("--margins", o.margins,
                       "Per-axis margin lists (repeat, or separate with ';'), or uniform:N")
      ->required();
  multiway->add_option("--domain", o.domain, "volume|integer|binary");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, in, out);
    if (estimate->parsed()) return cmd_estimate(o, in, out, err);
    if (check->parsed()) return cmd_check(o, in, out);
    if (exact->parsed()) return cmd_exact(o, in, out);
    if (mc->parsed()) return cmd_mc(o, in, out, err);
    if (fourier->parsed()) return cmd_fourier(o, in, out);
    if (transport->parsed()) return cmd_gen_transport(o, out);
    if (multiway->parsed()) return cmd_gen_multiway(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_status(e.code());
  }
  return 1;
}

}  // namespace maxent::cli
