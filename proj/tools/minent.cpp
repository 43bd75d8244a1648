// minent: minimum/maximum-entropy couplings of two discrete distributions.
//
// Subcommands: entropy, bounds, minimize, oracle, verify, gen.
// Exit codes: 0 ok / claims verified, 1 claim falsified, 2 usage error,
// 3 size limit exceeded.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "minent/coupling.hpp"
#include "minent/io.hpp"
#include "minent/localopt.hpp"
#include "minent/oracle.hpp"
#include "minent/probvec.hpp"
#include "minent/sampling.hpp"

using json = nlohmann::ordered_json;
using namespace minent;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
  std::string p_arg, q_arg;
  std::string file;
  std::string base_arg = "2";
  double tol = kTolMass;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t count = 100;
  std::size_t n = 3;
  std::string from = "independent";
  std::string trace_path;
  bool renormalize = false;
  std::size_t oracle_limit = kDefaultOracleLimit;
  std::string json_path;
  std::string out_prefix = "instance";
  std::string label;
};

LogBase parse_base(const std::string& s) {
  if (s == "2") return LogBase::Two;
  if (s == "e") return LogBase::Nat;
  throw CLI::ValidationError("--base must be 2 or e");
}

const char* base_tag(LogBase b) { return b == LogBase::Two ? "2" : "e"; }

std::vector<double> parse_comma_vector(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
  return v;
}

ProbVector make_prob(std::vector<double> raw, bool renormalize) {
  if (renormalize) return ProbVector::renormalized(std::move(raw));
  return ProbVector(std::move(raw));
}

std::pair<ProbVector, ProbVector> parse_instance(const Options& opt) {
  std::vector<double> pv, qv;
  if (!opt.file.empty()) {
    std::ifstream f(opt.file);
    if (!f) throw std::runtime_error("cannot open " + opt.file);
    json j = json::parse(f);
    pv = j.at("p").get<std::vector<double>>();
    qv = j.at("q").get<std::vector<double>>();
  } else {
    if (opt.p_arg.empty() || opt.q_arg.empty())
      throw CLI::ValidationError("provide -p and -q, or --file");
    pv = parse_comma_vector(opt.p_arg);
    qv = parse_comma_vector(opt.q_arg);
  }
  if (pv.size() != qv.size())
    throw std::runtime_error("p and q must have the same length");
  return {make_prob(std::move(pv), opt.renormalize),
          make_prob(std::move(qv), opt.renormalize)};
}

json coupling_json(const Coupling& P) {
  json rows = json::array();
  for (std::size_t i = 0; i < P.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < P.size(); ++j) row.push_back(P(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Lemma1: return "lemma1";
    case StepKind::Lemma2: return "lemma2";
    case StepKind::RowSwap: return "row_swap";
    case StepKind::ColSwap: return "col_swap";
    default: return "line_clear_substep";
  }
}

json trace_json(const DescentTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"kind", step_kind_name(s.kind)},
                     {"indices", s.indices},
                     {"b", s.shifted_mass},
                     {"entropy_before", s.entropy_before},
                     {"entropy_after", s.entropy_after}});
  }
  return {{"steps", std::move(steps)},
          {"initial", coupling_json(t.initial)},
          {"final", coupling_json(t.final)}};
}

json perm_json(const PermutationPair& w) {
  return {{"row_perm", w.row_perm}, {"col_perm", w.col_perm}};
}

struct ReportWriter {
  json report;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  ReportWriter(const std::string& command, const Options& opt) {
    report["command"] = command;
    report["version"] = kVersion;
    report["base"] = opt.base_arg;
    if (opt.seed_set) report["seed"] = opt.seed;
    if (!opt.label.empty()) report["label"] = opt.label;
  }

  void instance(const ProbVector& p, const ProbVector& q) {
    report["instance"] = {{"p", p.values()}, {"q", q.values()}};
  }

  void finish(const Options& opt) {
    auto ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    report["timing_ms"] = ms;
    if (!opt.json_path.empty()) {
      std::ofstream f(opt.json_path);
      if (!f) throw std::runtime_error("cannot open " + opt.json_path);
      f << report.dump(2) << "\n";
    }
  }
};

void print_coupling(const Coupling& P) {
  for (std::size_t i = 0; i < P.size(); ++i) {
    for (std::size_t j = 0; j < P.size(); ++j)
      std::printf("%s%.6f", j ? "  " : "  ", P(i, j));
    std::printf("\n");
  }
}

int cmd_entropy(const Options& opt) {
  auto [p, q] = parse_instance(opt);
  LogBase base = parse_base(opt.base_arg);
  ReportWriter rw("entropy", opt);
  rw.instance(p, q);

  double hp = entropy(p, base).value;
  double hq = entropy(q, base).value;
  double hmeet = entropy(meet(sort_desc(p), sort_desc(q)), base).value;
  std::printf("H(p)      = %.10f (base %s)\n", hp, base_tag(base));
  std::printf("H(q)      = %.10f\n", hq);
  std::printf("H(p^q)    = %.10f\n", hmeet);
  std::printf("H(p)+H(q) = %.10f\n", hp + hq);

  rw.report["outputs"] = {{"H_p", hp},
                          {"H_q", hq},
                          {"H_meet", hmeet},
                          {"H_sum", hp + hq}};
  rw.finish(opt);
  return 0;
}

int cmd_bounds(const Options& opt) {
  auto [p, q] = parse_instance(opt);
  auto ps = sort_desc(p), qs = sort_desc(q);
  ReportWriter rw("bounds", opt);
  rw.instance(p, q);

  double lower = entropy(meet(ps, qs), LogBase::Two).value;
  json out = {{"lower", lower}, {"upper", lower + 1.0}};
  std::printf("lower (H(p^q))   = %.10f bits\n", lower);
  if (p.size() <= opt.oracle_limit) {
    auto [mc, mh] = oracle_min(ps.to_prob(), qs.to_prob(), opt.oracle_limit);
    std::printf("oracle min       = %.10f bits\n", mh.value);
    out["min"] = mh.value;
    out["min_is_exact"] = true;
  } else {
    auto [f, t] = descend(order_preserving_coupling(ps, qs));
    std::printf("upper bound      = %.10f bits (descent, not certified)\n",
                joint_entropy(f).value);
    out["min"] = joint_entropy(f).value;
    out["min_is_exact"] = false;
  }
  std::printf("upper (H(p^q)+1) = %.10f bits\n", lower + 1.0);

  rw.report["outputs"] = std::move(out);
  rw.finish(opt);
  return 0;
}

int cmd_minimize(const Options& opt) {
  auto [p, q] = parse_instance(opt);
  auto ps = sort_desc(p), qs = sort_desc(q);
  LogBase base = parse_base(opt.base_arg);
  ReportWriter rw("minimize", opt);
  rw.instance(p, q);

  Coupling start = [&] {
    if (opt.from == "independent") return independent(ps.to_prob(), qs.to_prob());
    if (opt.from == "nw") return nw_corner(ps.to_prob(), qs.to_prob());
    if (opt.from == "op") return order_preserving_coupling(ps, qs);
    if (opt.from.rfind("file:", 0) == 0)
      return read_coupling_csv(opt.from.substr(5));
    throw CLI::ValidationError("--from must be independent, nw, op or file:PATH");
  }();

  auto [f, trace] = descend(start, base);
  std::printf("start entropy = %.10f\n", joint_entropy(start, base).value);
  std::printf("final entropy = %.10f (base %s, %zu steps)\n",
              joint_entropy(f, base).value, base_tag(base), trace.steps.size());
  std::printf("final coupling:\n");
  print_coupling(f);

  rw.report["outputs"] = {
      {"from", opt.from},
      {"start_entropy", joint_entropy(start, base).value},
      {"final_entropy", joint_entropy(f, base).value},
      {"steps", trace.steps.size()},
      {"final", coupling_json(f)}};
  if (!opt.trace_path.empty()) {
    std::ofstream tf(opt.trace_path);
    if (!tf) throw std::runtime_error("cannot open " + opt.trace_path);
    tf << trace_json(trace).dump(2) << "\n";
  }
  rw.finish(opt);
  return 0;
}

int cmd_oracle(const Options& opt) {
  auto [p, q] = parse_instance(opt);
  auto ps = sort_desc(p), qs = sort_desc(q);
  ReportWriter rw("oracle", opt);
  rw.instance(p, q);

  auto vs = enumerate_vertices(ps.to_prob(), qs.to_prob(), opt.oracle_limit);
  auto rep = verify_main_theorem(vs, ps, qs);
  std::printf("vertices enumerated   : %zu\n", vs.vertices.size());
  std::printf("min entropy           = %.10f bits\n", rep.min_entropy);
  std::printf("H(p^q)                = %.10f bits\n", rep.meet_entropy);
  std::printf("H(p)+H(q)             = %.10f bits\n", rep.max_entropy_bound);
  std::printf("sandwich bound        : %s\n", rep.sandwich_ok ? "ok" : "FALSIFIED");
  std::printf("order-preserving mins : %s\n",
              rep.order_preserving_ok ? "ok" : "FALSIFIED");
  std::printf("minimizing coupling:\n");
  print_coupling(rep.min_coupling);

  json out = {{"vertex_count", vs.vertices.size()},
              {"min_entropy", rep.min_entropy},
              {"meet_entropy", rep.meet_entropy},
              {"max_entropy_bound", rep.max_entropy_bound},
              {"sandwich_ok", rep.sandwich_ok},
              {"order_preserving_ok", rep.order_preserving_ok},
              {"min_coupling", coupling_json(rep.min_coupling)}};
  if (rep.witness_permutations)
    out["witness_permutations"] = perm_json(*rep.witness_permutations);
  rw.report["outputs"] = std::move(out);
  rw.finish(opt);
  return rep.sandwich_ok && rep.order_preserving_ok ? 0 : 1;
}

int cmd_verify(const Options& opt) {
  ReportWriter rw("verify", opt);
  Rng rng(opt.seed);
  std::size_t passed = 0;
  json failures = json::array();
  for (std::size_t i = 0; i < opt.count; ++i) {
    auto p = sort_desc(sample_simplex(opt.n, rng));
    auto q = sort_desc(sample_simplex(opt.n, rng));
    auto rep = verify_main_theorem(p, q, opt.oracle_limit);
    bool indep_ok = verify_independent_max(p.to_prob(), q.to_prob(), 20,
                                           opt.seed + i, opt.oracle_limit);
    if (rep.order_preserving_ok && rep.sandwich_ok && indep_ok) {
      ++passed;
    } else {
      failures.push_back({{"index", i},
                          {"p", p.values()},
                          {"q", q.values()},
                          {"order_preserving_ok", rep.order_preserving_ok},
                          {"sandwich_ok", rep.sandwich_ok},
                          {"independent_max_ok", indep_ok}});
    }
  }
  std::printf("%zu/%zu instances verified (n=%zu, seed=%llu)\n", passed,
              opt.count, opt.n, static_cast<unsigned long long>(opt.seed));
  rw.report["outputs"] = {{"n", opt.n},
                          {"count", opt.count},
                          {"passed", passed},
                          {"failures", std::move(failures)}};
  rw.finish(opt);
  return passed == opt.count ? 0 : 1;
}

int cmd_gen(const Options& opt) {
  ReportWriter rw("gen", opt);
  Rng rng(opt.seed);
  json files = json::array();
  for (std::size_t i = 0; i < opt.count; ++i) {
    auto p = sample_simplex(opt.n, rng);
    auto q = sample_simplex(opt.n, rng);
    std::string path = opt.out_prefix + "_" + std::to_string(i) + ".json";
    json j = {{"p", p.values()},
              {"q", q.values()},
              {"seed", opt.seed},
              {"generator", "mt19937_64"},
              {"index", i}};
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << j.dump(2) << "\n";
    files.push_back(path);
  }
  std::printf("wrote %zu instance files (prefix %s, seed %llu)\n", opt.count,
              opt.out_prefix.c_str(), static_cast<unsigned long long>(opt.seed));
  rw.report["outputs"] = {{"files", std::move(files)},
                          {"generator", "mt19937_64"}};
  rw.finish(opt);
  return 0;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("-p", opt.p_arg, "first marginal, comma separated");
  cmd->add_option("-q", opt.q_arg, "second marginal, comma separated");
  cmd->add_option("--file", opt.file, "instance JSON {\"p\":[...],\"q\":[...]}");
  cmd->add_option("--base", opt.base_arg, "log base: 2 or e")
      ->check(CLI::IsMember({"2", "e"}));
  cmd->add_option("--tol", opt.tol, "mass tolerance");
  cmd->add_flag("--renormalize", opt.renormalize,
                "rescale inputs to unit mass");
  cmd->add_option("--oracle-limit", opt.oracle_limit,
                  "max n for exhaustive enumeration");
  cmd->add_option("--json", opt.json_path, "write a JSON run report here");
  cmd->add_option("--label", opt.label, "free-form label echoed in reports");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimum/maximum-entropy couplings of discrete distributions"};
  app.require_subcommand(1);
  Options opt;

  auto* entropy_cmd = app.add_subcommand("entropy", "marginal and meet entropies");
  auto* bounds_cmd = app.add_subcommand("bounds", "sandwich bounds on the minimum");
  auto* minimize_cmd = app.add_subcommand("minimize", "entropy descent");
  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive vertex oracle");
  auto* verify_cmd = app.add_subcommand("verify", "batch claim verification");
  auto* gen_cmd = app.add_subcommand("gen", "generate random instances");
  for (auto* c : {entropy_cmd, bounds_cmd, minimize_cmd, oracle_cmd}) add_common(c, opt);

  minimize_cmd->add_option("--from", opt.from,
                           "start: independent, nw, op, or file:PATH");
  minimize_cmd->add_option("--trace", opt.trace_path, "write descent trace JSON");

  for (auto* c : {verify_cmd, gen_cmd}) {
    c->add_option("--seed", opt.seed)->required()->each([&](const std::string&) {
      opt.seed_set = true;
    });
    c->add_option("--count", opt.count, "number of instances");
    c->add_option("--n", opt.n, "distribution size");
    c->add_option("--json", opt.json_path, "write a JSON run report here");
  }
  verify_cmd->add_option("--oracle-limit", opt.oracle_limit);
  gen_cmd->add_option("--out", opt.out_prefix, "output file prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (entropy_cmd->parsed()) return cmd_entropy(opt);
    if (bounds_cmd->parsed()) return cmd_bounds(opt);
    if (minimize_cmd->parsed()) return cmd_minimize(opt);
    if (oracle_cmd->parsed()) return cmd_oracle(opt);
    if (verify_cmd->parsed()) return cmd_verify(opt);
    if (gen_cmd->parsed()) return cmd_gen(opt);
  } catch (const SizeLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
