// microhol: check articles, typecheck terms, run the provers and the rule
// fuzzer. Exit 0 on success, 1 when something was checked and failed, 2 on
// usage and input errors.
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "microhol/article.h"
#include "microhol/auto.h"
#include "microhol/fuzz.h"
#include "microhol/printer.h"
#include "microhol/semantics.h"
#include "microhol/syntax.h"

using namespace microhol;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kReportVersion = 1;

struct Globals {
  bool json = false;
  uint64_t seed = 7;
  int depth = 20;
  uint64_t ind_size = 2;
  uint64_t cap = uint64_t{1} << 16;
  bool trace = false;
};

// Input problems are reported as exit 2 and never reach the checkers.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Term parse_input(const std::string& src, const Theory& thy) {
  try {
    return parse_term(src, thy);
  } catch (const HolError& e) {
    throw InputError(e.what());
  }
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// A kernel with the logical constants installed; articles are written
// against its theory.
struct Session {
  Kernel kernel;
  Logic logic{kernel};
};

int run_check(const Globals& g, const std::vector<std::string>& files) {
  bool all_ok = true;
  Json reports = Json::array();
  for (const auto& path : files) {
    std::string text = read_file(path);
    Session s;
    ArticleReport r = check_article(text, s.kernel);
    all_ok &= r.ok();
    if (g.json) {
      Json j = Json::parse(article_report_json(r));
      reports.push_back({{"file", path}, {"report", j}});
    } else {
      if (files.size() > 1) std::cout << path << ": ";
      std::cout << article_report_text(r);
    }
  }
  if (g.json) emit({{"version", kReportVersion}, {"ok", all_ok}, {"articles", reports}});
  return all_ok ? kOk : kFailed;
}

int run_parse(const Globals& g, const std::string& src, bool eval) {
  Session s;
  const Theory& thy = s.kernel.theory();
  std::optional<Term> parsed;
  try {
    parsed = parse_term(src, thy);
  } catch (const HolError& e) {
    if (g.json)
      emit({{"version", kReportVersion}, {"ok", false}, {"kind", error_kind_name(e.kind())},
            {"message", e.what()}});
    else
      std::cout << "error: " << e.what() << "\n";
    return kFailed;
  }
  const Term& t = *parsed;
  PrintOptions po = thy.print_options();
  Json j{{"version", kReportVersion}, {"ok", true}, {"term", print_term(t, po)},
         {"type", print_type(t.type())}};
  int code = kOk;
  std::string verdict_line;
  if (eval) {
    if (!t.type().is_bool()) throw InputError("--eval needs a boolean term");
    ValidityOptions vo;
    vo.seed = g.seed;
    Verdict v = is_valid({}, t, thy, Model{g.ind_size, g.cap}, vo);
    j["verdict"] = verdict_name(v.kind);
    j["valuations"] = v.valuations;
    verdict_line = std::string(verdict_name(v.kind)) + " (" + std::to_string(v.valuations) +
                   " valuations, ind size " + std::to_string(g.ind_size) + ")";
    if (v.counterexample) {
      j["counterexample"] = describe_valuation(*v.counterexample);
      verdict_line += "\ncounterexample: " + describe_valuation(*v.counterexample);
      code = kFailed;
    }
  }
  if (g.json) {
    emit(j);
  } else {
    std::cout << print_term(t, po) << " : " << print_type(t.type()) << "\n";
    if (eval) std::cout << verdict_line << "\n";
  }
  return code;
}

int run_taut(const Globals& g, const std::string& src) {
  Session s;
  Term p = parse_input(src, s.kernel.theory());
  PrintOptions po = s.kernel.theory().print_options();
  try {
    Theorem th = taut(s.logic, p);
    std::string stmt = print_sequent(th.hyps(), th.concl(), po);
    if (g.json)
      emit({{"version", kReportVersion}, {"proved", true}, {"theorem", stmt}});
    else
      std::cout << "proved: " << stmt << "\n";
    return kOk;
  } catch (const NotATautology& e) {
    if (g.json) {
      Json a = Json::object();
      for (const auto& [v, b] : e.assignment()) a[v.name()] = b;
      emit({{"version", kReportVersion}, {"proved", false}, {"assignment", a}});
    } else {
      std::cout << e.what() << "\n";
    }
    return kFailed;
  } catch (const HolError& e) {
    throw InputError(e.what());
  }
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  std::string out = s.substr(b, e - b + 1);
  if (out.size() >= 2 && out.front() == '`' && out.back() == '`') out = out.substr(1, out.size() - 2);
  return out;
}

// AXIOM and GOAL lines; all formulas are parsed together so that a symbol
// gets the same type everywhere.
FirstOrderProblem read_problem(const std::string& text, const Theory& thy) {
  std::vector<std::string> axioms;
  std::optional<std::string> goal;
  std::istringstream in(text);
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto starts = [&](const char* w) { return t.rfind(w, 0) == 0; };
    if (starts("AXIOM ")) {
      axioms.push_back(trim(t.substr(6)));
    } else if (starts("GOAL ")) {
      if (goal) throw InputError("line " + std::to_string(n) + ": second GOAL");
      goal = trim(t.substr(5));
    } else {
      throw InputError("line " + std::to_string(n) + ": expected AXIOM or GOAL");
    }
  }
  if (!goal) throw InputError("no GOAL line");
  std::string all;
  for (const auto& a : axioms) all += "(" + a + ") /\\ ";
  Term t = parse_input(all + "(" + *goal + ")", thy);
  std::vector<Term> parsed;
  for (size_t i = 0; i < axioms.size(); ++i) {
    parsed.push_back(binop_lhs(t));
    t = binop_rhs(t);
  }
  return {parsed, t};
}

const char* step_kind(MesonStep::Kind k) {
  switch (k) {
    case MesonStep::Kind::kStart: return "start";
    case MesonStep::Kind::kExtension: return "extension";
    case MesonStep::Kind::kReduction: return "reduction";
  }
  return "?";
}

int run_meson(const Globals& g, const std::string& path, double timeout) {
  Session s;
  FirstOrderProblem p = read_problem(read_file(path), s.kernel.theory());
  MesonOptions o;
  o.depth = g.depth;
  o.timeout_seconds = timeout;
  MesonResult r;
  try {
    r = meson(s.logic, p, o);
  } catch (const HolError& e) {
    throw InputError(e.what());
  }
  PrintOptions po = s.kernel.theory().print_options();
  if (g.json) {
    Json j{{"version", kReportVersion}, {"proved", r.proved()}, {"depth", r.trace.depth},
           {"search_steps", r.trace.inferences}, {"timed_out", r.trace.timed_out}};
    if (r.proved()) j["theorem"] = print_sequent(r.theorem->hyps(), r.theorem->concl(), po);
    if (g.trace) {
      Json steps = Json::array();
      for (const auto& st : r.trace.steps) {
        Json x{{"kind", step_kind(st.kind)}, {"goal", st.goal}};
        if (st.clause >= 0) x["clause"] = st.clause;
        if (st.literal >= 0) x["literal"] = st.literal;
        if (st.ancestor >= 0) x["ancestor"] = st.ancestor;
        steps.push_back(x);
      }
      j["clauses"] = r.trace.clauses;
      j["skolems"] = r.trace.skolems;
      j["steps"] = steps;
    }
    emit(j);
  } else {
    if (r.proved())
      std::cout << "proved at depth " << r.trace.depth << ": "
                << print_sequent(r.theorem->hyps(), r.theorem->concl(), po) << "\n";
    else
      std::cout << (r.trace.timed_out ? "timed out" : "depth exhausted") << " at depth "
                << r.trace.depth << "\n";
    if (g.trace) std::cout << meson_trace_text(r.trace);
  }
  return r.proved() ? kOk : kFailed;
}

int run_fuzz(const Globals& g, const std::string& rule, uint64_t trials, uint64_t walk,
             bool ind_given) {
  Session s;
  std::vector<std::string> rules;
  if (rule == "all") {
    rules = fuzz_rule_names();
  } else {
    const auto& names = fuzz_rule_names();
    if (std::find(names.begin(), names.end(), rule) == names.end())
      throw InputError("unknown rule " + rule);
    rules = {rule};
  }
  FuzzOptions o;
  o.trials = trials;
  o.seed = g.seed;
  o.cap = g.cap;
  if (ind_given) o.ind_sizes = {g.ind_size};
  std::vector<FuzzReport> reports;
  bool clean = true;
  for (const auto& r : rules) {
    reports.push_back(fuzz_rule_soundness(r, kernel_rule_generator(r, s.kernel, s.logic),
                                          s.kernel.theory(), o));
    clean &= reports.back().counterexamples.empty();
  }
  std::optional<WalkReport> w;
  if (walk > 0) {
    w = random_kernel_walk(s.kernel, walk, g.seed);
    clean &= !w->derived_false;
  }
  if (g.json) {
    Json j{{"version", kReportVersion}, {"ok", clean}, {"rules", Json::parse(fuzz_report_json(reports))}};
    if (w)
      j["walk"] = {{"steps", w->steps}, {"theorems", w->theorems}, {"refused", w->refused},
                   {"derived_false", w->derived_false}};
    emit(j);
  } else {
    std::cout << std::left << std::setw(16) << "rule" << std::right << std::setw(8) << "trials"
              << std::setw(10) << "rejected" << std::setw(11) << "overflowed" << std::setw(14)
              << "valuations" << std::setw(17) << "counterexamples" << "\n";
    for (const auto& r : reports) {
      std::cout << std::left << std::setw(16) << r.rule << std::right << std::setw(8) << r.trials
                << std::setw(10) << r.rejected << std::setw(11) << r.overflowed << std::setw(14)
                << r.valuations << std::setw(17) << r.counterexamples.size() << "\n";
      for (const auto& c : r.counterexamples) {
        std::cout << "  trial " << c.trial << ": ";
        for (const auto& p : c.premises) std::cout << p << "; ";
        std::cout << "gives " << c.conclusion << " false at " << c.valuation << "\n";
      }
    }
    if (w)
      std::cout << "walk: " << w->steps << " steps, " << w->theorems << " theorems, "
                << w->refused << " refused, " << (w->derived_false ? "DERIVED F" : "no |- F")
                << "\n";
    std::cout << "seed " << g.seed << ": " << (clean ? "no counterexamples" : "COUNTEREXAMPLES FOUND")
              << "\n";
  }
  return clean ? kOk : kFailed;
}

int run_stats(const Globals& g, const std::vector<std::string>& files) {
  Session s;
  const Theory& thy = s.kernel.theory();
  uint64_t boot = s.kernel.total_inferences();
  Json j{{"version", kReportVersion},
         {"theory", {{"fingerprint", to_hex(thy.fingerprint())},
                     {"types", thy.type_names()},
                     {"constants", thy.constant_names()},
                     {"bootstrap_inferences", boot}}}};
  Json arts = Json::array();
  bool all_ok = true;
  for (const auto& path : files) {
    std::string text = read_file(path);
    Session fresh;
    uint64_t before = fresh.kernel.theory().events().size();
    ArticleReport r = check_article(text, fresh.kernel);
    all_ok &= r.ok();
    arts.push_back({{"file", path},
                    {"ok", r.ok()},
                    {"lines", r.lines},
                    {"commands", r.commands},
                    {"inferences", r.inferences},
                    {"theorems", r.theorems.size()},
                    {"definitions", fresh.kernel.theory().events().size() - before},
                    {"uses_infinity", r.uses_infinity}});
  }
  if (!files.empty()) j["articles"] = arts;
  if (g.json) {
    emit(j);
  } else {
    std::cout << "theory " << to_hex(thy.fingerprint()) << "\n"
              << "types " << thy.type_names().size() << ", constants "
              << thy.constant_names().size() << ", bootstrap inferences " << boot << "\n";
    if (!files.empty()) {
      std::cout << std::left << std::setw(28) << "article" << std::right << std::setw(5) << "ok"
                << std::setw(10) << "lines" << std::setw(10) << "commands" << std::setw(12)
                << "inferences" << std::setw(10) << "theorems" << std::setw(13) << "definitions"
                << "\n";
      for (const auto& a : arts)
        std::cout << std::left << std::setw(28) << a["file"].get<std::string>() << std::right
                  << std::setw(5) << (a["ok"].get<bool>() ? "yes" : "no") << std::setw(10)
                  << a["lines"].get<uint64_t>() << std::setw(10) << a["commands"].get<uint64_t>()
                  << std::setw(12) << a["inferences"].get<uint64_t>() << std::setw(10)
                  << a["theorems"].get<uint64_t>() << std::setw(13)
                  << a["definitions"].get<uint64_t>() << "\n";
    }
  }
  return all_ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"microhol: a small LCF-style kernel for higher-order logic"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "Machine-readable report on stdout");
  app.add_option("--seed", g.seed, "Random seed")->envname("MICROHOL_SEED");
  app.add_option("--depth", g.depth, "Proof search depth bound")->check(CLI::Range(0, 1000));
  auto* ind_opt = app.add_option("--ind-size", g.ind_size, "Size of ind in finite models")
                      ->check(CLI::Range(uint64_t{1}, uint64_t{64}));
  app.add_option("--cap", g.cap, "Largest carrier built during evaluation");
  app.add_flag("--trace", g.trace, "Dump the proof search");

  std::vector<std::string> check_files;
  auto* check = app.add_subcommand("check", "Replay proof articles");
  check->add_option("files", check_files, "Article files")->required();

  std::string parse_src;
  bool eval = false;
  auto* parse = app.add_subcommand("parse", "Typecheck a term and print it back");
  parse->add_option("term", parse_src, "Term")->required();
  parse->add_flag("--eval", eval, "Also decide validity in a finite model");

  std::string taut_src;
  auto* prove_taut = app.add_subcommand("prove-taut", "Prove a propositional tautology");
  prove_taut->add_option("term", taut_src, "Formula")->required();

  std::string goal_file;
  double timeout = 0;
  auto* prove_meson = app.add_subcommand("prove-meson", "First-order proof search");
  prove_meson->add_option("file", goal_file, "Goal file of AXIOM and GOAL lines")->required();
  prove_meson->add_option("--timeout", timeout, "Seconds, 0 for none");

  std::string rule = "all";
  uint64_t trials = 10000, walk = 0;
  auto* fuzz = app.add_subcommand("fuzz", "Check the primitive rules against finite models");
  fuzz->add_option("--rule", rule, "Rule name or all");
  fuzz->add_option("--trials", trials, "Instances per rule");
  fuzz->add_option("--walk", walk, "Also take this many random kernel steps");

  std::vector<std::string> stats_files;
  auto* stats = app.add_subcommand("stats", "Theory and article statistics");
  stats->add_option("files", stats_files, "Article files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return run_check(g, check_files);
    if (*parse) return run_parse(g, parse_src, eval);
    if (*prove_taut) return run_taut(g, taut_src);
    if (*prove_meson) return run_meson(g, goal_file, timeout);
    if (*fuzz) return run_fuzz(g, rule, trials, walk, ind_opt->count() > 0);
    if (*stats) return run_stats(g, stats_files);
  } catch (const InputError& e) {
    std::cerr << "microhol: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "microhol: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
