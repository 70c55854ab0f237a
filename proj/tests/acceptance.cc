// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Progress goes to stderr. The memory criterion runs first so that the peak
// resident size it reads is its own.
#include <sys/resource.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>

#include "microhol/article.h"
#include "microhol/auto.h"
#include "microhol/fuzz.h"
#include "microhol/printer.h"
#include "microhol/semantics.h"
#include "microhol/syntax.h"
#include "support/debruijn.h"
#include "support/meson_suite.h"
#include "support/weakened.h"

using namespace microhol;

namespace {

// Pinned tolerances.
constexpr uint64_t kFuzzTrials = 10000;
constexpr double kFuzzSeconds = 300;
constexpr uint64_t kWalkSteps = 100000;
constexpr int kMesonDepth = 20;
constexpr double kMesonSeconds = 10;
constexpr uint64_t kArticleInferences = 100000;
constexpr double kArticleSeconds = 10;
constexpr long kArticleMaxRssKb = 512 * 1024;
constexpr int kRoundTrips = 10000;
constexpr size_t kMinForgeries = 5;
constexpr uint64_t kSeed = 7;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

void progress(const std::string& s) { std::cerr << "[acceptance] " << s << std::endl; }

HolType B() { return HolType::bool_type(); }
HolType fn(HolType a, HolType b) { return HolType::fun(a, b); }

// 6. A generated article of 10^5 inferences: time, peak memory, determinism.
Outcome article_throughput() {
  std::string text;
  {
    Kernel k;
    Logic l(k);
    text = generate_trans_chain(k.theory(), kArticleInferences + 3);
  }
  std::string json[2];
  double secs = 0;
  uint64_t inferences = 0;
  bool ok = true;
  for (int run = 0; run < 2; ++run) {
    Kernel k;
    Logic l(k);
    auto start = Clock::now();
    ArticleReport r = check_article(text, k);
    double s = since(start);
    if (run == 0) secs = s;
    ok &= r.ok();
    inferences = r.inferences;
    json[run] = article_report_json(r);
  }
  rusage ru{};
  getrusage(RUSAGE_SELF, &ru);
  bool same = json[0] == json[1];
  std::ostringstream d;
  d << inferences << " inferences in " << secs << " s (limit " << kArticleSeconds << "), peak RSS "
    << ru.ru_maxrss / 1024 << " MB (limit " << kArticleMaxRssKb / 1024 << "), reports "
    << (same ? "byte-identical" : "DIFFER");
  return {ok && inferences >= kArticleInferences && secs <= kArticleSeconds &&
              ru.ru_maxrss <= kArticleMaxRssKb && same,
          d.str()};
}

// 1. Every primitive rule against finite models.
Outcome rule_soundness() {
  Kernel k;
  Logic l(k);
  FuzzOptions o;
  o.trials = kFuzzTrials;
  o.seed = kSeed;
  o.ind_sizes = {1, 2, 3};
  o.budget = 100000;
  o.samples = 1000;
  auto start = Clock::now();
  // Each rule has its own seeded stream, so running them side by side gives
  // the same reports as running them in turn.
  std::vector<std::future<FuzzReport>> jobs;
  for (const auto& rule : fuzz_rule_names())
    jobs.push_back(std::async(std::launch::async, [&, rule] {
      return fuzz_rule_soundness(rule, kernel_rule_generator(rule, k, l), k.theory(), o);
    }));
  uint64_t bad = 0, short_rules = 0, valuations = 0;
  for (auto& job : jobs) {
    FuzzReport r = job.get();
    progress(r.rule + ": " + std::to_string(r.trials) + " instances, " +
             std::to_string(r.counterexamples.size()) + " counterexamples");
    bad += r.counterexamples.size();
    short_rules += r.trials < kFuzzTrials;
    valuations += r.valuations;
  }
  double secs = since(start);
  std::ostringstream d;
  d << fuzz_rule_names().size() << " rules x " << kFuzzTrials << " instances, " << valuations
    << " valuations, " << bad << " counterexamples, " << secs << " s (limit " << kFuzzSeconds << ")";
  if (short_rules) d << ", " << short_rules << " rules short of instances";
  return {bad == 0 && short_rules == 0 && secs <= kFuzzSeconds, d.str()};
}

// 2. F is false everywhere and a random walk never derives it.
Outcome false_not_derivable() {
  Kernel k;
  Logic l(k);
  Term f = mk_falsity();
  uint64_t models = 0;
  bool always_false = true;
  for (uint64_t ind = 1; ind <= 4; ++ind)
    for (uint64_t a = 1; a <= 3; ++a) {
      Valuation v{Model{ind}, {{"A", a}}, {}};
      always_false &= eval_term(f, k.theory(), v) == kFalse;
      ++models;
    }
  WalkReport w = random_kernel_walk(k, kWalkSteps, kSeed);
  std::ostringstream d;
  d << "F false in " << models << " models; walk of " << w.steps << " steps made " << w.theorems
    << " theorems, " << (w.derived_false ? "DERIVED |- F" : "none is |- F");
  return {always_false && w.steps == kWalkSteps && !w.derived_false, d.str()};
}

// 3. The side condition of abs is enforced and is necessary.
Outcome abs_side_condition() {
  Kernel k;
  Logic l(k);
  Term x = mk_var("x", B());
  Theorem th = k.assume(mk_eq(x, mk_truth()));
  bool rejected = false;
  try {
    k.abs(x, th);
  } catch (const HolError& e) {
    rejected = e.kind() == ErrorKind::kVarFreeInHyps;
  }
  // {x = T} ⊢ x = T gives {x = T} ⊢ (\x. x) = (\x. T) without the check.
  RuleInstance inst{{sequent_of(th)}, test_only::abs_unchecked(x, th),
                    RuleInstance::Link::kEveryValue, x, {}, {}};
  FuzzReport r;
  check_instance(inst, k.theory(), FuzzOptions{}, 0, r);
  FuzzOptions o;
  o.trials = 100;
  o.seed = kSeed;
  FuzzReport random = fuzz_rule_soundness("abs-unchecked", test_only::weakened_abs(k), k.theory(), o);
  std::ostringstream d;
  d << "kernel " << (rejected ? "rejects" : "ACCEPTS") << " abs over a hypothesis variable; ";
  if (!r.counterexamples.empty())
    d << "weakened rule: " << r.counterexamples[0].conclusion << " false at "
      << r.counterexamples[0].valuation;
  else
    d << "weakened rule: no counterexample";
  d << "; fuzzer finds " << random.counterexamples.size() << " in " << random.trials;
  return {rejected && !r.counterexamples.empty() && !random.counterexamples.empty(), d.str()};
}

// 4. The defined connectives and quantifiers evaluate classically.
Outcome truth_tables() {
  Kernel k;
  Logic l(k);
  const Theory& thy = k.theory();
  Term p = mk_var("p", B()), q = mk_var("q", B()), r = mk_var("r", B());
  uint64_t checks = 0, wrong = 0;
  auto value = [&](const Term& t, std::vector<std::pair<Term, uint64_t>> vals, uint64_t ind) {
    Valuation v{Model{ind}, {}, std::move(vals)};
    return eval_term(t, thy, v) == kTrue;
  };
  auto expect = [&](bool got, bool want) {
    ++checks;
    wrong += got != want;
  };
  using Bin = std::pair<std::function<Term(Term, Term)>, std::function<bool(bool, bool)>>;
  std::vector<Bin> bins = {
      {[](Term a, Term b) { return mk_conj(a, b); }, [](bool a, bool b) { return a && b; }},
      {[](Term a, Term b) { return mk_disj(a, b); }, [](bool a, bool b) { return a || b; }},
      {[](Term a, Term b) { return mk_imp(a, b); }, [](bool a, bool b) { return !a || b; }},
      {[](Term a, Term b) { return mk_iff(a, b); }, [](bool a, bool b) { return a == b; }}};
  expect(value(mk_truth(), {}, 1), true);
  expect(value(mk_falsity(), {}, 1), false);
  for (uint64_t bits = 0; bits < 8; ++bits) {
    bool a = bits & 1, b = bits & 2, c = bits & 4;
    std::vector<std::pair<Term, uint64_t>> v = {{p, a}, {q, b}, {r, c}};
    expect(value(mk_neg(p), v, 1), !a);
    for (const auto& [mk1, f1] : bins) {
      expect(value(mk1(p, q), v, 1), f1(a, b));
      for (const auto& [mk2, f2] : bins) expect(value(mk1(p, mk2(q, r)), v, 1), f1(a, f2(b, c)));
    }
  }
  // Quantifiers: every predicate on bool, and on ind of each size.
  for (HolType dom : {B(), HolType::ind_type()}) {
    for (uint64_t ind = 1; ind <= 3; ++ind) {
      uint64_t n = dom.is_bool() ? 2 : ind;
      Term x = mk_var("x", dom);
      Term P = mk_var("P", fn(dom, B()));
      for (uint64_t table = 0; table < (uint64_t{1} << n); ++table) {
        bool all = table == (uint64_t{1} << n) - 1, some = table != 0;
        expect(value(mk_forall(x, mk_comb(P, x)), {{P, table}}, ind), all);
        expect(value(mk_exists(x, mk_comb(P, x)), {{P, table}}, ind), some);
      }
    }
  }
  std::ostringstream d;
  d << checks << " evaluations, " << wrong << " wrong";
  return {wrong == 0, d.str()};
}

// 5. The prover on the displayed prenex law and the curated suite; taut.
Outcome automation() {
  Kernel k;
  Logic l(k);
  std::vector<suite::Problem> all = {suite::kPrenex};
  for (const auto& p : suite::problems()) all.push_back(p);
  int proved = 0;
  double worst = 0;
  std::string failed;
  for (const auto& p : all) {
    FirstOrderProblem prob = suite::parse(p, k.theory());
    MesonOptions o;
    o.depth = kMesonDepth;
    o.timeout_seconds = kMesonSeconds;
    auto start = Clock::now();
    MesonResult r = meson(l, prob, o);
    double secs = since(start);
    worst = std::max(worst, secs);
    bool good = r.proved() && secs <= kMesonSeconds && r.trace.depth <= kMesonDepth &&
                oracle::alpha_equiv(r.theorem->concl(), prob.goal);
    if (good)
      for (const auto& h : r.theorem->hyps()) {
        bool found = false;
        for (const auto& a : prob.axioms) found |= oracle::alpha_equiv(a, h);
        good &= found;
      }
    if (good) ++proved;
    else failed += " " + p.name;
  }
  Term peirce = parse_term("((p ==> q) ==> p) ==> p", k.theory());
  Theorem pt = taut(l, peirce);
  bool peirce_ok = pt.hyps().empty() && oracle::alpha_equiv(pt.concl(), peirce);
  bool reject_ok = false;
  std::string assignment;
  try {
    taut(l, parse_term("p /\\ q", k.theory()));
  } catch (const NotATautology& e) {
    const auto& a = e.assignment();
    reject_ok = a.size() == 2 && a[0].first.name() == "p" && a[1].first.name() == "q" &&
                !(a[0].second && a[1].second);
    for (const auto& [v, b] : a) assignment += " " + v.name() + "=" + (b ? "true" : "false");
  }
  std::ostringstream d;
  d << "meson " << proved << "/" << all.size() << " (prenex + " << suite::problems().size()
    << "-problem suite), slowest " << worst << " s; Peirce " << (peirce_ok ? "proved" : "NOT proved")
    << "; p /\\ q rejected at" << assignment;
  if (!failed.empty()) d << "; failed:" << failed;
  return {proved == static_cast<int>(all.size()) && peirce_ok && reject_ok, d.str()};
}

// 7. Printing then parsing gives back an alpha-equivalent term.
Outcome round_trip() {
  Kernel k;
  Logic l(k);
  TermGenOptions o = fuzz_term_options();
  o.max_depth = 8;
  TermGenerator gen(o, kSeed);
  PrintOptions po = k.theory().print_options();
  int failures = 0;
  std::string first;
  for (int i = 0; i < kRoundTrips; ++i) {
    Term t = gen.term(i % 2 ? B() : gen.small_type());
    std::string s = print_term(t, po);
    try {
      if (oracle::alpha_equiv(parse_term(s, k.theory()), t)) continue;
    } catch (const HolError&) {
    }
    if (failures++ == 0) first = s;
  }
  std::ostringstream d;
  d << kRoundTrips << " random terms, " << failures << " failures";
  if (failures) d << ", first: " << first;
  return {failures == 0, d.str()};
}

// 8. Theorems cannot be made outside the kernel. Each snippet in the forgery
// directory must fail to compile with the diagnostic named on its first
// line; the control must compile. A theorem of one kernel is refused by
// another at run time.
Outcome no_forgery() {
  namespace fs = std::filesystem;
  auto compile = [](const fs::path& file, std::string& out) {
    std::string cmd = std::string("\"") + MICROHOL_CXX + "\" -std=c++20 -fsyntax-only -I\"" +
                      MICROHOL_INCLUDE + "\" \"" + file.string() + "\" 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return -1;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    return pclose(pipe);
  };
  bool control_ok = false;
  size_t refused = 0, total = 0;
  std::string leaks;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(MICROHOL_FORGERY_DIR))
    if (e.path().extension() == ".cc") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::string out;
    int status = compile(f, out);
    if (f.stem() == "control") {
      control_ok = status == 0;
      continue;
    }
    ++total;
    std::ifstream in(f);
    std::string first;
    std::getline(in, first);
    std::string expect = first.rfind("// expect: ", 0) == 0 ? first.substr(11) : "";
    if (status != 0 && !expect.empty() && out.find(expect) != std::string::npos) ++refused;
    else leaks += " " + f.stem().string();
  }
  Kernel a, b;
  Theorem th = a.refl(mk_var("x", B()));
  bool foreign = false;
  try {
    b.trans(th, th);
  } catch (const HolError& e) {
    foreign = e.kind() == ErrorKind::kForeignTheorem;
  }
  std::ostringstream d;
  d << refused << "/" << total << " forgery attempts fail to compile, control "
    << (control_ok ? "compiles" : "DOES NOT compile") << ", foreign theorem "
    << (foreign ? "refused" : "ACCEPTED");
  if (!leaks.empty()) d << "; not refused as expected:" << leaks;
  return {control_ok && total >= kMinForgeries && refused == total && foreign, d.str()};
}

}  // namespace

int main() {
  std::vector<std::pair<int, std::function<Outcome()>>> order = {
      {6, article_throughput}, {1, rule_soundness}, {2, false_not_derivable},
      {3, abs_side_condition}, {4, truth_tables},    {5, automation},
      {7, round_trip},         {8, no_forgery}};
  const char* names[] = {"",
                         "rule soundness",
                         "F not derivable",
                         "abs side condition",
                         "bootstrap truth tables",
                         "automation benchmark",
                         "article throughput",
                         "round-trip parsing",
                         "no forgery"};
  std::map<int, Outcome> results;
  for (const auto& [n, run] : order) {
    progress("criterion " + std::to_string(n) + ": " + names[n]);
    try {
      results[n] = run();
    } catch (const std::exception& e) {
      results[n] = {false, std::string("threw: ") + e.what()};
    }
  }
  bool all = true;
  for (const auto& [n, r] : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << names[n]
              << "): " << r.detail << "\n";
    all &= r.pass;
  }
  std::cout << (all ? "all criteria pass" : "SOME CRITERIA FAIL") << "\n";
  return all ? 0 : 1;
}
