#include <chrono>

#include "doctest.h"
#include "microhol/auto.h"
#include "microhol/generate.h"
#include "microhol/printer.h"
#include "microhol/semantics.h"
#include "microhol/syntax.h"
#include "support/meson_suite.h"

using namespace microhol;

namespace {

struct Fixture {
  Kernel kernel;
  Logic logic{kernel};
  const Theory& thy() { return kernel.theory(); }
  Term parse(const std::string& s) { return parse_term(s, thy()); }

  bool finitely_valid(std::span<const Term> hyps, const Term& concl) {
    ValidityOptions o;
    o.max_tyvar_size = 3;
    o.budget = 200000;
    for (uint64_t ind : {1, 2, 3}) {
      Model m;
      m.ind_size = ind;
      if (is_valid(hyps, concl, thy(), m, o).kind == Verdict::Kind::kInvalid) return false;
    }
    return true;
  }
};

bool proves(const Theorem& th, const Term& concl) {
  return th.hyps().empty() && alpha_equiv(th.concl(), concl);
}

}  // namespace

TEST_CASE_FIXTURE(Fixture, "taut proves tautologies") {
  for (const char* s : {"p \\/ ~p", "((p ==> q) ==> p) ==> p", "T", "~F", "(p:bool) = p",
                        "((p:bool) = q) = (q = p)", "~(p /\\ q) = (~p \\/ ~q)",
                        "(p ==> q) /\\ (q ==> r) ==> p ==> r"}) {
    Term p = parse(s);
    CHECK_MESSAGE(proves(taut(logic, p), p), std::string(s));
  }
}

TEST_CASE_FIXTURE(Fixture, "taut rejects with a falsifying assignment") {
  try {
    taut(logic, parse("p /\\ q"));
    FAIL("p /\\ q accepted");
  } catch (const NotATautology& e) {
    REQUIRE(e.assignment().size() == 2);
    CHECK(e.assignment()[0].first.name() == "p");
    CHECK(e.assignment()[0].second == true);
    CHECK(e.assignment()[1].first.name() == "q");
    CHECK(e.assignment()[1].second == false);
    CHECK(std::string(e.what()).find("p=true, q=false") != std::string::npos);
  }
  CHECK_THROWS_AS(taut(logic, parse("F")), NotATautology);
  try {
    taut(logic, parse("(x:ind) = y"));
    FAIL("accepted a non-propositional term");
  } catch (const HolError& e) {
    CHECK(e.kind() == ErrorKind::kNotPropositional);
  }
  CHECK_THROWS_AS(taut(logic, parse("!p:bool. p \\/ ~p")), HolError);
}

TEST_CASE_FIXTURE(Fixture, "taut agrees with truth tables") {
  // Random formulas over three variables, checked against evaluation.
  TermGenOptions o;
  o.max_depth = 5;
  o.names = {"p", "q", "r"};
  o.small_types = {HolType::bool_type()};
  o.use_equality = true;
  HolType b = HolType::bool_type();
  HolType bb = HolType::fun(b, HolType::fun(b, b));
  o.constants = {mk_truth(), mk_falsity(), Term::constant("~", HolType::fun(b, b)),
                 Term::constant("/\\", bb), Term::constant("\\/", bb),
                 Term::constant("==>", bb)};
  TermGenerator gen(o, 99);
  int proved = 0, refuted = 0, skipped = 0;
  for (int i = 0; i < 400; ++i) {
    Term p = gen.boolean();
    try {
      propositional_atoms(p);
    } catch (const HolError&) {
      ++skipped;  // lambdas and applied variables
      continue;
    }
    Model m;
    bool valid = is_valid({}, p, thy(), m).kind == Verdict::Kind::kValid;
    try {
      Theorem th = taut(logic, p);
      CHECK(valid);
      CHECK(proves(th, p));
      ++proved;
    } catch (const NotATautology& e) {
      CHECK_FALSE(valid);
      ++refuted;
    }
  }
  MESSAGE(proved << " proved, " << refuted << " refuted, " << skipped << " skipped");
  CHECK(proved > 20);
  CHECK(refuted > 20);
}

TEST_CASE_FIXTURE(Fixture, "clausification") {
  Clausification a = clausify(logic, parse("~(p \\/ q)"));
  REQUIRE(a.clauses.size() == 2);
  CHECK(a.clauses[0].literals[0] == parse("~p"));
  CHECK(a.clauses[1].literals[0] == parse("~q"));

  Clausification b = clausify(logic, parse("?x:A. P x"));
  REQUIRE(b.clauses.size() == 1);
  REQUIRE(b.skolems.size() == 1);
  CHECK(alpha_equiv(b.clauses[0].literals[0], parse("P (@x:A. P x)")));
  CHECK(b.clauses[0].universals.empty());

  Clausification c = clausify(logic, parse("!x:A. ?y:B. R x y"));
  REQUIRE(c.clauses.size() == 1);
  REQUIRE(c.clauses[0].universals.size() == 1);
  Term x = c.clauses[0].universals[0];
  Term r = mk_var("R", parse_type("A -> B -> bool"));
  Term y = mk_var("y", parse_type("B"));
  CHECK(alpha_equiv(c.clauses[0].literals[0],
                    mk_comb(mk_comb(r, x), mk_select(y, mk_comb(mk_comb(r, x), y)))));

  CHECK_THROWS_AS(clausify(logic, parse("!f:A->A. f = f")), HolError);
}

TEST_CASE_FIXTURE(Fixture, "clauses are equivalent to the input in small models") {
  for (const char* s : {"!x:A. ?y:A. R x y", "(?x:A. P x) ==> (!y:A. Q y)",
                        "~(!x:A. P x \\/ Q x) = (?x:A. Q x)", "!x:A. P x \\/ (?y:A. R x y /\\ ~P y)"}) {
    Term p = parse(s);
    Clausification c = clausify(logic, p);
    std::vector<Term> closed;
    for (const auto& cl : c.clauses) {
      Term t = cl.theorem.concl();
      for (auto it = cl.universals.rbegin(); it != cl.universals.rend(); ++it) t = mk_forall(*it, t);
      closed.push_back(t);
    }
    Term all = closed.empty() ? mk_truth() : list_mk_conj(closed);
    CHECK_MESSAGE(finitely_valid({}, mk_iff(all, p)), s);
    for (const auto& cl : c.clauses) {
      REQUIRE(cl.theorem.hyps().size() == 1);
      CHECK(alpha_equiv(cl.theorem.hyps()[0], p));
    }
  }
}

TEST_CASE_FIXTURE(Fixture, "meson examples") {
  FirstOrderProblem prenex = suite::parse(suite::kPrenex, thy());
  MesonResult r = meson(logic, prenex);
  REQUIRE(r.proved());
  CHECK(proves(*r.theorem, prenex.goal));
  CHECK(r.trace.depth == suite::kPrenex.min_depth);

  FirstOrderProblem syl{{parse("!x:A. P x ==> Q x"), parse("P (a:A)")}, parse("Q (a:A)")};
  syl.axioms[1] = parse("(P:A->bool) a");
  syl.goal = parse("(Q:A->bool) a");
  MesonResult s = meson(logic, syl);
  REQUIRE(s.proved());
  CHECK(s.trace.depth <= 2);
  CHECK(s.theorem->hyps().size() == 2);

  FirstOrderProblem none{{}, parse("(P:A->bool) a")};
  MesonOptions o;
  o.depth = 20;
  MesonResult n = meson(logic, none, o);
  CHECK_FALSE(n.proved());
  CHECK(n.trace.depth == 20);
  try {
    meson_prove(logic, none, o);
    FAIL("proved a non-theorem");
  } catch (const HolError& e) {
    CHECK(e.kind() == ErrorKind::kDepthExhausted);
  }
  CHECK_THROWS_AS(meson(logic, {{}, parse("!P:A->bool. P a ==> P a")}), HolError);
}

TEST_CASE_FIXTURE(Fixture, "meson suite at its minimal depths") {
  for (const auto& p : suite::problems()) {
    FirstOrderProblem prob = suite::parse(p, thy());
    MesonOptions o;
    o.timeout_seconds = 10;
    auto start = std::chrono::steady_clock::now();
    MesonResult r = meson(logic, prob, o);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    INFO(p.name);
    REQUIRE(r.proved());
    CHECK(r.trace.depth == p.min_depth);
    CHECK(secs < 10);
    CHECK(alpha_equiv(r.theorem->concl(), prob.goal));
    for (const auto& h : r.theorem->hyps()) {
      bool found = false;
      for (const auto& a : prob.axioms) found |= alpha_equiv(a, h);
      CHECK(found);
    }
    CHECK(finitely_valid(r.theorem->hyps(), r.theorem->concl()));
    if (p.min_depth > 0) {
      MesonOptions shallow;
      shallow.depth = p.min_depth - 1;
      CHECK_FALSE(meson(logic, prob, shallow).proved());
    }
  }
}

TEST_CASE_FIXTURE(Fixture, "equality axioms are generated as theorems") {
  FirstOrderProblem none{{parse("(P:A->bool) a")}, parse("(P:A->bool) a")};
  CHECK(equality_axioms(logic, none).empty());

  FirstOrderProblem p{{parse("(f:A->A) a = b"), parse("(R:A->bool->bool) a T")},
                      parse("(R:A->bool->bool) (f a) F")};
  std::vector<Theorem> eqs = equality_axioms(logic, p);
  // refl, sym, trans at A; f in its argument; R in its first argument only.
  REQUIRE(eqs.size() == 5);
  CHECK(alpha_equiv(eqs[0].concl(), parse("!x:A. x = x")));
  CHECK(alpha_equiv(eqs[1].concl(), parse("!x:A. !y:A. x = y ==> y = x")));
  CHECK(alpha_equiv(eqs[2].concl(), parse("!x:A. !y:A. !z:A. x = y /\\ y = z ==> x = z")));
  CHECK(alpha_equiv(eqs[3].concl(), parse("!x:A. !y:A. x = y ==> (f:A->A) x = f y")));
  CHECK(alpha_equiv(eqs[4].concl(),
                    parse("!x:A. !b:bool. !y:A. x = y ==> (R:A->bool->bool) x b ==> R y b")));
  for (const auto& th : eqs) CHECK(th.hyps().empty());
}

TEST_CASE_FIXTURE(Fixture, "meson reasons with equations without congruence axioms") {
  struct Case {
    const char* axioms;
    const char* goal;
  };
  for (const Case& c : {Case{"(a:A) = b /\\ P a", "P (b:A)"},
                        Case{"(a:A) = b /\\ b = c", "(c:A) = a"},
                        Case{"(f:A->A) a = b /\\ a = c", "(f:A->A) c = b"},
                        Case{"!x:A. (g:A->A) x = x", "!y:A. (g:A->A) (g y) = y"}}) {
    INFO(c.goal);
    suite::Problem sp{"eq", {c.axioms}, c.goal, 0};
    FirstOrderProblem prob = suite::parse(sp, thy());
    MesonOptions o;
    o.depth = 8;
    MesonResult r = meson(logic, prob, o);
    REQUIRE(r.proved());
    CHECK(alpha_equiv(r.theorem->concl(), prob.goal));
    CHECK(r.theorem->hyps().size() == 1);
    CHECK(finitely_valid(r.theorem->hyps(), r.theorem->concl()));
    o.equality = false;
    CHECK_FALSE(meson(logic, prob, o).proved());
  }
}
