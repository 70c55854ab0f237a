#include "doctest.h"
#include "microhol/bootstrap.h"
#include "microhol/error.h"
#include "microhol/generate.h"
#include "microhol/semantics.h"
#include "support/naive_eval.h"

using namespace microhol;

namespace {

HolType B() { return HolType::bool_type(); }
HolType I() { return HolType::ind_type(); }
HolType A() { return HolType::var("A"); }
HolType fn(HolType a, HolType b) { return HolType::fun(a, b); }

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const HolError& e) {
    return e.kind();
  }
  FAIL("no error");
  return ErrorKind::kDerivedRule;
}

struct Fixture {
  Kernel kernel;
  Logic logic{kernel};
  const Theory& thy = kernel.theory();
  Term p = mk_var("p", B());
  Term q = mk_var("q", B());

  bool value(const Term& t, std::vector<std::pair<Term, uint64_t>> vals,
             uint64_t ind = 2) {
    Valuation v{Model{ind}, {{"A", 2}}, std::move(vals)};
    return eval_term(t, thy, v) == kTrue;
  }

  std::vector<Term> connective_constants() {
    std::vector<Term> cs = {mk_truth(), mk_falsity(),
                            Term::constant("~", fn(B(), B())),
                            Term::constant("/\\", fn(B(), fn(B(), B()))),
                            Term::constant("\\/", fn(B(), fn(B(), B()))),
                            Term::constant("==>", fn(B(), fn(B(), B())))};
    for (HolType ty : {B(), I(), A()}) {
      cs.push_back(Term::constant("!", fn(fn(ty, B()), B())));
      cs.push_back(Term::constant("?", fn(fn(ty, B()), B())));
    }
    return cs;
  }

  TermGenerator generator(uint64_t seed) {
    TermGenOptions o;
    o.max_depth = 4;
    o.use_select = true;
    o.constants = connective_constants();
    o.max_carrier = 256;
    return TermGenerator(o, seed);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "truth tables of the connectives") {
  Term T = mk_truth();
  Term F = mk_falsity();
  CHECK(value(T, {}));
  CHECK_FALSE(value(F, {}));
  for (uint64_t a : {0, 1}) {
    for (uint64_t b : {0, 1}) {
      std::vector<std::pair<Term, uint64_t>> v = {{p, a}, {q, b}};
      CHECK(value(mk_conj(p, q), v) == (a && b));
      CHECK(value(mk_disj(p, q), v) == (a || b));
      CHECK(value(mk_imp(p, q), v) == (!a || b));
      CHECK(value(mk_iff(p, q), v) == (a == b));
    }
    CHECK(value(mk_neg(p), {{p, a}}) == !a);
  }
  // Quantifiers over a predicate on ind of size 3: every table.
  Term x = mk_var("x", I());
  Term P = mk_var("P", fn(I(), B()));
  for (uint64_t table = 0; table < 8; ++table) {
    CHECK(value(mk_forall(x, mk_comb(P, x)), {{P, table}}, 3) == (table == 7));
    CHECK(value(mk_exists(x, mk_comb(P, x)), {{P, table}}, 3) == (table != 0));
  }
}

TEST_CASE_FIXTURE(Fixture, "F is false in every model") {
  for (uint64_t n : {1, 2, 3, 4}) {
    Verdict v = is_valid({}, mk_neg(mk_falsity()), thy, Model{n});
    CHECK(v.kind == Verdict::Kind::kValid);
  }
}

TEST_CASE_FIXTURE(Fixture, "carrier sizes") {
  CHECK(eval_type(B(), thy, {}, {}) == 2);
  CHECK(eval_type(fn(B(), B()), thy, {}, {}) == 4);
  CHECK(eval_type(fn(fn(B(), B()), B()), thy, {}, {}) == 16);
  CHECK(eval_type(fn(I(), I()), thy, Model{3}, {}) == 27);
  CHECK(eval_type(A(), thy, {}, {{"A", 5}}) == 5);
  CHECK(kind_of([&] { eval_type(fn(fn(I(), B()), B()), thy, Model{16}, {}); }) ==
        ErrorKind::kCarrierOverflow);
  CHECK(kind_of([&] { eval_type(A(), thy, {}, {}); }) ==
        ErrorKind::kUnassignedTypeVar);
  CHECK(kind_of([&] { eval_type(HolType::app("nope", {}), thy, {}, {}); }) ==
        ErrorKind::kUnknownType);
  CHECK(kind_of([&] { value(Term::constant("c", B()), {}); }) ==
        ErrorKind::kUninterpretableConstant);
}

TEST_CASE_FIXTURE(Fixture, "select picks the least witness") {
  Term x = mk_var("x", I());
  Term c = mk_var("c", I());
  Valuation v{Model{3}, {}, {{c, 2}}};
  CHECK(eval_term(mk_select(x, mk_eq(x, c)), thy, v) == 2);
  CHECK(eval_term(mk_select(x, mk_neg(mk_eq(x, x))), thy, v) == 0);
  CHECK(eval_term(mk_select(x, mk_neg(mk_eq(x, Term::var("y", I())))), thy,
                  Valuation{Model{3}, {}, {{mk_var("y", I()), 0}}}) == 1);
  // Unapplied: the table of @ itself.
  Term sel = Term::constant("@", fn(fn(I(), B()), I()));
  Term P = mk_var("P", fn(I(), B()));
  CHECK(eval_term(mk_comb(sel, P), thy, Valuation{Model{3}, {}, {{P, 6}}}) == 1);
}

TEST_CASE_FIXTURE(Fixture, "axioms hold in finite models except infinity") {
  for (uint64_t n : {1, 2, 3}) {
    CHECK(is_valid({}, kernel.axiom_extensionality().concl(), thy, Model{n}).kind ==
          Verdict::Kind::kValid);
    CHECK(is_valid({}, kernel.axiom_choice().concl(), thy, Model{n}).kind ==
          Verdict::Kind::kValid);
    CHECK(is_valid({}, kernel.axiom_infinity().concl(), thy, Model{n}).kind ==
          Verdict::Kind::kInvalid);
  }
}

TEST_CASE_FIXTURE(Fixture, "is_valid finds counterexamples") {
  Verdict v = is_valid({}, mk_conj(p, q), thy, Model{});
  REQUIRE(v.kind == Verdict::Kind::kInvalid);
  REQUIRE(v.counterexample);
  CHECK_FALSE(holds_sequent({}, mk_conj(p, q), thy, *v.counterexample));
  CHECK(is_valid(std::vector<Term>{p}, p, thy, Model{}).kind == Verdict::Kind::kValid);
  Term peirce = mk_imp(mk_imp(mk_imp(p, q), p), p);
  CHECK(is_valid({}, peirce, thy, Model{}).kind == Verdict::Kind::kValid);
  // Too many valuations: sampled.
  ValidityOptions small;
  small.budget = 2;
  small.samples = 10;
  Verdict s = is_valid({}, mk_imp(p, mk_imp(q, p)), thy, Model{}, small);
  CHECK(s.kind == Verdict::Kind::kProbablyValid);
  CHECK(s.valuations == 10);
}

TEST_CASE_FIXTURE(Fixture, "type definitions are interpreted by their predicate") {
  Term x = mk_var("x", B());
  Term pred = mk_abs(x, mk_eq(x, mk_truth()));
  Theorem inhabited = kernel.eq_mp(
      kernel.refl(mk_truth()), logic.sym(logic.beta_conv(mk_comb(pred, mk_truth()))));
  auto [th1, th2] = kernel.new_basic_type_definition("one", "one_abs", "one_rep",
                                                     inhabited);
  HolType one = HolType::app("one", {});
  CHECK(eval_type(one, thy, {}, {}) == 1);
  CHECK(eval_type(fn(one, B()), thy, {}, {}) == 2);
  CHECK(is_valid({}, th1.concl(), thy, Model{}).kind == Verdict::Kind::kValid);
  CHECK(is_valid({}, th2.concl(), thy, Model{}).kind == Verdict::Kind::kValid);
  Term rep = Term::constant("one_rep", fn(one, B()));
  CHECK(eval_term(mk_comb(rep, mk_var("a", one)), thy,
                  Valuation{{}, {}, {{mk_var("a", one), 0}}}) == kTrue);
}

TEST_CASE_FIXTURE(Fixture, "large constants are unfolded instead of tabulated") {
  // ! at ((ind -> bool) -> bool) -> bool has no table under the cap.
  Term P = mk_var("P", fn(fn(I(), B()), B()));
  Term Q = mk_var("Q", fn(I(), B()));
  Term t = mk_forall(P, mk_imp(mk_comb(P, Q), mk_comb(P, Q)));
  Model m{3, 1 << 10};
  CHECK(is_valid({}, t, thy, m).kind == Verdict::Kind::kValid);
  Term bad = mk_forall(P, mk_comb(P, Q));
  CHECK(eval_term(bad, thy, Valuation{m, {}, {{Q, 0}}}) == kFalse);
}

TEST_CASE_FIXTURE(Fixture, "property: compiled evaluation agrees with the naive model") {
  TermGenerator gen = generator(21);
  int compared = 0;
  for (int i = 0; i < 400; ++i) {
    HolType ty = gen.chance(0.6) ? B() : gen.small_type();
    Term t = gen.term(ty);
    for (uint64_t n : {1, 2, 3}) {
      oracle::NaiveModel naive(thy, n, {{"A", 2}});
      Interpretation interp(thy, Model{n}, {{"A", 2}});
      Program prog = interp.program();
      uint32_t h;
      try {
        h = prog.add(t);
      } catch (const HolError& e) {
        CHECK(e.kind() == ErrorKind::kCarrierOverflow);
        continue;
      }
      std::mt19937_64 rng(i);
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<uint64_t> values;
        oracle::NaiveModel::Env env;
        for (size_t k = 0; k < prog.free_vars().size(); ++k) {
          uint64_t v = std::uniform_int_distribution<uint64_t>(
              0, prog.free_carriers()[k] - 1)(rng);
          values.push_back(v);
          env.emplace_back(prog.free_vars()[k],
                           oracle::Value(naive.elements(prog.free_vars()[k].type())[v]));
        }
        uint64_t got = prog.run(h, values);
        uint64_t want;
        try {
          want = naive.index_of(t.type(), naive.eval(t, env));
        } catch (const std::exception& e) {
          FAIL(e.what() << " in " << print_term(t));
        }
        CHECK_MESSAGE(got == want, print_term(t));
        ++compared;
      }
    }
  }
  CHECK(compared > 1000);
}

TEST_CASE_FIXTURE(Fixture, "property: alpha-invariance and the substitution lemma") {
  TermGenerator gen = generator(22);
  for (int i = 0; i < 300; ++i) {
    Term t = gen.boolean();
    Term t2 = gen.alpha_variant(t);
    HolType ty = gen.small_type();
    Term x = gen.var(ty);
    Term s = gen.term(ty, 2);
    Term substituted = vsubst(TermSubst{{x, s}}, t);
    Interpretation interp(thy, Model{2}, {{"A", 2}});
    Program prog = interp.program();
    uint32_t ht, ht2, hs, hsub;
    try {
      ht = prog.add(t);
      ht2 = prog.add(t2);
      hs = prog.add(s);
      hsub = prog.add(substituted);
    } catch (const HolError& e) {
      CHECK(e.kind() == ErrorKind::kCarrierOverflow);
      continue;
    }
    std::mt19937_64 rng(i);
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<uint64_t> values;
      for (uint64_t c : prog.free_carriers())
        values.push_back(std::uniform_int_distribution<uint64_t>(0, c - 1)(rng));
      CHECK(prog.run(ht, values) == prog.run(ht2, values));
      // v[x := [[s]]v]
      std::vector<uint64_t> updated = values;
      uint64_t sv = prog.run(hs, values);
      for (size_t k = 0; k < prog.free_vars().size(); ++k)
        if (prog.free_vars()[k] == x) updated[k] = sv;
      CHECK_MESSAGE(prog.run(hsub, values) == prog.run(ht, updated), print_term(t));
    }
  }
}
