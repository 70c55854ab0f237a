#include <algorithm>

#include "doctest.h"
#include "microhol/error.h"
#include "microhol/generate.h"
#include "microhol/printer.h"
#include "microhol/term.h"
#include "support/debruijn.h"

using namespace microhol;

namespace {

HolType B() { return HolType::bool_type(); }
HolType I() { return HolType::ind_type(); }
HolType A() { return HolType::var("A"); }
HolType fn(HolType a, HolType b) { return HolType::fun(a, b); }

TermGenOptions gen_options() {
  TermGenOptions o;
  o.max_depth = 6;
  o.use_select = true;
  return o;
}

}  // namespace

TEST_CASE("type_of") {
  Term x = mk_var("x", B());
  CHECK(type_of(x) == B());
  Term eq = Term::constant("=", fn(B(), fn(B(), B())));
  CHECK(type_of(mk_comb(eq, x)) == fn(B(), B()));
  Term xi = mk_var("x", I());
  CHECK(type_of(mk_abs(xi, xi)) == fn(I(), I()));
}

TEST_CASE("mk_comb rejects non-function rators and domain mismatch") {
  Term x = mk_var("x", B());
  Term y = mk_var("y", B());
  Term f = mk_var("f", fn(B(), B()));
  CHECK(type_of(mk_comb(f, x)) == B());
  CHECK(type_of(mk_eq(mk_var("x", I()), mk_var("y", I()))) == B());
  CHECK_THROWS_AS(mk_comb(x, y), HolError);
  CHECK_THROWS_AS(mk_comb(f, mk_var("z", I())), HolError);
  CHECK_THROWS_AS(mk_eq(x, mk_var("z", I())), HolError);
}

TEST_CASE("free_vars") {
  Term x = mk_var("x", B());
  Term y = mk_var("y", B());
  Term f = mk_var("f", fn(fn(B(), B()), B()));
  CHECK(free_vars(x).size() == 1);
  CHECK(free_vars(mk_abs(x, x)).empty());
  auto fv = free_vars(mk_comb(f, mk_abs(x, y)));
  REQUIRE(fv.size() == 2);
  CHECK(fv[0] == f);
  CHECK(fv[1] == y);
  CHECK(oracle::free_vars(mk_comb(f, mk_abs(x, y))) ==
        std::set<std::string>{"f:(bool -> bool) -> bool", "y:bool"});
}

TEST_CASE("same name at two types is two variables") {
  Term xb = mk_var("x", B());
  Term xi = mk_var("x", I());
  Term t = mk_abs(xb, mk_eq(xi, xi));
  auto fv = free_vars(t);
  REQUIRE(fv.size() == 1);
  CHECK(fv[0] == xi);
}

TEST_CASE("alpha_equiv examples") {
  Term x = mk_var("x", B());
  Term y = mk_var("y", B());
  CHECK(alpha_equiv(mk_abs(x, x), mk_abs(y, y)));
  Term k1 = mk_abs(x, mk_abs(y, x));
  Term k2 = mk_abs(y, mk_abs(x, y));
  Term k3 = mk_abs(x, mk_abs(y, y));
  CHECK(alpha_equiv(k1, k2));
  CHECK(oracle::debruijn(k1) == oracle::debruijn(k2));
  CHECK_FALSE(alpha_equiv(k1, k3));
  CHECK(term_compare(k1, k3) != 0);
  CHECK(term_compare(k1, k3) == -term_compare(k3, k1));
}

TEST_CASE("vsubst examples") {
  Term x = mk_var("x", B());
  Term y = mk_var("y", B());
  CHECK(vsubst(TermSubst{{x, y}}, x) == y);
  // [y/x] (\y. x) renames the binder.
  Term t = mk_abs(y, x);
  Term r = vsubst(TermSubst{{x, y}}, t);
  REQUIRE(r.is_abs());
  CHECK(r.bvar().name() == "y'");
  CHECK(r.body() == y);
  // Without the renaming the result would capture.
  CHECK(oracle::debruijn(r) != oracle::debruijn(mk_abs(y, y)));
  CHECK(oracle::free_vars(r) == std::set<std::string>{"y:bool"});
  // No free x: identical term.
  Term u = mk_abs(x, mk_eq(x, y));
  CHECK(vsubst(TermSubst{{x, y}}, u).same_node(u));
}

TEST_CASE("TermSubst rejects ill-typed and duplicate entries") {
  Term x = mk_var("x", B());
  TermSubst s;
  CHECK_THROWS_AS(s.add(x, mk_var("y", I())), HolError);
  CHECK_THROWS_AS(s.add(Term::constant("T", B()), x), HolError);
  s.add(x, mk_var("y", B()));
  CHECK_THROWS_AS(s.add(x, mk_var("z", B())), HolError);
}

TEST_CASE("inst_type examples") {
  Term xa = mk_var("x", A());
  CHECK(inst_type({{"A", B()}}, xa) == mk_var("x", B()));
  Term eq = Term::constant("=", fn(A(), fn(A(), B())));
  CHECK(inst_type({{"A", B()}}, eq).type() == fn(B(), fn(B(), B())));
  // \x:bool. (x:A): the binder must be renamed so the free x stays free.
  Term xb = mk_var("x", B());
  Term t = mk_abs(xb, xa);
  Term r = inst_type({{"A", B()}}, t);
  REQUIRE(r.is_abs());
  CHECK(r.bvar().name() != "x");
  CHECK(r.body() == xb);
  // Oracle: rename the binder first, then instantiate.
  Term renamed = mk_abs(mk_var("w", B()), xa);
  Term expected = mk_abs(mk_var("w", B()), xb);
  CHECK(inst_type({{"A", B()}}, renamed) == expected);
  CHECK(oracle::alpha_equiv(r, expected));
}

TEST_CASE("variant appends primes") {
  Term x = mk_var("x", B());
  std::vector<Term> avoid = {x, mk_var("x'", B())};
  CHECK(variant(avoid, x).name() == "x''");
  CHECK(variant(avoid, mk_var("x", I())).name() == "x");
}

TEST_CASE("property: term_compare agrees with the nameless oracle") {
  TermGenerator gen(gen_options(), 11);
  std::vector<Term> terms;
  for (int i = 0; i < 300; ++i) {
    Term t = gen.boolean();
    terms.push_back(t);
    terms.push_back(gen.alpha_variant(t));
  }
  for (size_t i = 0; i < terms.size(); ++i) {
    for (size_t j = i; j < std::min(terms.size(), i + 8); ++j) {
      bool same = oracle::alpha_equiv(terms[i], terms[j]);
      CHECK(alpha_equiv(terms[i], terms[j]) == same);
      CHECK((term_compare(terms[i], terms[j]) == 0) == same);
      CHECK(term_compare(terms[i], terms[j]) ==
            -term_compare(terms[j], terms[i]));
    }
  }
  // Sorting then deduplicating keeps one member per class.
  std::vector<Term> sorted = terms;
  std::sort(sorted.begin(), sorted.end(), AlphaLess{});
  sorted.erase(std::unique(sorted.begin(), sorted.end(),
                           [](const Term& a, const Term& b) {
                             return alpha_equiv(a, b);
                           }),
               sorted.end());
  std::set<std::string> classes;
  for (const auto& t : terms) classes.insert(oracle::debruijn(t));
  CHECK(sorted.size() == classes.size());
}

TEST_CASE("property: term_compare is transitive") {
  TermGenerator gen(gen_options(), 12);
  std::vector<Term> terms;
  for (int i = 0; i < 60; ++i) terms.push_back(gen.term(gen.small_type(), 3));
  for (const auto& a : terms)
    for (const auto& b : terms)
      for (const auto& c : terms)
        if (term_compare(a, b) <= 0 && term_compare(b, c) <= 0)
          CHECK(term_compare(a, c) <= 0);
}

TEST_CASE("property: free_vars agrees with the oracle") {
  TermGenerator gen(gen_options(), 13);
  for (int i = 0; i < 500; ++i) {
    Term t = gen.boolean();
    std::set<std::string> mine;
    for (const auto& v : free_vars(t))
      mine.insert(v.name() + ":" + print_type(v.type()));
    CHECK(mine == oracle::free_vars(t));
  }
}

TEST_CASE("property: vsubst preserves types and alpha-invariance") {
  TermGenerator gen(gen_options(), 14);
  for (int i = 0; i < 500; ++i) {
    Term t = gen.boolean();
    Term t2 = gen.alpha_variant(t);
    HolType ty = gen.small_type();
    Term v = gen.var(ty);
    Term image = gen.term(ty, 3);
    TermSubst s{{v, image}};
    Term r1 = vsubst(s, t);
    Term r2 = vsubst(s, t2);
    CHECK(r1.type() == t.type());
    CHECK(alpha_equiv(r1, r2));
    if (!var_free_in(v, t)) CHECK(alpha_equiv(r1, t));
    // No capture: free variables of the result are those of the image plus
    // the others of t.
    std::set<std::string> expect;
    for (const auto& f : free_vars(t))
      if (!(f == v)) expect.insert(f.name() + ":" + print_type(f.type()));
    if (var_free_in(v, t))
      for (const auto& f : free_vars(image))
        expect.insert(f.name() + ":" + print_type(f.type()));
    CHECK(oracle::free_vars(r1) == expect);
  }
}

TEST_CASE("property: inst_type identity and composition") {
  TermGenerator gen(gen_options(), 15);
  for (int i = 0; i < 300; ++i) {
    Term t = gen.boolean();
    CHECK(alpha_equiv(inst_type({{"A", A()}}, t), t));
    TypeSubst s1 = {{"A", fn(HolType::var("B"), B())}};
    TypeSubst s2 = {{"B", I()}};
    TypeSubst composed = {{"A", type_subst(s2, fn(HolType::var("B"), B()))},
                          {"B", I()}};
    CHECK(alpha_equiv(inst_type(s2, inst_type(s1, t)),
                      inst_type(composed, t)));
    // Free variables map one-to-one onto instantiated free variables unless
    // two of them become identified.
    Term r = inst_type({{"A", B()}}, t);
    std::set<std::string> expect;
    for (const auto& f : free_vars(t))
      expect.insert(f.name() + ":" + print_type(type_subst({{"A", B()}}, f.type())));
    CHECK(oracle::free_vars(r) == expect);
  }
}

TEST_CASE("property: alpha_equiv is an equivalence") {
  TermGenerator gen(gen_options(), 16);
  for (int i = 0; i < 300; ++i) {
    Term t = gen.boolean();
    Term u = gen.alpha_variant(t);
    Term w = gen.alpha_variant(u);
    CHECK(alpha_equiv(t, t));
    CHECK(alpha_equiv(t, u) == alpha_equiv(u, t));
    CHECK(alpha_equiv(t, u));
    CHECK(alpha_equiv(u, w));
    CHECK(alpha_equiv(t, w));
  }
}
