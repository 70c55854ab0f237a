#include "doctest.h"
#include "microhol/bootstrap.h"
#include "microhol/error.h"
#include "microhol/fuzz.h"
#include "microhol/printer.h"
#include "microhol/syntax.h"
#include "support/debruijn.h"

using namespace microhol;

namespace {

HolType B() { return HolType::bool_type(); }
HolType fn(HolType a, HolType b) { return HolType::fun(a, b); }

struct Fixture {
  Kernel kernel;
  Logic logic{kernel};
  const Theory& thy() { return kernel.theory(); }
  Term parse(const std::string& s) { return parse_term(s, thy()); }
};

}  // namespace

TEST_CASE("types") {
  CHECK(parse_type("bool") == B());
  CHECK(parse_type("A -> B -> C") ==
        fn(HolType::var("A"), fn(HolType::var("B"), HolType::var("C"))));
  CHECK(parse_type("(A -> B) -> C") ==
        fn(fn(HolType::var("A"), HolType::var("B")), HolType::var("C")));
  CHECK(parse_type("fun(bool, ind)") == fn(B(), HolType::ind_type()));
  CHECK(parse_type("list(A)") == HolType::app("list", {HolType::var("A")}));
  Kernel k;
  CHECK_THROWS_AS(parse_type("list(A)", &k.theory()), HolError);
  CHECK_THROWS_AS(parse_type("bool(A)", &k.theory()), SyntaxError);
}

TEST_CASE_FIXTURE(Fixture, "simple terms") {
  Term x = mk_var("x", B());
  CHECK(parse("\\x:bool. x") == Term::abs(x, x));
  Term id = parse("(\\x:A. f x) = f");
  HolType a = HolType::var("A");
  Term f = mk_var("f", fn(a, HolType::var("B")));
  CHECK(oracle::alpha_equiv(id, mk_eq(Term::abs(mk_var("x", a), Term::comb(f, mk_var("x", a))), f)));
  CHECK(parse("p /\\ q ==> p") ==
        mk_imp(mk_conj(mk_var("p", B()), mk_var("q", B())), mk_var("p", B())));
  CHECK(parse("~p \\/ q") == mk_disj(mk_neg(mk_var("p", B())), mk_var("q", B())));
  CHECK(parse("!x:bool. x ==> x") ==
        mk_forall(x, mk_imp(x, x)));
  CHECK(parse("a = b = c").type() == B());
  // A free variable annotated once fixes the bare occurrences.
  Term t = parse("x:ind = x");
  CHECK(eq_lhs(t) == eq_rhs(t));
  CHECK(parse("(=) T").type() == fn(B(), B()));
  CHECK(parse("(@:(ind -> bool) -> ind)").type() == fn(fn(HolType::ind_type(), B()), HolType::ind_type()));
}

TEST_CASE_FIXTURE(Fixture, "unconstrained types become type variables") {
  Term t = parse("x = y");
  CHECK(eq_lhs(t).type() == HolType::var("A"));
  CHECK(eq_rhs(t).type() == HolType::var("A"));
  ParseContext ctx;
  ctx.free_types.emplace("x", HolType::ind_type());
  CHECK(parse_term("x = y", thy(), ctx).type() == B());
  CHECK(eq_rhs(parse_term("x = y", thy(), ctx)).type() == HolType::ind_type());
}

TEST_CASE_FIXTURE(Fixture, "errors") {
  auto position = [&](const std::string& s) -> std::pair<size_t, size_t> {
    try {
      parse(s);
    } catch (const SyntaxError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK_THROWS_AS(parse("\\x. x"), SyntaxError);
  CHECK(position("\\x. x") == std::pair<size_t, size_t>{1, 3});
  CHECK(position("p /\\") == std::pair<size_t, size_t>{1, 5});
  CHECK(position("p\n  ) q") == std::pair<size_t, size_t>{2, 3});
  CHECK(position("p # q") == std::pair<size_t, size_t>{1, 3});
  CHECK(position("(p") == std::pair<size_t, size_t>{1, 3});
  try {
    parse("~(x:ind)");
    FAIL("accepted an ill-typed term");
  } catch (const HolError& e) {
    CHECK(e.kind() == ErrorKind::kIllTyped);
  }
  try {
    parse("x:frob");
    FAIL("accepted an unknown type");
  } catch (const HolError& e) {
    CHECK(e.kind() == ErrorKind::kUnknownType);
  }
  CHECK_THROWS_AS(parse("f f"), HolError);  // occurs check
}

TEST_CASE_FIXTURE(Fixture, "sequents") {
  Sequent s = parse_sequent("p, p ==> q |- q", thy());
  REQUIRE(s.hyps.size() == 2);
  CHECK(s.concl == mk_var("q", B()));
  CHECK(parse_sequent("|- T", thy()).hyps.empty());
  CHECK_THROWS_AS(parse_sequent("|- x:ind", thy()), HolError);
}

TEST_CASE_FIXTURE(Fixture, "parse inverts print on 10^4 random terms") {
  TermGenOptions o = fuzz_term_options();
  o.max_depth = 8;
  TermGenerator gen(o, 2024);
  PrintOptions po = thy().print_options();
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    HolType ty = i % 2 ? B() : gen.small_type();
    Term t = gen.term(ty);
    std::string s = print_term(t, po);
    try {
      Term back = parse(s);
      if (!oracle::alpha_equiv(back, t)) {
        if (++failures < 5) MESSAGE("mismatch: " << s << " -> " << print_term(back, po));
      }
    } catch (const HolError& e) {
      if (++failures < 5) MESSAGE("refused: " << s << ": " << e.what());
    }
  }
  CHECK(failures == 0);
}
