#include "microhol/bootstrap.h"

#include <cstdint>
#include <utility>

#include "microhol/error.h"
#include "microhol/printer.h"

namespace microhol {

namespace {

HolType bool_ty() { return HolType::bool_type(); }
HolType pred_ty(const HolType& ty) { return HolType::fun(ty, bool_ty()); }
HolType binop_ty() {
  return HolType::fun(bool_ty(), HolType::fun(bool_ty(), bool_ty()));
}
HolType quant_ty(const HolType& ty) {
  return HolType::fun(pred_ty(ty), bool_ty());
}

[[noreturn]] void rule_fail(const char* rule, const std::string& msg) {
  fail(ErrorKind::kDerivedRule, std::string(rule) + ": " + msg);
}

}  // namespace

Term mk_truth() { return Term::constant("T", bool_ty()); }
Term mk_falsity() { return Term::constant("F", bool_ty()); }
Term mk_neg(const Term& p) {
  return Term::comb(Term::constant("~", HolType::fun(bool_ty(), bool_ty())), p);
}
Term mk_conj(const Term& p, const Term& q) {
  return mk_binop(Term::constant("/\\", binop_ty()), p, q);
}
Term mk_disj(const Term& p, const Term& q) {
  return mk_binop(Term::constant("\\/", binop_ty()), p, q);
}
Term mk_imp(const Term& p, const Term& q) {
  return mk_binop(Term::constant("==>", binop_ty()), p, q);
}
Term mk_iff(const Term& p, const Term& q) { return mk_eq(p, q); }
Term mk_forall(const Term& v, const Term& body) {
  return Term::comb(Term::constant("!", quant_ty(v.type())), Term::abs(v, body));
}
Term mk_exists(const Term& v, const Term& body) {
  return Term::comb(Term::constant("?", quant_ty(v.type())), Term::abs(v, body));
}
Term mk_select(const Term& v, const Term& body) {
  return Term::comb(
      Term::constant("@", HolType::fun(pred_ty(v.type()), v.type())),
      Term::abs(v, body));
}
Term list_mk_conj(const std::vector<Term>& ps) {
  if (ps.empty()) return mk_truth();
  Term out = ps.back();
  for (size_t i = ps.size() - 1; i-- > 0;) out = mk_conj(ps[i], out);
  return out;
}

bool is_neg(const Term& t) {
  return t.is_comb() && t.rator().is_const() && t.rator().name() == "~" &&
         t.rand().type().is_bool();
}
bool is_binop(const std::string& op, const Term& t) {
  return t.is_comb() && t.rator().is_comb() && t.rator().rator().is_const() &&
         t.rator().rator().name() == op;
}
bool is_conj(const Term& t) { return is_binop("/\\", t); }
bool is_disj(const Term& t) { return is_binop("\\/", t); }
bool is_imp(const Term& t) { return is_binop("==>", t); }
bool is_iff(const Term& t) { return is_eq(t) && t.rand().type().is_bool(); }
bool is_binder(const std::string& q, const Term& t) {
  return t.is_comb() && t.rator().is_const() && t.rator().name() == q &&
         t.rand().is_abs();
}
bool is_forall(const Term& t) { return is_binder("!", t); }
bool is_exists(const Term& t) { return is_binder("?", t); }

LogicSignature install_logic(Kernel& kernel) {
  HolType b = bool_ty();
  HolType a = HolType::var("A");
  HolType bb = HolType::var("B");
  Term p = mk_var("p", b);
  Term q = mk_var("q", b);
  Term r = mk_var("r", b);

  Term id = mk_abs(p, p);
  Theorem truth_def = kernel.new_basic_definition("T", mk_eq(id, id));
  Term truth = eq_lhs(truth_def.concl());

  Term f = mk_var("f", binop_ty());
  Theorem conj_def = kernel.new_basic_definition(
      "/\\",
      mk_abs(p, mk_abs(q, mk_eq(mk_abs(f, mk_comb(mk_comb(f, p), q)),
                                mk_abs(f, mk_comb(mk_comb(f, truth),
                                                  truth))))));
  Term conj = eq_lhs(conj_def.concl());

  Theorem imp_def = kernel.new_basic_definition(
      "==>", mk_abs(p, mk_abs(q, mk_eq(mk_binop(conj, p, q), p))));
  Term imp = eq_lhs(imp_def.concl());

  Term pv = mk_var("P", pred_ty(a));
  Term x = mk_var("x", a);
  Theorem forall_def = kernel.new_basic_definition(
      "!", mk_abs(pv, mk_eq(pv, mk_abs(x, truth))));
  Term forall = eq_lhs(forall_def.concl());
  auto all = [&](const Term& v, const Term& body) {
    return mk_comb(Term::constant("!", quant_ty(v.type())), mk_abs(v, body));
  };

  Theorem exists_def = kernel.new_basic_definition(
      "?", mk_abs(pv, all(q, mk_binop(imp, all(x, mk_binop(imp, mk_comb(pv, x), q)),
                                      q))));
  Term exists = eq_lhs(exists_def.concl());

  Theorem disj_def = kernel.new_basic_definition(
      "\\/", mk_abs(p, mk_abs(q, all(r, mk_binop(imp, mk_binop(imp, p, r),
                                                 mk_binop(imp,
                                                          mk_binop(imp, q, r),
                                                          r))))));
  Term disj = eq_lhs(disj_def.concl());

  Theorem falsity_def = kernel.new_basic_definition("F", all(p, p));
  Term falsity = eq_lhs(falsity_def.concl());

  Theorem neg_def =
      kernel.new_basic_definition("~", mk_abs(p, mk_binop(imp, p, falsity)));
  Term neg = eq_lhs(neg_def.concl());

  Term fn = mk_var("f", HolType::fun(a, bb));
  Term x1 = mk_var("x1", a);
  Term x2 = mk_var("x2", a);
  Theorem one_one_def = kernel.new_basic_definition(
      "ONE_ONE",
      mk_abs(fn, all(x1, all(x2, mk_binop(imp,
                                          mk_eq(mk_comb(fn, x1),
                                                mk_comb(fn, x2)),
                                          mk_eq(x1, x2))))));
  Term one_one = eq_lhs(one_one_def.concl());

  Term y = mk_var("y", bb);
  Theorem onto_def = kernel.new_basic_definition(
      "ONTO",
      mk_abs(fn, all(y, mk_comb(Term::constant("?", quant_ty(a)),
                                mk_abs(x, mk_eq(y, mk_comb(fn, x)))))));
  Term onto = eq_lhs(onto_def.concl());

  return LogicSignature{truth,     conj,        imp,         forall,
                        exists,    disj,        falsity,     neg,
                        one_one,   onto,        truth_def,   conj_def,
                        imp_def,   forall_def,  exists_def,  disj_def,
                        falsity_def, neg_def,   one_one_def, onto_def};
}

namespace {

Theorem prove_truth(Kernel& k, const LogicSignature& sig) {
  const Term& id = eq_lhs(eq_rhs(sig.truth_def.concl()));
  // ⊢ T = (id = id), so ⊢ (id = id) = T and then ⊢ T.
  Theorem def = sig.truth_def;
  Theorem eq_ref = k.refl(id);
  // sym by hand: the Logic object is not ready yet.
  const Term& tm = def.concl();
  Theorem lth = k.refl(eq_lhs(tm));
  Theorem sym = k.eq_mp(
      lth, k.mk_comb(k.mk_comb(k.refl(tm.rator().rator()), def), lth));
  return k.eq_mp(eq_ref, sym);
}

}  // namespace

Logic::Logic(Kernel& kernel) : Logic(kernel, install_logic(kernel)) {}

Logic::Logic(Kernel& kernel, LogicSignature sig)
    : kernel_(kernel),
      sig_(std::move(sig)),
      truth_(prove_truth(kernel, sig_)),
      em_(truth_),
      not_not_(truth_),
      not_forall_(truth_),
      not_exists_(truth_) {
  HolType b = bool_ty();
  Term t = mk_var("t", b);
  Term x = mk_var("x", b);
  Term fals = mk_falsity();
  Term tru = mk_truth();

  // Excluded middle, following Diaconescu: choose from
  // P1 = \x. (x = F) \/ t and P2 = \x. (x = T) \/ t.
  {
    Term p1 = mk_abs(x, mk_disj(mk_eq(x, fals), t));
    Term p2 = mk_abs(x, mk_disj(mk_eq(x, tru), t));
    Theorem ax = kernel_.inst_type({{"A", b}}, kernel_.axiom_choice());
    Term pv = mk_var("P", pred_ty(b));
    auto chosen = [&](const Term& pred, const Term& witness) {
      Theorem inst = kernel_.inst(TermSubst{{pv, pred}, {x, witness}}, ax);
      Theorem base = disj1(kernel_.refl(witness), t);
      Theorem at = kernel_.eq_mp(
          base, sym(beta_conv(Term::comb(pred, witness))));
      Theorem sel = mp(inst, at);
      return kernel_.eq_mp(sel, beta_conv(sel.concl()));
    };
    Theorem a_cases = chosen(p1, fals);  // ⊢ (@P1 = F) \/ t
    Theorem b_cases = chosen(p2, tru);   // ⊢ (@P2 = T) \/ t
    Theorem at = kernel_.assume(t);
    Theorem em_t = disj1(at, mk_neg(t));
    Theorem d1 = eqt_intro(disj2(mk_eq(x, fals), at));
    Theorem d2 = eqt_intro(disj2(mk_eq(x, tru), at));
    Theorem funs = kernel_.abs(x, kernel_.trans(d1, sym(d2)));
    Theorem sel_eq = ap_term(select_const(b), funs);  // t ⊢ @P1 = @P2
    Theorem h1 = kernel_.assume(binop_lhs(a_cases.concl()));
    Theorem h2 = kernel_.assume(binop_lhs(b_cases.concl()));
    Theorem f_eq_t = kernel_.trans(sym(h1), kernel_.trans(sel_eq, h2));
    Theorem not_t = not_intro(disch(t, eqt_elim(f_eq_t)));
    Theorem right = disj2(t, not_t);
    Theorem inner = disj_cases(b_cases, right, em_t);
    em_ = gen(t, disj_cases(a_cases, inner, em_t));
  }

  // ⊢ !t. ~~t = t
  {
    Theorem at = kernel_.assume(t);
    Theorem ant = kernel_.assume(mk_neg(t));
    Theorem nnt = not_intro(disch(mk_neg(t), absurd(ant, at)));
    Theorem fwd = disch(t, nnt);
    Theorem annt = kernel_.assume(mk_neg(mk_neg(t)));
    Theorem back = disch(annt.concl(), ccontr(t, absurd(annt, ant)));
    not_not_ = gen(t, imp_antisym(back, fwd));
  }

  // ⊢ !P. ~(!x. P x) = ?x. ~P x  and  ⊢ !P. ~(?x. P x) = !x. ~P x
  {
    HolType a = HolType::var("A");
    Term pv = mk_var("P", pred_ty(a));
    Term xa = mk_var("x", a);
    Term px = mk_comb(pv, xa);
    Term npx = mk_neg(px);
    Term all_p = mk_forall(xa, px);
    Term ex_np = mk_exists(xa, npx);
    Term ex_p = mk_exists(xa, px);
    Term all_np = mk_forall(xa, npx);

    // ~(!x. P x) ==> ?x. ~P x
    Theorem n_all = kernel_.assume(mk_neg(all_p));
    Theorem n_ex = kernel_.assume(mk_neg(ex_np));
    Theorem got_ex = exists_intro(ex_np, xa, kernel_.assume(npx));
    Theorem pxth = ccontr(px, absurd(n_ex, got_ex));
    Theorem fwd1 =
        disch(n_all.concl(), ccontr(ex_np, absurd(n_all, gen(xa, pxth))));
    // ?x. ~P x ==> ~(!x. P x)
    Theorem e1 = kernel_.assume(ex_np);
    Theorem a1 = kernel_.assume(all_p);
    Theorem f1 = choose(xa, e1, absurd(kernel_.assume(npx), spec(xa, a1)));
    Theorem back1 = disch(ex_np, not_intro(disch(all_p, f1)));
    not_forall_ = gen(pv, imp_antisym(fwd1, back1));

    // ~(?x. P x) ==> !x. ~P x
    Theorem n_ex2 = kernel_.assume(mk_neg(ex_p));
    Theorem got = exists_intro(ex_p, xa, kernel_.assume(px));
    Theorem npx_th = not_intro(disch(px, absurd(n_ex2, got)));
    Theorem fwd2 = disch(n_ex2.concl(), gen(xa, npx_th));
    // !x. ~P x ==> ~(?x. P x)
    Theorem a2 = kernel_.assume(all_np);
    Theorem e2 = kernel_.assume(ex_p);
    Theorem f2 = choose(xa, e2, absurd(spec(xa, a2), kernel_.assume(px)));
    Theorem back2 = disch(all_np, not_intro(disch(ex_p, f2)));
    not_exists_ = gen(pv, imp_antisym(fwd2, back2));
  }
}

Term Logic::select_const(const HolType& ty) const {
  return Term::constant("@", HolType::fun(pred_ty(ty), ty));
}

Theorem Logic::inst_def(const Theorem& def, const TypeSubst& theta) const {
  bool trivial = true;
  for (const auto& [name, ty] : theta)
    if (!ty.is_var() || ty.name() != name) trivial = false;
  return trivial ? def : kernel_.inst_type(theta, def);
}

Theorem Logic::sym(const Theorem& th) const {
  const Term& tm = th.concl();
  if (!is_eq(tm)) rule_fail("SYM", "not an equation: " + debug_string(tm));
  Theorem lth = kernel_.refl(eq_lhs(tm));
  return kernel_.eq_mp(
      lth, kernel_.mk_comb(kernel_.mk_comb(kernel_.refl(tm.rator().rator()),
                                           th),
                           lth));
}

Theorem Logic::ap_term(const Term& f, const Theorem& th) const {
  return kernel_.mk_comb(kernel_.refl(f), th);
}

Theorem Logic::ap_thm(const Theorem& th, const Term& x) const {
  return kernel_.mk_comb(th, kernel_.refl(x));
}

Theorem Logic::beta_conv(const Term& redex) const {
  if (!redex.is_comb() || !redex.rator().is_abs())
    rule_fail("BETA_CONV", "not a redex: " + debug_string(redex));
  const Term& abs = redex.rator();
  const Term& x = abs.bvar();
  if (redex.rand() == x) return kernel_.beta(redex);
  Theorem th = kernel_.beta(Term::comb(abs, x));
  return kernel_.inst(TermSubst{{x, redex.rand()}}, th);
}

namespace {

// Leading redexes of `t`, reducing at most `steps` of them.
Theorem head_beta_n(const Logic& logic, const Term& t, size_t steps) {
  Kernel& k = logic.kernel();
  std::optional<Theorem> acc;
  Term cur = t;
  for (size_t n = 0; n < steps; ++n) {
    auto [head, args] = strip_comb(cur);
    if (!head.is_abs() || args.empty()) break;
    Theorem step = logic.beta_conv(Term::comb(head, args[0]));
    for (size_t i = 1; i < args.size(); ++i) step = logic.ap_thm(step, args[i]);
    acc = acc ? k.trans(*acc, step) : step;
    cur = eq_rhs(step.concl());
  }
  return acc ? *acc : k.refl(t);
}

std::optional<Theorem> beta_norm_opt(const Logic& logic, const Term& t) {
  Kernel& k = logic.kernel();
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      return std::nullopt;
    case Term::Kind::kAbs: {
      auto body = beta_norm_opt(logic, t.body());
      if (!body) return std::nullopt;
      return k.abs(t.bvar(), *body);
    }
    case Term::Kind::kComb: {
      auto l = beta_norm_opt(logic, t.rator());
      auto r = beta_norm_opt(logic, t.rand());
      std::optional<Theorem> th;
      if (l || r)
        th = k.mk_comb(l ? *l : k.refl(t.rator()), r ? *r : k.refl(t.rand()));
      Term cur = th ? eq_rhs(th->concl()) : t;
      if (!cur.rator().is_abs()) return th;
      Theorem b = logic.beta_conv(cur);
      th = th ? k.trans(*th, b) : b;
      auto rest = beta_norm_opt(logic, eq_rhs(b.concl()));
      if (rest) th = k.trans(*th, *rest);
      return th;
    }
  }
  return std::nullopt;
}

}  // namespace

Theorem Logic::head_beta(const Term& t) const {
  return head_beta_n(*this, t, SIZE_MAX);
}

Theorem Logic::beta_norm(const Term& t) const {
  auto th = beta_norm_opt(*this, t);
  return th ? *th : kernel_.refl(t);
}

Theorem Logic::alpha_lhs(const Term& a, const Theorem& th) const {
  if (eq_lhs(th.concl()) == a) return th;
  return kernel_.trans(kernel_.refl(a), th);
}

Theorem Logic::alpha(const Term& p, const Theorem& th) const {
  if (th.concl() == p) return th;
  return kernel_.eq_mp(th, kernel_.refl(p));
}

Theorem Logic::eqt_intro(const Theorem& th) const {
  return kernel_.deduct_antisym(th, truth_);
}

Theorem Logic::eqt_elim(const Theorem& th) const {
  return kernel_.eq_mp(truth_, sym(th));
}

Theorem Logic::unfold(const Term& t) const {
  auto [head, args] = strip_comb(t);
  if (!head.is_const()) rule_fail("unfold", "no constant at head");
  const Theorem* def = nullptr;
  const std::string& n = head.name();
  if (n == "T") def = &sig_.truth_def;
  else if (n == "/\\") def = &sig_.conj_def;
  else if (n == "==>") def = &sig_.imp_def;
  else if (n == "!") def = &sig_.forall_def;
  else if (n == "?") def = &sig_.exists_def;
  else if (n == "\\/") def = &sig_.disj_def;
  else if (n == "F") def = &sig_.falsity_def;
  else if (n == "~") def = &sig_.neg_def;
  else if (n == "ONE_ONE") def = &sig_.one_one_def;
  else if (n == "ONTO") def = &sig_.onto_def;
  else rule_fail("unfold", "not a logical constant: " + n);
  TypeSubst theta;
  if (!type_match(eq_lhs(def->concl()).type(), head.type(), theta))
    rule_fail("unfold", "constant " + n + " at a foreign type");
  Theorem th = inst_def(*def, theta);
  for (const auto& arg : args) th = ap_thm(th, arg);
  return kernel_.trans(th, head_beta_n(*this, eq_rhs(th.concl()), args.size()));
}

Theorem Logic::conj(const Theorem& th1, const Theorem& th2) const {
  Term goal = mk_conj(th1.concl(), th2.concl());
  Theorem u = unfold(goal);
  const Term& body = eq_rhs(u.concl());
  std::vector<Term> avoid(th1.hyps().begin(), th1.hyps().end());
  avoid.insert(avoid.end(), th2.hyps().begin(), th2.hyps().end());
  avoid.push_back(goal);
  Term f = variant(avoid, eq_lhs(body).bvar());
  Theorem e = kernel_.mk_comb(ap_term(f, eqt_intro(th1)), eqt_intro(th2));
  return kernel_.eq_mp(kernel_.abs(f, e), sym(u));
}

namespace {

Theorem conjunct(const Logic& logic, const Theorem& th, bool first) {
  if (!is_conj(th.concl()))
    rule_fail(first ? "CONJUNCT1" : "CONJUNCT2",
              "not a conjunction: " + debug_string(th.concl()));
  Kernel& k = logic.kernel();
  Theorem e = k.eq_mp(th, logic.unfold(th.concl()));
  HolType b = bool_ty();
  Term x = mk_var("x", b);
  Term y = mk_var("y", b);
  Term sel = mk_abs(x, mk_abs(y, first ? x : y));
  Theorem applied = logic.ap_thm(e, sel);
  Theorem l = head_beta_n(logic, eq_lhs(applied.concl()), 3);
  Theorem r = head_beta_n(logic, eq_rhs(applied.concl()), 3);
  return logic.eqt_elim(k.trans(logic.sym(l), k.trans(applied, r)));
}

}  // namespace

Theorem Logic::conjunct1(const Theorem& th) const {
  return conjunct(*this, th, true);
}

Theorem Logic::conjunct2(const Theorem& th) const {
  return conjunct(*this, th, false);
}

Theorem Logic::mp(const Theorem& imp, const Theorem& th) const {
  if (!is_imp(imp.concl()))
    rule_fail("MP", "not an implication: " + debug_string(imp.concl()));
  Theorem e = kernel_.eq_mp(imp, unfold(imp.concl()));  // (p /\ q) = p
  Theorem pq = kernel_.eq_mp(th, sym(e));
  return conjunct2(pq);
}

Theorem Logic::disch(const Term& p, const Theorem& th) const {
  Theorem th1 = conj(kernel_.assume(p), th);
  Theorem th2 = conjunct1(kernel_.assume(th1.concl()));
  Theorem d = kernel_.deduct_antisym(th1, th2);
  return kernel_.eq_mp(d, sym(unfold(mk_imp(p, th.concl()))));
}

Theorem Logic::undisch(const Theorem& th) const {
  if (!is_imp(th.concl()))
    rule_fail("UNDISCH", "not an implication: " + debug_string(th.concl()));
  return mp(th, kernel_.assume(binop_lhs(th.concl())));
}

Theorem Logic::imp_antisym(const Theorem& pq, const Theorem& qp) const {
  if (!is_imp(pq.concl()) || !is_imp(qp.concl()))
    rule_fail("IMP_ANTISYM", "not implications");
  const Term& p = binop_lhs(pq.concl());
  const Term& q = binop_rhs(pq.concl());
  return kernel_.deduct_antisym(mp(qp, kernel_.assume(q)),
                                mp(pq, kernel_.assume(p)));
}

namespace {

Term fresh_bool(std::initializer_list<const Theorem*> ths,
                std::initializer_list<Term> terms, const std::string& name) {
  std::vector<Term> avoid(terms);
  for (const Theorem* th : ths) {
    avoid.insert(avoid.end(), th->hyps().begin(), th->hyps().end());
    avoid.push_back(th->concl());
  }
  return variant(avoid, mk_var(name, bool_ty()));
}

}  // namespace

Theorem Logic::disj1(const Theorem& th, const Term& q) const {
  const Term& p = th.concl();
  Theorem u = unfold(mk_disj(p, q));
  Term r = fresh_bool({&th}, {q}, "r");
  Theorem m = mp(kernel_.assume(mk_imp(p, r)), th);
  Theorem d1 = disch(mk_imp(q, r), m);
  Theorem d2 = disch(mk_imp(p, r), d1);
  return kernel_.eq_mp(gen(r, d2), sym(u));
}

Theorem Logic::disj2(const Term& p, const Theorem& th) const {
  const Term& q = th.concl();
  Theorem u = unfold(mk_disj(p, q));
  Term r = fresh_bool({&th}, {p}, "r");
  Theorem m = mp(kernel_.assume(mk_imp(q, r)), th);
  Theorem d1 = disch(mk_imp(q, r), m);
  Theorem d2 = disch(mk_imp(p, r), d1);
  return kernel_.eq_mp(gen(r, d2), sym(u));
}

Theorem Logic::disj_cases(const Theorem& th, const Theorem& th1,
                          const Theorem& th2) const {
  if (!is_disj(th.concl()))
    rule_fail("DISJ_CASES", "not a disjunction: " + debug_string(th.concl()));
  if (!alpha_equiv(th1.concl(), th2.concl()))
    rule_fail("DISJ_CASES", "cases have different conclusions");
  const Term& p = binop_lhs(th.concl());
  const Term& q = binop_rhs(th.concl());
  const Term& r = th1.concl();
  Theorem e = kernel_.eq_mp(th, unfold(th.concl()));
  Theorem s = spec(r, e);
  return mp(mp(s, disch(p, th1)), disch(q, alpha(r, th2)));
}

Theorem Logic::not_intro(const Theorem& th) const {
  if (!is_imp(th.concl()))
    rule_fail("NOT_INTRO", "not an implication: " + debug_string(th.concl()));
  Term goal = mk_neg(binop_lhs(th.concl()));
  return kernel_.eq_mp(th, sym(unfold(goal)));
}

Theorem Logic::not_elim(const Theorem& th) const {
  if (!is_neg(th.concl()))
    rule_fail("NOT_ELIM", "not a negation: " + debug_string(th.concl()));
  return kernel_.eq_mp(th, unfold(th.concl()));
}

Theorem Logic::contr(const Term& p, const Theorem& th) const {
  if (!(th.concl() == mk_falsity()))
    rule_fail("CONTR", "conclusion is not F: " + debug_string(th.concl()));
  Theorem all = kernel_.eq_mp(th, unfold(th.concl()));
  return spec(p, all);
}

Theorem Logic::absurd(const Theorem& neg, const Theorem& pos) const {
  return mp(not_elim(neg), pos);
}

Theorem Logic::spec(const Term& t, const Theorem& th) const {
  const Term& c = th.concl();
  if (!c.is_comb() || !c.rator().is_const() || c.rator().name() != "!")
    rule_fail("SPEC", "not a universal: " + debug_string(c));
  Theorem e = kernel_.eq_mp(th, unfold(c));  // P = \x. T
  Theorem applied = ap_thm(e, t);
  Theorem l = head_beta_n(*this, eq_lhs(applied.concl()), 1);
  Theorem r = head_beta_n(*this, eq_rhs(applied.concl()), 1);
  return eqt_elim(kernel_.trans(sym(l), kernel_.trans(applied, r)));
}

Theorem Logic::gen(const Term& x, const Theorem& th) const {
  for (const auto& h : th.hyps())
    if (var_free_in(x, h))
      rule_fail("GEN", debug_string(x) + " is free in assumption " +
                           debug_string(h));
  Theorem a = kernel_.abs(x, eqt_intro(th));
  return kernel_.eq_mp(a, sym(unfold(mk_forall(x, th.concl()))));
}

namespace {

Theorem beta_if(const Logic& logic, const Term& t) {
  if (t.is_comb() && t.rator().is_abs()) return logic.beta_conv(t);
  return logic.kernel().refl(t);
}

}  // namespace

Theorem Logic::exists_intro(const Term& ex, const Term& t,
                            const Theorem& th) const {
  if (!ex.is_comb() || !ex.rator().is_const() || ex.rator().name() != "?")
    rule_fail("EXISTS", "not an existential: " + debug_string(ex));
  const Term& pred = ex.rand();
  Theorem u = unfold(ex);
  const Term& all = eq_rhs(u.concl());  // !q. (!x. P x ==> q) ==> q
  std::vector<Term> avoid(th.hyps().begin(), th.hyps().end());
  avoid.push_back(ex);
  avoid.push_back(t);
  const Term& q0 = all.rand().bvar();
  Term q = variant(avoid, q0);
  Term body = vsubst(TermSubst{{q0, q}}, all.rand().body());
  const Term& ant = binop_lhs(body);
  Theorem s = spec(t, kernel_.assume(ant));  // P t ==> q
  Term pt = Term::comb(pred, t);
  Theorem at = kernel_.eq_mp(th, sym(beta_if(*this, pt)));
  Theorem d = disch(ant, mp(s, at));
  return kernel_.eq_mp(gen(q, d), sym(u));
}

Theorem Logic::choose(const Term& v, const Theorem& ex,
                      const Theorem& th) const {
  const Term& c = ex.concl();
  if (!c.is_comb() || !c.rator().is_const() || c.rator().name() != "?")
    rule_fail("CHOOSE", "not an existential: " + debug_string(c));
  if (var_free_in(v, c) || var_free_in(v, th.concl()))
    rule_fail("CHOOSE", debug_string(v) + " is not fresh");
  const Term& pred = c.rand();
  const Term& q = th.concl();
  Theorem s = spec(q, kernel_.eq_mp(ex, unfold(c)));
  Term pv = Term::comb(pred, v);
  Theorem b = beta_if(*this, pv);
  Theorem h = kernel_.eq_mp(kernel_.assume(pv), b);
  Theorem body = disch(pv, mp(disch(eq_rhs(b.concl()), th), h));
  return mp(s, gen(v, body));
}

Theorem Logic::exists_select(const Theorem& th) const {
  const Term& c = th.concl();
  if (!c.is_comb() || !c.rator().is_const() || c.rator().name() != "?")
    rule_fail("EXISTS_SELECT", "not an existential: " + debug_string(c));
  const Term& pred = c.rand();
  HolType ty = pred.type().domain();
  Theorem ax = kernel_.inst_type({{"A", ty}}, kernel_.axiom_choice());
  std::vector<Term> avoid(th.hyps().begin(), th.hyps().end());
  avoid.push_back(c);
  std::string base = pred.is_abs() ? pred.bvar().name() : "v";
  Term v = variant(avoid, mk_var(base, ty));
  Term pv_ax = mk_var("P", pred_ty(ty));
  Term x_ax = mk_var("x", ty);
  Theorem inst = kernel_.inst(TermSubst{{pv_ax, pred}, {x_ax, v}}, ax);
  Theorem b = beta_if(*this, Term::comb(pred, v));
  Theorem hyp = kernel_.assume(eq_rhs(b.concl()));
  Theorem m = mp(inst, kernel_.eq_mp(hyp, sym(b)));
  Theorem r = kernel_.eq_mp(m, beta_if(*this, m.concl()));
  return choose(v, th, r);
}

Theorem Logic::excluded_middle(const Term& p) const { return spec(p, em_); }

Theorem Logic::ccontr(const Term& p, const Theorem& th) const {
  return disj_cases(excluded_middle(p), kernel_.assume(p), contr(p, th));
}

Theorem Logic::not_not(const Term& p) const { return spec(p, not_not_); }

namespace {

// For a generic ⊢ !P. L[P] = R[P] with one binder under each side, returns
// ⊢ L' = R' where the predicate argument is `pred` and the redexes
// `pred x` under the binders are reduced.
Theorem quant_lemma(const Logic& logic, const Theorem& generic,
                    const Term& pred) {
  Kernel& k = logic.kernel();
  HolType ty = pred.type().domain();
  Theorem inst = k.inst_type({{"A", ty}}, generic);
  Theorem th = logic.spec(pred, inst);
  // Each side is  op1 (q (\x. op2? (pred x)))  with op1/op2 optional ~.
  auto fix = [&](const Term& side) {
    // Returns ⊢ side = side' with the redex under the binder reduced.
    std::vector<Term> outer;
    Term cur = side;
    while (is_neg(cur)) {
      outer.push_back(cur.rator());
      cur = cur.rand();
    }
    const Term& quant = cur.rator();
    const Term& lam = cur.rand();
    const Term& x = lam.bvar();
    Term body = lam.body();
    std::vector<Term> inner;
    while (is_neg(body)) {
      inner.push_back(body.rator());
      body = body.rand();
    }
    Theorem e = beta_if(logic, body);
    for (auto it = inner.rbegin(); it != inner.rend(); ++it)
      e = logic.ap_term(*it, e);
    e = logic.ap_term(quant, k.abs(x, e));
    for (auto it = outer.rbegin(); it != outer.rend(); ++it)
      e = logic.ap_term(*it, e);
    return e;
  };
  Theorem l = fix(eq_lhs(th.concl()));
  Theorem r = fix(eq_rhs(th.concl()));
  return k.trans(logic.sym(l), k.trans(th, r));
}

}  // namespace

Theorem Logic::not_forall(const Term& t) const {
  if (!is_forall(t)) rule_fail("NOT_FORALL", "not a universal");
  Theorem th = quant_lemma(*this, not_forall_, t.rand());
  return alpha_lhs(mk_neg(t), th);
}

Theorem Logic::not_exists(const Term& t) const {
  if (!is_exists(t)) rule_fail("NOT_EXISTS", "not an existential");
  Theorem th = quant_lemma(*this, not_exists_, t.rand());
  return alpha_lhs(mk_neg(t), th);
}

}  // namespace microhol
