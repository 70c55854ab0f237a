#include "microhol/kernel.h"

#include <algorithm>
#include <functional>
#include <mutex>
#include <optional>

#include "microhol/error.h"
#include "microhol/printer.h"

namespace microhol {

namespace {

using Hyps = std::vector<Term>;
using HypsPtr = std::shared_ptr<const Hyps>;

const HypsPtr& no_hyps() {
  static const HypsPtr kEmpty = std::make_shared<const Hyps>();
  return kEmpty;
}

HypsPtr single_hyp(const Term& p) {
  return std::make_shared<const Hyps>(Hyps{p});
}

HypsPtr hyp_union(const HypsPtr& a, const HypsPtr& b) {
  if (a->empty()) return b;
  if (b->empty()) return a;
  Hyps out;
  out.reserve(a->size() + b->size());
  size_t i = 0, j = 0;
  while (i < a->size() && j < b->size()) {
    int c = term_compare((*a)[i], (*b)[j]);
    if (c < 0) {
      out.push_back((*a)[i++]);
    } else if (c > 0) {
      out.push_back((*b)[j++]);
    } else {
      out.push_back((*a)[i++]);
      ++j;
    }
  }
  for (; i < a->size(); ++i) out.push_back((*a)[i]);
  for (; j < b->size(); ++j) out.push_back((*b)[j]);
  return std::make_shared<const Hyps>(std::move(out));
}

HypsPtr hyp_remove(const HypsPtr& a, const Term& p) {
  auto it = std::find_if(a->begin(), a->end(),
                         [&](const Term& h) { return alpha_equiv(h, p); });
  if (it == a->end()) return a;
  Hyps out;
  out.reserve(a->size() - 1);
  for (auto j = a->begin(); j != a->end(); ++j)
    if (j != it) out.push_back(*j);
  return std::make_shared<const Hyps>(std::move(out));
}

HypsPtr hyp_normalize(Hyps hyps) {
  if (hyps.empty()) return no_hyps();
  std::sort(hyps.begin(), hyps.end(), AlphaLess{});
  hyps.erase(std::unique(hyps.begin(), hyps.end(),
                         [](const Term& a, const Term& b) {
                           return alpha_equiv(a, b);
                         }),
             hyps.end());
  return std::make_shared<const Hyps>(std::move(hyps));
}

void require_eq(const Term& t, const char* rule) {
  if (!is_eq(t))
    fail(ErrorKind::kNotAnEquation,
         std::string(rule) + ": not an equation: " + debug_string(t));
}

HolType bool_ty() { return HolType::bool_type(); }

// Right-hand sides of the logical constants that the choice and infinity
// axioms mention, in the form the axioms rely on.
std::optional<Term> canonical_rhs(const Theory& thy, const std::string& name) {
  HolType b = bool_ty();
  HolType a = HolType::var("A");
  HolType bb = HolType::var("B");
  auto konst = [&](const std::string& c, const HolType& ty) {
    return Term::constant(c, ty);
  };
  auto binop_ty = HolType::fun(b, HolType::fun(b, b));
  auto pred_ty = [&](const HolType& x) { return HolType::fun(x, b); };
  auto forall = [&](const Term& v, const Term& body) {
    return mk_comb(konst("!", HolType::fun(pred_ty(v.type()), b)),
                   mk_abs(v, body));
  };
  auto exists = [&](const Term& v, const Term& body) {
    return mk_comb(konst("?", HolType::fun(pred_ty(v.type()), b)),
                   mk_abs(v, body));
  };
  auto imp = [&](const Term& p, const Term& q) {
    return mk_binop(konst("==>", binop_ty), p, q);
  };
  Term truth = konst("T", b);
  Term p = mk_var("p", b);
  Term q = mk_var("q", b);
  (void)thy;
  if (name == "T") {
    Term id = mk_abs(p, p);
    return mk_eq(id, id);
  }
  if (name == "/\\") {
    Term f = mk_var("f", binop_ty);
    return mk_abs(p, mk_abs(q, mk_eq(mk_abs(f, mk_comb(mk_comb(f, p), q)),
                                     mk_abs(f, mk_comb(mk_comb(f, truth),
                                                       truth)))));
  }
  if (name == "==>") {
    return mk_abs(
        p, mk_abs(q, mk_eq(mk_binop(konst("/\\", binop_ty), p, q), p)));
  }
  if (name == "!") {
    Term pv = mk_var("P", pred_ty(a));
    return mk_abs(pv, mk_eq(pv, mk_abs(mk_var("x", a), truth)));
  }
  if (name == "?") {
    Term pv = mk_var("P", pred_ty(a));
    Term x = mk_var("x", a);
    return mk_abs(pv, forall(q, imp(forall(x, imp(mk_comb(pv, x), q)), q)));
  }
  if (name == "F") return forall(p, p);
  if (name == "~") return mk_abs(p, imp(p, konst("F", b)));
  if (name == "ONE_ONE") {
    Term f = mk_var("f", HolType::fun(a, bb));
    Term x1 = mk_var("x1", a);
    Term x2 = mk_var("x2", a);
    return mk_abs(f, forall(x1, forall(x2, imp(mk_eq(mk_comb(f, x1),
                                                     mk_comb(f, x2)),
                                               mk_eq(x1, x2)))));
  }
  if (name == "ONTO") {
    Term f = mk_var("f", HolType::fun(a, bb));
    Term y = mk_var("y", bb);
    Term x = mk_var("x", a);
    return mk_abs(f, forall(y, exists(x, mk_eq(y, mk_comb(f, x)))));
  }
  return std::nullopt;
}

void collect_constants(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::kConst:
      out.insert(t.name());
      return;
    case Term::Kind::kVar:
      return;
    case Term::Kind::kComb:
      collect_constants(t.rator(), out);
      collect_constants(t.rand(), out);
      return;
    case Term::Kind::kAbs:
      collect_constants(t.body(), out);
      return;
  }
}

}  // namespace

std::string_view rule_name(Rule rule) {
  switch (rule) {
    case Rule::kRefl: return "REFL";
    case Rule::kTrans: return "TRANS";
    case Rule::kMkComb: return "MK_COMB";
    case Rule::kAbs: return "ABS";
    case Rule::kBeta: return "BETA";
    case Rule::kAssume: return "ASSUME";
    case Rule::kEqMp: return "EQ_MP";
    case Rule::kDeductAntisym: return "DEDUCT_ANTISYM_RULE";
    case Rule::kInstType: return "INST_TYPE";
    case Rule::kInst: return "INST";
    case Rule::kAxiomExtensionality: return "ETA_AX";
    case Rule::kAxiomChoice: return "SELECT_AX";
    case Rule::kAxiomInfinity: return "INFINITY_AX";
    case Rule::kDefinition: return "new_basic_definition";
    case Rule::kTypeDefinition: return "new_basic_type_definition";
  }
  return "?";
}

std::atomic<uint64_t> Kernel::next_kernel_id_{1};

Kernel::Kernel() : id_(next_kernel_id_.fetch_add(1)) {}

void Kernel::own(const Theorem& th) const {
  if (th.kernel_id_ != id_)
    fail(ErrorKind::kForeignTheorem,
         "theorem was produced by a different kernel");
}

Theorem Kernel::make(HypsPtr hyps, Term concl, bool uses_infinity) const {
  return Theorem(id_, next_serial_.fetch_add(1, std::memory_order_relaxed),
                 std::move(hyps), std::move(concl), uses_infinity);
}

void Kernel::count(Rule rule) const {
  counts_[static_cast<size_t>(rule)].fetch_add(1, std::memory_order_relaxed);
}

uint64_t Kernel::total_inferences() const {
  uint64_t total = 0;
  for (const auto& c : counts_) total += c.load(std::memory_order_relaxed);
  return total;
}

void Kernel::set_trace_sink(std::shared_ptr<TraceSink> sink) {
  std::lock_guard lock(sink_mu_);
  sink_ = std::move(sink);
}

bool Kernel::tracing() const {
  std::lock_guard lock(sink_mu_);
  return sink_ != nullptr;
}

void Kernel::trace(TraceStep step) const {
  std::shared_ptr<TraceSink> sink;
  {
    std::lock_guard lock(sink_mu_);
    sink = sink_;
  }
  if (sink) sink->record(std::move(step));
}

Theorem Kernel::refl(const Term& a) const {
  theory_.check_term(a);
  count(Rule::kRefl);
  Theorem th = make(no_hyps(), mk_eq(a, a), false);
  if (tracing()) trace({Rule::kRefl, {}, {a}, {}, {}, {}, {th.serial()}});
  return th;
}

Theorem Kernel::trans(const Theorem& th1, const Theorem& th2) const {
  own(th1);
  own(th2);
  require_eq(th1.concl(), "TRANS");
  require_eq(th2.concl(), "TRANS");
  if (!alpha_equiv(eq_rhs(th1.concl()), eq_lhs(th2.concl())))
    fail(ErrorKind::kMiddleMismatch,
         "TRANS: middle terms differ: " + debug_string(eq_rhs(th1.concl())) +
             " vs " + debug_string(eq_lhs(th2.concl())));
  count(Rule::kTrans);
  Theorem th = make(hyp_union(th1.hyps_, th2.hyps_),
                    mk_eq(eq_lhs(th1.concl()), eq_rhs(th2.concl())),
                    th1.uses_infinity_ || th2.uses_infinity_);
  if (tracing())
    trace({Rule::kTrans, {th1.serial(), th2.serial()}, {}, {}, {}, {},
           {th.serial()}});
  return th;
}

Theorem Kernel::mk_comb(const Theorem& th1, const Theorem& th2) const {
  own(th1);
  own(th2);
  require_eq(th1.concl(), "MK_COMB");
  require_eq(th2.concl(), "MK_COMB");
  const Term& f = eq_lhs(th1.concl());
  const Term& a = eq_lhs(th2.concl());
  if (!f.type().is_fun() || !(f.type().domain() == a.type()))
    fail(ErrorKind::kIllTyped, "MK_COMB: types do not agree: " +
                                   debug_string(f) + " applied to " +
                                   debug_string(a));
  Term lhs = Term::comb(f, a);
  Term rhs = Term::comb(eq_rhs(th1.concl()), eq_rhs(th2.concl()));
  count(Rule::kMkComb);
  Theorem th = make(hyp_union(th1.hyps_, th2.hyps_), mk_eq(lhs, rhs),
                    th1.uses_infinity_ || th2.uses_infinity_);
  if (tracing())
    trace({Rule::kMkComb, {th1.serial(), th2.serial()}, {}, {}, {}, {},
           {th.serial()}});
  return th;
}

Theorem Kernel::abs(const Term& x, const Theorem& th) const {
  own(th);
  if (!x.is_var())
    fail(ErrorKind::kIllTyped, "ABS: not a variable: " + debug_string(x));
  theory_.check_term(x);
  require_eq(th.concl(), "ABS");
  for (const auto& h : th.hyps())
    if (var_free_in(x, h))
      fail(ErrorKind::kVarFreeInHyps, "ABS: variable " + debug_string(x) +
                                          " is free in assumption " +
                                          debug_string(h));
  count(Rule::kAbs);
  Theorem out = make(th.hyps_,
                     mk_eq(Term::abs(x, eq_lhs(th.concl())),
                           Term::abs(x, eq_rhs(th.concl()))),
                     th.uses_infinity_);
  if (tracing())
    trace({Rule::kAbs, {th.serial()}, {x}, {}, {}, {}, {out.serial()}});
  return out;
}

Theorem Kernel::beta(const Term& redex) const {
  theory_.check_term(redex);
  if (!redex.is_comb() || !redex.rator().is_abs() ||
      !(redex.rator().bvar() == redex.rand()))
    fail(ErrorKind::kNotABetaRedex,
         "BETA: not of the form (\\x. a) x: " + debug_string(redex));
  count(Rule::kBeta);
  Theorem th = make(no_hyps(), mk_eq(redex, redex.rator().body()), false);
  if (tracing()) trace({Rule::kBeta, {}, {redex}, {}, {}, {}, {th.serial()}});
  return th;
}

Theorem Kernel::assume(const Term& p) const {
  theory_.check_term(p);
  if (!p.type().is_bool())
    fail(ErrorKind::kNotBoolean,
         "ASSUME: not a proposition: " + debug_string(p));
  count(Rule::kAssume);
  Theorem th = make(single_hyp(p), p, false);
  if (tracing()) trace({Rule::kAssume, {}, {p}, {}, {}, {}, {th.serial()}});
  return th;
}

Theorem Kernel::eq_mp(const Theorem& th1, const Theorem& th2) const {
  own(th1);
  own(th2);
  require_eq(th2.concl(), "EQ_MP");
  if (!alpha_equiv(th1.concl(), eq_lhs(th2.concl())))
    fail(ErrorKind::kMismatch,
         "EQ_MP: " + debug_string(th1.concl()) +
             " does not match the left side of " + debug_string(th2.concl()));
  count(Rule::kEqMp);
  Theorem th = make(hyp_union(th1.hyps_, th2.hyps_), eq_rhs(th2.concl()),
                    th1.uses_infinity_ || th2.uses_infinity_);
  if (tracing())
    trace({Rule::kEqMp, {th1.serial(), th2.serial()}, {}, {}, {}, {},
           {th.serial()}});
  return th;
}

Theorem Kernel::deduct_antisym(const Theorem& th1, const Theorem& th2) const {
  own(th1);
  own(th2);
  HypsPtr hyps = hyp_union(hyp_remove(th1.hyps_, th2.concl()),
                           hyp_remove(th2.hyps_, th1.concl()));
  count(Rule::kDeductAntisym);
  Theorem th = make(std::move(hyps), mk_eq(th1.concl(), th2.concl()),
                    th1.uses_infinity_ || th2.uses_infinity_);
  if (tracing())
    trace({Rule::kDeductAntisym, {th1.serial(), th2.serial()}, {}, {}, {}, {},
           {th.serial()}});
  return th;
}

Theorem Kernel::inst_type(const TypeSubst& subst, const Theorem& th) const {
  own(th);
  for (const auto& [_, ty] : subst) theory_.check_type(ty);
  Hyps hyps;
  hyps.reserve(th.hyps().size());
  for (const auto& h : th.hyps()) hyps.push_back(microhol::inst_type(subst, h));
  count(Rule::kInstType);
  Theorem out = make(hyp_normalize(std::move(hyps)),
                     microhol::inst_type(subst, th.concl()),
                     th.uses_infinity_);
  if (tracing())
    trace({Rule::kInstType, {th.serial()}, {}, subst, {}, {}, {out.serial()}});
  return out;
}

Theorem Kernel::inst(const TermSubst& subst, const Theorem& th) const {
  own(th);
  for (const auto& [var, image] : subst.pairs()) {
    theory_.check_term(var);
    theory_.check_term(image);
  }
  Hyps hyps;
  hyps.reserve(th.hyps().size());
  for (const auto& h : th.hyps()) hyps.push_back(vsubst(subst, h));
  count(Rule::kInst);
  Theorem out = make(hyp_normalize(std::move(hyps)),
                     vsubst(subst, th.concl()), th.uses_infinity_);
  if (tracing())
    trace({Rule::kInst, {th.serial()}, {}, {}, subst.pairs(), {},
           {out.serial()}});
  return out;
}

void Kernel::require_standard(const std::string& name) const {
  {
    std::lock_guard lock(standard_mu_);
    if (verified_standard_.count(name)) return;
  }
  auto stored = theory_.definition(name);
  auto canonical = canonical_rhs(theory_, name);
  if (!stored || !canonical)
    fail(ErrorKind::kAxiomUnavailable,
         "axiom needs the logical constant " + name + ", which is not defined");
  TypeSubst renaming;
  bool ok = type_match(canonical->type(), stored->type(), renaming);
  std::set<std::string> images;
  for (const auto& [_, ty] : renaming) {
    if (!ty.is_var() || !images.insert(ty.name()).second) ok = false;
  }
  if (!ok || !alpha_equiv(microhol::inst_type(renaming, *canonical), *stored))
    fail(ErrorKind::kAxiomUnavailable,
         "constant " + name + " is not defined in the standard way");
  std::set<std::string> deps;
  collect_constants(*canonical, deps);
  for (const auto& dep : deps)
    if (dep != "=" && dep != "@" && dep != name) require_standard(dep);
  std::lock_guard lock(standard_mu_);
  verified_standard_.insert(name);
}

Theorem Kernel::axiom_extensionality() const {
  HolType a = HolType::var("A");
  HolType b = HolType::var("B");
  Term t = mk_var("t", HolType::fun(a, b));
  Term x = mk_var("x", a);
  count(Rule::kAxiomExtensionality);
  Theorem th = make(no_hyps(), mk_eq(Term::abs(x, Term::comb(t, x)), t), false);
  if (tracing())
    trace({Rule::kAxiomExtensionality, {}, {}, {}, {}, {}, {th.serial()}});
  return th;
}

Theorem Kernel::axiom_choice() const {
  require_standard("==>");
  HolType a = HolType::var("A");
  HolType pred = HolType::fun(a, bool_ty());
  Term p = mk_var("P", pred);
  Term x = mk_var("x", a);
  Term select = Term::constant("@", HolType::fun(pred, a));
  Term imp = Term::constant(
      "==>", HolType::fun(bool_ty(), HolType::fun(bool_ty(), bool_ty())));
  Term concl = mk_binop(imp, Term::comb(p, x),
                        Term::comb(p, Term::comb(select, p)));
  count(Rule::kAxiomChoice);
  Theorem th = make(no_hyps(), concl, false);
  if (tracing()) trace({Rule::kAxiomChoice, {}, {}, {}, {}, {}, {th.serial()}});
  return th;
}

Theorem Kernel::axiom_infinity() const {
  for (const char* c : {"?", "/\\", "~", "ONE_ONE", "ONTO"}) require_standard(c);
  HolType b = bool_ty();
  HolType ind = HolType::ind_type();
  HolType fn = HolType::fun(ind, ind);
  Term f = mk_var("f", fn);
  Term one_one = Term::constant("ONE_ONE", HolType::fun(fn, b));
  Term onto = Term::constant("ONTO", HolType::fun(fn, b));
  Term neg = Term::constant("~", HolType::fun(b, b));
  Term conj =
      Term::constant("/\\", HolType::fun(b, HolType::fun(b, b)));
  Term exists =
      Term::constant("?", HolType::fun(HolType::fun(fn, b), b));
  Term body = mk_binop(conj, Term::comb(one_one, f),
                       Term::comb(neg, Term::comb(onto, f)));
  count(Rule::kAxiomInfinity);
  Theorem th = make(no_hyps(), Term::comb(exists, Term::abs(f, body)), true);
  if (tracing())
    trace({Rule::kAxiomInfinity, {}, {}, {}, {}, {}, {th.serial()}});
  return th;
}

Theorem Kernel::new_basic_definition(const std::string& name,
                                     const Term& rhs) {
  theory_.check_term(rhs);
  auto frees = free_vars(rhs);
  if (!frees.empty())
    fail(ErrorKind::kNotClosed, "definition of " + name +
                                    ": right-hand side has free variable " +
                                    debug_string(frees.front()));
  auto term_tvs = type_vars_in_term(rhs);
  auto ty_tvs = type_vars(rhs.type());
  for (const auto& tv : term_tvs)
    if (!ty_tvs.count(tv))
      fail(ErrorKind::kTypeVarEscape,
           "definition of " + name + ": type variable " + tv +
               " does not occur in the type " + print_type(rhs.type()));
  Term c = Term::constant(name, rhs.type());
  {
    std::unique_lock lock(theory_.mu_);
    if (theory_.constants_.count(name))
      fail(ErrorKind::kDuplicateName, "constant " + name + " already exists");
    theory_.constants_.emplace(name, rhs.type());
    theory_.definitions_.emplace(name, rhs);
    theory_.add_event_locked(
        {DefinitionEvent::Kind::kConstant, {name}, rhs});
  }
  count(Rule::kDefinition);
  Theorem th = make(no_hyps(), mk_eq(c, rhs), false);
  if (tracing())
    trace({Rule::kDefinition, {}, {rhs}, {}, {}, {name}, {th.serial()}});
  return th;
}

std::pair<Theorem, Theorem> Kernel::new_basic_type_definition(
    const std::string& name, const std::string& abs_name,
    const std::string& rep_name, const Theorem& inhabited) {
  own(inhabited);
  if (!inhabited.hyps().empty())
    fail(ErrorKind::kMalformedInhabitation,
         "type definition of " + name + ": theorem has assumptions");
  const Term& concl = inhabited.concl();
  if (!concl.is_comb())
    fail(ErrorKind::kMalformedInhabitation,
         "type definition of " + name + ": conclusion is not of the form P w");
  const Term& pred = concl.rator();
  const Term& witness = concl.rand();
  if (!free_vars(pred).empty())
    fail(ErrorKind::kNotClosed,
         "type definition of " + name + ": predicate is not closed");
  if (abs_name == rep_name)
    fail(ErrorKind::kDuplicateName,
         "type definition of " + name + ": abs and rep must differ");
  auto tvs = type_vars_in_term(pred);
  std::vector<std::string> tyvars(tvs.begin(), tvs.end());
  std::vector<HolType> args;
  for (const auto& tv : tyvars) args.push_back(HolType::var(tv));
  HolType abs_ty = HolType::app(name, args);
  HolType rep_ty = witness.type();
  Term abs_c = Term::constant(abs_name, HolType::fun(rep_ty, abs_ty));
  Term rep_c = Term::constant(rep_name, HolType::fun(abs_ty, rep_ty));
  {
    std::unique_lock lock(theory_.mu_);
    if (theory_.types_.count(name))
      fail(ErrorKind::kDuplicateName, "type " + name + " already exists");
    for (const auto& c : {abs_name, rep_name})
      if (theory_.constants_.count(c))
        fail(ErrorKind::kDuplicateName, "constant " + c + " already exists");
    theory_.types_.emplace(name, tyvars.size());
    theory_.constants_.emplace(abs_name, abs_c.type());
    theory_.constants_.emplace(rep_name, rep_c.type());
    theory_.type_definitions_.emplace(
        name, TypeDefinition{name, tyvars, abs_name, rep_name, pred, rep_ty});
    theory_.typedef_constants_[abs_name] = name;
    theory_.typedef_constants_[rep_name] = name;
    theory_.add_event_locked(
        {DefinitionEvent::Kind::kType, {name, abs_name, rep_name}, concl});
  }
  Term a = mk_var("a", abs_ty);
  Term r = mk_var("r", rep_ty);
  count(Rule::kTypeDefinition);
  Theorem th1 = make(no_hyps(),
                     mk_eq(Term::comb(abs_c, Term::comb(rep_c, a)), a),
                     inhabited.uses_infinity_);
  Theorem th2 = make(
      no_hyps(),
      mk_eq(Term::comb(pred, r),
            mk_eq(Term::comb(rep_c, Term::comb(abs_c, r)), r)),
      inhabited.uses_infinity_);
  if (tracing())
    trace({Rule::kTypeDefinition, {inhabited.serial()}, {}, {}, {},
           {name, abs_name, rep_name}, {th1.serial(), th2.serial()}});
  return {th1, th2};
}

}  // namespace microhol
