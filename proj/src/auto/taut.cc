#include <map>

#include "microhol/auto.h"
#include "microhol/printer.h"

namespace microhol {

namespace {

void collect_atoms(const Term& t, std::vector<Term>& out) {
  if (t.is_var()) {
    if (!t.type().is_bool())
      fail(ErrorKind::kNotPropositional, "not boolean: " + debug_string(t));
    for (const auto& v : out)
      if (v == t) return;
    out.push_back(t);
    return;
  }
  if (t == mk_truth() || t == mk_falsity()) return;
  if (is_neg(t)) return collect_atoms(t.rand(), out);
  if (is_conj(t) || is_disj(t) || is_imp(t) || is_iff(t)) {
    collect_atoms(binop_lhs(t), out);
    collect_atoms(binop_rhs(t), out);
    return;
  }
  fail(ErrorKind::kNotPropositional, "not propositional: " + debug_string(t));
}

using Assignment = std::map<Term, bool, VarLess>;

bool eval(const Term& t, const Assignment& a) {
  if (t.is_var()) return a.at(t);
  if (t == mk_truth()) return true;
  if (t == mk_falsity()) return false;
  if (is_neg(t)) return !eval(t.rand(), a);
  bool l = eval(binop_lhs(t), a);
  bool r = eval(binop_rhs(t), a);
  if (is_conj(t)) return l && r;
  if (is_disj(t)) return l || r;
  if (is_imp(t)) return !l || r;
  return l == r;
}

// Proves t or ~t under assumptions v / ~v for the assigned variables.
class CaseProver {
 public:
  explicit CaseProver(const Logic& logic)
      : logic_(logic), k_(logic.kernel()), not_false_(not_false(logic)) {}

  // Returns (theorem, value): Γ ⊢ t when value, Γ ⊢ ~t otherwise.
  std::pair<Theorem, bool> prove(const Term& t, const Assignment& a) const {
    if (t.is_var()) {
      bool v = a.at(t);
      return {k_.assume(v ? t : mk_neg(t)), v};
    }
    if (t == mk_truth()) return {logic_.truth(), true};
    if (t == mk_falsity()) return {not_false_, false};
    if (is_neg(t)) {
      const Term& p = t.rand();
      auto [th, v] = prove(p, a);
      if (!v) return {th, true};
      return {refute(t, logic_.absurd(k_.assume(t), th)), false};
    }
    const Term& p = binop_lhs(t);
    const Term& q = binop_rhs(t);
    auto [thp, vp] = prove(p, a);
    auto [thq, vq] = prove(q, a);
    if (is_conj(t)) {
      if (vp && vq) return {logic_.conj(thp, thq), true};
      Theorem both = k_.assume(t);
      if (!vp) return {refute(t, logic_.absurd(thp, logic_.conjunct1(both))), false};
      return {refute(t, logic_.absurd(thq, logic_.conjunct2(both))), false};
    }
    if (is_disj(t)) {
      if (vp) return {logic_.disj1(thp, q), true};
      if (vq) return {logic_.disj2(p, thq), true};
      Theorem f = logic_.disj_cases(k_.assume(t), logic_.absurd(thp, k_.assume(p)),
                                    logic_.absurd(thq, k_.assume(q)));
      return {refute(t, f), false};
    }
    if (is_imp(t)) {
      if (!vp) return {logic_.disch(p, ex_falso(q, thp, p)), true};
      if (vq) return {logic_.disch(p, thq), true};
      return {refute(t, logic_.absurd(thq, logic_.mp(k_.assume(t), thp))), false};
    }
    // p = q on bool.
    if (vp && vq) return {k_.deduct_antisym(thp, thq), true};
    if (!vp && !vq)
      return {logic_.imp_antisym(logic_.disch(p, ex_falso(q, thp, p)),
                                 logic_.disch(q, ex_falso(p, thq, q))),
              true};
    Theorem eq = k_.assume(t);
    if (vp) return {refute(t, logic_.absurd(thq, k_.eq_mp(thp, eq))), false};
    return {refute(t, logic_.absurd(thp, k_.eq_mp(thq, logic_.sym(eq)))), false};
  }

 private:
  static Theorem not_false(const Logic& logic) {
    Term f = mk_falsity();
    return logic.not_intro(logic.disch(f, logic.kernel().assume(f)));
  }
  // Δ ∪ {t} ⊢ F gives Δ ⊢ ~t.
  Theorem refute(const Term& t, const Theorem& f) const {
    return logic_.not_intro(logic_.disch(t, f));
  }
  // From Γ ⊢ ~p derives Γ ∪ {p} ⊢ goal.
  Theorem ex_falso(const Term& goal, const Theorem& not_p, const Term& p) const {
    return logic_.contr(goal, logic_.absurd(not_p, k_.assume(p)));
  }

  const Logic& logic_;
  Kernel& k_;
  Theorem not_false_;
};

Theorem split(const CaseProver& prover, const Logic& logic, const Term& p,
              const std::vector<Term>& vars, size_t k, Assignment& a) {
  if (k == vars.size()) {
    auto [th, v] = prover.prove(p, a);
    if (!v) fail(ErrorKind::kNotATautology, "case analysis reached a false case");
    return th;
  }
  const Term& v = vars[k];
  a[v] = true;
  Theorem yes = split(prover, logic, p, vars, k + 1, a);
  a[v] = false;
  Theorem no = split(prover, logic, p, vars, k + 1, a);
  a.erase(v);
  return logic.disj_cases(logic.excluded_middle(v), yes, no);
}

}  // namespace

std::vector<Term> propositional_atoms(const Term& p) {
  if (!p.type().is_bool()) fail(ErrorKind::kNotPropositional, "not a formula: " + debug_string(p));
  std::vector<Term> out;
  collect_atoms(p, out);
  return out;
}

Theorem taut(const Logic& logic, const Term& p) {
  std::vector<Term> vars = propositional_atoms(p);
  if (vars.size() > kMaxTautVariables)
    fail(ErrorKind::kNotPropositional,
         std::to_string(vars.size()) + " variables, more than " + std::to_string(kMaxTautVariables));
  const size_t n = vars.size();
  Assignment a;
  for (uint64_t i = 0; i < (uint64_t{1} << n); ++i) {
    for (size_t j = 0; j < n; ++j) a[vars[j]] = ((i >> (n - 1 - j)) & 1) == 0;
    if (eval(p, a)) continue;
    std::vector<std::pair<Term, bool>> falsifier;
    std::string msg = "not a tautology, false at";
    for (const auto& v : vars) {
      falsifier.emplace_back(v, a[v]);
      msg += std::string(falsifier.size() == 1 ? " " : ", ") + v.name() + "=" +
             (a[v] ? "true" : "false");
    }
    throw NotATautology(std::move(falsifier), msg);
  }
  a.clear();
  CaseProver prover(logic);
  Theorem th = split(prover, logic, p, vars, 0, a);
  if (!th.hyps().empty()) fail(ErrorKind::kNotATautology, "case analysis left assumptions");
  return th;
}

}  // namespace microhol
