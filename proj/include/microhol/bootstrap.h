#ifndef MICROHOL_BOOTSTRAP_H_
#define MICROHOL_BOOTSTRAP_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "microhol/kernel.h"
#include "microhol/term.h"

namespace microhol {

// Handles to the logical constants (at their generic types) and their
// defining theorems.
struct LogicSignature {
  Term truth, conj, imp, forall, exists, disj, falsity, neg, one_one, onto;
  Theorem truth_def, conj_def, imp_def, forall_def, exists_def, disj_def,
      falsity_def, neg_def, one_one_def, onto_def;
};

// Defines T, /\, ==>, !, ?, \/, F, ~, ONE_ONE and ONTO, in that order.
// Throws kDuplicateName when any of them exists already.
LogicSignature install_logic(Kernel& kernel);

// Term syntax for the connectives. These do not consult a theory; the kernel
// audits constants when terms reach it.
Term mk_truth();
Term mk_falsity();
Term mk_neg(const Term& p);
Term mk_conj(const Term& p, const Term& q);
Term mk_disj(const Term& p, const Term& q);
Term mk_imp(const Term& p, const Term& q);
Term mk_iff(const Term& p, const Term& q);
Term mk_forall(const Term& v, const Term& body);
Term mk_exists(const Term& v, const Term& body);
Term mk_select(const Term& v, const Term& body);
Term list_mk_conj(const std::vector<Term>& ps);

bool is_neg(const Term& t);
// `op` applied to two arguments, where `op` is the named constant.
bool is_binop(const std::string& op, const Term& t);
bool is_conj(const Term& t);
bool is_disj(const Term& t);
bool is_imp(const Term& t);
// Equation between booleans.
bool is_iff(const Term& t);
// `q (\x. b)` with q the named binder constant.
bool is_binder(const std::string& q, const Term& t);
bool is_forall(const Term& t);
bool is_exists(const Term& t);
inline const Term& binop_lhs(const Term& t) { return t.rator().rand(); }
inline const Term& binop_rhs(const Term& t) { return t.rand(); }

// Derived rules. Every result is produced by kernel primitives only.
class Logic {
 public:
  // Installs the logical constants into the kernel's theory.
  explicit Logic(Kernel& kernel);
  Logic(Kernel& kernel, LogicSignature sig);

  Kernel& kernel() const { return kernel_; }
  const LogicSignature& signature() const { return sig_; }

  // Equality.
  Theorem sym(const Theorem& th) const;
  Theorem ap_term(const Term& f, const Theorem& th) const;
  Theorem ap_thm(const Theorem& th, const Term& x) const;
  // ⊢ (\x. b) a = b[a/x]
  Theorem beta_conv(const Term& redex) const;
  // ⊢ t = t' where t' has no beta redex at the head of its spine.
  Theorem head_beta(const Term& t) const;
  // ⊢ t = t' with t' in beta normal form.
  Theorem beta_norm(const Term& t) const;
  // From Γ ⊢ a = b and a' alpha-equivalent to a returns Γ ⊢ a' = b.
  Theorem alpha_lhs(const Term& a, const Theorem& th) const;
  // Γ ⊢ p and p' alpha-equivalent to p gives Γ ⊢ p'.
  Theorem alpha(const Term& p, const Theorem& th) const;

  // Truth.
  const Theorem& truth() const { return truth_; }
  Theorem eqt_intro(const Theorem& th) const;
  Theorem eqt_elim(const Theorem& th) const;

  // ⊢ c a1 ... an = body, where c is one of the logical constants and the
  // body is its definition with the leading redexes reduced.
  Theorem unfold(const Term& t) const;

  // Connectives.
  Theorem conj(const Theorem& th1, const Theorem& th2) const;
  Theorem conjunct1(const Theorem& th) const;
  Theorem conjunct2(const Theorem& th) const;
  Theorem mp(const Theorem& imp, const Theorem& th) const;
  Theorem disch(const Term& p, const Theorem& th) const;
  Theorem undisch(const Theorem& th) const;
  Theorem imp_antisym(const Theorem& pq, const Theorem& qp) const;
  Theorem disj1(const Theorem& th, const Term& q) const;
  Theorem disj2(const Term& p, const Theorem& th) const;
  // Γ ⊢ p \/ q,  Δ1 ⊢ r,  Δ2 ⊢ r   gives   Γ ∪ (Δ1 - {p}) ∪ (Δ2 - {q}) ⊢ r
  Theorem disj_cases(const Theorem& th, const Theorem& th1,
                     const Theorem& th2) const;
  Theorem not_intro(const Theorem& th) const;
  Theorem not_elim(const Theorem& th) const;
  // Γ ⊢ F gives Γ ⊢ p.
  Theorem contr(const Term& p, const Theorem& th) const;
  // Γ ⊢ ~p and Δ ⊢ p give Γ ∪ Δ ⊢ F.
  Theorem absurd(const Theorem& neg, const Theorem& pos) const;

  // Quantifiers.
  Theorem spec(const Term& t, const Theorem& th) const;
  Theorem gen(const Term& x, const Theorem& th) const;
  // From Γ ⊢ P[t/x] gives Γ ⊢ ?x. P, where `ex` is the goal ?x. P.
  Theorem exists_intro(const Term& ex, const Term& t, const Theorem& th) const;
  // Γ ⊢ ?x. P and Δ ⊢ q with P[v/x] among the assumptions of Δ give
  // Γ ∪ (Δ - {P[v/x]}) ⊢ q; v must not be free elsewhere.
  Theorem choose(const Term& v, const Theorem& ex, const Theorem& th) const;
  // Γ ⊢ ?y. B gives Γ ⊢ B[(@y. B)/y].
  Theorem exists_select(const Theorem& th) const;

  // Classical reasoning.
  // ⊢ p \/ ~p
  Theorem excluded_middle(const Term& p) const;
  // Γ ⊢ F with ~p among the assumptions gives Γ - {~p} ⊢ p.
  Theorem ccontr(const Term& p, const Theorem& th) const;
  // ⊢ ~~p = p
  Theorem not_not(const Term& p) const;
  // ⊢ ~(!x. P) = ?x. ~P   for t = !x. P
  Theorem not_forall(const Term& t) const;
  // ⊢ ~(?x. P) = !x. ~P   for t = ?x. P
  Theorem not_exists(const Term& t) const;

 private:
  Term select_const(const HolType& ty) const;
  Theorem inst_def(const Theorem& def, const TypeSubst& theta) const;

  Kernel& kernel_;
  LogicSignature sig_;
  Theorem truth_;
  Theorem em_;            // ⊢ !t. t \/ ~t
  Theorem not_not_;       // ⊢ !t. ~~t = t
  Theorem not_forall_;    // ⊢ !P:A->bool. ~(!x. P x) = ?x. ~P x
  Theorem not_exists_;    // ⊢ !P:A->bool. ~(?x. P x) = !x. ~P x
};

}  // namespace microhol

#endif  // MICROHOL_BOOTSTRAP_H_
