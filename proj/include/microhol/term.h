#ifndef MICROHOL_TERM_H_
#define MICROHOL_TERM_H_

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "microhol/type.h"

namespace microhol {

// A name-carrying lambda term with an intrinsic type. Terms are immutable and
// can only be assembled through the smart constructors below, so every Term
// value is well typed.
class Term {
 public:
  enum class Kind : uint8_t { kVar, kConst, kComb, kAbs };

  static Term var(std::string name, HolType type);
  // Not checked against any theory; the kernel audits constants on entry.
  static Term constant(std::string name, HolType type);
  // Throws kIllTyped when `f` is not a function over the type of `a`.
  static Term comb(Term f, Term a);
  // Throws kIllTyped when `v` is not a variable.
  static Term abs(Term v, Term body);

  inline Kind kind() const;
  bool is_var() const { return kind() == Kind::kVar; }
  bool is_const() const { return kind() == Kind::kConst; }
  bool is_comb() const { return kind() == Kind::kComb; }
  bool is_abs() const { return kind() == Kind::kAbs; }

  // Var and Const only.
  inline const std::string& name() const;
  inline const HolType& type() const;
  // Comb only.
  inline const Term& rator() const;
  inline const Term& rand() const;
  // Abs only.
  inline const Term& bvar() const;
  inline const Term& body() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }
  const void* identity() const { return node_.get(); }

  // Exact structural equality (bound names included).
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  Term() = default;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  std::string name;
  HolType type;
  // Comb: rator/rand. Abs: bvar/body. Unused otherwise.
  Term left;
  Term right;
};

inline Term::Kind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline const HolType& Term::type() const { return node_->type; }
inline const Term& Term::rator() const { return node_->left; }
inline const Term& Term::rand() const { return node_->right; }
inline const Term& Term::bvar() const { return node_->left; }
inline const Term& Term::body() const { return node_->right; }

inline HolType type_of(const Term& t) { return t.type(); }

inline Term mk_var(std::string name, HolType type) {
  return Term::var(std::move(name), std::move(type));
}
inline Term mk_comb(Term f, Term a) {
  return Term::comb(std::move(f), std::move(a));
}
inline Term mk_abs(Term v, Term body) {
  return Term::abs(std::move(v), std::move(body));
}
Term mk_eq(const Term& lhs, const Term& rhs);
Term mk_binop(const Term& op, const Term& lhs, const Term& rhs);

bool is_eq(const Term& t);
// Requires is_eq(t).
inline const Term& eq_lhs(const Term& t) { return t.rator().rand(); }
inline const Term& eq_rhs(const Term& t) { return t.rand(); }

// Splits `f a1 ... an` into the head and arguments.
std::pair<Term, std::vector<Term>> strip_comb(const Term& t);

// Identity of variables is (name, type).
int var_compare(const Term& a, const Term& b);
struct VarLess {
  bool operator()(const Term& a, const Term& b) const {
    return var_compare(a, b) < 0;
  }
};

// Free variables, sorted by VarLess and without duplicates.
std::vector<Term> free_vars(const Term& t);
std::vector<Term> free_vars(std::span<const Term> terms);
bool var_free_in(const Term& v, const Term& t);
bool is_closed(const Term& t);

// Total order on alpha-equivalence classes. Zero iff alpha-equivalent.
int term_compare(const Term& a, const Term& b);
inline bool alpha_equiv(const Term& a, const Term& b) {
  return term_compare(a, b) == 0;
}
struct AlphaLess {
  bool operator()(const Term& a, const Term& b) const {
    return term_compare(a, b) < 0;
  }
};

// Appends primes to the name of `v` until it is not free in any term of
// `avoid`.
Term variant(std::span<const Term> avoid, const Term& v);

// Simultaneous term substitution; images must have the types of their
// variables.
class TermSubst {
 public:
  TermSubst() = default;
  TermSubst(std::initializer_list<std::pair<Term, Term>> pairs);

  // Throws kIllTyped if `var` is not a variable, the types differ, or `var`
  // already has an image.
  TermSubst& add(const Term& var, const Term& image);

  bool empty() const { return pairs_.empty(); }
  // (variable, image) pairs in insertion order; identity pairs dropped.
  const std::vector<std::pair<Term, Term>>& pairs() const { return pairs_; }

 private:
  std::vector<std::pair<Term, Term>> pairs_;
};

// Capture-avoiding simultaneous substitution. Bound variables are renamed
// (primed) only where an image would otherwise be captured.
Term vsubst(const TermSubst& subst, const Term& t);

// Applies a type instantiation throughout `t`, renaming binders that would
// otherwise become identified with a free variable.
Term inst_type(const TypeSubst& subst, const Term& t);

std::set<std::string> type_vars_in_term(const Term& t);

// Structural hash, not alpha-invariant.
size_t term_hash(const Term& t);

// A claim Γ ⊢ c, not necessarily a theorem.
struct Sequent {
  std::vector<Term> hyps;
  Term concl;
};

}  // namespace microhol

#endif  // MICROHOL_TERM_H_
