#ifndef MICROHOL_AUTO_H_
#define MICROHOL_AUTO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "microhol/bootstrap.h"
#include "microhol/error.h"

namespace microhol {

// ---- Tautologies ----

// Thrown by taut for a formula that is false somewhere. The assignment lists
// the variables in order of first occurrence.
class NotATautology : public HolError {
 public:
  NotATautology(std::vector<std::pair<Term, bool>> assignment, const std::string& message)
      : HolError(ErrorKind::kNotATautology, message), assignment_(std::move(assignment)) {}
  const std::vector<std::pair<Term, bool>>& assignment() const { return assignment_; }

 private:
  std::vector<std::pair<Term, bool>> assignment_;
};

inline constexpr size_t kMaxTautVariables = 16;

// Boolean variables of a propositional formula in order of first occurrence.
// Throws kNotPropositional for anything but variables, T, F, ~, /\, \/, ==>
// and = on bool.
std::vector<Term> propositional_atoms(const Term& p);

// ⊢ p by case analysis on its variables. Assignments are tried from all-true
// downwards, so the reported falsifier is the first in that order.
Theorem taut(const Logic& logic, const Term& p);

// ---- First-order proof search ----

struct FirstOrderProblem {
  std::vector<Term> axioms;
  Term goal;
};

// One clause of the clausified problem: a theorem hyps ⊢ l1 \/ ... \/ ln,
// its literals in order, and the free variables read as universal.
struct Clause {
  Theorem theorem;
  std::vector<Term> literals;
  std::vector<Term> universals;
  bool from_goal = false;
};

struct Clausification {
  std::vector<Clause> clauses;
  // Choice terms introduced in place of existentials.
  std::vector<Term> skolems;
  // Set when some input reduced to F outright.
  std::optional<Theorem> contradiction;
};

// Negation normal form, Skolemization by choice terms, and distribution into
// clauses, all as forward inference from `th`. Throws kOutOfFragment.
Clausification clausify(const Logic& logic, const Theorem& th);
// Clauses of ASSUME p.
Clausification clausify(const Logic& logic, const Term& p);

struct MesonOptions {
  // Bound on the number of extension steps along any branch of the proof
  // tree; the search deepens from 0 in steps of 1.
  int depth = 20;
  // Wall-clock limit for the search, 0 for none.
  double timeout_seconds = 0;
  // Add the equality_axioms of the problem to its clauses.
  bool equality = true;
};

struct MesonStep {
  enum class Kind { kStart, kExtension, kReduction } kind;
  int clause = -1;     // start and extension
  int literal = -1;    // extension: the literal matched against the goal
  int ancestor = -1;   // reduction: depth of the ancestor, 0 = root
  std::string goal;    // the goal literal closed by the step, instantiated
};

struct MesonTrace {
  std::vector<std::string> clauses;
  std::vector<std::string> skolems;
  std::vector<MesonStep> steps;  // preorder
  int depth = 0;                 // bound that succeeded, or the last one tried
  uint64_t inferences = 0;       // search steps tried
  bool timed_out = false;
};

struct MesonResult {
  std::optional<Theorem> theorem;  // axioms ⊢ goal
  MesonTrace trace;
  bool proved() const { return theorem.has_value(); }
};

// Equality as theorems: reflexivity, symmetry and transitivity at each
// non-boolean type where = occurs in the problem, and substitutivity of
// every function and predicate symbol in each argument of such a type,
//   ⊢ !x y. x = y ==> f .. x .. = f .. y ..
//   ⊢ !x y. x = y ==> P .. x .. ==> P .. y ..
// Empty when the problem has no such equations.
std::vector<Theorem> equality_axioms(const Logic& logic, const FirstOrderProblem& problem);

// Refutes axioms ∪ {~goal} by model elimination with iterative deepening and
// rebuilds the proof through `logic`. Throws kOutOfFragment; an exhausted
// search is returned with no theorem.
MesonResult meson(const Logic& logic, const FirstOrderProblem& problem,
                  const MesonOptions& options = {});

// The same, but throws kDepthExhausted when no proof is found.
Theorem meson_prove(const Logic& logic, const FirstOrderProblem& problem,
                    const MesonOptions& options = {});

std::string meson_trace_text(const MesonTrace& trace);

}  // namespace microhol

#endif  // MICROHOL_AUTO_H_
