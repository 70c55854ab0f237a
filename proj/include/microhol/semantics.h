#ifndef MICROHOL_SEMANTICS_H_
#define MICROHOL_SEMANTICS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "microhol/term.h"
#include "microhol/theory.h"
#include "microhol/type.h"

namespace microhol {

// Elements of a carrier of size n are 0 .. n-1, well-ordered by index. A
// function A -> B is the base-|B| number whose digit i is its value at i.
inline constexpr uint64_t kFalse = 0;
inline constexpr uint64_t kTrue = 1;

struct Model {
  uint64_t ind_size = 2;
  // Largest carrier that may be built.
  uint64_t cap = uint64_t{1} << 16;
};

// Carrier size of each type variable.
using TypeAssignment = std::map<std::string, uint64_t>;

struct Valuation {
  Model model;
  TypeAssignment types;
  // Variable -> element of its carrier.
  std::vector<std::pair<Term, uint64_t>> terms;
};

// Renders a valuation as "x:bool = T, f:ind -> bool = #2, ...".
std::string describe_valuation(const Valuation& v);

class Interpretation;

// Terms compiled against one interpretation; all terms share the slots of
// their free variables.
class Program {
 public:
  // Returns a handle for `t`.
  uint32_t add(const Term& t);
  // Free variables of all added terms, in slot order.
  const std::vector<Term>& free_vars() const { return free_; }
  const std::vector<uint64_t>& free_carriers() const { return carriers_; }
  // Value of term `handle` with free variable i set to values[i].
  uint64_t run(uint32_t handle, std::span<const uint64_t> values);
  // The same in two steps, for several terms at one valuation. Terms added
  // after load() need another load().
  void load(std::span<const uint64_t> values);
  uint64_t eval(uint32_t handle);

 private:
  friend class Interpretation;
  enum class Op : uint8_t { kValue, kSlot, kApply, kAbs, kLet, kEq, kSelect,
                            kSelectAbs, kAll };
  struct Node {
    Op op;
    uint32_t a = 0;
    uint32_t b = 0;
    uint32_t slot = 0;
    uint64_t value = 0;
    uint64_t dom = 0;
    uint64_t rng = 0;
  };
  using Env = std::vector<std::pair<Term, uint32_t>>;

  explicit Program(Interpretation& interp) : interp_(&interp) {}
  uint32_t emit(Node node);
  uint32_t compile(const Term& t, Env& env);
  uint32_t compile_spine(const Term& head, std::span<const Term> args,
                         Env& env);
  uint32_t apply_rest(uint32_t f, HolType fty, std::span<const Term> args,
                      Env& env);
  uint32_t fresh_slot() { return num_slots_++; }
  bool fits(const HolType& ty);
  uint64_t exec(uint32_t node);

  Interpretation* interp_;
  std::vector<Node> nodes_;
  std::vector<uint32_t> roots_;
  std::vector<Term> free_;
  std::vector<uint64_t> carriers_;
  std::vector<uint32_t> free_slots_;
  uint32_t num_slots_ = 0;
  uint32_t fresh_names_ = 0;
  std::vector<uint64_t> slots_;
};

// A model together with a type assignment, reading definitions from a
// theory. Caches carriers and the tables of defined constants.
class Interpretation {
 public:
  Interpretation(const Theory& theory, Model model, TypeAssignment types);

  const Model& model() const { return model_; }
  const TypeAssignment& types() const { return types_; }
  const Theory& theory() const { return *theory_; }

  // Carrier size. Throws kCarrierOverflow, kUnassignedTypeVar, kUnknownType.
  uint64_t carrier(const HolType& ty);
  Program program() { return Program(*this); }

  // Value of a table at an argument.
  static uint64_t apply(uint64_t table, uint64_t arg, uint64_t range_size);

 private:
  friend class Program;
  struct TypedefCarrier {
    std::vector<uint64_t> support;
  };
  const TypedefCarrier& typedef_carrier(const HolType& ty);
  // Table of a defined or typedef constant, or nullopt if its carrier is too
  // large to materialize.
  std::optional<uint64_t> constant_value(const Term& c);
  // inst_type'd definition of `c`; throws kUninterpretableConstant.
  Term instantiated_definition(const Term& c);

  const Theory* theory_;
  Model model_;
  TypeAssignment types_;
  std::map<HolType, uint64_t> carrier_cache_;
  std::map<HolType, TypedefCarrier> typedef_cache_;
  std::map<std::pair<std::string, HolType>, std::optional<uint64_t>> const_cache_;
};

uint64_t eval_type(const HolType& ty, const Theory& theory, const Model& model,
                   const TypeAssignment& types);
uint64_t eval_term(const Term& t, const Theory& theory, const Valuation& v);
bool holds_sequent(std::span<const Term> hyps, const Term& concl,
                   const Theory& theory, const Valuation& v);

struct ValidityOptions {
  // Enumerate every valuation when there are at most this many.
  uint64_t budget = 1000000;
  // Otherwise draw this many at random.
  uint64_t samples = 1000;
  uint64_t seed = 0x5eed;
  // Type variables range over carriers of size 1 .. max_tyvar_size.
  uint64_t max_tyvar_size = 2;
};

struct Verdict {
  enum class Kind { kValid, kProbablyValid, kInvalid };
  Kind kind = Kind::kValid;
  uint64_t valuations = 0;
  uint64_t seed = 0;
  std::optional<Valuation> counterexample;
};

std::string_view verdict_name(Verdict::Kind kind);

Verdict is_valid(std::span<const Term> hyps, const Term& concl,
                 const Theory& theory, const Model& model,
                 const ValidityOptions& options = {});

// All type assignments giving each of `tyvars` a size in 1 .. max_size.
std::vector<TypeAssignment> type_assignments(
    const std::set<std::string>& tyvars, uint64_t max_size);

// Calls `visit` with each valuation of `carriers` (mixed-radix order) while
// it returns true, or with `samples` random valuations when the product
// exceeds `budget`. Returns the number visited and whether it was
// exhaustive.
template <typename Visit>
std::pair<uint64_t, bool> for_each_valuation(
    std::span<const uint64_t> carriers, uint64_t budget, uint64_t samples,
    std::mt19937_64& rng, Visit&& visit);

template <typename Visit>
std::pair<uint64_t, bool> for_each_valuation(
    std::span<const uint64_t> carriers, uint64_t budget, uint64_t samples,
    std::mt19937_64& rng, Visit&& visit) {
  uint64_t total = 1;
  bool exhaustive = true;
  for (uint64_t c : carriers) {
    if (c != 0 && total > budget / c) {
      exhaustive = false;
      break;
    }
    total *= c;
  }
  if (total > budget) exhaustive = false;
  std::vector<uint64_t> values(carriers.size(), 0);
  uint64_t visited = 0;
  if (exhaustive) {
    for (uint64_t n = 0; n < total; ++n) {
      ++visited;
      if (!visit(std::span<const uint64_t>(values))) break;
      for (size_t i = 0; i < values.size(); ++i) {
        if (++values[i] < carriers[i]) break;
        values[i] = 0;
      }
    }
    return {visited, true};
  }
  for (uint64_t n = 0; n < samples; ++n) {
    for (size_t i = 0; i < values.size(); ++i)
      values[i] = std::uniform_int_distribution<uint64_t>(0, carriers[i] - 1)(rng);
    ++visited;
    if (!visit(std::span<const uint64_t>(values))) break;
  }
  return {visited, false};
}

}  // namespace microhol

#endif  // MICROHOL_SEMANTICS_H_
