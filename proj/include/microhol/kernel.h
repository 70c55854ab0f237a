#ifndef MICROHOL_KERNEL_H_
#define MICROHOL_KERNEL_H_

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "microhol/term.h"
#include "microhol/theory.h"
#include "microhol/type.h"

namespace microhol {

class Kernel;

// A sequent Γ ⊢ c. Values of this type can only be created by Kernel, so
// every Theorem in existence was produced by the inference rules below.
class Theorem {
 public:
  // Sorted by term_compare; no two members are alpha-equivalent.
  std::span<const Term> hyps() const { return *hyps_; }
  const Term& concl() const { return concl_; }
  // True when the axiom of infinity was used anywhere in the derivation.
  bool uses_infinity() const { return uses_infinity_; }
  // Unique among theorems of the producing kernel.
  uint64_t serial() const { return serial_; }

 private:
  friend class Kernel;
  Theorem(uint64_t kernel_id, uint64_t serial,
          std::shared_ptr<const std::vector<Term>> hyps, Term concl,
          bool uses_infinity)
      : kernel_id_(kernel_id),
        serial_(serial),
        hyps_(std::move(hyps)),
        concl_(std::move(concl)),
        uses_infinity_(uses_infinity) {}

  uint64_t kernel_id_;
  uint64_t serial_;
  std::shared_ptr<const std::vector<Term>> hyps_;
  Term concl_;
  bool uses_infinity_;
};

enum class Rule : uint8_t {
  kRefl,
  kTrans,
  kMkComb,
  kAbs,
  kBeta,
  kAssume,
  kEqMp,
  kDeductAntisym,
  kInstType,
  kInst,
  kAxiomExtensionality,
  kAxiomChoice,
  kAxiomInfinity,
  kDefinition,
  kTypeDefinition,
};
inline constexpr size_t kNumRules = 15;
std::string_view rule_name(Rule rule);

// One primitive kernel call, as seen by a TraceSink.
struct TraceStep {
  Rule rule;
  std::vector<uint64_t> premises;
  std::vector<Term> terms;
  TypeSubst type_subst;
  std::vector<std::pair<Term, Term>> term_subst;
  std::vector<std::string> names;
  std::vector<uint64_t> results;
};

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void record(TraceStep step) = 0;
};

// The trusted core. Owns the theory; inference rules only read it, the two
// definitional principles extend it under an exclusive lock.
class Kernel {
 public:
  Kernel();
  Kernel(const Kernel&) = delete;
  Kernel& operator=(const Kernel&) = delete;

  const Theory& theory() const { return theory_; }

  //   ⊢ a = a
  Theorem refl(const Term& a) const;
  //   Γ ⊢ a = b   Δ ⊢ b' = c   gives   Γ ∪ Δ ⊢ a = c
  Theorem trans(const Theorem& th1, const Theorem& th2) const;
  //   Γ ⊢ f = g   Δ ⊢ a = b   gives   Γ ∪ Δ ⊢ f a = g b
  Theorem mk_comb(const Theorem& th1, const Theorem& th2) const;
  //   Γ ⊢ a = b   gives   Γ ⊢ (\x. a) = (\x. b)   if x is not free in Γ
  Theorem abs(const Term& x, const Theorem& th) const;
  //   ⊢ (\x. a) x = a
  Theorem beta(const Term& redex) const;
  //   {p} ⊢ p
  Theorem assume(const Term& p) const;
  //   Γ ⊢ p   Δ ⊢ p' = q   gives   Γ ∪ Δ ⊢ q
  Theorem eq_mp(const Theorem& th1, const Theorem& th2) const;
  //   Γ ⊢ p   Δ ⊢ q   gives   (Γ - {q}) ∪ (Δ - {p}) ⊢ p = q
  Theorem deduct_antisym(const Theorem& th1, const Theorem& th2) const;
  Theorem inst_type(const TypeSubst& subst, const Theorem& th) const;
  Theorem inst(const TermSubst& subst, const Theorem& th) const;

  //   ⊢ (\x. t x) = t
  Theorem axiom_extensionality() const;
  //   ⊢ P x ==> P ((@) P)        needs the standard ==>
  Theorem axiom_choice() const;
  //   ⊢ ?f:ind->ind. ONE_ONE f /\ ~(ONTO f)
  // Needs the standard ?, /\, ~, ONE_ONE and ONTO. Flagged uses_infinity.
  Theorem axiom_infinity() const;

  //   ⊢ c = rhs, introducing c.
  Theorem new_basic_definition(const std::string& name, const Term& rhs);
  // From ⊢ P w introduces the type `name` with bijections abs/rep; returns
  //   ⊢ abs (rep a) = a   and   ⊢ P r = (rep (abs r) = r)
  std::pair<Theorem, Theorem> new_basic_type_definition(
      const std::string& name, const std::string& abs_name,
      const std::string& rep_name, const Theorem& inhabited);

  // Primitive rule applications so far, per rule.
  uint64_t inference_count(Rule rule) const {
    return counts_[static_cast<size_t>(rule)].load(std::memory_order_relaxed);
  }
  uint64_t total_inferences() const;

  void set_trace_sink(std::shared_ptr<TraceSink> sink);

 private:
  void own(const Theorem& th) const;
  Theorem make(std::shared_ptr<const std::vector<Term>> hyps, Term concl,
               bool uses_infinity) const;
  void count(Rule rule) const;
  void trace(TraceStep step) const;
  bool tracing() const;
  void require_standard(const std::string& name) const;

  static std::atomic<uint64_t> next_kernel_id_;

  uint64_t id_;
  Theory theory_;
  mutable std::atomic<uint64_t> next_serial_{1};
  mutable std::array<std::atomic<uint64_t>, kNumRules> counts_{};
  mutable std::mutex standard_mu_;
  mutable std::set<std::string> verified_standard_;
  mutable std::mutex sink_mu_;
  std::shared_ptr<TraceSink> sink_;
};

}  // namespace microhol

#endif  // MICROHOL_KERNEL_H_
