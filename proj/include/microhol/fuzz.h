#ifndef MICROHOL_FUZZ_H_
#define MICROHOL_FUZZ_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "microhol/bootstrap.h"
#include "microhol/generate.h"
#include "microhol/kernel.h"
#include "microhol/semantics.h"

namespace microhol {

Sequent sequent_of(const Theorem& th);

// One application of a rule. `link` says at which valuation the premises are
// read when the conclusion is read at v.
struct RuleInstance {
  enum class Link {
    kSame,       // at v
    kEveryValue, // at v[x := e] for every e; x = `bound`
    kSubstituted,// at v[y := [[s]]v] for each y := s in `term_subst`
    kRetyped,    // type variables a read as carriers of type_subst(a)
  };
  std::vector<Sequent> premises;
  Sequent conclusion;
  Link link = Link::kSame;
  std::optional<Term> bound;
  TermSubst term_subst;
  TypeSubst type_subst;
};

struct FuzzOptions {
  uint64_t trials = 10000;
  uint64_t seed = 7;
  std::vector<uint64_t> ind_sizes = {1, 2, 3};
  uint64_t max_tyvar_size = 2;
  // Exhaustive up to this many valuations per model, else `samples`.
  uint64_t budget = 100000;
  uint64_t samples = 1000;
  uint64_t cap = uint64_t{1} << 16;
};

struct Counterexample {
  uint64_t trial = 0;
  std::vector<std::string> premises;
  std::string conclusion;
  std::string valuation;
};

struct FuzzReport {
  std::string rule;
  uint64_t trials = 0;
  uint64_t seed = 0;
  // Instances the generator could not build (kernel refused) and instances
  // with a carrier over the cap in some model. Neither counts as a trial.
  uint64_t rejected = 0;
  uint64_t overflowed = 0;
  uint64_t valuations = 0;
  uint64_t exhaustive_models = 0;
  uint64_t sampled_models = 0;
  std::vector<Counterexample> counterexamples;
};

// Returns one instance, or throws HolError when the drawn instance is not
// well formed (counted as rejected).
using InstanceGenerator = std::function<RuleInstance(TermGenerator&)>;

// Checks that every instance preserves truth at every valuation it reaches.
FuzzReport fuzz_rule_soundness(const std::string& rule,
                               const InstanceGenerator& generator,
                               const Theory& theory,
                               const FuzzOptions& options = {});

// Checks a single instance; appends to `report`. False when some model had
// a carrier over the cap.
bool check_instance(const RuleInstance& instance, const Theory& theory,
                    const FuzzOptions& options, uint64_t trial,
                    FuzzReport& report);

// The ten primitive rules, in kernel order.
const std::vector<std::string>& fuzz_rule_names();

// Draws instances of `rule` through `kernel`, using `logic` to build
// premises. Throws kDerivedRule for an unknown name.
InstanceGenerator kernel_rule_generator(const std::string& rule,
                                        const Kernel& kernel,
                                        const Logic& logic);

// Term generator options for fuzzing: connectives as constants, carriers
// small enough to enumerate.
TermGenOptions fuzz_term_options();

std::string fuzz_report_json(const std::vector<FuzzReport>& reports);

struct WalkReport {
  uint64_t steps = 0;
  uint64_t theorems = 0;
  uint64_t refused = 0;
  bool derived_false = false;
};

// Applies random primitive rules to random premises drawn from a pool of
// earlier results.
WalkReport random_kernel_walk(const Kernel& kernel, uint64_t steps,
                              uint64_t seed);

}  // namespace microhol

#endif  // MICROHOL_FUZZ_H_
