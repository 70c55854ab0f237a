#ifndef MICROHOL_GENERATE_H_
#define MICROHOL_GENERATE_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "microhol/term.h"
#include "microhol/type.h"

namespace microhol {

struct TermGenOptions {
  int max_depth = 4;
  std::vector<std::string> names = {"x", "y", "z"};
  // Candidate types for variables and for the argument of applications.
  std::vector<HolType> small_types = {
      HolType::bool_type(), HolType::ind_type(), HolType::var("A"),
      HolType::fun(HolType::bool_type(), HolType::bool_type()),
      HolType::fun(HolType::ind_type(), HolType::bool_type())};
  // Constants at fixed types, used whenever their type is requested.
  std::vector<Term> constants;
  bool use_equality = true;
  bool use_select = false;
  // Rejects function types whose naive carrier could exceed this many
  // elements when ind and type variables have size 3.
  uint64_t max_carrier = 1 << 12;
};

// Random well-typed terms for property tests and the soundness fuzzer.
class TermGenerator {
 public:
  TermGenerator(TermGenOptions options, uint64_t seed)
      : options_(std::move(options)), rng_(seed) {}

  Term term(const HolType& ty) { return term(ty, options_.max_depth); }
  Term term(const HolType& ty, int depth);
  Term boolean() { return term(HolType::bool_type()); }
  Term var(const HolType& ty);
  HolType small_type();
  // Returns a term alpha-equivalent to `t` with bound variables renamed.
  Term alpha_variant(const Term& t);

  size_t uniform(size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& rng() { return rng_; }
  const TermGenOptions& options() const { return options_; }

 private:
  bool small_enough(const HolType& ty) const;

  TermGenOptions options_;
  std::mt19937_64 rng_;
};

// Upper bound on the carrier size of `ty` with every base type and type
// variable of size `base`; saturates at `limit + 1`.
uint64_t carrier_bound(const HolType& ty, uint64_t base, uint64_t limit);

}  // namespace microhol

#endif  // MICROHOL_GENERATE_H_
