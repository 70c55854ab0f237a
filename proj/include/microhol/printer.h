#ifndef MICROHOL_PRINTER_H_
#define MICROHOL_PRINTER_H_

#include <functional>
#include <span>
#include <string>

#include "microhol/term.h"
#include "microhol/type.h"

namespace microhol {

struct PrintOptions {
  // Constants whose generic type has type variables are printed with a type
  // annotation outside of infix/binder positions, so the parser can recover
  // the instance. Defaults to the built-in polymorphic constants.
  std::function<bool(const std::string&)> is_polymorphic;
};

// Surface syntax:
//   types   bool | ind | A | name(T, ...) | T -> T       (-> right assoc)
//   terms   x | (x:T) | c | (c:T) | f a | \x:T. b | !x:T. b | ?x:T. b
//           | @x:T. b | ~p | p /\ q | p \/ q | p ==> q | a = b
// Free variables are always annotated, so printing is injective.
std::string print_type(const HolType& ty);
std::string print_term(const Term& t, const PrintOptions& options = {});
std::string print_sequent(std::span<const Term> hyps, const Term& concl,
                          const PrintOptions& options = {});

// Used in error messages.
std::string debug_string(const Term& t);

}  // namespace microhol

#endif  // MICROHOL_PRINTER_H_
