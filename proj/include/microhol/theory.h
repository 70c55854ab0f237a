#ifndef MICROHOL_THEORY_H_
#define MICROHOL_THEORY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "microhol/printer.h"
#include "microhol/term.h"
#include "microhol/type.h"

namespace microhol {

struct DefinitionEvent {
  enum class Kind { kConstant, kType };
  Kind kind;
  // Constant: {name}. Type: {type name, abs name, rep name}.
  std::vector<std::string> names;
  // Constant: the defining right-hand side. Type: the inhabitation
  // conclusion `P w`.
  Term term;
};

struct TypeDefinition {
  std::string name;
  // Sorted; the i-th argument of the new type instantiates tyvars[i].
  std::vector<std::string> tyvars;
  std::string abs;
  std::string rep;
  Term predicate;
  HolType rep_type;
};

// The signature: type constructors, constants and the definition log. Only
// the kernel mutates it; all public members are safe to call concurrently.
class Theory {
 public:
  Theory();
  Theory(const Theory&) = delete;
  Theory& operator=(const Theory&) = delete;

  std::optional<size_t> type_arity(const std::string& name) const;
  std::optional<HolType> constant_type(const std::string& name) const;
  // Generic right-hand side of a defined constant.
  std::optional<Term> definition(const std::string& name) const;
  std::optional<TypeDefinition> type_definition(const std::string& name) const;
  // Type definition that introduced `abs` or `rep` named `name`.
  std::optional<TypeDefinition> type_definition_of_constant(
      const std::string& name) const;

  std::vector<DefinitionEvent> events() const;
  std::vector<std::string> type_names() const;
  std::vector<std::string> constant_names() const;
  // FNV-1a over the canonical encoding of the definition log.
  uint64_t fingerprint() const;

  bool is_polymorphic(const std::string& name) const;
  PrintOptions print_options() const;

  // Checked constructors.
  HolType mk_type(const std::string& name, std::vector<HolType> args) const;
  Term mk_const(const std::string& name, const TypeSubst& inst = {}) const;
  Term mk_const_at(const std::string& name, const HolType& ty) const;

  // Throw kUnknownType / kUnknownConstant / kIllTyped.
  void check_type(const HolType& ty) const;
  void check_term(const Term& t) const;

 private:
  friend class Kernel;

  void check_type_locked(const HolType& ty) const;
  void check_term_locked(const Term& t) const;
  void add_event_locked(DefinitionEvent event);

  mutable std::shared_mutex mu_;
  std::map<std::string, size_t> types_;
  std::map<std::string, HolType> constants_;
  std::map<std::string, Term> definitions_;
  std::map<std::string, TypeDefinition> type_definitions_;
  std::map<std::string, std::string> typedef_constants_;
  std::vector<DefinitionEvent> log_;
  uint64_t fingerprint_;
};

std::string to_hex(uint64_t value);

}  // namespace microhol

#endif  // MICROHOL_THEORY_H_
