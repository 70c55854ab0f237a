#include "microhol/theory.h"

#include <cstdio>
#include <mutex>

#include "microhol/error.h"

namespace microhol {

namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv(uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
}

void encode_type(const HolType& ty, std::string& out) {
  if (ty.is_var()) {
    out += "V";
    out += std::to_string(ty.name().size());
    out += ':';
    out += ty.name();
    return;
  }
  out += "T";
  out += std::to_string(ty.name().size());
  out += ':';
  out += ty.name();
  out += '[';
  for (const auto& a : ty.args()) encode_type(a, out);
  out += ']';
}

void encode_term(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      out += t.is_var() ? "v" : "c";
      out += std::to_string(t.name().size());
      out += ':';
      out += t.name();
      encode_type(t.type(), out);
      return;
    case Term::Kind::kComb:
      out += "(";
      encode_term(t.rator(), out);
      encode_term(t.rand(), out);
      out += ")";
      return;
    case Term::Kind::kAbs:
      out += "\\";
      encode_term(t.bvar(), out);
      encode_term(t.body(), out);
      return;
  }
}

HolType generic_a() { return HolType::var("A"); }

}  // namespace

std::string to_hex(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

Theory::Theory() : fingerprint_(kFnvOffset) {
  types_ = {{"bool", 0}, {"ind", 0}, {"fun", 2}};
  HolType a = generic_a();
  HolType boolean = HolType::bool_type();
  constants_.emplace("=", HolType::fun(a, HolType::fun(a, boolean)));
  constants_.emplace("@", HolType::fun(HolType::fun(a, boolean), a));
}

std::optional<size_t> Theory::type_arity(const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = types_.find(name);
  if (it == types_.end()) return std::nullopt;
  return it->second;
}

std::optional<HolType> Theory::constant_type(const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = constants_.find(name);
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

std::optional<Term> Theory::definition(const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = definitions_.find(name);
  if (it == definitions_.end()) return std::nullopt;
  return it->second;
}

std::optional<TypeDefinition> Theory::type_definition(
    const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = type_definitions_.find(name);
  if (it == type_definitions_.end()) return std::nullopt;
  return it->second;
}

std::optional<TypeDefinition> Theory::type_definition_of_constant(
    const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = typedef_constants_.find(name);
  if (it == typedef_constants_.end()) return std::nullopt;
  return type_definitions_.at(it->second);
}

std::vector<DefinitionEvent> Theory::events() const {
  std::shared_lock lock(mu_);
  return log_;
}

std::vector<std::string> Theory::type_names() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [name, _] : types_) out.push_back(name);
  return out;
}

std::vector<std::string> Theory::constant_names() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [name, _] : constants_) out.push_back(name);
  return out;
}

uint64_t Theory::fingerprint() const {
  std::shared_lock lock(mu_);
  return fingerprint_;
}

bool Theory::is_polymorphic(const std::string& name) const {
  std::shared_lock lock(mu_);
  auto it = constants_.find(name);
  return it != constants_.end() && !type_vars(it->second).empty();
}

PrintOptions Theory::print_options() const {
  PrintOptions options;
  options.is_polymorphic = [this](const std::string& name) {
    return is_polymorphic(name);
  };
  return options;
}

HolType Theory::mk_type(const std::string& name,
                        std::vector<HolType> args) const {
  HolType ty = HolType::app(name, std::move(args));
  check_type(ty);
  return ty;
}

Term Theory::mk_const(const std::string& name, const TypeSubst& inst) const {
  auto generic = constant_type(name);
  if (!generic) fail(ErrorKind::kUnknownConstant, "unknown constant " + name);
  for (const auto& [_, ty] : inst) check_type(ty);
  return Term::constant(name, type_subst(inst, *generic));
}

Term Theory::mk_const_at(const std::string& name, const HolType& ty) const {
  Term c = Term::constant(name, ty);
  check_term(c);
  return c;
}

void Theory::check_type(const HolType& ty) const {
  std::shared_lock lock(mu_);
  check_type_locked(ty);
}

void Theory::check_term(const Term& t) const {
  std::shared_lock lock(mu_);
  check_term_locked(t);
}

void Theory::check_type_locked(const HolType& ty) const {
  if (ty.is_var()) return;
  auto it = types_.find(ty.name());
  if (it == types_.end())
    fail(ErrorKind::kUnknownType, "unknown type constructor " + ty.name());
  if (it->second != ty.args().size())
    fail(ErrorKind::kIllTyped, "type constructor " + ty.name() + " expects " +
                                   std::to_string(it->second) +
                                   " arguments, got " +
                                   std::to_string(ty.args().size()));
  for (const auto& arg : ty.args()) check_type_locked(arg);
}

void Theory::check_term_locked(const Term& t) const {
  switch (t.kind()) {
    case Term::Kind::kVar:
      check_type_locked(t.type());
      return;
    case Term::Kind::kConst: {
      auto it = constants_.find(t.name());
      if (it == constants_.end())
        fail(ErrorKind::kUnknownConstant, "unknown constant " + t.name());
      TypeSubst s;
      if (!type_match(it->second, t.type(), s))
        fail(ErrorKind::kIllTyped, "constant " + t.name() + " used at type " +
                                       print_type(t.type()) +
                                       ", not an instance of " +
                                       print_type(it->second));
      check_type_locked(t.type());
      return;
    }
    case Term::Kind::kComb:
      check_term_locked(t.rator());
      check_term_locked(t.rand());
      return;
    case Term::Kind::kAbs:
      check_term_locked(t.bvar());
      check_term_locked(t.body());
      return;
  }
}

void Theory::add_event_locked(DefinitionEvent event) {
  std::string enc = event.kind == DefinitionEvent::Kind::kConstant ? "C" : "Y";
  for (const auto& n : event.names) {
    enc += std::to_string(n.size());
    enc += ':';
    enc += n;
  }
  encode_term(event.term, enc);
  enc += ';';
  fnv(fingerprint_, enc);
  log_.push_back(std::move(event));
}

}  // namespace microhol
