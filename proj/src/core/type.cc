#include "microhol/type.h"

#include <functional>

namespace microhol {

namespace {

size_t mix(size_t seed, size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

HolType HolType::var(std::string name) {
  size_t h = mix(0x51, std::hash<std::string>{}(name));
  return HolType(std::make_shared<const Node>(
      Node{true, std::move(name), {}, h}));
}

HolType HolType::app(std::string constructor, std::vector<HolType> args) {
  size_t h = mix(0xa7, std::hash<std::string>{}(constructor));
  for (const auto& arg : args) h = mix(h, arg.hash());
  return HolType(std::make_shared<const Node>(
      Node{false, std::move(constructor), std::move(args), h}));
}

HolType HolType::bool_type() {
  static const HolType kBool = app("bool", {});
  return kBool;
}

HolType HolType::ind_type() {
  static const HolType kInd = app("ind", {});
  return kInd;
}

HolType HolType::fun(HolType domain, HolType range) {
  return app("fun", {std::move(domain), std::move(range)});
}

bool HolType::is_fun() const {
  return !node_->is_var && node_->args.size() == 2 && node_->name == "fun";
}

bool HolType::is_bool() const {
  return !node_->is_var && node_->args.empty() && node_->name == "bool";
}

bool operator==(const HolType& a, const HolType& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  if (a.node_->is_var != b.node_->is_var || a.node_->name != b.node_->name)
    return false;
  return a.node_->args == b.node_->args;
}

std::strong_ordering operator<=>(const HolType& a, const HolType& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  // Variables sort before applications.
  if (a.node_->is_var != b.node_->is_var)
    return a.node_->is_var ? std::strong_ordering::less
                           : std::strong_ordering::greater;
  if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
  const auto& x = a.node_->args;
  const auto& y = b.node_->args;
  if (x.size() != y.size()) return x.size() <=> y.size();
  for (size_t i = 0; i < x.size(); ++i)
    if (auto c = x[i] <=> y[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

HolType type_subst(const TypeSubst& subst, const HolType& ty) {
  if (subst.empty()) return ty;
  if (ty.is_var()) {
    auto it = subst.find(ty.name());
    return it == subst.end() ? ty : it->second;
  }
  bool changed = false;
  std::vector<HolType> args;
  args.reserve(ty.args().size());
  for (const auto& arg : ty.args()) {
    args.push_back(type_subst(subst, arg));
    if (!args.back().same_node(arg)) changed = true;
  }
  if (!changed) return ty;
  return HolType::app(ty.name(), std::move(args));
}

void collect_type_vars(const HolType& ty, std::set<std::string>& out) {
  if (ty.is_var()) {
    out.insert(ty.name());
    return;
  }
  for (const auto& arg : ty.args()) collect_type_vars(arg, out);
}

std::set<std::string> type_vars(const HolType& ty) {
  std::set<std::string> out;
  collect_type_vars(ty, out);
  return out;
}

bool type_match(const HolType& pattern, const HolType& instance,
                TypeSubst& subst) {
  if (pattern.is_var()) {
    auto [it, inserted] = subst.emplace(pattern.name(), instance);
    return inserted || it->second == instance;
  }
  if (!instance.is_app() || pattern.name() != instance.name() ||
      pattern.args().size() != instance.args().size())
    return false;
  for (size_t i = 0; i < pattern.args().size(); ++i)
    if (!type_match(pattern.args()[i], instance.args()[i], subst)) return false;
  return true;
}

}  // namespace microhol
