#ifndef MICROHOL_TYPE_H_
#define MICROHOL_TYPE_H_

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace microhol {

// A simple type: either a type variable or a type constructor applied to
// argument types. Immutable; copies share structure.
class HolType {
 public:
  static HolType var(std::string name);
  static HolType app(std::string constructor, std::vector<HolType> args);

  static HolType bool_type();
  static HolType ind_type();
  static HolType fun(HolType domain, HolType range);

  bool is_var() const { return node_->is_var; }
  bool is_app() const { return !node_->is_var; }
  // Variable name or constructor name.
  const std::string& name() const { return node_->name; }
  const std::vector<HolType>& args() const { return node_->args; }

  bool is_fun() const;
  bool is_bool() const;
  // Only valid on function types.
  const HolType& domain() const { return node_->args[0]; }
  const HolType& range() const { return node_->args[1]; }

  bool same_node(const HolType& other) const {
    return node_ == other.node_;
  }
  size_t hash() const { return node_->hash; }

  friend bool operator==(const HolType& a, const HolType& b);
  friend std::strong_ordering operator<=>(const HolType& a, const HolType& b);

 private:
  struct Node {
    bool is_var;
    std::string name;
    std::vector<HolType> args;
    size_t hash;
  };
  explicit HolType(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct HolTypeHash {
  size_t operator()(const HolType& ty) const { return ty.hash(); }
};

// Type variable name -> replacement type.
using TypeSubst = std::map<std::string, HolType>;

HolType type_subst(const TypeSubst& subst, const HolType& ty);

// Type variables in order of name.
std::set<std::string> type_vars(const HolType& ty);
void collect_type_vars(const HolType& ty, std::set<std::string>& out);

// Matches `instance` against `pattern`, extending `subst`. Returns false on
// mismatch or on an inconsistent binding.
bool type_match(const HolType& pattern, const HolType& instance,
                TypeSubst& subst);

}  // namespace microhol

#endif  // MICROHOL_TYPE_H_
