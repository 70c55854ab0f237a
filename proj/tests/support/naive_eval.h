// Test-only reference evaluator. Values are explicit trees: a function is the
// list of its results over the enumerated domain. Slow and direct; shares no
// code with the compiled evaluator beyond the term structure.
#ifndef MICROHOL_TESTS_NAIVE_EVAL_H_
#define MICROHOL_TESTS_NAIVE_EVAL_H_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "microhol/printer.h"
#include "microhol/term.h"
#include "microhol/theory.h"

namespace oracle {

struct Value {
  uint64_t atom = 0;
  std::vector<Value> table;
  bool operator==(const Value&) const = default;
};

class NaiveModel {
 public:
  NaiveModel(const microhol::Theory& thy, uint64_t ind,
             std::map<std::string, uint64_t> tyvars)
      : thy_(thy), ind_(ind), tyvars_(std::move(tyvars)) {}

  const std::vector<Value>& elements(const microhol::HolType& ty) {
    std::string key = microhol::print_type(ty);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Value> out;
    if (ty.is_fun()) {
      auto dom = elements(ty.domain());
      auto rng = elements(ty.range());
      // Every function: odometer over results.
      std::vector<size_t> pick(dom.size(), 0);
      while (true) {
        Value f;
        for (size_t i = 0; i < dom.size(); ++i) f.table.push_back(rng[pick[i]]);
        out.push_back(f);
        size_t i = 0;
        for (; i < pick.size(); ++i) {
          if (++pick[i] < rng.size()) break;
          pick[i] = 0;
        }
        if (i == pick.size()) break;
      }
    } else {
      uint64_t n;
      if (ty.is_var()) n = tyvars_.at(ty.name());
      else if (ty.is_bool()) n = 2;
      else if (ty.name() == "ind") n = ind_;
      else throw std::runtime_error("naive model: unsupported type");
      for (uint64_t i = 0; i < n; ++i) out.push_back(Value{i, {}});
    }
    return cache_[key] = std::move(out);
  }

  size_t index_of(const microhol::HolType& ty, const Value& v) {
    const auto& elems = elements(ty);
    for (size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == v) return i;
    throw std::runtime_error("naive model: value outside carrier");
  }

  using Env = std::vector<std::pair<microhol::Term, Value>>;

  Value eval(const microhol::Term& t, Env& env) {
    using microhol::Term;
    switch (t.kind()) {
      case Term::Kind::kVar:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t) return it->second;
        throw std::runtime_error("naive model: unbound " + t.name());
      case Term::Kind::kConst:
        return constant(t);
      case Term::Kind::kComb: {
        // l = r directly; the table of = can be huge.
        if (t.rator().is_comb() && t.rator().rator().is_const() &&
            t.rator().rator().name() == "=") {
          bool same = eval(t.rator().rand(), env) == eval(t.rand(), env);
          return Value{same ? 1u : 0u, {}};
        }
        Value f = eval(t.rator(), env);
        Value x = eval(t.rand(), env);
        return f.table.at(index_of(t.rand().type(), x));
      }
      case Term::Kind::kAbs: {
        Value f;
        for (const auto& e : std::vector<Value>(elements(t.bvar().type()))) {
          env.emplace_back(t.bvar(), e);
          f.table.push_back(eval(t.body(), env));
          env.pop_back();
        }
        return f;
      }
    }
    return {};
  }

  bool truth(const microhol::Term& t, Env env) { return eval(t, env).atom == 1; }

 private:
  Value constant(const microhol::Term& c) {
    using microhol::HolType;
    const HolType& ty = c.type();
    if (c.name() == "=") {
      const auto& elems = elements(ty.domain());
      Value out;
      for (const auto& a : elems) {
        Value row;
        for (const auto& b : elems) row.table.push_back(Value{a == b ? 1u : 0u, {}});
        out.table.push_back(row);
      }
      return out;
    }
    if (c.name() == "@") {
      std::vector<Value> elems = elements(ty.range());
      Value out;
      for (const auto& p : std::vector<Value>(elements(ty.domain()))) {
        size_t pick = 0;
        for (size_t i = 0; i < elems.size(); ++i)
          if (p.table[i].atom == 1) {
            pick = i;
            break;
          }
        out.table.push_back(elems[pick]);
      }
      return out;
    }
    std::string key = c.name() + ":" + microhol::print_type(ty);
    if (auto it = consts_.find(key); it != consts_.end()) return it->second;
    auto rhs = thy_.definition(c.name());
    auto generic = thy_.constant_type(c.name());
    microhol::TypeSubst theta;
    if (!rhs || !generic || !microhol::type_match(*generic, ty, theta))
      throw std::runtime_error("naive model: constant " + c.name());
    Env empty;
    return consts_[key] = eval(microhol::inst_type(theta, *rhs), empty);
  }

  const microhol::Theory& thy_;
  uint64_t ind_;
  std::map<std::string, uint64_t> tyvars_;
  std::map<std::string, std::vector<Value>> cache_;
  std::map<std::string, Value> consts_;
};

}  // namespace oracle

#endif  // MICROHOL_TESTS_NAIVE_EVAL_H_
