#include "microhol/generate.h"

#include <algorithm>

namespace microhol {

uint64_t carrier_bound(const HolType& ty, uint64_t base, uint64_t limit) {
  if (ty.is_var()) return base;
  if (ty.is_bool()) return 2;
  if (!ty.is_fun()) return base;
  uint64_t a = carrier_bound(ty.domain(), base, limit);
  uint64_t b = carrier_bound(ty.range(), base, limit);
  if (a > limit || b > limit) return limit + 1;
  uint64_t out = 1;
  for (uint64_t i = 0; i < a; ++i) {
    out *= b;
    if (out > limit) return limit + 1;
  }
  return out;
}

bool TermGenerator::small_enough(const HolType& ty) const {
  return carrier_bound(ty, 3, options_.max_carrier) <= options_.max_carrier;
}

HolType TermGenerator::small_type() {
  return options_.small_types[uniform(options_.small_types.size())];
}

Term TermGenerator::var(const HolType& ty) {
  return Term::var(options_.names[uniform(options_.names.size())], ty);
}

Term TermGenerator::term(const HolType& ty, int depth) {
  std::vector<const Term*> consts;
  for (const auto& c : options_.constants)
    if (c.type() == ty) consts.push_back(&c);
  if (depth <= 0) {
    if (!consts.empty() && chance(0.3)) return *consts[uniform(consts.size())];
    return var(ty);
  }
  enum Choice { kVar, kConst, kAbs, kComb, kEq, kSelect };
  std::vector<std::pair<Choice, int>> weights = {{kVar, 2}, {kComb, 3}};
  if (!consts.empty()) weights.push_back({kConst, 2});
  if (ty.is_fun()) weights.push_back({kAbs, 4});
  if (ty.is_bool() && options_.use_equality) weights.push_back({kEq, 3});
  if (options_.use_select && small_enough(HolType::fun(ty, HolType::bool_type())))
    weights.push_back({kSelect, 1});
  int total = 0;
  for (const auto& [_, w] : weights) total += w;
  int pick = static_cast<int>(uniform(total));
  Choice choice = kVar;
  for (const auto& [c, w] : weights) {
    if (pick < w) {
      choice = c;
      break;
    }
    pick -= w;
  }
  switch (choice) {
    case kVar:
      return var(ty);
    case kConst:
      return *consts[uniform(consts.size())];
    case kAbs: {
      Term v = var(ty.domain());
      return Term::abs(v, term(ty.range(), depth - 1));
    }
    case kComb: {
      for (int attempt = 0; attempt < 4; ++attempt) {
        HolType a = small_type();
        HolType fty = HolType::fun(a, ty);
        if (!small_enough(fty)) continue;
        Term f = term(fty, depth - 1);
        return Term::comb(f, term(a, depth - 1));
      }
      return var(ty);
    }
    case kEq: {
      HolType a = small_type();
      return mk_eq(term(a, depth - 1), term(a, depth - 1));
    }
    case kSelect: {
      HolType pty = HolType::fun(ty, HolType::bool_type());
      Term sel = Term::constant("@", HolType::fun(pty, ty));
      return Term::comb(sel, term(pty, depth - 1));
    }
  }
  return var(ty);
}

namespace {

Term rename_bound(TermGenerator& gen, const Term& t,
                  std::vector<std::pair<Term, Term>>& env) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t) return it->second;
      return t;
    case Term::Kind::kConst:
      return t;
    case Term::Kind::kComb:
      return Term::comb(rename_bound(gen, t.rator(), env),
                        rename_bound(gen, t.rand(), env));
    case Term::Kind::kAbs: {
      // A fresh name that is not free in the body keeps the meaning.
      const Term& v = t.bvar();
      std::vector<Term> avoid = {t.body()};
      for (const auto& [_, image] : env) avoid.push_back(image);
      Term candidate =
          Term::var(gen.options().names[gen.uniform(gen.options().names.size())] +
                        "_" + std::to_string(gen.uniform(3)),
                    v.type());
      candidate = variant(avoid, candidate);
      std::vector<Term> frees = free_vars(t.body());
      bool clash = std::any_of(frees.begin(), frees.end(), [&](const Term& f) {
        return f == candidate;
      });
      if (clash) candidate = v;
      env.emplace_back(v, candidate);
      Term body = rename_bound(gen, t.body(), env);
      env.pop_back();
      return Term::abs(candidate, body);
    }
  }
  return t;
}

}  // namespace

Term TermGenerator::alpha_variant(const Term& t) {
  std::vector<std::pair<Term, Term>> env;
  return rename_bound(*this, t, env);
}

}  // namespace microhol
