#include "microhol/term.h"

#include <algorithm>
#include <functional>

#include "microhol/error.h"
#include "microhol/printer.h"

namespace microhol {

Term Term::var(std::string name, HolType type) {
  return Term(std::make_shared<const Node>(
      Node{Kind::kVar, std::move(name), std::move(type), Term(), Term()}));
}

Term Term::constant(std::string name, HolType type) {
  return Term(std::make_shared<const Node>(
      Node{Kind::kConst, std::move(name), std::move(type), Term(), Term()}));
}

Term Term::comb(Term f, Term a) {
  const HolType& fty = f.type();
  if (!fty.is_fun())
    fail(ErrorKind::kIllTyped,
         "mk_comb: rator is not a function: " + debug_string(f));
  if (!(fty.domain() == a.type()))
    fail(ErrorKind::kIllTyped, "mk_comb: domain mismatch applying " +
                                   debug_string(f) + " to " + debug_string(a));
  HolType range = fty.range();
  return Term(std::make_shared<const Node>(
      Node{Kind::kComb, {}, std::move(range), std::move(f), std::move(a)}));
}

Term Term::abs(Term v, Term body) {
  if (!v.is_var())
    fail(ErrorKind::kIllTyped, "mk_abs: bound term is not a variable: " +
                                   debug_string(v));
  HolType ty = HolType::fun(v.type(), body.type());
  return Term(std::make_shared<const Node>(
      Node{Kind::kAbs, {}, std::move(ty), std::move(v), std::move(body)}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      return a.name() == b.name() && a.type() == b.type();
    case Term::Kind::kComb:
    case Term::Kind::kAbs:
      return a.node_->left == b.node_->left && a.node_->right == b.node_->right;
  }
  return false;
}

Term mk_eq(const Term& lhs, const Term& rhs) {
  const HolType& ty = lhs.type();
  if (!(ty == rhs.type()))
    fail(ErrorKind::kIllTyped, "mk_eq: sides have different types: " +
                                   debug_string(lhs) + " and " +
                                   debug_string(rhs));
  Term eq = Term::constant(
      "=", HolType::fun(ty, HolType::fun(ty, HolType::bool_type())));
  return Term::comb(Term::comb(eq, lhs), rhs);
}

Term mk_binop(const Term& op, const Term& lhs, const Term& rhs) {
  return Term::comb(Term::comb(op, lhs), rhs);
}

bool is_eq(const Term& t) {
  if (!t.is_comb()) return false;
  const Term& r = t.rator();
  return r.is_comb() && r.rator().is_const() && r.rator().name() == "=";
}

std::pair<Term, std::vector<Term>> strip_comb(const Term& t) {
  std::vector<Term> args;
  const Term* head = &t;
  while (head->is_comb()) {
    args.push_back(head->rand());
    head = &head->rator();
  }
  std::reverse(args.begin(), args.end());
  return {*head, std::move(args)};
}

int var_compare(const Term& a, const Term& b) {
  if (a.same_node(b)) return 0;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  auto c = a.type() <=> b.type();
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

namespace {

bool same_var(const Term& a, const Term& b) {
  return a.same_node(b) || (a.name() == b.name() && a.type() == b.type());
}

void collect_frees(const Term& t, std::vector<const Term*>& bound,
                   std::vector<Term>& out) {
  switch (t.kind()) {
    case Term::Kind::kVar: {
      for (const Term* b : bound)
        if (same_var(*b, t)) return;
      out.push_back(t);
      return;
    }
    case Term::Kind::kConst:
      return;
    case Term::Kind::kComb:
      collect_frees(t.rator(), bound, out);
      collect_frees(t.rand(), bound, out);
      return;
    case Term::Kind::kAbs:
      bound.push_back(&t.bvar());
      collect_frees(t.body(), bound, out);
      bound.pop_back();
      return;
  }
}

void sort_unique_vars(std::vector<Term>& vars) {
  std::sort(vars.begin(), vars.end(), VarLess{});
  vars.erase(std::unique(vars.begin(), vars.end(),
                         [](const Term& a, const Term& b) {
                           return var_compare(a, b) == 0;
                         }),
             vars.end());
}

}  // namespace

std::vector<Term> free_vars(const Term& t) {
  std::vector<const Term*> bound;
  std::vector<Term> out;
  collect_frees(t, bound, out);
  sort_unique_vars(out);
  return out;
}

std::vector<Term> free_vars(std::span<const Term> terms) {
  std::vector<const Term*> bound;
  std::vector<Term> out;
  for (const auto& t : terms) collect_frees(t, bound, out);
  sort_unique_vars(out);
  return out;
}

bool var_free_in(const Term& v, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return same_var(v, t);
    case Term::Kind::kConst:
      return false;
    case Term::Kind::kComb:
      return var_free_in(v, t.rator()) || var_free_in(v, t.rand());
    case Term::Kind::kAbs:
      return !same_var(v, t.bvar()) && var_free_in(v, t.body());
  }
  return false;
}

bool is_closed(const Term& t) { return free_vars(t).empty(); }

namespace {

using BinderEnv = std::vector<std::pair<const Term*, const Term*>>;

// Compares two variables under a stack of paired binders. Bound variables are
// ordered by binding depth (innermost first) and precede free ones; free
// variables are ordered by name then type. This is the lexicographic order of
// the de Bruijn forms.
int compare_vars(const BinderEnv& env, const Term& x, const Term& y) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    bool x_here = same_var(*it->first, x);
    bool y_here = same_var(*it->second, y);
    if (x_here && y_here) return 0;
    if (x_here) return -1;
    if (y_here) return 1;
  }
  return var_compare(x, y);
}

int kind_rank(Term::Kind k) {
  switch (k) {
    case Term::Kind::kVar: return 1;
    case Term::Kind::kConst: return 0;
    case Term::Kind::kComb: return 2;
    case Term::Kind::kAbs: return 3;
  }
  return 4;
}

int compare_rec(BinderEnv& env, const Term& a, const Term& b) {
  if (env.empty() && a.same_node(b)) return 0;
  if (a.kind() != b.kind()) {
    return kind_rank(a.kind()) < kind_rank(b.kind()) ? -1 : 1;
  }
  switch (a.kind()) {
    case Term::Kind::kVar:
      return compare_vars(env, a, b);
    case Term::Kind::kConst:
      return var_compare(a, b);
    case Term::Kind::kComb: {
      if (int c = compare_rec(env, a.rator(), b.rator()); c != 0) return c;
      return compare_rec(env, a.rand(), b.rand());
    }
    case Term::Kind::kAbs: {
      auto c = a.bvar().type() <=> b.bvar().type();
      if (c != 0) return c < 0 ? -1 : 1;
      env.emplace_back(&a.bvar(), &b.bvar());
      int r = compare_rec(env, a.body(), b.body());
      env.pop_back();
      return r;
    }
  }
  return 0;
}

}  // namespace

int term_compare(const Term& a, const Term& b) {
  BinderEnv env;
  return compare_rec(env, a, b);
}

Term variant(std::span<const Term> avoid, const Term& v) {
  Term current = v;
  auto clashes = [&](const Term& cand) {
    return std::any_of(avoid.begin(), avoid.end(), [&](const Term& t) {
      return var_free_in(cand, t);
    });
  };
  while (clashes(current)) current = Term::var(current.name() + "'", v.type());
  return current;
}

TermSubst::TermSubst(std::initializer_list<std::pair<Term, Term>> pairs) {
  for (const auto& [var, image] : pairs) add(var, image);
}

TermSubst& TermSubst::add(const Term& var, const Term& image) {
  if (!var.is_var())
    fail(ErrorKind::kIllTyped,
         "substitution domain entry is not a variable: " + debug_string(var));
  if (!(var.type() == image.type()))
    fail(ErrorKind::kIllTyped, "substitution image " + debug_string(image) +
                                   " does not have the type of " +
                                   debug_string(var));
  for (const auto& [v, _] : pairs_)
    if (same_var(v, var))
      fail(ErrorKind::kIllTyped,
           "variable substituted twice: " + debug_string(var));
  pairs_.emplace_back(var, image);
  return *this;
}

namespace {

using SubstList = std::vector<std::pair<Term, Term>>;  // (var, image)

Term vsubst_rec(const SubstList& ilist, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      for (const auto& [v, image] : ilist)
        if (same_var(v, t)) return image;
      return t;
    case Term::Kind::kConst:
      return t;
    case Term::Kind::kComb: {
      Term l = vsubst_rec(ilist, t.rator());
      Term r = vsubst_rec(ilist, t.rand());
      if (l.same_node(t.rator()) && r.same_node(t.rand())) return t;
      return Term::comb(std::move(l), std::move(r));
    }
    case Term::Kind::kAbs: {
      const Term& v = t.bvar();
      const Term& body = t.body();
      SubstList inner;
      for (const auto& p : ilist)
        if (!same_var(p.first, v)) inner.push_back(p);
      if (inner.empty()) return t;
      Term body2 = vsubst_rec(inner, body);
      if (body2.same_node(body)) return t;
      bool captures = std::any_of(inner.begin(), inner.end(), [&](const auto& p) {
        return var_free_in(v, p.second) && var_free_in(p.first, body);
      });
      if (!captures) return Term::abs(v, std::move(body2));
      Term fresh = variant(std::span<const Term>(&body2, 1), v);
      inner.insert(inner.begin(), {v, fresh});
      return Term::abs(fresh, vsubst_rec(inner, body));
    }
  }
  return t;
}

struct Clash {
  Term var;
};

using InstEnv = std::vector<std::pair<Term, Term>>;  // (instantiated, original)

Term inst_rec(const InstEnv& env, const TypeSubst& tyin, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::kVar: {
      HolType ty = type_subst(tyin, t.type());
      Term t2 = ty.same_node(t.type()) ? t : Term::var(t.name(), ty);
      // The binder (if any) that the instantiated variable now refers to must
      // be the one that bound the original.
      const Term* original = &t;
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (same_var(it->first, t2)) {
          original = &it->second;
          break;
        }
      }
      if (same_var(*original, t)) return t2;
      throw Clash{t2};
    }
    case Term::Kind::kConst: {
      HolType ty = type_subst(tyin, t.type());
      return ty.same_node(t.type()) ? t : Term::constant(t.name(), ty);
    }
    case Term::Kind::kComb: {
      Term l = inst_rec(env, tyin, t.rator());
      Term r = inst_rec(env, tyin, t.rand());
      if (l.same_node(t.rator()) && r.same_node(t.rand())) return t;
      return Term::comb(std::move(l), std::move(r));
    }
    case Term::Kind::kAbs: {
      const Term& y = t.bvar();
      Term y2 = inst_rec({}, tyin, y);
      InstEnv env2 = env;
      env2.emplace_back(y2, y);
      try {
        Term body = inst_rec(env2, tyin, t.body());
        if (y2.same_node(y) && body.same_node(t.body())) return t;
        return Term::abs(std::move(y2), std::move(body));
      } catch (const Clash& clash) {
        if (!same_var(clash.var, y2)) throw;
        std::vector<Term> ifrees;
        for (const auto& f : free_vars(t.body()))
          ifrees.push_back(inst_rec({}, tyin, f));
        Term y3 = variant(ifrees, y2);
        Term z = Term::var(y3.name(), y.type());
        TermSubst rename;
        rename.add(y, z);
        return inst_rec(env, tyin, Term::abs(z, vsubst(rename, t.body())));
      }
    }
  }
  return t;
}

}  // namespace

Term vsubst(const TermSubst& subst, const Term& t) {
  SubstList ilist;
  for (const auto& p : subst.pairs())
    if (!same_var(p.first, p.second) || !p.second.is_var())
      ilist.push_back(p);
  if (ilist.empty()) return t;
  return vsubst_rec(ilist, t);
}

Term inst_type(const TypeSubst& subst, const Term& t) {
  if (subst.empty()) return t;
  return inst_rec({}, subst, t);
}

namespace {

void collect_term_type_vars(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      collect_type_vars(t.type(), out);
      return;
    case Term::Kind::kComb:
      collect_term_type_vars(t.rator(), out);
      collect_term_type_vars(t.rand(), out);
      return;
    case Term::Kind::kAbs:
      collect_term_type_vars(t.bvar(), out);
      collect_term_type_vars(t.body(), out);
      return;
  }
}

}  // namespace

std::set<std::string> type_vars_in_term(const Term& t) {
  std::set<std::string> out;
  collect_term_type_vars(t, out);
  return out;
}

size_t term_hash(const Term& t) {
  size_t h = static_cast<size_t>(t.kind()) * 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  switch (t.kind()) {
    case Term::Kind::kVar:
    case Term::Kind::kConst:
      mix(std::hash<std::string>{}(t.name()));
      mix(t.type().hash());
      break;
    case Term::Kind::kComb:
      mix(term_hash(t.rator()));
      mix(term_hash(t.rand()));
      break;
    case Term::Kind::kAbs:
      mix(term_hash(t.bvar()));
      mix(term_hash(t.body()));
      break;
  }
  return h;
}

}  // namespace microhol
