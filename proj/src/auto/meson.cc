#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "microhol/auto.h"
#include "microhol/printer.h"

namespace microhol {

namespace {

HolType B() { return HolType::bool_type(); }

bool is_literal(const Term& t) {
  const Term& a = is_neg(t) ? t.rand() : t;
  return !(is_neg(a) || is_conj(a) || is_disj(a) || is_imp(a) || is_iff(a) ||
           is_forall(a) || is_exists(a));
}

void leaves(const Term& d, std::vector<Term>& out) {
  if (is_disj(d)) {
    leaves(binop_lhs(d), out);
    leaves(binop_rhs(d), out);
  } else {
    out.push_back(d);
  }
}

// Abstractions only as quantifier or choice bodies, and no quantifier over
// functions.
void check_fragment(const Term& t, bool binder_body) {
  if (t.is_abs()) {
    if (!binder_body)
      fail(ErrorKind::kOutOfFragment, "lambda outside a quantifier: " + debug_string(t));
    return check_fragment(t.body(), false);
  }
  if (!t.is_comb()) return;
  const Term& f = t.rator();
  bool binder = f.is_const() && (f.name() == "!" || f.name() == "?" || f.name() == "@");
  if (binder && t.rand().is_abs()) {
    const Term& v = t.rand().bvar();
    if (f.name() != "@" && v.type().is_fun())
      fail(ErrorKind::kOutOfFragment, "quantifier over a function: " + debug_string(t));
    return check_fragment(t.rand(), true);
  }
  if (binder) fail(ErrorKind::kOutOfFragment, "binder without a lambda: " + debug_string(t));
  check_fragment(f, false);
  check_fragment(t.rand(), false);
}

class Clausifier {
 public:
  Clausifier(const Logic& logic, std::set<std::string> used)
      : logic_(logic), k_(logic.kernel()), used_(std::move(used)) {
    auto lemma = [&](const char* name, const Term& t) {
      lemmas_.emplace(name, taut(logic_, t));
    };
    Term p = mk_var("p", B()), q = mk_var("q", B());
    lemma("imp", mk_iff(mk_imp(p, q), mk_disj(mk_neg(p), q)));
    lemma("iff", mk_iff(mk_iff(p, q), mk_conj(mk_disj(mk_neg(p), q), mk_disj(p, mk_neg(q)))));
    lemma("not_conj", mk_iff(mk_neg(mk_conj(p, q)), mk_disj(mk_neg(p), mk_neg(q))));
    lemma("not_disj", mk_iff(mk_neg(mk_disj(p, q)), mk_conj(mk_neg(p), mk_neg(q))));
    lemma("not_imp", mk_iff(mk_neg(mk_imp(p, q)), mk_conj(p, mk_neg(q))));
    lemma("not_iff", mk_iff(mk_neg(mk_iff(p, q)),
                            mk_conj(mk_disj(p, q), mk_disj(mk_neg(p), mk_neg(q)))));
    lemma("not_true", mk_iff(mk_neg(mk_truth()), mk_falsity()));
    lemma("not_false", mk_iff(mk_neg(mk_falsity()), mk_truth()));
  }

  void add(const Theorem& th, bool from_goal, Clausification& out) {
    from_goal_ = from_goal;
    for (Theorem& c : clauses(th)) {
      if (c.concl() == mk_falsity()) {
        if (!out.contradiction) out.contradiction = c;
        continue;
      }
      Clause clause{c, {}, {}, from_goal};
      leaves(c.concl(), clause.literals);
      for (const Term& v : free_vars(c.concl()))
        if (universals_.count(v)) clause.universals.push_back(v);
      out.clauses.push_back(std::move(clause));
    }
    for (auto& s : skolems_) out.skolems.push_back(std::move(s));
    skolems_.clear();
  }

  bool is_universal(const Term& v) const { return universals_.count(v) > 0; }

 private:
  Theorem rewrite(const char* lemma, const Theorem& th, const Term& a,
                  const Term& b = mk_truth()) {
    TermSubst s;
    s.add(mk_var("p", B()), a);
    if (!(b == mk_truth())) s.add(mk_var("q", B()), b);
    return k_.eq_mp(th, k_.inst(s, lemmas_.at(lemma)));
  }

  // Rewrites the top connective until the conclusion is a conjunction,
  // disjunction, quantifier or literal.
  Theorem normalize(Theorem th) {
    while (true) {
      const Term c = th.concl();
      if (is_imp(c)) {
        th = rewrite("imp", th, binop_lhs(c), binop_rhs(c));
      } else if (is_iff(c)) {
        th = rewrite("iff", th, binop_lhs(c), binop_rhs(c));
      } else if (is_neg(c)) {
        const Term& a = c.rand();
        if (is_neg(a)) {
          th = k_.eq_mp(th, logic_.not_not(a.rand()));
        } else if (is_conj(a)) {
          th = rewrite("not_conj", th, binop_lhs(a), binop_rhs(a));
        } else if (is_disj(a)) {
          th = rewrite("not_disj", th, binop_lhs(a), binop_rhs(a));
        } else if (is_imp(a)) {
          th = rewrite("not_imp", th, binop_lhs(a), binop_rhs(a));
        } else if (is_iff(a)) {
          th = rewrite("not_iff", th, binop_lhs(a), binop_rhs(a));
        } else if (is_forall(a)) {
          th = k_.eq_mp(th, logic_.not_forall(a));
        } else if (is_exists(a)) {
          th = k_.eq_mp(th, logic_.not_exists(a));
        } else if (a == mk_truth()) {
          th = k_.eq_mp(th, lemmas_.at("not_true"));
        } else if (a == mk_falsity()) {
          th = k_.eq_mp(th, lemmas_.at("not_false"));
        } else {
          return th;
        }
      } else {
        return th;
      }
    }
  }

  Term fresh(const Term& v) {
    std::string base = v.name();
    while (!base.empty() && (base.back() == '\'' || std::isdigit(static_cast<unsigned char>(base.back())) || base.back() == '_'))
      base.pop_back();
    if (base.empty()) base = "x";
    std::string name;
    do {
      name = base + "_" + std::to_string(++counter_);
    } while (used_.count(name));
    used_.insert(name);
    Term u = mk_var(name, v.type());
    universals_.insert(u);
    return u;
  }

  std::vector<Theorem> clauses(const Theorem& in) {
    Theorem th = normalize(in);
    const Term& c = th.concl();
    if (c == mk_truth()) return {};
    if (c == mk_falsity()) return {th};
    if (is_conj(c)) {
      auto out = clauses(logic_.conjunct1(th));
      for (auto& x : clauses(logic_.conjunct2(th))) out.push_back(std::move(x));
      return out;
    }
    if (is_forall(c)) return clauses(logic_.spec(fresh(c.rand().bvar()), th));
    if (is_exists(c)) {
      skolems_.push_back(mk_select(c.rand().bvar(), c.rand().body()));
      return clauses(logic_.exists_select(th));
    }
    if (is_disj(c)) {
      const Term& a = binop_lhs(c);
      const Term& b = binop_rhs(c);
      std::vector<Theorem> ca = clauses(k_.assume(a));
      std::vector<Theorem> cb = clauses(k_.assume(b));
      std::vector<Theorem> out;
      for (const auto& x : ca) {
        for (const auto& y : cb) {
          bool fx = x.concl() == mk_falsity(), fy = y.concl() == mk_falsity();
          if (fx && fy) {
            out.push_back(logic_.disj_cases(th, x, y));
          } else if (fx) {
            out.push_back(logic_.disj_cases(th, logic_.contr(y.concl(), x), y));
          } else if (fy) {
            out.push_back(logic_.disj_cases(th, x, logic_.contr(x.concl(), y)));
          } else {
            out.push_back(logic_.disj_cases(th, logic_.disj1(x, y.concl()),
                                            logic_.disj2(x.concl(), y)));
          }
        }
      }
      return out;
    }
    if (!is_literal(c)) fail(ErrorKind::kOutOfFragment, "cannot clausify " + debug_string(c));
    return {th};
  }

  const Logic& logic_;
  Kernel& k_;
  std::set<std::string> used_;
  std::map<std::string, Theorem> lemmas_;
  std::set<Term, VarLess> universals_;
  std::vector<Term> skolems_;
  size_t counter_ = 0;
  bool from_goal_ = false;
};

void names_in(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
  } else if (t.is_comb()) {
    names_in(t.rator(), out);
    names_in(t.rand(), out);
  } else if (t.is_abs()) {
    out.insert(t.bvar().name());
    names_in(t.body(), out);
  }
}

// ---- First-order encoding ----

struct Symbol {
  Term head;                // constant or variable, or the body of an opaque term
  std::vector<Term> params; // opaque: variables replaced by the arguments
  bool opaque = false;
};

struct FNode {
  int head;  // >= 0: symbol; < 0: variable -(local + 1)
  int type;
  uint32_t args_begin;
  uint32_t nargs;
};

struct FLit {
  bool negative;
  int atom;
};

struct FClause {
  std::vector<FLit> lits;
  int nvars = 0;
  std::vector<int> var_types;
  const Clause* source = nullptr;
};

class Encoder {
 public:
  explicit Encoder(const Clausifier& cl) : cl_(cl) {}

  FClause encode(const Clause& c) {
    FClause out;
    out.source = &c;
    locals_.clear();
    for (const Term& u : c.universals) {
      locals_.emplace(u, static_cast<int>(locals_.size()));
      out.var_types.push_back(type_id(u.type()));
    }
    out.nvars = static_cast<int>(locals_.size());
    for (const Term& l : c.literals) {
      bool neg = is_neg(l);
      const Term& atom = neg ? l.rand() : l;
      auto [head, args] = strip_comb(atom);
      if (head.is_var() && cl_.is_universal(head))
        fail(ErrorKind::kOutOfFragment, "quantified predicate: " + debug_string(atom));
      out.lits.push_back({neg, term(atom)});
    }
    return out;
  }

  std::vector<FNode> nodes;
  std::vector<int> args;
  std::vector<Symbol> symbols;
  std::vector<HolType> types;

 private:
  int type_id(const HolType& ty) {
    for (size_t i = 0; i < types.size(); ++i)
      if (types[i] == ty) return static_cast<int>(i);
    types.push_back(ty);
    return static_cast<int>(types.size() - 1);
  }

  int symbol(const Term& key, Symbol s) {
    auto [it, fresh] = ids_.try_emplace(key, static_cast<int>(symbols.size()));
    if (fresh) symbols.push_back(std::move(s));
    return it->second;
  }

  int node(int head, const HolType& ty, const std::vector<int>& a) {
    FNode n{head, type_id(ty), static_cast<uint32_t>(args.size()), static_cast<uint32_t>(a.size())};
    args.insert(args.end(), a.begin(), a.end());
    nodes.push_back(n);
    return static_cast<int>(nodes.size() - 1);
  }

  int term(const Term& t) {
    if (t.is_var()) {
      auto it = locals_.find(t);
      if (it != locals_.end()) return node(-(it->second + 1), t.type(), {});
    }
    auto [head, targs] = strip_comb(t);
    if (head.is_const() || (head.is_var() && !cl_.is_universal(head))) {
      std::vector<int> a;
      for (const auto& x : targs) a.push_back(term(x));
      Term key = head;
      // Distinguish arities of the same head.
      for (size_t i = 0; i < targs.size(); ++i) key = mk_comb(key, mk_var("#", targs[i].type()));
      return node(symbol(key, {head, {}, false}), t.type(), a);
    }
    if (head.is_var())
      fail(ErrorKind::kOutOfFragment, "applied quantified variable: " + debug_string(t));
    // Anything else is opaque in its universal variables.
    std::vector<Term> params;
    for (const Term& v : free_vars(t))
      if (locals_.count(v)) params.push_back(v);
    Term closure = t;
    for (auto it = params.rbegin(); it != params.rend(); ++it) closure = mk_abs(*it, closure);
    std::vector<int> a;
    for (const auto& p : params) a.push_back(term(p));
    return node(symbol(closure, {t, params, true}), t.type(), a);
  }

  const Clausifier& cl_;
  std::map<Term, int, VarLess> locals_;
  std::map<Term, int, AlphaLess> ids_;
};

// ---- Model elimination ----

struct Binding {
  int node = -1;
  int offset = 0;
};

struct Ancestor {
  bool negative;
  int atom;
  int offset;
  const Ancestor* parent;
  int depth;
};

struct LogStep {
  MesonStep::Kind kind;
  int clause;
  int literal;
  int offset;
  int ancestor;
};

class TimedOut {};

class Searcher {
 public:
  Searcher(const Encoder& enc, const std::vector<FClause>& clauses, double timeout)
      : enc_(enc), clauses_(clauses), timeout_(timeout), start_(std::chrono::steady_clock::now()) {}

  bool run(int budget, const std::vector<int>& starts) {
    for (int c : starts) {
      reset();
      int off = alloc(clauses_[c].nvars);
      log_.push_back({MesonStep::Kind::kStart, c, -1, off, -1});
      bool ok = prove_all(c, -1, off, nullptr, budget, [](int) { return true; });
      if (ok) return true;
    }
    return false;
  }

  const std::vector<LogStep>& log() const { return log_; }
  uint64_t inferences() const { return inferences_; }
  Binding binding(int v) const { return bindings_[v]; }

  // Resolves a variable chain; returns (node, offset) with node not a bound variable.
  std::pair<int, int> deref(int n, int off) const {
    while (true) {
      const FNode& node = enc_.nodes[n];
      if (node.head >= 0) return {n, off};
      int v = off + (-node.head - 1);
      if (bindings_[v].node < 0) return {n, off};
      n = bindings_[v].node;
      off = bindings_[v].offset;
    }
  }
  int var_id(int n, int off) const { return off + (-enc_.nodes[n].head - 1); }

 private:
  using Cont = std::function<bool(int)>;

  void reset() {
    bindings_.clear();
    trail_.clear();
    log_.clear();
  }

  int alloc(int n) {
    int off = static_cast<int>(bindings_.size());
    bindings_.resize(off + n);
    return off;
  }

  void tick() {
    if ((++inferences_ & 0xfff) == 0 && timeout_ > 0) {
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (secs > timeout_) throw TimedOut{};
    }
  }

  bool occurs(int var, int n, int off) const {
    auto [m, o] = deref(n, off);
    const FNode& node = enc_.nodes[m];
    if (node.head < 0) return var_id(m, o) == var;
    for (uint32_t i = 0; i < node.nargs; ++i)
      if (occurs(var, enc_.args[node.args_begin + i], o)) return true;
    return false;
  }

  bool unify(int a, int oa, int b, int ob) {
    std::tie(a, oa) = deref(a, oa);
    std::tie(b, ob) = deref(b, ob);
    const FNode& x = enc_.nodes[a];
    const FNode& y = enc_.nodes[b];
    if (x.head < 0 && y.head < 0 && var_id(a, oa) == var_id(b, ob)) return true;
    if (x.head < 0) return bind(var_id(a, oa), x.type, b, ob);
    if (y.head < 0) return bind(var_id(b, ob), y.type, a, oa);
    if (x.head != y.head || x.nargs != y.nargs) return false;
    for (uint32_t i = 0; i < x.nargs; ++i)
      if (!unify(enc_.args[x.args_begin + i], oa, enc_.args[y.args_begin + i], ob)) return false;
    return true;
  }

  bool bind(int var, int type, int n, int off) {
    if (enc_.nodes[n].type != type || occurs(var, n, off)) return false;
    bindings_[var] = {n, off};
    trail_.push_back(var);
    return true;
  }

  bool equal(int a, int oa, int b, int ob) const {
    std::tie(a, oa) = deref(a, oa);
    std::tie(b, ob) = deref(b, ob);
    const FNode& x = enc_.nodes[a];
    const FNode& y = enc_.nodes[b];
    if (x.head < 0 || y.head < 0)
      return x.head < 0 && y.head < 0 && var_id(a, oa) == var_id(b, ob);
    if (x.head != y.head) return false;
    for (uint32_t i = 0; i < x.nargs; ++i)
      if (!equal(enc_.args[x.args_begin + i], oa, enc_.args[y.args_begin + i], ob)) return false;
    return true;
  }

  void undo(size_t mark) {
    while (trail_.size() > mark) {
      bindings_[trail_.back()] = Binding{};
      trail_.pop_back();
    }
  }

  // Proves every literal of clause c except `skip`.
  bool prove_all(int c, int skip, int off, const Ancestor* anc, int budget, const Cont& k) {
    return prove_from(c, 0, skip, off, anc, budget, k);
  }

  bool prove_from(int c, size_t i, int skip, int off, const Ancestor* anc, int budget,
                  const Cont& k) {
    const auto& lits = clauses_[c].lits;
    if (static_cast<int>(i) == skip) ++i;
    if (i >= lits.size()) return k(budget);
    Cont rest = [&, c, i, skip, off, anc](int b) {
      (void)b;
      return prove_from(c, i + 1, skip, off, anc, budget, k);
    };
    return prove(lits[i].negative, lits[i].atom, off, anc, budget, rest);
  }

  bool prove(bool neg, int atom, int off, const Ancestor* anc, int budget, const Cont& k) {
    tick();
    // Regularity: a goal identical to an ancestor is never needed.
    for (const Ancestor* a = anc; a; a = a->parent)
      if (a->negative == neg && equal(a->atom, a->offset, atom, off)) return false;
    const size_t log_mark = log_.size();
    // Reduction.
    for (const Ancestor* a = anc; a; a = a->parent) {
      if (a->negative == neg) continue;
      size_t mark = trail_.size();
      if (unify(a->atom, a->offset, atom, off)) {
        log_.push_back({MesonStep::Kind::kReduction, -1, -1, 0, a->depth});
        if (k(budget)) return true;
        log_.resize(log_mark);
      }
      undo(mark);
    }
    if (budget == 0) return false;
    // Extension.
    Ancestor self{neg, atom, off, anc, anc ? anc->depth + 1 : 0};
    const int head = enc_.nodes[deref(atom, off).first].head;
    for (size_t c = 0; c < clauses_.size(); ++c) {
      const FClause& clause = clauses_[c];
      for (size_t j = 0; j < clause.lits.size(); ++j) {
        const FLit& l = clause.lits[j];
        if (l.negative == neg) continue;
        if (head >= 0 && enc_.nodes[l.atom].head >= 0 && enc_.nodes[l.atom].head != head) continue;
        tick();
        size_t mark = trail_.size();
        size_t vars = bindings_.size();
        int coff = alloc(clause.nvars);
        if (unify(l.atom, coff, atom, off)) {
          log_.push_back({MesonStep::Kind::kExtension, static_cast<int>(c), static_cast<int>(j), coff, -1});
          if (prove_all(static_cast<int>(c), static_cast<int>(j), coff, &self, budget - 1, k))
            return true;
          log_.resize(log_mark);
        }
        undo(mark);
        bindings_.resize(vars);
      }
    }
    return false;
  }

  const Encoder& enc_;
  const std::vector<FClause>& clauses_;
  double timeout_;
  std::chrono::steady_clock::time_point start_;
  std::vector<Binding> bindings_;
  std::vector<int> trail_;
  std::vector<LogStep> log_;
  uint64_t inferences_ = 0;
};

// ---- Reconstruction ----

class Rebuilder {
 public:
  Rebuilder(const Logic& logic, const Encoder& enc, const std::vector<FClause>& clauses,
            const Searcher& search, MesonTrace& trace)
      : logic_(logic), k_(logic.kernel()), enc_(enc), clauses_(clauses), search_(search),
        trace_(trace), log_(search.log()) {}

  Theorem run() {
    const LogStep& s = log_[pos_++];
    trace_.steps.push_back({MesonStep::Kind::kStart, s.clause, -1, -1, ""});
    Theorem inst = instance(s);
    std::vector<Term> anc;
    int leaf = 0;
    return close(inst, inst.concl(), false, -1, leaf, nullptr, anc);
  }

 private:
  Term hol(int n, int off) {
    auto [m, o] = search_.deref(n, off);
    const FNode& node = enc_.nodes[m];
    if (node.head < 0) {
      int v = search_.var_id(m, o);
      return mk_var("_" + std::to_string(v), enc_.types[node.type]);
    }
    const Symbol& sym = enc_.symbols[node.head];
    std::vector<Term> a;
    for (uint32_t i = 0; i < node.nargs; ++i) a.push_back(hol(enc_.args[node.args_begin + i], o));
    if (sym.opaque) {
      TermSubst s;
      for (size_t i = 0; i < a.size(); ++i) s.add(sym.params[i], a[i]);
      return vsubst(s, sym.head);
    }
    Term t = sym.head;
    for (const auto& x : a) t = mk_comb(t, x);
    return t;
  }

  Theorem instance(const LogStep& s) {
    const FClause& fc = clauses_[s.clause];
    const Clause& c = *fc.source;
    TermSubst theta;
    for (size_t i = 0; i < c.universals.size(); ++i) {
      int v = s.offset + static_cast<int>(i);
      Term image = image_of(v, c.universals[i].type());
      if (!(image == c.universals[i])) theta.add(c.universals[i], image);
    }
    return theta.empty() ? c.theorem : k_.inst(theta, c.theorem);
  }

  Term image_of(int var, const HolType& ty) {
    Binding b = search_.binding(var);
    if (b.node < 0) return mk_var("_" + std::to_string(var), ty);
    return hol(b.node, b.offset);
  }

  // th: Δ ⊢ d with d a subtree of the clause. `assumed` says th is ASSUME d.
  Theorem close(const Theorem& th, const Term& d, bool assumed, int matched, int& leaf,
                const Term* goal, std::vector<Term>& anc) {
    if (is_disj(d)) {
      const Term& a = binop_lhs(d);
      const Term& b = binop_rhs(d);
      Theorem r1 = close(k_.assume(a), a, true, matched, leaf, goal, anc);
      Theorem r2 = close(k_.assume(b), b, true, matched, leaf, goal, anc);
      return logic_.disj_cases(th, r1, r2);
    }
    int index = leaf++;
    if (index == matched) {
      // d is complementary to the goal.
      Theorem g = k_.assume(*goal);
      return is_neg(*goal) ? logic_.absurd(g, th) : logic_.absurd(th, g);
    }
    Theorem child = refute(d, anc);
    if (assumed) return child;
    return logic_.mp(logic_.disch(d, child), th);
  }

  // Γ ∪ {g} ∪ ancestors ⊢ F.
  Theorem refute(const Term& g, std::vector<Term>& anc) {
    const LogStep& s = log_[pos_++];
    if (s.kind == MesonStep::Kind::kReduction) {
      trace_.steps.push_back({MesonStep::Kind::kReduction, -1, -1, s.ancestor,
                              print_term(g, print_options())});
      const Term& a = anc[s.ancestor];
      Theorem tg = k_.assume(g);
      Theorem ta = k_.assume(a);
      return is_neg(g) ? logic_.absurd(tg, ta) : logic_.absurd(ta, tg);
    }
    trace_.steps.push_back({MesonStep::Kind::kExtension, s.clause, s.literal, -1,
                            print_term(g, print_options())});
    Theorem inst = instance(s);
    anc.push_back(g);
    int leaf = 0;
    Theorem out = close(inst, inst.concl(), false, s.literal, leaf, &g, anc);
    anc.pop_back();
    return out;
  }

  PrintOptions print_options() const { return k_.theory().print_options(); }

  const Logic& logic_;
  Kernel& k_;
  const Encoder& enc_;
  const std::vector<FClause>& clauses_;
  const Searcher& search_;
  MesonTrace& trace_;
  const std::vector<LogStep>& log_;
  size_t pos_ = 0;
};

}  // namespace

Clausification clausify(const Logic& logic, const Theorem& th) {
  check_fragment(th.concl(), false);
  std::set<std::string> used;
  names_in(th.concl(), used);
  for (const auto& h : th.hyps()) names_in(h, used);
  Clausifier c(logic, used);
  Clausification out;
  c.add(th, false, out);
  return out;
}

Clausification clausify(const Logic& logic, const Term& p) {
  return clausify(logic, logic.kernel().assume(p));
}

namespace {

bool is_logical(const Term& head) {
  static const std::set<std::string> names = {"=", "~", "/\\", "\\/", "==>", "!", "?", "@", "T", "F"};
  return head.is_const() && names.count(head.name());
}

// Types at which = is used, and the symbols applied to arguments.
void equality_scan(const Term& t, std::set<HolType>& types,
                   std::vector<std::pair<Term, size_t>>& symbols) {
  if (t.is_abs()) return equality_scan(t.body(), types, symbols);
  if (!t.is_comb()) return;
  auto [head, args] = strip_comb(t);
  if (head.is_const() && head.name() == "=" && args.size() == 2 && !args[0].type().is_bool())
    types.insert(args[0].type());
  if ((head.is_var() || head.is_const()) && !is_logical(head)) {
    std::pair<Term, size_t> sym{head, args.size()};
    if (std::find(symbols.begin(), symbols.end(), sym) == symbols.end()) symbols.push_back(sym);
  }
  if (head.is_abs()) equality_scan(head, types, symbols);
  for (const auto& a : args) equality_scan(a, types, symbols);
}

}  // namespace

std::vector<Theorem> equality_axioms(const Logic& logic, const FirstOrderProblem& problem) {
  Kernel& k = logic.kernel();
  std::set<HolType> types;
  std::vector<std::pair<Term, size_t>> symbols;
  std::set<std::string> used;
  for (const auto& a : problem.axioms) {
    equality_scan(a, types, symbols);
    names_in(a, used);
  }
  equality_scan(problem.goal, types, symbols);
  names_in(problem.goal, used);
  std::vector<Theorem> out;
  if (types.empty()) return out;

  size_t counter = 0;
  auto fresh = [&](const HolType& ty) {
    std::string name;
    do name = "e" + std::to_string(++counter);
    while (used.count(name));
    return mk_var(name, ty);
  };
  for (const HolType& ty : types) {
    Term x = fresh(ty), y = fresh(ty), z = fresh(ty);
    Term xy = mk_eq(x, y), yz = mk_eq(y, z), xyz = mk_conj(xy, yz);
    out.push_back(logic.gen(x, k.refl(x)));
    out.push_back(logic.gen(x, logic.gen(y, logic.disch(xy, logic.sym(k.assume(xy))))));
    Theorem both = k.assume(xyz);
    Theorem tr = logic.disch(xyz, k.trans(logic.conjunct1(both), logic.conjunct2(both)));
    out.push_back(logic.gen(x, logic.gen(y, logic.gen(z, tr))));
  }
  for (const auto& [f, n] : symbols) {
    std::vector<HolType> doms;
    HolType ty = f.type();
    for (size_t i = 0; i < n; ++i) {
      doms.push_back(ty.domain());
      ty = ty.range();
    }
    const bool predicate = ty.is_bool();
    if (!predicate && !types.count(ty)) continue;
    std::vector<Term> args;
    for (const auto& d : doms) args.push_back(fresh(d));
    for (size_t i = 0; i < n; ++i) {
      if (!types.count(doms[i])) continue;
      Term y = fresh(doms[i]);
      Term xy = mk_eq(args[i], y);
      Term head = f;
      for (size_t j = 0; j < i; ++j) head = mk_comb(head, args[j]);
      // f .. x .. = f .. y ..
      Theorem th = k.mk_comb(k.refl(head), k.assume(xy));
      for (size_t j = i + 1; j < n; ++j) th = logic.ap_thm(th, args[j]);
      if (predicate) {
        Term px = eq_lhs(th.concl());
        th = logic.disch(px, k.eq_mp(k.assume(px), th));
      }
      th = logic.gen(y, logic.disch(xy, th));
      for (size_t j = n; j-- > 0;) th = logic.gen(args[j], th);
      out.push_back(th);
    }
  }
  return out;
}

MesonResult meson(const Logic& logic, const FirstOrderProblem& problem,
                  const MesonOptions& options) {
  Kernel& k = logic.kernel();
  Term neg_goal = mk_neg(problem.goal);
  std::set<std::string> used;
  for (const auto& a : problem.axioms) {
    if (!a.type().is_bool()) fail(ErrorKind::kOutOfFragment, "axiom is not a formula");
    check_fragment(a, false);
    names_in(a, used);
  }
  if (!problem.goal.type().is_bool()) fail(ErrorKind::kOutOfFragment, "goal is not a formula");
  check_fragment(problem.goal, false);
  names_in(problem.goal, used);

  Clausifier cl(logic, used);
  Clausification cls;
  cl.add(k.assume(neg_goal), true, cls);
  for (const auto& a : problem.axioms) cl.add(k.assume(a), false, cls);
  if (options.equality)
    for (const auto& th : equality_axioms(logic, problem)) cl.add(th, false, cls);

  MesonResult result;
  PrintOptions po = k.theory().print_options();
  for (const auto& c : cls.clauses) {
    std::string s;
    if (!c.universals.empty()) {
      s += "!";
      for (const auto& u : c.universals) s += " " + print_term(u, po);
      s += ". ";
    }
    s += print_term(c.theorem.concl(), po);
    result.trace.clauses.push_back(s + (c.from_goal ? "   [goal]" : ""));
  }
  for (const auto& s : cls.skolems) result.trace.skolems.push_back(print_term(s, po));

  auto finish = [&](const Theorem& f) { result.theorem = logic.ccontr(problem.goal, f); };
  if (cls.contradiction) {
    finish(*cls.contradiction);
    return result;
  }

  Encoder enc(cl);
  std::vector<FClause> fclauses;
  for (const auto& c : cls.clauses) fclauses.push_back(enc.encode(c));
  std::vector<int> starts;
  for (size_t i = 0; i < fclauses.size(); ++i)
    if (cls.clauses[i].from_goal) starts.push_back(static_cast<int>(i));
  if (starts.empty())
    for (size_t i = 0; i < fclauses.size(); ++i) starts.push_back(static_cast<int>(i));

  Searcher search(enc, fclauses, options.timeout_seconds);
  bool found = false;
  try {
    for (int d = 0; d <= options.depth && !found; ++d) {
      result.trace.depth = d;
      found = search.run(d, starts);
    }
  } catch (const TimedOut&) {
    result.trace.timed_out = true;
  }
  result.trace.inferences = search.inferences();
  if (!found) return result;

  Rebuilder rebuild(logic, enc, fclauses, search, result.trace);
  finish(rebuild.run());
  return result;
}

Theorem meson_prove(const Logic& logic, const FirstOrderProblem& problem,
                    const MesonOptions& options) {
  MesonResult r = meson(logic, problem, options);
  if (!r.proved())
    fail(ErrorKind::kDepthExhausted,
         r.trace.timed_out ? "search timed out at depth " + std::to_string(r.trace.depth)
                           : "no proof within depth " + std::to_string(options.depth));
  return *r.theorem;
}

std::string meson_trace_text(const MesonTrace& trace) {
  std::ostringstream out;
  out << "clauses:\n";
  for (size_t i = 0; i < trace.clauses.size(); ++i) out << "  " << i << ". " << trace.clauses[i] << "\n";
  if (!trace.skolems.empty()) {
    out << "skolem terms:\n";
    for (const auto& s : trace.skolems) out << "  " << s << "\n";
  }
  out << "depth " << trace.depth << ", " << trace.inferences << " search steps"
      << (trace.timed_out ? ", timed out" : "") << "\n";
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const MesonStep& s = trace.steps[i];
    out << "  " << i + 1 << ". ";
    switch (s.kind) {
      case MesonStep::Kind::kStart:
        out << "start with clause " << s.clause;
        break;
      case MesonStep::Kind::kExtension:
        out << "extend " << s.goal << " with clause " << s.clause << " literal " << s.literal;
        break;
      case MesonStep::Kind::kReduction:
        out << "reduce " << s.goal << " against ancestor " << s.ancestor;
        break;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace microhol
