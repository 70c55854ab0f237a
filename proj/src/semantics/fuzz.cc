#include "microhol/fuzz.h"

#include <algorithm>
#include <optional>

#include "json.hpp"
#include "microhol/error.h"
#include "microhol/printer.h"

namespace microhol {

Sequent sequent_of(const Theorem& th) {
  return Sequent{std::vector<Term>(th.hyps().begin(), th.hyps().end()), th.concl()};
}

namespace {

HolType B() { return HolType::bool_type(); }

std::string print(const Sequent& s) { return print_sequent(s.hyps, s.concl); }

struct CompiledSequent {
  std::vector<uint32_t> hyps;
  uint32_t concl;
};

CompiledSequent compile_sequent(Program& prog, const Sequent& s) {
  CompiledSequent out;
  for (const auto& h : s.hyps) out.hyps.push_back(prog.add(h));
  out.concl = prog.add(s.concl);
  return out;
}

bool holds(Program& prog, const CompiledSequent& s,
           std::span<const uint64_t> values) {
  prog.load(values);
  for (uint32_t h : s.hyps)
    if (prog.eval(h) != kTrue) return true;
  return prog.eval(s.concl) == kTrue;
}

std::set<std::string> sequent_tyvars(const Sequent& s) {
  std::set<std::string> out = type_vars_in_term(s.concl);
  for (const auto& h : s.hyps) {
    auto more = type_vars_in_term(h);
    out.insert(more.begin(), more.end());
  }
  return out;
}

// Checks one model and type assignment. Returns true on a counterexample.
bool check_model(const RuleInstance& inst, const Theory& theory,
                 const Model& model, const TypeAssignment& types,
                 const FuzzOptions& options, uint64_t trial,
                 std::mt19937_64& rng, FuzzReport& report) {
  using Link = RuleInstance::Link;
  Interpretation ic(theory, model, types);
  Program pc = ic.program();
  CompiledSequent concl = compile_sequent(pc, inst.conclusion);

  // Premise side: either in pc itself, or in a second program whose free
  // variables are fed from handles in pc.
  std::optional<Interpretation> ip_store;
  Interpretation* ip = &ic;
  bool shared = inst.link == Link::kSame || inst.link == Link::kEveryValue;
  if (inst.link == Link::kRetyped) {
    TypeAssignment premise_types;
    for (const auto& p : inst.premises)
      for (const auto& a : sequent_tyvars(p))
        premise_types[a] = ic.carrier(type_subst(inst.type_subst, HolType::var(a)));
    ip_store.emplace(theory, model, premise_types);
    ip = &*ip_store;
  }
  Program pp = ip->program();
  Program& premise_prog = shared ? pc : pp;
  std::vector<CompiledSequent> premises;
  for (const auto& p : inst.premises)
    premises.push_back(compile_sequent(premise_prog, p));
  std::vector<uint32_t> feeds;
  if (!shared) {
    for (const auto& y : pp.free_vars()) {
      Term source = y;
      if (inst.link == Link::kSubstituted) {
        for (const auto& [v, image] : inst.term_subst.pairs())
          if (v == y) source = image;
      } else {
        source = Term::var(y.name(), type_subst(inst.type_subst, y.type()));
      }
      feeds.push_back(pc.add(source));
    }
  }

  std::vector<uint64_t> carriers = pc.free_carriers();
  std::optional<size_t> bound_index;
  uint64_t bound_size = 1;
  // A sound abstraction leaves x free nowhere in the conclusion, so one
  // value of it stands for all. If it is still free there (a broken rule),
  // the conclusion is read at every value of x as well.
  bool bound_in_concl = false;
  if (inst.link == Link::kEveryValue) {
    for (size_t i = 0; i < pc.free_vars().size(); ++i)
      if (pc.free_vars()[i] == *inst.bound) bound_index = i;
    bound_in_concl = var_free_in(*inst.bound, inst.conclusion.concl);
    for (const auto& h : inst.conclusion.hyps) bound_in_concl |= var_free_in(*inst.bound, h);
    if (bound_index) {
      bound_size = carriers[*bound_index];
      if (!bound_in_concl) carriers[*bound_index] = 1;
    }
  }

  std::vector<uint64_t> scratch;
  std::optional<std::vector<uint64_t>> bad;
  auto premises_hold = [&](std::span<const uint64_t> values) {
    if (!shared) {
      scratch.resize(feeds.size());
      for (size_t i = 0; i < feeds.size(); ++i) scratch[i] = pc.run(feeds[i], values);
      for (const auto& p : premises)
        if (!holds(pp, p, scratch)) return false;
      return true;
    }
    for (const auto& p : premises)
      if (!holds(pc, p, values)) return false;
    return true;
  };
  auto [visited, exhaustive] = for_each_valuation(
      carriers, options.budget, options.samples, rng,
      [&](std::span<const uint64_t> values) {
        bool ok;
        if (bound_index) {
          std::vector<uint64_t> v(values.begin(), values.end());
          ok = true;
          for (uint64_t e = 0; e < bound_size && ok; ++e) {
            v[*bound_index] = e;
            ok = premises_hold(v);
          }
        } else {
          ok = premises_hold(values);
        }
        if (!ok || holds(pc, concl, values)) return true;
        bad.emplace(values.begin(), values.end());
        return false;
      });
  report.valuations += visited;
  (exhaustive ? report.exhaustive_models : report.sampled_models)++;
  if (!bad) return false;
  Counterexample cex;
  cex.trial = trial;
  for (const auto& p : inst.premises) cex.premises.push_back(print(p));
  cex.conclusion = print(inst.conclusion);
  Valuation v{model, types, {}};
  for (size_t i = 0; i < bad->size(); ++i) {
    // The abstracted variable is not part of the conclusion's valuation unless
    // it is still free there.
    if (bound_index && i == *bound_index && !bound_in_concl) continue;
    v.terms.emplace_back(pc.free_vars()[i], (*bad)[i]);
  }
  cex.valuation = describe_valuation(v);
  report.counterexamples.push_back(std::move(cex));
  return true;
}

}  // namespace

bool check_instance(const RuleInstance& instance, const Theory& theory,
                    const FuzzOptions& options, uint64_t trial,
                    FuzzReport& report) {
  std::set<std::string> tyvars = sequent_tyvars(instance.conclusion);
  if (instance.link != RuleInstance::Link::kRetyped)
    for (const auto& p : instance.premises) {
      auto more = sequent_tyvars(p);
      tyvars.insert(more.begin(), more.end());
    }
  std::mt19937_64 rng(options.seed * 0x9e3779b97f4a7c15ULL + trial);
  bool overflowed = false;
  for (uint64_t n : options.ind_sizes) {
    Model model{n, options.cap};
    for (const auto& types : type_assignments(tyvars, options.max_tyvar_size)) {
      try {
        if (check_model(instance, theory, model, types, options, trial, rng, report))
          return true;
      } catch (const HolError& e) {
        if (e.kind() != ErrorKind::kCarrierOverflow) throw;
        overflowed = true;
      }
    }
  }
  if (overflowed) ++report.overflowed;
  return !overflowed;
}

FuzzReport fuzz_rule_soundness(const std::string& rule,
                               const InstanceGenerator& generator,
                               const Theory& theory,
                               const FuzzOptions& options) {
  FuzzReport report;
  report.rule = rule;
  report.seed = options.seed;
  // FNV-1a, so the stream per rule is the same on every platform.
  uint64_t salt = 0xcbf29ce484222325ULL;
  for (unsigned char c : rule) salt = (salt ^ c) * 0x100000001b3ULL;
  TermGenerator gen(fuzz_term_options(), options.seed ^ salt);
  // Refused draws and instances too large for some model do not count as
  // trials; give up after many in a row.
  uint64_t refused_in_a_row = 0;
  while (report.trials < options.trials && refused_in_a_row < 1000) {
    std::optional<RuleInstance> inst;
    try {
      inst.emplace(generator(gen));
    } catch (const HolError&) {
      ++report.rejected;
      ++refused_in_a_row;
      continue;
    }
    if (!check_instance(*inst, theory, options, report.trials + report.overflowed, report)) {
      ++refused_in_a_row;
      continue;
    }
    refused_in_a_row = 0;
    ++report.trials;
  }
  return report;
}

TermGenOptions fuzz_term_options() {
  TermGenOptions o;
  o.max_depth = 3;
  o.use_select = true;
  o.max_carrier = 256;
  HolType b = B();
  HolType bb = HolType::fun(b, HolType::fun(b, b));
  o.constants = {mk_truth(), mk_falsity(), Term::constant("~", HolType::fun(b, b)),
                 Term::constant("/\\", bb), Term::constant("\\/", bb),
                 Term::constant("==>", bb)};
  for (const HolType& ty : {b, HolType::ind_type(), HolType::var("A")}) {
    HolType q = HolType::fun(HolType::fun(ty, b), b);
    o.constants.push_back(Term::constant("!", q));
    o.constants.push_back(Term::constant("?", q));
  }
  return o;
}

const std::vector<std::string>& fuzz_rule_names() {
  static const std::vector<std::string> names = {
      "refl", "trans", "mk_comb", "abs", "beta",
      "assume", "eq_mp", "deduct_antisym", "inst_type", "inst"};
  return names;
}

namespace {

// Premise builders shared by the rule generators.
class Draw {
 public:
  Draw(const Kernel& k, const Logic& l, TermGenerator& g) : k_(k), l_(l), g_(g) {}

  HolType type() { return g_.small_type(); }
  Term term(const HolType& ty) { return g_.term(ty, 3); }
  Term boolean() { return g_.term(B(), 3); }
  Term variant(const Term& t) { return g_.chance(0.5) ? g_.alpha_variant(t) : t; }

  bool small(const HolType& ty) { return carrier_bound(ty, 3, 256) <= 256; }

  Theorem with_hyp(const Theorem& th, const Term& h) {
    return l_.conjunct1(l_.conj(th, k_.assume(h)));
  }

  // Adds a random hypothesis now and then.
  Theorem weaken(Theorem th) {
    while (g_.chance(0.25)) th = with_hyp(th, boolean());
    return th;
  }

  // Γ ⊢ a = b at `ty`.
  Theorem equation(const HolType& ty) {
    switch (g_.uniform(4)) {
      case 0:
        return weaken(k_.refl(term(ty)));
      case 1: {
        Term v = g_.var(ty);
        Term redex = Term::comb(Term::abs(v, term(ty)), v);
        return weaken(k_.beta(redex));
      }
      default:
        return weaken(k_.assume(mk_eq(term(ty), term(ty))));
    }
  }

  // Any theorem built from a few rules.
  Theorem theorem() {
    switch (g_.uniform(6)) {
      case 0:
        return weaken(k_.assume(boolean()));
      case 1:
        return equation(type());
      case 2: {
        HolType a = type();
        HolType b = type();
        HolType f = HolType::fun(a, b);
        if (!small(f)) return equation(b);
        return weaken(k_.mk_comb(equation(f), equation(a)));
      }
      case 3: {
        Term p = boolean();
        Term q = boolean();
        return k_.deduct_antisym(weaken(k_.assume(p)), weaken(k_.assume(q)));
      }
      case 4: {
        Theorem th = equation(type());
        return k_.abs(g_.var(type()), th);
      }
      default:
        return k_.trans(k_.assume(mk_eq(boolean(), boolean())), k_.refl(boolean()));
    }
  }

  TermGenerator& gen() { return g_; }
  const Kernel& kernel() { return k_; }

 private:
  const Kernel& k_;
  const Logic& l_;
  TermGenerator& g_;
};

RuleInstance same(std::vector<Theorem> premises, const Theorem& concl) {
  std::vector<Sequent> seqs;
  for (const auto& p : premises) seqs.push_back(sequent_of(p));
  return RuleInstance{std::move(seqs), sequent_of(concl), RuleInstance::Link::kSame,
                      std::nullopt, {}, {}};
}

}  // namespace

InstanceGenerator kernel_rule_generator(const std::string& rule,
                                        const Kernel& kernel,
                                        const Logic& logic) {
  const Kernel* k = &kernel;
  const Logic* l = &logic;
  auto with = [k, l](auto body) -> InstanceGenerator {
    return [k, l, body](TermGenerator& g) {
      Draw d(*k, *l, g);
      return body(d);
    };
  };
  if (rule == "refl")
    return with([](Draw& d) { return same({}, d.kernel().refl(d.term(d.type()))); });
  if (rule == "trans")
    return with([](Draw& d) {
      Theorem th1 = d.equation(d.type());
      const Term& mid = eq_rhs(th1.concl());
      Theorem th2 = d.gen().chance(0.2)
                        ? d.kernel().refl(d.variant(mid))
                        : d.weaken(d.kernel().assume(
                              mk_eq(d.variant(mid), d.term(mid.type()))));
      return same({th1, th2}, d.kernel().trans(th1, th2));
    });
  if (rule == "mk_comb")
    return with([](Draw& d) {
      HolType a = d.type();
      HolType f = HolType::fun(a, d.type());
      if (!d.small(f)) fail(ErrorKind::kCarrierOverflow, "large function type");
      Theorem th1 = d.equation(f);
      Theorem th2 = d.equation(a);
      return same({th1, th2}, d.kernel().mk_comb(th1, th2));
    });
  if (rule == "abs")
    return with([](Draw& d) {
      HolType a = d.type();
      Term x = d.gen().var(a);
      Theorem th = [&] {
        HolType f = HolType::fun(a, d.type());
        if (d.gen().chance(0.5) && d.small(f)) {
          // {f = g} ⊢ f x = g x, so x occurs in the conclusion only.
          Theorem fg = d.weaken(d.kernel().assume(mk_eq(d.term(f), d.term(f))));
          return d.kernel().mk_comb(fg, d.kernel().refl(x));
        }
        return d.equation(d.type());
      }();
      RuleInstance inst = same({th}, d.kernel().abs(x, th));
      inst.link = RuleInstance::Link::kEveryValue;
      inst.bound = x;
      return inst;
    });
  if (rule == "beta")
    return with([](Draw& d) {
      Term x = d.gen().var(d.type());
      Term redex = Term::comb(Term::abs(x, d.term(d.type())), x);
      return same({}, d.kernel().beta(redex));
    });
  if (rule == "assume")
    return with([](Draw& d) { return same({}, d.kernel().assume(d.boolean())); });
  if (rule == "eq_mp")
    return with([](Draw& d) {
      Theorem th1 = d.gen().chance(0.5) ? d.weaken(d.kernel().assume(d.boolean()))
                                        : d.theorem();
      Term p = d.variant(th1.concl());
      Theorem th2 = d.gen().chance(0.2)
                        ? d.kernel().refl(p)
                        : d.weaken(d.kernel().assume(mk_eq(p, d.boolean())));
      return same({th1, th2}, d.kernel().eq_mp(th1, th2));
    });
  if (rule == "deduct_antisym")
    return with([](Draw& d) {
      Term p = d.boolean();
      Term q = d.boolean();
      auto side = [&](const Term& own, const Term& other) {
        Theorem th = d.gen().chance(0.2) ? d.theorem() : d.kernel().assume(own);
        // Often put the other side's conclusion among the hypotheses.
        if (d.gen().chance(0.6)) th = d.with_hyp(th, d.variant(other));
        return d.weaken(th);
      };
      Theorem th1 = side(p, q);
      Theorem th2 = side(q, p);
      return same({th1, th2}, d.kernel().deduct_antisym(th1, th2));
    });
  if (rule == "inst_type")
    return with([](Draw& d) {
      Theorem th = d.theorem();
      static const std::vector<HolType> images = {
          B(), HolType::ind_type(), HolType::fun(B(), B()),
          HolType::fun(HolType::ind_type(), B()),
          HolType::fun(HolType::var("A"), B()), HolType::var("B")};
      TypeSubst theta = {{"A", images[d.gen().uniform(images.size())]}};
      RuleInstance inst = same({th}, d.kernel().inst_type(theta, th));
      inst.link = RuleInstance::Link::kRetyped;
      inst.type_subst = theta;
      return inst;
    });
  if (rule == "inst")
    return with([](Draw& d) {
      Theorem th = d.theorem();
      std::vector<Term> frees = free_vars(std::vector<Term>{th.concl()});
      for (const auto& h : th.hyps())
        for (const auto& v : free_vars(h))
          if (std::find(frees.begin(), frees.end(), v) == frees.end()) frees.push_back(v);
      TermSubst theta;
      for (const auto& v : frees)
        if (d.gen().chance(0.5)) theta.add(v, d.gen().term(v.type(), 2));
      if (d.gen().chance(0.2)) {
        Term extra = d.gen().var(d.type());
        if (std::find(frees.begin(), frees.end(), extra) == frees.end())
          theta.add(extra, d.gen().term(extra.type(), 2));
      }
      RuleInstance inst = same({th}, d.kernel().inst(theta, th));
      inst.link = RuleInstance::Link::kSubstituted;
      inst.term_subst = theta;
      return inst;
    });
  fail(ErrorKind::kDerivedRule, "unknown rule " + rule);
}

std::string fuzz_report_json(const std::vector<FuzzReport>& reports) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["rule"] = r.rule;
    j["trials"] = r.trials;
    j["seed"] = r.seed;
    j["rejected"] = r.rejected;
    j["overflowed"] = r.overflowed;
    j["valuations"] = r.valuations;
    j["exhaustive_models"] = r.exhaustive_models;
    j["sampled_models"] = r.sampled_models;
    j["counterexamples"] = nlohmann::ordered_json::array();
    for (const auto& c : r.counterexamples) {
      j["counterexamples"].push_back({{"trial", c.trial},
                                      {"premises", c.premises},
                                      {"conclusion", c.conclusion},
                                      {"valuation", c.valuation}});
    }
    out.push_back(std::move(j));
  }
  return out.dump(2);
}

WalkReport random_kernel_walk(const Kernel& k, uint64_t steps, uint64_t seed) {
  TermGenOptions opts = fuzz_term_options();
  opts.max_depth = 2;
  TermGenerator g(opts, seed);
  WalkReport report;
  std::vector<Theorem> pool;
  const size_t kPool = 256;
  Term falsity = mk_falsity();
  auto keep = [&](const Theorem& th) {
    ++report.theorems;
    if (th.hyps().empty() && alpha_equiv(th.concl(), falsity)) report.derived_false = true;
    if (pool.size() < kPool) pool.push_back(th);
    else pool[g.uniform(kPool)] = th;
  };
  auto any = [&]() -> const Theorem& { return pool[g.uniform(pool.size())]; };
  // An equation in the pool whose left side matches `t`, if any.
  auto find_lhs = [&](const Term& t) -> std::optional<Theorem> {
    for (size_t i = 0, n = pool.size(); i < n; ++i) {
      const Theorem& th = pool[(i + g.uniform(n)) % n];
      if (is_eq(th.concl()) && alpha_equiv(eq_lhs(th.concl()), t)) return th;
    }
    return std::nullopt;
  };
  for (const Theorem& th : {k.axiom_extensionality(), k.axiom_choice()}) keep(th);
  keep(k.refl(g.boolean()));
  for (uint64_t s = 0; s < steps; ++s) {
    ++report.steps;
    try {
      switch (g.uniform(12)) {
        case 0: keep(k.refl(g.term(g.small_type(), 2))); break;
        case 1: {
          const Theorem& th = any();
          if (!is_eq(th.concl())) break;
          if (auto th2 = find_lhs(eq_rhs(th.concl()))) keep(k.trans(th, *th2));
          break;
        }
        case 2: keep(k.mk_comb(any(), any())); break;
        case 3: keep(k.abs(g.var(g.small_type()), any())); break;
        case 4: {
          Term x = g.var(g.small_type());
          keep(k.beta(Term::comb(Term::abs(x, g.term(g.small_type(), 2)), x)));
          break;
        }
        case 5: keep(k.assume(g.boolean())); break;
        case 6: {
          const Theorem& th = any();
          if (auto th2 = find_lhs(th.concl())) keep(k.eq_mp(th, *th2));
          break;
        }
        case 7: keep(k.deduct_antisym(any(), any())); break;
        case 8: keep(k.inst_type({{"A", g.small_type()}}, any())); break;
        case 9: {
          const Theorem& th = any();
          auto frees = free_vars(th.concl());
          if (frees.empty()) break;
          const Term& v = frees[g.uniform(frees.size())];
          keep(k.inst(TermSubst{{v, g.term(v.type(), 2)}}, th));
          break;
        }
        case 10: {
          // Discharge-like step: eq_mp against a fresh assumption.
          const Theorem& th = any();
          keep(k.eq_mp(k.assume(th.concl()), k.refl(th.concl())));
          break;
        }
        default: {
          // Apply both sides of an equation between functions.
          const Theorem& th = any();
          if (!is_eq(th.concl())) break;
          HolType ty = eq_lhs(th.concl()).type();
          if (ty.is_fun()) keep(k.mk_comb(th, k.refl(g.term(ty.domain(), 1))));
          break;
        }
      }
    } catch (const HolError&) {
      ++report.refused;
    }
  }
  return report;
}

}  // namespace microhol
