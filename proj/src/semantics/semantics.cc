#include "microhol/semantics.h"

#include <bit>

#include "microhol/error.h"
#include "microhol/printer.h"

namespace microhol {

namespace {

// base^exp, or nullopt past `limit`.
std::optional<uint64_t> checked_pow(uint64_t base, uint64_t exp,
                                    uint64_t limit) {
  if (base <= 1) return base;
  uint64_t out = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    if (out > limit / base) return std::nullopt;
    out *= base;
  }
  return out;
}

const HolType& bool_ty() {
  static const HolType b = HolType::bool_type();
  return b;
}

// \x y. x = y at x's type.
Term eq_eta(const HolType& a) {
  Term x = Term::var("x", a);
  Term y = Term::var("y", a);
  return Term::abs(x, Term::abs(y, mk_eq(x, y)));
}

Term select_eta(const Term& sel) {
  Term p = Term::var("P", sel.type().domain());
  return Term::abs(p, Term::comb(sel, p));
}

}  // namespace

// ---------------------------------------------------------------------------
// Interpretation

Interpretation::Interpretation(const Theory& theory, Model model,
                               TypeAssignment types)
    : theory_(&theory), model_(model), types_(std::move(types)) {}

uint64_t Interpretation::apply(uint64_t table, uint64_t arg,
                               uint64_t range_size) {
  if (range_size <= 1) return 0;
  if (range_size == 2) return arg < 64 ? (table >> arg) & 1 : 0;
  while (arg > 0 && table > 0) {
    table /= range_size;
    --arg;
  }
  return table % range_size;
}

uint64_t Interpretation::carrier(const HolType& ty) {
  if (ty.is_var()) {
    auto it = types_.find(ty.name());
    if (it == types_.end())
      fail(ErrorKind::kUnassignedTypeVar, "no carrier for type variable " + ty.name());
    return it->second;
  }
  if (ty.is_bool()) return 2;
  if (ty.name() == "ind" && ty.args().empty()) return model_.ind_size;
  auto cached = carrier_cache_.find(ty);
  if (cached != carrier_cache_.end()) return cached->second;
  uint64_t size;
  if (ty.is_fun()) {
    uint64_t a = carrier(ty.domain());
    uint64_t b = carrier(ty.range());
    auto p = checked_pow(b, a, model_.cap);
    if (!p || *p > model_.cap)
      fail(ErrorKind::kCarrierOverflow,
           "carrier of " + print_type(ty) + " exceeds " + std::to_string(model_.cap));
    size = *p;
  } else {
    size = typedef_carrier(ty).support.size();
  }
  carrier_cache_.emplace(ty, size);
  return size;
}

const Interpretation::TypedefCarrier& Interpretation::typedef_carrier(
    const HolType& ty) {
  auto cached = typedef_cache_.find(ty);
  if (cached != typedef_cache_.end()) return cached->second;
  auto td = theory_->type_definition(ty.name());
  if (!td) fail(ErrorKind::kUnknownType, "no interpretation for type " + ty.name());
  TypeSubst theta;
  for (size_t i = 0; i < td->tyvars.size() && i < ty.args().size(); ++i)
    theta.emplace(td->tyvars[i], ty.args()[i]);
  Term pred = inst_type(theta, td->predicate);
  uint64_t m = carrier(type_subst(theta, td->rep_type));
  Program prog(*this);
  uint64_t table = prog.run(prog.add(pred), {});
  TypedefCarrier out;
  for (uint64_t r = 0; r < m; ++r)
    if (apply(table, r, 2) == kTrue) out.support.push_back(r);
  if (out.support.empty())
    fail(ErrorKind::kUninterpretableConstant, "empty carrier for " + print_type(ty));
  return typedef_cache_.emplace(ty, std::move(out)).first->second;
}

Term Interpretation::instantiated_definition(const Term& c) {
  auto rhs = theory_->definition(c.name());
  auto generic = theory_->constant_type(c.name());
  TypeSubst theta;
  if (!rhs || !generic || !type_match(*generic, c.type(), theta))
    fail(ErrorKind::kUninterpretableConstant, "no interpretation for constant " + c.name());
  return inst_type(theta, *rhs);
}

std::optional<uint64_t> Interpretation::constant_value(const Term& c) {
  auto key = std::make_pair(c.name(), c.type());
  auto cached = const_cache_.find(key);
  if (cached != const_cache_.end()) return cached->second;
  std::optional<uint64_t> value;
  if (auto td = theory_->type_definition_of_constant(c.name())) {
    // No way to inline these, so an overflow here is fatal.
    carrier(c.type());
    bool is_abs = c.name() == td->abs;
    const HolType& new_ty = is_abs ? c.type().range() : c.type().domain();
    const HolType& rep_ty = is_abs ? c.type().domain() : c.type().range();
    const auto& support = typedef_carrier(new_ty).support;
    uint64_t k = support.size();
    uint64_t m = carrier(rep_ty);
    uint64_t table = 0;
    if (is_abs) {
      uint64_t mult = 1;
      for (uint64_t r = 0; r < m; ++r) {
        auto it = std::lower_bound(support.begin(), support.end(), r);
        uint64_t idx = (it != support.end() && *it == r) ? it - support.begin() : 0;
        table += idx * mult;
        if (r + 1 < m) mult *= k;
      }
    } else {
      uint64_t mult = 1;
      for (uint64_t i = 0; i < k; ++i) {
        table += support[i] * mult;
        if (i + 1 < k) mult *= m;
      }
    }
    value = table;
  } else {
    Term def = instantiated_definition(c);
    bool fits = true;
    try {
      carrier(c.type());
    } catch (const HolError& e) {
      if (e.kind() != ErrorKind::kCarrierOverflow) throw;
      fits = false;
    }
    if (fits) {
      Program prog(*this);
      value = prog.run(prog.add(def), {});
    }
  }
  const_cache_.emplace(key, value);
  return value;
}

// ---------------------------------------------------------------------------
// Program

uint32_t Program::emit(Node node) {
  nodes_.push_back(node);
  return static_cast<uint32_t>(nodes_.size() - 1);
}

uint32_t Program::add(const Term& t) {
  Env env;
  roots_.push_back(compile(t, env));
  return static_cast<uint32_t>(roots_.size() - 1);
}

uint64_t Program::run(uint32_t handle, std::span<const uint64_t> values) {
  load(values);
  return eval(handle);
}

void Program::load(std::span<const uint64_t> values) {
  slots_.resize(num_slots_);
  for (size_t i = 0; i < free_slots_.size() && i < values.size(); ++i)
    slots_[free_slots_[i]] = values[i];
}

uint64_t Program::eval(uint32_t handle) { return exec(roots_.at(handle)); }

uint32_t Program::compile(const Term& t, Env& env) {
  switch (t.kind()) {
    case Term::Kind::kVar: {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t) return emit({.op = Op::kSlot, .slot = it->second});
      for (size_t i = 0; i < free_.size(); ++i)
        if (free_[i] == t) return emit({.op = Op::kSlot, .slot = free_slots_[i]});
      uint64_t size = interp_->carrier(t.type());
      uint32_t slot = fresh_slot();
      free_.push_back(t);
      carriers_.push_back(size);
      free_slots_.push_back(slot);
      return emit({.op = Op::kSlot, .slot = slot});
    }
    case Term::Kind::kConst:
      return compile_spine(t, {}, env);
    case Term::Kind::kComb: {
      auto [head, args] = strip_comb(t);
      return compile_spine(head, args, env);
    }
    case Term::Kind::kAbs: {
      interp_->carrier(t.type());
      uint64_t dom = interp_->carrier(t.bvar().type());
      uint64_t rng = interp_->carrier(t.body().type());
      uint32_t slot = fresh_slot();
      env.emplace_back(t.bvar(), slot);
      uint32_t body = compile(t.body(), env);
      env.pop_back();
      return emit({.op = Op::kAbs, .a = body, .slot = slot, .dom = dom, .rng = rng});
    }
  }
  return 0;
}

bool Program::fits(const HolType& ty) {
  try {
    interp_->carrier(ty);
    return true;
  } catch (const HolError& e) {
    if (e.kind() != ErrorKind::kCarrierOverflow) throw;
    return false;
  }
}

uint32_t Program::apply_rest(uint32_t f, HolType fty,
                             std::span<const Term> args, Env& env) {
  for (const auto& arg : args) {
    uint32_t x = compile(arg, env);
    uint64_t rng = interp_->carrier(fty.range());
    f = emit({.op = Op::kApply, .a = f, .b = x, .rng = rng});
    fty = fty.range();
  }
  return f;
}

uint32_t Program::compile_spine(const Term& head, std::span<const Term> args,
                                Env& env) {
  if (args.empty() && !head.is_const()) return compile(head, env);
  if (head.is_comb()) {
    auto [h, inner] = strip_comb(head);
    inner.insert(inner.end(), args.begin(), args.end());
    return compile_spine(h, inner, env);
  }
  if (head.is_abs()) {
    if (!fits(args[0].type())) {
      // No value of that type can be built; reduce syntactically.
      Term body = vsubst(TermSubst{{head.bvar(), args[0]}}, head.body());
      return compile_spine(body, args.subspan(1), env);
    }
    // Beta-bind the first argument rather than tabulating the function.
    uint32_t arg = compile(args[0], env);
    Term v = head.bvar();
    Term body_term = head.body();
    // The remaining arguments sit outside the binder.
    for (const auto& rest : args.subspan(1)) {
      if (var_free_in(v, rest)) {
        Term fresh = Term::var("%" + std::to_string(fresh_names_++), v.type());
        body_term = vsubst(TermSubst{{v, fresh}}, body_term);
        v = fresh;
        break;
      }
    }
    uint32_t slot = fresh_slot();
    env.emplace_back(v, slot);
    uint32_t body = compile_spine(body_term, args.subspan(1), env);
    env.pop_back();
    return emit({.op = Op::kLet, .a = arg, .b = body, .slot = slot});
  }
  if (head.is_var()) return apply_rest(compile(head, env), head.type(), args, env);

  const std::string& name = head.name();
  if (name == "=") {
    if (args.size() < 2) return compile_spine(eq_eta(head.type().domain()), args, env);
    const HolType& ty = args[0].type();
    if (ty.is_fun() && !fits(ty)) {
      // Compare pointwise.
      uint64_t dom = interp_->carrier(ty.domain());
      Term x = Term::var("%" + std::to_string(fresh_names_++), ty.domain());
      uint32_t slot = fresh_slot();
      env.emplace_back(x, slot);
      uint32_t body =
          compile(mk_eq(Term::comb(args[0], x), Term::comb(args[1], x)), env);
      env.pop_back();
      uint32_t all = emit({.op = Op::kAll, .a = body, .slot = slot, .dom = dom});
      return apply_rest(all, bool_ty(), args.subspan(2), env);
    }
    uint32_t l = compile(args[0], env);
    uint32_t r = compile(args[1], env);
    uint32_t eq = emit({.op = Op::kEq, .a = l, .b = r});
    return apply_rest(eq, bool_ty(), args.subspan(2), env);
  }
  if (name == "@") {
    if (args.empty()) return compile_spine(select_eta(head), args, env);
    const Term& pred = args[0];
    HolType elem = head.type().range();
    uint64_t dom = interp_->carrier(elem);
    uint32_t sel;
    if (pred.is_abs()) {
      uint32_t slot = fresh_slot();
      env.emplace_back(pred.bvar(), slot);
      uint32_t body = compile(pred.body(), env);
      env.pop_back();
      sel = emit({.op = Op::kSelectAbs, .a = body, .slot = slot, .dom = dom});
    } else {
      sel = emit({.op = Op::kSelect, .a = compile(pred, env), .dom = dom});
    }
    return apply_rest(sel, elem, args.subspan(1), env);
  }
  if (auto value = interp_->constant_value(head))
    return apply_rest(emit({.op = Op::kValue, .value = *value}), head.type(), args, env);
  // Too large to tabulate: unfold in place.
  return compile_spine(interp_->instantiated_definition(head), args, env);
}

uint64_t Program::exec(uint32_t id) {
  const Node& n = nodes_[id];
  switch (n.op) {
    case Op::kValue:
      return n.value;
    case Op::kSlot:
      return slots_[n.slot];
    case Op::kApply: {
      uint64_t f = exec(n.a);
      return Interpretation::apply(f, exec(n.b), n.rng);
    }
    case Op::kAbs: {
      uint64_t acc = 0;
      uint64_t mult = 1;
      for (uint64_t i = 0; i < n.dom; ++i) {
        slots_[n.slot] = i;
        acc += exec(n.a) * mult;
        if (i + 1 < n.dom) mult *= n.rng;
      }
      return acc;
    }
    case Op::kLet:
      slots_[n.slot] = exec(n.a);
      return exec(n.b);
    case Op::kEq: {
      uint64_t l = exec(n.a);
      return l == exec(n.b) ? kTrue : kFalse;
    }
    case Op::kSelect: {
      // The least element of the support, or the first element.
      uint64_t table = exec(n.a);
      return table == 0 ? 0 : std::countr_zero(table);
    }
    case Op::kSelectAbs:
      for (uint64_t i = 0; i < n.dom; ++i) {
        slots_[n.slot] = i;
        if (exec(n.a) == kTrue) return i;
      }
      return 0;
    case Op::kAll:
      for (uint64_t i = 0; i < n.dom; ++i) {
        slots_[n.slot] = i;
        if (exec(n.a) != kTrue) return kFalse;
      }
      return kTrue;
  }
  return 0;
}

// ---------------------------------------------------------------------------

std::string describe_valuation(const Valuation& v) {
  std::string out = "ind=" + std::to_string(v.model.ind_size);
  for (const auto& [name, size] : v.types) out += ", " + name + "=" + std::to_string(size);
  for (const auto& [var, value] : v.terms) {
    out += "; " + var.name() + ":" + print_type(var.type()) + " = ";
    if (var.type().is_bool())
      out += value == kTrue ? "T" : "F";
    else
      out += "#" + std::to_string(value);
  }
  return out;
}

uint64_t eval_type(const HolType& ty, const Theory& theory, const Model& model,
                   const TypeAssignment& types) {
  Interpretation interp(theory, model, types);
  return interp.carrier(ty);
}

namespace {

std::vector<uint64_t> values_for(const Program& prog, const Valuation& v) {
  std::vector<uint64_t> values;
  for (const auto& f : prog.free_vars()) {
    bool found = false;
    for (const auto& [var, value] : v.terms) {
      if (var == f) {
        values.push_back(value);
        found = true;
        break;
      }
    }
    if (!found)
      fail(ErrorKind::kUninterpretableConstant, "no value for variable " + f.name());
  }
  return values;
}

}  // namespace

uint64_t eval_term(const Term& t, const Theory& theory, const Valuation& v) {
  Interpretation interp(theory, v.model, v.types);
  Program prog = interp.program();
  uint32_t h = prog.add(t);
  return prog.run(h, values_for(prog, v));
}

bool holds_sequent(std::span<const Term> hyps, const Term& concl,
                   const Theory& theory, const Valuation& v) {
  Interpretation interp(theory, v.model, v.types);
  Program prog = interp.program();
  std::vector<uint32_t> hs;
  for (const auto& h : hyps) hs.push_back(prog.add(h));
  uint32_t c = prog.add(concl);
  auto values = values_for(prog, v);
  for (uint32_t h : hs)
    if (prog.run(h, values) != kTrue) return true;
  return prog.run(c, values) == kTrue;
}

std::string_view verdict_name(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::kValid: return "valid";
    case Verdict::Kind::kProbablyValid: return "probably-valid";
    case Verdict::Kind::kInvalid: return "invalid";
  }
  return "?";
}

std::vector<TypeAssignment> type_assignments(const std::set<std::string>& tyvars,
                                             uint64_t max_size) {
  std::vector<TypeAssignment> out = {{}};
  for (const auto& name : tyvars) {
    std::vector<TypeAssignment> next;
    for (const auto& partial : out) {
      for (uint64_t n = 1; n <= max_size; ++n) {
        TypeAssignment a = partial;
        a[name] = n;
        next.push_back(std::move(a));
      }
    }
    out = std::move(next);
  }
  return out;
}

Verdict is_valid(std::span<const Term> hyps, const Term& concl,
                 const Theory& theory, const Model& model,
                 const ValidityOptions& options) {
  std::set<std::string> tyvars = type_vars_in_term(concl);
  for (const auto& h : hyps) {
    auto more = type_vars_in_term(h);
    tyvars.insert(more.begin(), more.end());
  }
  Verdict verdict;
  verdict.seed = options.seed;
  std::mt19937_64 rng(options.seed);
  for (const auto& types : type_assignments(tyvars, options.max_tyvar_size)) {
    Interpretation interp(theory, model, types);
    Program prog = interp.program();
    std::vector<uint32_t> hs;
    for (const auto& h : hyps) hs.push_back(prog.add(h));
    uint32_t c = prog.add(concl);
    std::optional<std::vector<uint64_t>> bad;
    auto [visited, exhaustive] = for_each_valuation(
        prog.free_carriers(), options.budget, options.samples, rng,
        [&](std::span<const uint64_t> values) {
          for (uint32_t h : hs)
            if (prog.run(h, values) != kTrue) return true;
          if (prog.run(c, values) == kTrue) return true;
          bad.emplace(values.begin(), values.end());
          return false;
        });
    verdict.valuations += visited;
    if (!exhaustive) verdict.kind = Verdict::Kind::kProbablyValid;
    if (bad) {
      Valuation v{model, types, {}};
      for (size_t i = 0; i < bad->size(); ++i)
        v.terms.emplace_back(prog.free_vars()[i], (*bad)[i]);
      verdict.kind = Verdict::Kind::kInvalid;
      verdict.counterexample = std::move(v);
      return verdict;
    }
  }
  return verdict;
}

}  // namespace microhol
