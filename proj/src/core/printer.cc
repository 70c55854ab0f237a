#include "microhol/printer.h"

#include <vector>

namespace microhol {

namespace {

constexpr int kBinderPrec = 0;
constexpr int kNegPrec = 20;
constexpr int kAppPrec = 30;
constexpr int kAtomPrec = 40;

struct Infix {
  const char* name;
  int prec;
};

constexpr Infix kInfixes[] = {
    {"==>", 4}, {"\\/", 6}, {"/\\", 8}, {"=", 12}};

bool is_bool_binop_type(const HolType& ty) {
  return ty.is_fun() && ty.domain().is_bool() && ty.range().is_fun() &&
         ty.range().domain().is_bool() && ty.range().range().is_bool();
}

bool is_operator_name(const std::string& name) {
  for (const auto& op : kInfixes)
    if (name == op.name) return true;
  return name == "~" || name == "!" || name == "?" || name == "@";
}

void print_type_to(const HolType& ty, bool parens_if_fun, std::string& out) {
  if (ty.is_var()) {
    out += ty.name();
    return;
  }
  if (ty.is_fun()) {
    if (parens_if_fun) out += '(';
    print_type_to(ty.domain(), true, out);
    out += " -> ";
    print_type_to(ty.range(), false, out);
    if (parens_if_fun) out += ')';
    return;
  }
  out += ty.name();
  if (ty.args().empty()) return;
  out += '(';
  for (size_t i = 0; i < ty.args().size(); ++i) {
    if (i > 0) out += ", ";
    print_type_to(ty.args()[i], false, out);
  }
  out += ')';
}

class Printer {
 public:
  explicit Printer(const PrintOptions& options) : options_(options) {}

  std::string run(const Term& t) {
    std::string out;
    print(t, kBinderPrec, true, out);
    return out;
  }

 private:
  bool polymorphic(const std::string& name) const {
    if (options_.is_polymorphic) return options_.is_polymorphic(name);
    return name == "=" || name == "@" || name == "!" || name == "?";
  }

  const Infix* infix_of(const Term& t) const {
    if (!t.is_comb() || !t.rator().is_comb()) return nullptr;
    const Term& op = t.rator().rator();
    if (!op.is_const()) return nullptr;
    for (const auto& infix : kInfixes) {
      if (op.name() != infix.name) continue;
      if (op.name() == "=" || is_bool_binop_type(op.type())) return &infix;
    }
    return nullptr;
  }

  static bool is_binder(const Term& t) {
    if (t.is_abs()) return true;
    if (!t.is_comb() || !t.rator().is_const() || !t.rand().is_abs())
      return false;
    const std::string& n = t.rator().name();
    return n == "!" || n == "?" || n == "@";
  }

  static bool is_negation(const Term& t) {
    if (!t.is_comb() || !t.rator().is_const()) return false;
    const Term& op = t.rator();
    return op.name() == "~" && op.type().is_fun() &&
           op.type().domain().is_bool() && op.type().range().is_bool();
  }

  void print_var(const Term& v, std::string& out) const {
    for (auto it = binders_.rbegin(); it != binders_.rend(); ++it) {
      if (it->name() != v.name()) continue;
      if (it->type() == v.type()) {
        out += v.name();
        return;
      }
      break;
    }
    annotated(v.name(), v.type(), out);
  }

  static void annotated(const std::string& name, const HolType& ty,
                        std::string& out) {
    out += '(';
    out += name;
    out += ':';
    print_type_to(ty, false, out);
    out += ')';
  }

  void print(const Term& t, int ctx, bool rightmost, std::string& out) {
    if (t.is_var()) {
      print_var(t, out);
      return;
    }
    if (t.is_const()) {
      if (polymorphic(t.name())) {
        annotated(t.name(), t.type(), out);
      } else if (is_operator_name(t.name())) {
        out += '(';
        out += t.name();
        out += ')';
      } else {
        out += t.name();
      }
      return;
    }
    if (is_binder(t)) {
      bool parens = !rightmost || ctx > kNegPrec;
      if (parens) out += '(';
      const Term& abs = t.is_abs() ? t : t.rand();
      out += t.is_abs() ? "\\" : t.rator().name();
      out += abs.bvar().name();
      out += ':';
      print_type_to(abs.bvar().type(), false, out);
      out += ". ";
      binders_.push_back(abs.bvar());
      print(abs.body(), kBinderPrec, true, out);
      binders_.pop_back();
      if (parens) out += ')';
      return;
    }
    if (const Infix* op = infix_of(t)) {
      bool parens = op->prec < ctx;
      bool inner_rightmost = parens || rightmost;
      if (parens) out += '(';
      print(t.rator().rand(), op->prec + 1, false, out);
      out += ' ';
      out += op->name;
      out += ' ';
      print(t.rand(), op->prec, inner_rightmost, out);
      if (parens) out += ')';
      return;
    }
    if (is_negation(t)) {
      bool parens = kNegPrec < ctx;
      if (parens) out += '(';
      out += '~';
      print(t.rand(), kNegPrec, parens || rightmost, out);
      if (parens) out += ')';
      return;
    }
    // Application.
    bool parens = kAppPrec < ctx;
    if (parens) out += '(';
    print(t.rator(), kAppPrec, false, out);
    out += ' ';
    print(t.rand(), kAtomPrec, parens || rightmost, out);
    if (parens) out += ')';
  }

  const PrintOptions& options_;
  std::vector<Term> binders_;
};

}  // namespace

std::string print_type(const HolType& ty) {
  std::string out;
  print_type_to(ty, false, out);
  return out;
}

std::string print_term(const Term& t, const PrintOptions& options) {
  return Printer(options).run(t);
}

std::string print_sequent(std::span<const Term> hyps, const Term& concl,
                          const PrintOptions& options) {
  std::string out;
  for (size_t i = 0; i < hyps.size(); ++i) {
    if (i > 0) out += ", ";
    out += print_term(hyps[i], options);
  }
  if (!hyps.empty()) out += ' ';
  out += "|- ";
  out += print_term(concl, options);
  return out;
}

std::string debug_string(const Term& t) { return print_term(t); }

}  // namespace microhol
