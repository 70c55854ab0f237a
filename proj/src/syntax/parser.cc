#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "microhol/printer.h"
#include "microhol/syntax.h"

namespace microhol {

namespace {

enum class Tok {
  kIdent, kLParen, kRParen, kComma, kColon, kDot, kLambda, kBang, kQuery,
  kAt, kTilde, kEq, kImp, kAnd, kOr, kArrow, kTurnstile, kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  size_t line, column, offset;
  bool space_before;
};

std::vector<Token> lex(std::string_view src) {
  static const std::pair<const char*, Tok> kSymbols[] = {
      {"==>", Tok::kImp}, {"/\\", Tok::kAnd}, {"\\/", Tok::kOr},
      {"->", Tok::kArrow}, {"|-", Tok::kTurnstile}, {"=", Tok::kEq},
      {"(", Tok::kLParen}, {")", Tok::kRParen}, {",", Tok::kComma},
      {":", Tok::kColon}, {".", Tok::kDot}, {"\\", Tok::kLambda},
      {"!", Tok::kBang}, {"?", Tok::kQuery}, {"@", Tok::kAt},
      {"~", Tok::kTilde}};
  std::vector<Token> out;
  size_t line = 1, col = 1, i = 0;
  bool space = true;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      advance(1);
      space = true;
      continue;
    }
    Token tok{Tok::kEnd, "", line, col, i, space};
    space = false;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' ||
              src[j] == '\''))
        ++j;
      tok.kind = Tok::kIdent;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    bool matched = false;
    for (const auto& [sym, kind] : kSymbols) {
      std::string_view s(sym);
      if (src.substr(i, s.size()) == s) {
        tok.kind = kind;
        tok.text = std::string(s);
        advance(s.size());
        out.push_back(std::move(tok));
        matched = true;
        break;
      }
    }
    if (!matched)
      throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
  }
  out.push_back(Token{Tok::kEnd, "", line, col, src.size(), space});
  return out;
}

const char* operator_name(Tok kind) {
  switch (kind) {
    case Tok::kEq: return "=";
    case Tok::kAnd: return "/\\";
    case Tok::kOr: return "\\/";
    case Tok::kImp: return "==>";
    case Tok::kTilde: return "~";
    case Tok::kBang: return "!";
    case Tok::kQuery: return "?";
    case Tok::kAt: return "@";
    default: return nullptr;
  }
}

int infix_prec(Tok kind) {
  switch (kind) {
    case Tok::kImp: return 4;
    case Tok::kOr: return 6;
    case Tok::kAnd: return 8;
    case Tok::kEq: return 12;
    default: return -1;
  }
}

bool is_meta(const HolType& ty) { return ty.is_var() && ty.name()[0] == '?'; }

class Parser {
 public:
  Parser(std::string_view src, const Theory* theory, const ParseContext* context)
      : src_(src), toks_(lex(src)), theory_(theory), context_(context) {}

  HolType type_only() {
    HolType ty = type();
    expect(Tok::kEnd, "end of input");
    return ty;
  }

  Term term_only() {
    int t = term();
    expect(Tok::kEnd, "end of input");
    return finish({t})[0];
  }

  Sequent sequent() {
    std::vector<int> parts;
    if (peek().kind != Tok::kTurnstile) {
      parts.push_back(term());
      while (peek().kind == Tok::kComma) {
        next();
        parts.push_back(term());
      }
    }
    expect(Tok::kTurnstile, "'|-'");
    parts.push_back(term());
    expect(Tok::kEnd, "end of input");
    for (int p : parts) unify(nodes_[p].ty, HolType::bool_type(), p);
    std::vector<Term> terms = finish(parts);
    Term concl = terms.back();
    terms.pop_back();
    return Sequent{std::move(terms), concl};
  }

 private:
  struct Node {
    enum Kind { kVar, kConst, kComb, kAbs } kind;
    std::string name;
    HolType ty;  // Var/Const: own type; Abs: bound variable type; Comb: result
    int a = -1, b = -1;
    size_t begin = 0, end = 0;
  };

  // Tokens.
  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] void error(const Token& at, const std::string& msg) const {
    throw SyntaxError(at.line, at.column, msg);
  }
  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) {
      const Token& t = peek();
      error(t, "expected " + what + (t.kind == Tok::kEnd ? " at end of input"
                                                         : ", found '" + t.text + "'"));
    }
    return next();
  }
  size_t last_end() const {
    if (pos_ == 0) return 0;
    const Token& t = toks_[pos_ - 1];
    return t.offset + t.text.size();
  }

  // Types.
  HolType type() {
    HolType lhs = btype();
    if (peek().kind == Tok::kArrow) {
      next();
      return HolType::fun(lhs, type());
    }
    return lhs;
  }

  HolType btype() {
    const Token& t = peek();
    if (t.kind == Tok::kLParen) {
      next();
      HolType ty = type();
      expect(Tok::kRParen, "')'");
      return ty;
    }
    if (t.kind != Tok::kIdent) error(t, "expected a type");
    Token name = next();
    if (std::isupper(static_cast<unsigned char>(name.text[0]))) return HolType::var(name.text);
    std::vector<HolType> args;
    if (peek().kind == Tok::kLParen && !peek().space_before) {
      next();
      args.push_back(type());
      while (peek().kind == Tok::kComma) {
        next();
        args.push_back(type());
      }
      expect(Tok::kRParen, "')'");
    }
    if (theory_) {
      auto arity = theory_->type_arity(name.text);
      if (!arity) fail(ErrorKind::kUnknownType, "unknown type " + name.text);
      if (*arity != args.size())
        error(name, "type " + name.text + " takes " + std::to_string(*arity) + " arguments");
    }
    if (name.text == "fun" && args.size() == 2) return HolType::fun(args[0], args[1]);
    if (name.text == "bool" && args.empty()) return HolType::bool_type();
    if (name.text == "ind" && args.empty()) return HolType::ind_type();
    return HolType::app(name.text, std::move(args));
  }

  // Type inference.
  HolType fresh_meta() { return HolType::var("?" + std::to_string(metas_++)); }

  HolType resolve(const HolType& ty) {
    if (ty.is_var()) {
      if (!is_meta(ty)) return ty;
      auto it = subst_.find(ty.name());
      if (it == subst_.end()) return ty;
      HolType r = resolve(it->second);
      it->second = r;
      return r;
    }
    if (ty.args().empty()) return ty;
    std::vector<HolType> args;
    for (const auto& a : ty.args()) args.push_back(resolve(a));
    if (ty.is_fun()) return HolType::fun(args[0], args[1]);
    return HolType::app(ty.name(), std::move(args));
  }

  bool occurs(const std::string& meta, const HolType& ty) {
    HolType r = resolve(ty);
    if (r.is_var()) return r.name() == meta;
    for (const auto& a : r.args())
      if (occurs(meta, a)) return true;
    return false;
  }

  bool unify_types(const HolType& x, const HolType& y) {
    HolType a = resolve(x);
    HolType b = resolve(y);
    if (a.is_var() && b.is_var() && a.name() == b.name()) return true;
    if (is_meta(a)) {
      if (occurs(a.name(), b)) return false;
      subst_.emplace(a.name(), b);
      return true;
    }
    if (is_meta(b)) return unify_types(b, a);
    if (a.is_var() || b.is_var()) return false;
    if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
    for (size_t i = 0; i < a.args().size(); ++i)
      if (!unify_types(a.args()[i], b.args()[i])) return false;
    return true;
  }

  void unify(const HolType& x, const HolType& y, int node) {
    if (unify_types(x, y)) return;
    const Node& n = nodes_[node];
    fail(ErrorKind::kIllTyped,
         "ill-typed: `" + std::string(src_.substr(n.begin, n.end - n.begin)) +
             "`: cannot match " + print_type(resolve(x)) + " with " +
             print_type(resolve(y)));
  }

  HolType type_of(int node) {
    const Node& n = nodes_[node];
    if (n.kind == Node::kAbs) return HolType::fun(n.ty, type_of(n.b));
    return n.ty;
  }

  // Nodes.
  int add(Node n) {
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size() - 1);
  }

  HolType instantiate(const HolType& generic) {
    TypeSubst theta;
    for (const auto& v : type_vars(generic)) theta.emplace(v, fresh_meta());
    return theta.empty() ? generic : type_subst(theta, generic);
  }

  int constant(const std::string& name, size_t begin, size_t end,
               const Token& at) {
    auto generic = theory_->constant_type(name);
    if (!generic) fail(ErrorKind::kUnknownConstant, "unknown constant " + name);
    (void)at;
    return add({Node::kConst, name, instantiate(*generic), -1, -1, begin, end});
  }

  int comb(int f, int a) {
    HolType r = fresh_meta();
    int n = add({Node::kComb, "", r, f, a, nodes_[f].begin, nodes_[a].end});
    unify(type_of(f), HolType::fun(type_of(a), r), n);
    return n;
  }

  int term() {
    Tok k = peek().kind;
    if ((k == Tok::kLambda || k == Tok::kBang || k == Tok::kQuery || k == Tok::kAt) &&
        peek(1).kind == Tok::kIdent)
      return binder();
    return infix(0);
  }

  int binder() {
    const Token& start = next();
    Tok kind = start.kind;
    size_t begin = start.offset;
    Token var = expect(Tok::kIdent, "a bound variable");
    if (peek().kind != Tok::kColon)
      error(peek(), "bound variable " + var.text + " needs a type annotation");
    next();
    HolType ty = type();
    expect(Tok::kDot, "'.'");
    env_.emplace_back(var.text, ty);
    int body = term();
    env_.pop_back();
    int abs = add({Node::kAbs, var.text, ty, -1, body, begin, last_end()});
    if (kind == Tok::kLambda) return abs;
    int c = constant(operator_name(kind), begin, begin + 1, start);
    int n = comb(c, abs);
    nodes_[n].begin = begin;
    return n;
  }

  int infix(int min_prec) {
    int lhs = unary();
    while (true) {
      const Token& op = peek();
      int prec = infix_prec(op.kind);
      if (prec < 0 || prec < min_prec) return lhs;
      Token op_tok = next();
      int rhs = infix(prec);
      int c = constant(operator_name(op_tok.kind), op_tok.offset,
                       op_tok.offset + op_tok.text.size(), op_tok);
      lhs = comb(comb(c, lhs), rhs);
    }
  }

  int unary() {
    const Token& t = peek();
    if (t.kind == Tok::kTilde && !(peek(1).kind == Tok::kRParen || peek(1).kind == Tok::kColon)) {
      Token tilde = next();
      int c = constant("~", tilde.offset, tilde.offset + 1, tilde);
      int operand = unary();
      int n = comb(c, operand);
      return n;
    }
    Tok k = t.kind;
    if ((k == Tok::kLambda || k == Tok::kBang || k == Tok::kQuery || k == Tok::kAt) &&
        peek(1).kind == Tok::kIdent)
      return binder();
    return application();
  }

  bool starts_atom() const {
    Tok k = peek().kind;
    return k == Tok::kIdent || k == Tok::kLParen;
  }

  int application() {
    int f = atom();
    while (starts_atom()) f = comb(f, atom());
    return f;
  }

  int atom() {
    const Token& t = peek();
    if (t.kind == Tok::kIdent) {
      Token name = next();
      size_t begin = name.offset;
      if (peek().kind == Tok::kColon) {
        next();
        HolType ty = type();
        return annotated(name, ty, begin, last_end());
      }
      return bare(name, begin, last_end());
    }
    if (t.kind == Tok::kLParen) {
      const char* op = operator_name(peek(1).kind);
      if (op && (peek(2).kind == Tok::kRParen || peek(2).kind == Tok::kColon)) {
        Token open = next();
        Token op_tok = next();
        std::optional<HolType> ann;
        if (peek().kind == Tok::kColon) {
          next();
          ann = type();
        }
        expect(Tok::kRParen, "')'");
        int c = constant(op, open.offset, last_end(), op_tok);
        if (ann) unify(nodes_[c].ty, *ann, c);
        return c;
      }
      Token open = next();
      int inner = term();
      expect(Tok::kRParen, "')'");
      nodes_[inner].begin = std::min(nodes_[inner].begin, open.offset);
      return inner;
    }
    if (t.kind == Tok::kEnd) error(t, "unexpected end of input");
    error(t, "expected a term, found '" + t.text + "'");
  }

  int annotated(const Token& name, const HolType& ty, size_t begin, size_t end) {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == name.text && it->second == ty)
        return add({Node::kVar, name.text, ty, -1, -1, begin, end});
    if (theory_->constant_type(name.text)) {
      int c = constant(name.text, begin, end, name);
      unify(nodes_[c].ty, ty, c);
      return c;
    }
    annotated_free_[name.text].push_back(ty);
    return add({Node::kVar, name.text, ty, -1, -1, begin, end});
  }

  int bare(const Token& name, size_t begin, size_t end) {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == name.text)
        return add({Node::kVar, name.text, it->second, -1, -1, begin, end});
    if (theory_->constant_type(name.text)) return constant(name.text, begin, end, name);
    if (context_) {
      auto it = context_->free_types.find(name.text);
      if (it != context_->free_types.end())
        return add({Node::kVar, name.text, it->second, -1, -1, begin, end});
    }
    auto [it, fresh] = bare_free_.try_emplace(name.text, HolType::bool_type());
    if (fresh) it->second = fresh_meta();
    return add({Node::kVar, name.text, it->second, -1, -1, begin, end});
  }

  // Resolves types, defaults the rest, and builds terms.
  std::vector<Term> finish(const std::vector<int>& roots) {
    // A bare free variable with a single annotated twin takes its type.
    for (const auto& [name, meta] : bare_free_) {
      auto it = annotated_free_.find(name);
      if (it == annotated_free_.end()) continue;
      bool single = true;
      for (const auto& ty : it->second) single &= ty == it->second.front();
      if (single) unify_types(meta, it->second.front());
    }
    std::set<std::string> used;
    for (const auto& n : nodes_) collect_type_vars(resolve(n.ty), used);
    size_t counter = 0;
    auto fresh_name = [&] {
      while (true) {
        size_t k = counter++;
        std::string name = k < 26 ? std::string(1, char('A' + k)) : "A" + std::to_string(k - 25);
        if (used.insert(name).second) return name;
      }
    };
    for (const auto& n : nodes_) {
      for (const auto& v : type_vars(resolve(n.ty))) {
        if (v[0] == '?') subst_.emplace(v, HolType::var(fresh_name()));
      }
    }
    std::vector<Term> out;
    for (int r : roots) out.push_back(build(r));
    return out;
  }

  Term build(int id) {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case Node::kVar: return Term::var(n.name, resolve(n.ty));
      case Node::kConst: return Term::constant(n.name, resolve(n.ty));
      case Node::kComb: return Term::comb(build(n.a), build(n.b));
      case Node::kAbs: return Term::abs(Term::var(n.name, resolve(n.ty)), build(n.b));
    }
    return build(id);
  }

  std::string_view src_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  const Theory* theory_;
  const ParseContext* context_;
  std::vector<Node> nodes_;
  std::vector<std::pair<std::string, HolType>> env_;
  std::map<std::string, HolType> subst_;
  std::map<std::string, HolType> bare_free_;
  std::map<std::string, std::vector<HolType>> annotated_free_;
  size_t metas_ = 0;
};

}  // namespace

HolType parse_type(std::string_view src, const Theory* theory) {
  return Parser(src, theory, nullptr).type_only();
}

Term parse_term(std::string_view src, const Theory& theory,
                const ParseContext& context) {
  return Parser(src, &theory, &context).term_only();
}

Sequent parse_sequent(std::string_view src, const Theory& theory,
                      const ParseContext& context) {
  return Parser(src, &theory, &context).sequent();
}

}  // namespace microhol
