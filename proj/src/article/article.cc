#include "microhol/article.h"

#include <charconv>
#include <optional>
#include <sstream>
#include <variant>

#include "json.hpp"
#include "microhol/printer.h"
#include "microhol/syntax.h"

namespace microhol {

namespace {

struct Arg {
  enum Kind { kRef, kQuoted, kWord, kAssign, kSemi } kind;
  std::string text;
  uint64_t ref = 0;
  int part = 0;  // k/1, k/2
};

using Item = std::variant<std::monostate, HolType, Term, Theorem,
                          std::pair<Theorem, Theorem>>;

bool valid_utf8(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    auto c = static_cast<unsigned char>(s[i]);
    size_t n = c < 0x80 ? 0 : (c >> 5) == 0x6 ? 1 : (c >> 4) == 0xe ? 2 : (c >> 3) == 0x1e ? 3 : 9;
    if (n == 9 || (n > 0 && i + n >= s.size())) return false;
    for (size_t k = 1; k <= n; ++k)
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2) return false;
    i += n + 1;
  }
  return true;
}

std::optional<uint64_t> parse_number(std::string_view s) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<Arg> split_args(std::string_view s) {
  std::vector<Arg> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t') {
      ++i;
    } else if (c == '`') {
      size_t j = s.find('`', i + 1);
      if (j == std::string_view::npos) fail(ErrorKind::kSyntaxError, "unterminated `");
      out.push_back({Arg::kQuoted, std::string(s.substr(i + 1, j - i - 1))});
      i = j + 1;
    } else if (s.substr(i, 2) == ":=") {
      out.push_back({Arg::kAssign, ":="});
      i += 2;
    } else if (c == ';') {
      out.push_back({Arg::kSemi, ";"});
      ++i;
    } else {
      size_t j = i;
      while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '`' && s[j] != ';' &&
             s.substr(j, 2) != ":=")
        ++j;
      std::string_view word = s.substr(i, j - i);
      Arg arg{Arg::kWord, std::string(word)};
      size_t slash = word.find('/');
      if (auto n = parse_number(word.substr(0, slash))) {
        arg.kind = Arg::kRef;
        arg.ref = *n;
        if (slash != std::string_view::npos) {
          auto part = parse_number(word.substr(slash + 1));
          if (!part || (*part != 1 && *part != 2))
            fail(ErrorKind::kSyntaxError, "bad reference " + std::string(word));
          arg.part = static_cast<int>(*part);
        }
      }
      out.push_back(std::move(arg));
      i = j;
    }
  }
  return out;
}

// Raised for a reference to a missing command; turned into kDanglingReference.
struct Dangling {
  std::string message;
};

class Replayer {
 public:
  Replayer(Kernel& kernel, ArticleReport& report) : kernel_(kernel), report_(report) {}

  void command(uint64_t number, const std::string& cmd, std::vector<Arg> args) {
    args_ = std::move(args);
    next_ = 0;
    number_ = number;
    const Theory& thy = kernel_.theory();
    Item result;
    if (cmd == "TYPE") {
      result = type_arg();
    } else if (cmd == "TERM") {
      result = term_arg();
    } else if (cmd == "REFL") {
      result = kernel_.refl(term_arg());
    } else if (cmd == "TRANS") {
      Theorem a = thm_arg();
      result = kernel_.trans(a, thm_arg());
    } else if (cmd == "MKCOMB") {
      Theorem a = thm_arg();
      result = kernel_.mk_comb(a, thm_arg());
    } else if (cmd == "ABS") {
      Arg x = take();
      Theorem th = thm_arg();
      result = kernel_.abs(term_of(x, context_of(th)), th);
    } else if (cmd == "BETA") {
      result = kernel_.beta(term_arg());
    } else if (cmd == "ASSUME") {
      result = kernel_.assume(term_arg());
    } else if (cmd == "EQMP") {
      Theorem a = thm_arg();
      result = kernel_.eq_mp(a, thm_arg());
    } else if (cmd == "DEDUCT") {
      Theorem a = thm_arg();
      result = kernel_.deduct_antisym(a, thm_arg());
    } else if (cmd == "INSTTYPE") {
      Theorem th = thm_arg();
      TypeSubst theta;
      do {
        std::string name = word();
        expect(Arg::kAssign);
        if (!theta.emplace(name, type_arg()).second)
          fail(ErrorKind::kDuplicateName, "type variable " + name + " assigned twice");
      } while (semi());
      result = kernel_.inst_type(theta, th);
    } else if (cmd == "INST") {
      Theorem th = thm_arg();
      ParseContext ctx = context_of(th);
      TermSubst theta;
      do {
        Term var = term_of(take(), ctx);
        expect(Arg::kAssign);
        theta.add(var, term_of(take(), ctx));
      } while (semi());
      result = kernel_.inst(theta, th);
    } else if (cmd == "AXIOM") {
      std::string name = word();
      if (name == "EXT") {
        result = kernel_.axiom_extensionality();
      } else if (name == "SELECT") {
        result = kernel_.axiom_choice();
      } else if (name == "INFINITY") {
        result = kernel_.axiom_infinity();
      } else {
        fail(ErrorKind::kReplayError, "unknown axiom " + name);
      }
    } else if (cmd == "DEFINE") {
      std::string name = word();
      result = kernel_.new_basic_definition(name, term_arg());
    } else if (cmd == "TYPEDEF") {
      std::string name = word();
      std::string abs = word();
      std::string rep = word();
      result = kernel_.new_basic_type_definition(name, abs, rep, thm_arg());
    } else if (cmd == "THM") {
      Theorem th = thm_arg();
      Arg stated = take();
      if (stated.kind != Arg::kQuoted) fail(ErrorKind::kSyntaxError, "THM needs a quoted sequent");
      Sequent s = parse_sequent(stated.text, thy, context_of(th));
      check_statement(th, s);
      report_.theorems.push_back(th);
      report_.statements.push_back(
          print_sequent(th.hyps(), th.concl(), thy.print_options()));
      if (th.uses_infinity()) ++report_.uses_infinity;
      result = th;
    } else {
      fail(ErrorKind::kReplayError, "unknown command " + cmd);
    }
    if (next_ != args_.size())
      fail(ErrorKind::kSyntaxError, "unexpected argument '" + args_[next_].text + "'");
    items_.push_back(std::move(result));
  }

 private:
  Arg take() {
    if (next_ >= args_.size()) fail(ErrorKind::kSyntaxError, "missing argument");
    return args_[next_++];
  }
  void expect(Arg::Kind kind) {
    if (take().kind != kind) fail(ErrorKind::kSyntaxError, "expected ':='");
  }
  bool semi() {
    if (next_ < args_.size() && args_[next_].kind == Arg::kSemi) {
      ++next_;
      return true;
    }
    return false;
  }
  std::string word() {
    Arg a = take();
    if (a.kind != Arg::kWord) fail(ErrorKind::kSyntaxError, "expected a name, found '" + a.text + "'");
    return a.text;
  }

  const Item& lookup(const Arg& a) {
    if (a.ref == 0 || a.ref >= number_)
      throw Dangling{"reference " + a.text + " does not name an earlier command"};
    return items_[a.ref - 1];
  }

  HolType type_arg() {
    Arg a = take();
    if (a.kind == Arg::kQuoted) return parse_type(a.text, &kernel_.theory());
    if (a.kind != Arg::kRef || a.part) fail(ErrorKind::kSyntaxError, "expected a type");
    const Item& it = lookup(a);
    if (auto* ty = std::get_if<HolType>(&it)) return *ty;
    fail(ErrorKind::kReplayError, "command " + a.text + " is not a type");
  }

  Term term_of(const Arg& a, const ParseContext& ctx) {
    // A bare word is read as a one-identifier term.
    if (a.kind == Arg::kQuoted || a.kind == Arg::kWord)
      return parse_term(a.text, kernel_.theory(), ctx);
    if (a.kind != Arg::kRef || a.part) fail(ErrorKind::kSyntaxError, "expected a term");
    const Item& it = lookup(a);
    if (auto* t = std::get_if<Term>(&it)) return *t;
    fail(ErrorKind::kReplayError, "command " + a.text + " is not a term");
  }
  Term term_arg() { return term_of(take(), {}); }

  Theorem thm_arg() {
    Arg a = take();
    if (a.kind != Arg::kRef) fail(ErrorKind::kSyntaxError, "expected a theorem reference");
    const Item& it = lookup(a);
    if (a.part) {
      if (auto* p = std::get_if<std::pair<Theorem, Theorem>>(&it))
        return a.part == 1 ? p->first : p->second;
      throw Dangling{"command " + std::to_string(a.ref) + " has no part " + std::to_string(a.part)};
    }
    if (auto* th = std::get_if<Theorem>(&it)) return *th;
    if (std::holds_alternative<std::pair<Theorem, Theorem>>(it))
      fail(ErrorKind::kReplayError, "command " + a.text + " has two results; use /1 or /2");
    fail(ErrorKind::kReplayError, "command " + a.text + " is not a theorem");
  }

  static ParseContext context_of(const Theorem& th) {
    ParseContext ctx;
    std::vector<Term> terms(th.hyps().begin(), th.hyps().end());
    terms.push_back(th.concl());
    for (const Term& v : free_vars(terms)) ctx.free_types.emplace(v.name(), v.type());
    return ctx;
  }

  void check_statement(const Theorem& th, const Sequent& s) {
    auto contains = [](std::span<const Term> set, const Term& t) {
      for (const auto& u : set)
        if (alpha_equiv(u, t)) return true;
      return false;
    };
    bool same = alpha_equiv(th.concl(), s.concl);
    for (const auto& h : s.hyps) same = same && contains(th.hyps(), h);
    for (const auto& h : th.hyps()) same = same && contains(s.hyps, h);
    if (!same) {
      PrintOptions po = kernel_.theory().print_options();
      fail(ErrorKind::kMismatch, "theorem is `" + print_sequent(th.hyps(), th.concl(), po) +
                                     "`, not `" + print_sequent(s.hyps, s.concl, po) + "`");
    }
  }

  Kernel& kernel_;
  ArticleReport& report_;
  std::vector<Item> items_;
  std::vector<Arg> args_;
  size_t next_ = 0;
  uint64_t number_ = 0;
};

void replay(std::string_view text, Kernel& kernel, ArticleReport& report) {
  const uint64_t start = kernel.total_inferences();
  report.fingerprint = to_hex(kernel.theory().fingerprint());
  struct Counter {
    ~Counter() { report.inferences = kernel.total_inferences() - start; }
    ArticleReport& report;
    Kernel& kernel;
    uint64_t start;
  } counter{report, kernel, start};

  size_t line_no = 0;
  size_t pos = 0;
  auto bad = [&](ErrorKind kind, ErrorKind cause, const std::string& msg) {
    throw ArticleError(kind, line_no, cause, msg);
  };
  if (!valid_utf8(text)) bad(ErrorKind::kReplayError, ErrorKind::kSyntaxError, "not valid UTF-8");

  Replayer replayer(kernel, report);
  uint64_t expected = 1;
  int header = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    report.lines = line_no;
    if (!line.empty() && line.back() == '\r')
      bad(ErrorKind::kReplayError, ErrorKind::kSyntaxError, "CR in line ending");
    if (header == 0) {
      if (line != kArticleHeader)
        bad(ErrorKind::kReplayError, ErrorKind::kSyntaxError,
            "expected header '" + std::string(kArticleHeader) + "'");
      ++header;
      continue;
    }
    if (header == 1) {
      if (line.substr(0, 7) != "theory ")
        bad(ErrorKind::kReplayError, ErrorKind::kSyntaxError, "expected 'theory <fingerprint>'");
      if (line.substr(7) != report.fingerprint)
        bad(ErrorKind::kFingerprintMismatch, ErrorKind::kFingerprintMismatch,
            "article wants theory " + std::string(line.substr(7)) + ", have " + report.fingerprint);
      ++header;
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    size_t dot = line.find(". ");
    auto number = dot == std::string_view::npos ? std::nullopt : parse_number(line.substr(0, dot));
    if (!number)
      bad(ErrorKind::kReplayError, ErrorKind::kSyntaxError, "expected 'k. COMMAND ...'");
    if (*number != expected)
      bad(ErrorKind::kReplayError, ErrorKind::kSyntaxError,
          "expected command " + std::to_string(expected) + ", found " + std::to_string(*number));
    std::string_view rest = line.substr(dot + 2);
    size_t sp = rest.find(' ');
    std::string cmd(rest.substr(0, sp));
    try {
      std::vector<Arg> args =
          split_args(sp == std::string_view::npos ? std::string_view() : rest.substr(sp + 1));
      replayer.command(*number, cmd, std::move(args));
    } catch (const Dangling& d) {
      bad(ErrorKind::kDanglingReference, ErrorKind::kDanglingReference, d.message);
    } catch (const HolError& e) {
      bad(ErrorKind::kReplayError, e.kind(), cmd + ": " + e.what());
    }
    ++report.commands;
    ++expected;
  }
  if (header < 2) bad(ErrorKind::kReplayError, ErrorKind::kSyntaxError, "missing header");
}

}  // namespace

ArticleReport check_article_or_throw(std::string_view text, Kernel& kernel) {
  ArticleReport report;
  replay(text, kernel, report);
  return report;
}

ArticleReport check_article(std::string_view text, Kernel& kernel) {
  ArticleReport report;
  try {
    replay(text, kernel, report);
  } catch (const ArticleError& e) {
    report.failures.push_back({e.line(), e.kind(), e.cause(), e.what()});
  }
  return report;
}

std::string article_report_json(const ArticleReport& r) {
  nlohmann::ordered_json j;
  j["version"] = kArticleReportVersion;
  j["ok"] = r.ok();
  j["fingerprint"] = r.fingerprint;
  j["lines"] = r.lines;
  j["commands"] = r.commands;
  j["inferences"] = r.inferences;
  j["theorems"] = r.theorems.size();
  j["uses_infinity"] = r.uses_infinity;
  j["statements"] = r.statements;
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : r.failures) {
    j["failures"].push_back({{"line", f.line},
                             {"kind", error_kind_name(f.kind)},
                             {"cause", error_kind_name(f.cause)},
                             {"message", f.message}});
  }
  return j.dump(2) + "\n";
}

std::string article_report_text(const ArticleReport& r) {
  std::ostringstream out;
  auto plural = [](uint64_t n, const char* word) {
    return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
  };
  out << (r.ok() ? "ok" : "FAILED") << ": " << plural(r.theorems.size(), "theorem") << ", "
      << plural(r.commands, "command") << ", " << plural(r.inferences, "inference") << "\n";
  for (const auto& s : r.statements) out << "  " << s << "\n";
  if (r.uses_infinity) out << "uses infinity: " << r.uses_infinity << "\n";
  for (const auto& f : r.failures)
    out << error_kind_name(f.kind) << " (" << error_kind_name(f.cause) << ") " << f.message << "\n";
  return out.str();
}

std::string generate_trans_chain(const Theory& theory, uint64_t lines) {
  std::string out;
  out.reserve(lines * 16 + 128);
  out += kArticleHeader;
  out += "\ntheory " + to_hex(theory.fingerprint()) + "\n";
  out += "1. BETA `(\\x:bool. x) x`\n";
  out += "2. REFL `x:bool`\n";
  uint64_t k = 3;
  out += "3. TRANS 1 2\n";
  for (k = 4; k < lines; ++k) {
    out += std::to_string(k);
    out += ". TRANS ";
    out += std::to_string(k - 1);
    out += " 2\n";
  }
  out += std::to_string(k) + ". THM " + std::to_string(k - 1) + " `|- (\\x:bool. x) x = x`\n";
  return out;
}

}  // namespace microhol
