#ifndef MICROHOL_TESTS_SUPPORT_DEBRUIJN_H_
#define MICROHOL_TESTS_SUPPORT_DEBRUIJN_H_

// Independent nameless encoding used only as a test oracle. Shares nothing
// with the library's alpha comparison beyond the public Term accessors.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "microhol/printer.h"
#include "microhol/term.h"

namespace oracle {

inline void db_rec(const microhol::Term& t,
                   std::vector<std::pair<std::string, std::string>>& stack,
                   std::string& out) {
  using microhol::Term;
  switch (t.kind()) {
    case Term::Kind::kVar: {
      std::string ty = microhol::print_type(t.type());
      for (size_t i = stack.size(); i-- > 0;) {
        if (stack[i].first == t.name() && stack[i].second == ty) {
          out += "#" + std::to_string(stack.size() - i) + " ";
          return;
        }
      }
      out += "v{" + t.name() + ":" + ty + "} ";
      return;
    }
    case Term::Kind::kConst:
      out += "c{" + t.name() + ":" + microhol::print_type(t.type()) + "} ";
      return;
    case Term::Kind::kComb:
      out += "(";
      db_rec(t.rator(), stack, out);
      db_rec(t.rand(), stack, out);
      out += ")";
      return;
    case Term::Kind::kAbs:
      out += "[L " + microhol::print_type(t.bvar().type()) + " ";
      stack.emplace_back(t.bvar().name(), microhol::print_type(t.bvar().type()));
      db_rec(t.body(), stack, out);
      stack.pop_back();
      out += "]";
      return;
  }
}

// Nameless form: bound variables become #k, counting binders outward.
inline std::string debruijn(const microhol::Term& t) {
  std::vector<std::pair<std::string, std::string>> stack;
  std::string out;
  db_rec(t, stack, out);
  return out;
}

inline bool alpha_equiv(const microhol::Term& a, const microhol::Term& b) {
  return debruijn(a) == debruijn(b);
}

// Free variables as "name:type" strings, read off the nameless form.
inline std::set<std::string> free_vars(const microhol::Term& t) {
  std::set<std::string> out;
  std::string s = debruijn(t);
  size_t pos = 0;
  while ((pos = s.find("v{", pos)) != std::string::npos) {
    size_t end = s.find("} ", pos);
    out.insert(s.substr(pos + 2, end - pos - 2));
    pos = end;
  }
  return out;
}

}  // namespace oracle

#endif  // MICROHOL_TESTS_SUPPORT_DEBRUIJN_H_
