#ifndef MICROHOL_SYNTAX_H_
#define MICROHOL_SYNTAX_H_

#include <map>
#include <string>
#include <string_view>

#include "microhol/error.h"
#include "microhol/term.h"
#include "microhol/theory.h"
#include "microhol/type.h"

namespace microhol {

// kSyntaxError with a 1-based position.
class SyntaxError : public HolError {
 public:
  SyntaxError(size_t line, size_t column, const std::string& message)
      : HolError(ErrorKind::kSyntaxError,
                 std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  size_t line() const { return line_; }
  size_t column() const { return column_; }

 private:
  size_t line_;
  size_t column_;
};

struct ParseContext {
  // Types for free variables written without an annotation.
  std::map<std::string, HolType> free_types;
};

// Grammar: see printer.h. In addition a variable may be annotated without
// parentheses (`x:bool`), and free variables may be left unannotated; their
// types are inferred, taken from the context, or become fresh type
// variables. Identifiers starting with an upper-case letter are type
// variables in types. Binders must be annotated.
//
// Without a theory, type constructors are not checked.
HolType parse_type(std::string_view src, const Theory* theory = nullptr);
Term parse_term(std::string_view src, const Theory& theory,
                const ParseContext& context = {});
// `h1, h2 |- c` or `|- c`.
Sequent parse_sequent(std::string_view src, const Theory& theory,
                      const ParseContext& context = {});

}  // namespace microhol

#endif  // MICROHOL_SYNTAX_H_
