#ifndef MICROHOL_ARTICLE_H_
#define MICROHOL_ARTICLE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "microhol/error.h"
#include "microhol/kernel.h"

namespace microhol {

// Format, one command per line, LF endings:
//
//   microhol-article 1
//   theory <fingerprint, 16 hex digits>
//   1. TERM `x:bool`
//   2. REFL 1
//   3. THM 2 `|- x = x`
//
// Blank lines and lines starting with '#' are ignored. Commands are numbered
// 1, 2, ... without gaps; an argument is either a reference to an earlier
// command, `k/1` or `k/2` for the two results of a TYPEDEF, or inline
// syntax in backquotes. Commands:
//
//   TYPE `ty`                  TERM `t`
//   REFL t      TRANS th th    MKCOMB th th     ABS x th     BETA t
//   ASSUME t    EQMP th th     DEDUCT th th   (EQMP takes p, then p = q)
//   INSTTYPE th A := ty; B := ty
//   INST th x := t; y := t
//   AXIOM EXT | SELECT | INFINITY
//   DEFINE name t
//   TYPEDEF name abs rep th
//   THM th `h1, h2 |- c`       conclusion and hypotheses compared modulo alpha
inline constexpr std::string_view kArticleHeader = "microhol-article 1";
inline constexpr int kArticleReportVersion = 1;

// kReplayError, kFingerprintMismatch or kDanglingReference, with the
// 1-based physical line. `cause` is the underlying error kind.
class ArticleError : public HolError {
 public:
  ArticleError(ErrorKind kind, size_t line, ErrorKind cause, const std::string& message)
      : HolError(kind, "line " + std::to_string(line) + ": " + message),
        line_(line),
        cause_(cause) {}
  size_t line() const { return line_; }
  ErrorKind cause() const { return cause_; }

 private:
  size_t line_;
  ErrorKind cause_;
};

struct ArticleFailure {
  size_t line = 0;
  ErrorKind kind = ErrorKind::kReplayError;
  ErrorKind cause = ErrorKind::kReplayError;
  std::string message;
};

struct ArticleReport {
  std::string fingerprint;
  uint64_t lines = 0;       // physical lines read
  uint64_t commands = 0;    // commands replayed
  uint64_t inferences = 0;  // primitive kernel calls made
  std::vector<Theorem> theorems;  // one per THM, in order
  std::vector<std::string> statements;
  uint64_t uses_infinity = 0;
  std::vector<ArticleFailure> failures;  // at most one: replay stops there
  bool ok() const { return failures.empty(); }
};

// Replays `text` through `kernel`. DEFINE and TYPEDEF extend its theory.
// Failures are reported, not thrown.
ArticleReport check_article(std::string_view text, Kernel& kernel);

// Same, but throws the ArticleError.
ArticleReport check_article_or_throw(std::string_view text, Kernel& kernel);

std::string article_report_json(const ArticleReport& report);
std::string article_report_text(const ArticleReport& report);

// An article of `lines` commands: a beta step followed by a chain of TRANS
// steps against a reflexivity theorem, closed by a THM.
std::string generate_trans_chain(const Theory& theory, uint64_t lines);

}  // namespace microhol

#endif  // MICROHOL_ARTICLE_H_
