#ifndef MICROHOL_TESTS_SUPPORT_REPLAY_H_
#define MICROHOL_TESTS_SUPPORT_REPLAY_H_

// Records kernel steps and replays them into a second kernel, so a test can
// confirm that a derived result is reproducible from primitive calls alone.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "microhol/kernel.h"

namespace oracle {

class RecordingSink : public microhol::TraceSink {
 public:
  void record(microhol::TraceStep step) override {
    std::lock_guard lock(mu_);
    steps_.push_back(std::move(step));
  }
  std::vector<microhol::TraceStep> steps() const {
    std::lock_guard lock(mu_);
    return steps_;
  }

 private:
  mutable std::mutex mu_;
  std::vector<microhol::TraceStep> steps_;
};

// Replays `steps` into `kernel`; returns original serial -> replayed theorem.
inline std::map<uint64_t, microhol::Theorem> replay(
    const std::vector<microhol::TraceStep>& steps, microhol::Kernel& kernel) {
  using microhol::Rule;
  std::map<uint64_t, microhol::Theorem> out;
  auto th = [&](size_t i, const microhol::TraceStep& s) -> const microhol::Theorem& {
    return out.at(s.premises.at(i));
  };
  for (const auto& s : steps) {
    switch (s.rule) {
      case Rule::kRefl:
        out.emplace(s.results[0], kernel.refl(s.terms[0]));
        break;
      case Rule::kTrans:
        out.emplace(s.results[0], kernel.trans(th(0, s), th(1, s)));
        break;
      case Rule::kMkComb:
        out.emplace(s.results[0], kernel.mk_comb(th(0, s), th(1, s)));
        break;
      case Rule::kAbs:
        out.emplace(s.results[0], kernel.abs(s.terms[0], th(0, s)));
        break;
      case Rule::kBeta:
        out.emplace(s.results[0], kernel.beta(s.terms[0]));
        break;
      case Rule::kAssume:
        out.emplace(s.results[0], kernel.assume(s.terms[0]));
        break;
      case Rule::kEqMp:
        out.emplace(s.results[0], kernel.eq_mp(th(0, s), th(1, s)));
        break;
      case Rule::kDeductAntisym:
        out.emplace(s.results[0], kernel.deduct_antisym(th(0, s), th(1, s)));
        break;
      case Rule::kInstType:
        out.emplace(s.results[0], kernel.inst_type(s.type_subst, th(0, s)));
        break;
      case Rule::kInst: {
        microhol::TermSubst subst;
        for (const auto& [v, image] : s.term_subst) subst.add(v, image);
        out.emplace(s.results[0], kernel.inst(subst, th(0, s)));
        break;
      }
      case Rule::kAxiomExtensionality:
        out.emplace(s.results[0], kernel.axiom_extensionality());
        break;
      case Rule::kAxiomChoice:
        out.emplace(s.results[0], kernel.axiom_choice());
        break;
      case Rule::kAxiomInfinity:
        out.emplace(s.results[0], kernel.axiom_infinity());
        break;
      case Rule::kDefinition:
        out.emplace(s.results[0],
                    kernel.new_basic_definition(s.names[0], s.terms[0]));
        break;
      case Rule::kTypeDefinition: {
        auto [a, b] = kernel.new_basic_type_definition(s.names[0], s.names[1],
                                                       s.names[2], th(0, s));
        out.emplace(s.results[0], a);
        out.emplace(s.results[1], b);
        break;
      }
    }
  }
  return out;
}

}  // namespace oracle

#endif  // MICROHOL_TESTS_SUPPORT_REPLAY_H_
