#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mg/errors.hpp"
#include "mg/presentation.hpp"
#include "mg/word.hpp"

namespace mg {

/// Opaque serializable value identifying a group element. Keys compare equal
/// iff the elements are equal; std::string gives equality and a total order.
/// Keys are only meaningful within the oracle instance that produced them.
using CanonicalKey = std::string;

/// A word-problem backend realizing the evaluation homomorphism from the
/// free group on the marked generators. normal_form is a congruence: words
/// equal under the group's relations map to equal keys.
class GroupOracle {
 public:
  virtual ~GroupOracle() = default;

  std::size_t arity() const { return alphabet_.size(); }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::string& descriptor() const { return descriptor_; }
  CanonicalKey identity_key() const { return eval(Word{}); }

  /// Key of the element the word evaluates to. Throws PreconditionError on
  /// letters outside the arity.
  CanonicalKey normal_form(const Word& w) const;

 protected:
  GroupOracle(Alphabet alphabet, std::string descriptor)
      : alphabet_(std::move(alphabet)), descriptor_(std::move(descriptor)) {}

  virtual CanonicalKey eval(const Word& w) const = 0;

 private:
  Alphabet alphabet_;
  std::string descriptor_;
};

using OraclePtr = std::shared_ptr<const GroupOracle>;

inline CanonicalKey evaluate(const GroupOracle& oracle, const Word& w) {
  return oracle.normal_form(w);
}

/// Thrown when a Dehn-backed oracle is requested for a presentation that
/// fails C'(1/6); carries the failing report.
class SmallCancellationError : public PreconditionError {
 public:
  explicit SmallCancellationError(SmallCancellationReport report)
      : PreconditionError("presentation fails C'(" + report.lambda.str() +
                          "): max piece ratio " + report.max_ratio.str()),
        report_(std::move(report)) {}

  const SmallCancellationReport& report() const { return report_; }

 private:
  SmallCancellationReport report_;
};

/// One Dehn replacement: at `pos` in the current word, a prefix of `relator`
/// of length `matched_len` (more than half the relator) was replaced by
/// `replacement`, the inverse of the relator's remainder.
struct DehnStep {
  std::size_t pos = 0;
  Word relator;
  std::size_t matched_len = 0;
  Word replacement;
};

/// Replayable log of a Dehn run, starting from the freely and cyclically
/// reduced input. Word length strictly decreases across steps.
struct DehnTrace {
  std::vector<DehnStep> steps;
  Word final_word;
};

struct DehnResult {
  bool trivial = false;
  DehnTrace trace;
};

/// Dehn's algorithm over a fixed C'(1/6) presentation. Searches the current
/// word for a subword U that is a prefix of a symmetrized relator R = U V
/// with |U| > |R|/2, leftmost position first, then longest match, ties
/// broken by the shortlex-least relator; replaces U by V^{-1} and freely
/// reduces. Sound and complete for the word problem by the Greendlinger
/// lemma.
class DehnSolver {
 public:
  /// Throws SmallCancellationError unless the presentation passes C'(1/6).
  explicit DehnSolver(Presentation p);

  const Presentation& presentation() const { return pres_; }
  const SymmetrizedSet& symmetrized() const { return sym_; }
  std::size_t min_relator_length() const { return sym_.min_word_length(); }

  /// Verdict plus a trace that replays to it. The trace starts from the
  /// freely and cyclically reduced input.
  DehnResult is_trivial(const Word& w) const;

  /// Applies Dehn replacements (no cyclic reduction) until none applies.
  /// The result represents the same group element as w.
  Word dehn_reduce(const Word& w) const;

 private:
  struct Match {
    std::size_t pos = 0;
    std::size_t relator_index = 0;
    std::size_t matched_len = 0;
  };
  bool find_step(const Word& w, Match& out) const;

  Presentation pres_;
  SymmetrizedSet sym_;
  std::vector<std::vector<std::size_t>> by_first_letter_;  // relator indices per letter index
};

/// One-shot word problem over a presentation: verifies C'(1/6), then runs
/// Dehn's algorithm.
DehnResult dehn_is_trivial(const Presentation& p, const Word& w);

/// Builds an oracle from a spec string:
///   free:N    free group of rank N
///   cyclic:M  Z/MZ marked by 1
///   zn:N      Z^N marked by the standard basis
///   table:P   finite group from a table file, marked by all non-identity
///             elements in table order
///   Ap:P      (Z/PZ)^P marked by the standard basis
///   Bp:P      Z/PZ * Z/PZ marked by the two factor generators c, d
///   Hp:P      Ap semidirect Bp, c and d cyclically permuting the Ap basis;
///             marked a_1..a_P, c, d
///   pres:P    Dehn-backed oracle from a presentation file; requires C'(1/6)
/// Non-prime P for Ap/Bp/Hp is allowed but reported through `warnings`.
OraclePtr build_oracle(const std::string& spec, std::vector<std::string>* warnings = nullptr);

/// Dehn-backed oracle over an in-memory presentation; same behavior as
/// `pres:` oracles, including the C'(1/6) gate.
OraclePtr make_dehn_oracle(Presentation p, const std::string& descriptor);

}  // namespace mg
