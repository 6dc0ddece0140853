#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mg/rational.hpp"
#include "mg/word.hpp"

namespace mg {

/// A finite group presentation. Relators are nonempty, cyclically reduced,
/// and use only letters within the alphabet.
struct Presentation {
  Alphabet alphabet;
  std::vector<Word> relators;
};

struct ParsedPresentation {
  Presentation presentation;
  /// One entry per relator that was silently cyclically reduced on ingest.
  std::vector<std::string> warnings;
};

/// Presentation file format:
///   # comment to end of line; blank lines ignored
///   gens: <name> <name> ...        (exactly one, first non-comment line)
///   rel: <word>                    (zero or more, word-core token syntax)
/// Relators are cyclically reduced on ingest (recorded as a warning); a
/// relator that reduces to the empty word is an error.
ParsedPresentation parse_presentation(std::string_view text);
ParsedPresentation load_presentation(const std::string& path);

/// Emits the file format; parses back to an equal Presentation.
std::string format_presentation(const Presentation& p);

/// The closure of the relators under inversion and cyclic shifts,
/// deduplicated. Words are kept shortlex-sorted.
class SymmetrizedSet {
 public:
  SymmetrizedSet() = default;
  explicit SymmetrizedSet(std::vector<Word> words);

  std::size_t size() const { return words_.size(); }
  const std::vector<Word>& words() const { return words_; }
  bool contains(const Word& w) const;
  std::size_t min_word_length() const;

  friend bool operator==(const SymmetrizedSet& a, const SymmetrizedSet& b) {
    return a.words_ == b.words_;
  }

 private:
  std::vector<Word> words_;  // shortlex-sorted, unique
};

SymmetrizedSet symmetrize(const Presentation& p);

/// Outcome of a C'(lambda) check. A piece is a maximal common prefix of two
/// distinct elements of the symmetrized set; the condition requires
/// |U| < lambda * min(|R|, |S|) for every piece U of R and S.
struct SmallCancellationReport {
  Rational lambda;
  std::size_t max_piece_len = 0;
  Rational max_ratio;  // max over pieces of |U| / min(|R|,|S|); 0 if no piece
  std::optional<std::pair<Word, Word>> witness_pair;  // lex-least pair attaining max_ratio
  bool passed = false;
};

/// Exact verdict: passed iff max_ratio < lambda. Requires 0 < lambda <= 1.
SmallCancellationReport check_small_cancellation(const Presentation& p, const Rational& lambda);
SmallCancellationReport check_small_cancellation(const SymmetrizedSet& s, const Rational& lambda);

struct ProperPowerReport {
  bool power_free = true;
  // Set when power_free is false: relator == root^exponent with exponent >= 2.
  std::optional<Word> relator;
  std::optional<Word> root;
  std::size_t exponent = 0;
};

/// True iff no relator equals u^m as a literal word for some m >= 2.
ProperPowerReport is_proper_power_free(const Presentation& p);

}  // namespace mg
