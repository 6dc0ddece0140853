#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mg {

/// One signed generator occurrence. Letters order as (gen, sign) with the
/// positive sign first; this order underlies shortlex everywhere.
struct Letter {
  std::uint32_t gen = 0;
  std::int8_t sign = 1;  // +1 or -1

  Letter inverse() const { return Letter{gen, static_cast<std::int8_t>(-sign)}; }

  /// Index in the fixed enumeration a_0, a_0^{-1}, a_1, a_1^{-1}, ...
  std::uint32_t index() const { return 2 * gen + (sign < 0 ? 1u : 0u); }
  static Letter from_index(std::uint32_t idx) {
    return Letter{idx / 2, static_cast<std::int8_t>(idx % 2 == 0 ? 1 : -1)};
  }

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.gen == b.gen && a.sign == b.sign;
  }
  friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
  friend bool operator<(const Letter& a, const Letter& b) { return a.index() < b.index(); }
};

/// A word in the free group on an unbounded alphabet: a finite sequence of
/// letters. Words are plain values; "reduced" and "cyclically reduced" are
/// predicates, not invariants.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static Word single(std::uint32_t gen, int sign = 1) {
    return Word({Letter{gen, static_cast<std::int8_t>(sign)}});
  }
  /// gen^exp, with exp of either sign; exp == 0 gives the empty word.
  static Word power(std::uint32_t gen, std::int64_t exp);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  void push_back(Letter l) { letters_.push_back(l); }
  void append(const Word& w) { letters_.insert(letters_.end(), w.begin(), w.end()); }

  Word inverse() const;
  Word operator*(const Word& o) const;
  Word operator*(Letter l) const;

  /// Letters [from, from+count).
  Word subword(std::size_t from, std::size_t count) const;
  /// Rotation moving the first k letters to the end.
  Word cyclic_shift(std::size_t k) const;

  bool is_reduced() const;
  bool is_cyclically_reduced() const;
  /// Largest generator index + 1, or 0 for the empty word.
  std::uint32_t min_alphabet_size() const;

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

 private:
  std::vector<Letter> letters_;
};

/// The unique reduced word freely equal to w.
Word free_reduce(const Word& w);

/// A cyclically reduced word conjugate to w in the free group: free-reduce,
/// then trim matching end letters.
Word cyclic_reduce(const Word& w);

/// Length of the longest shared prefix of two words.
std::size_t longest_common_prefix(const Word& u, const Word& v);

/// Pure lexicographic order on letters; a proper prefix precedes its extensions.
bool lex_less(const Word& a, const Word& b);

/// Length first, then lexicographic.
bool shortlex_less(const Word& a, const Word& b);

/// An ordered list of named generators. Names are unique and match
/// [A-Za-z][A-Za-z0-9_]*.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  /// a, b, c, ... for n <= 26, otherwise x1, x2, ...
  static Alphabet standard(std::size_t n);

  static bool valid_name(std::string_view name);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::uint32_t> index_of(std::string_view name) const;

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.names_ == b.names_; }
  friend bool operator!=(const Alphabet& a, const Alphabet& b) { return !(a == b); }

 private:
  std::vector<std::string> names_;
};

/// Word text syntax: whitespace-separated tokens, each `name` optionally
/// followed by `^` and a nonzero decimal integer; `a^-2` denotes a^{-1} a^{-1}.
/// The empty string is the empty word.
Word parse_word(std::string_view text, const Alphabet& alphabet);

/// Prints in the same token syntax, merging maximal constant runs into
/// exponents. parse_word(print_word(w)) == w for every w.
std::string print_word(const Word& w, const Alphabet& alphabet);

}  // namespace mg
