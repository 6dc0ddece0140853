#include "mg/word.hpp"

#include <algorithm>
#include <cctype>

#include "mg/errors.hpp"

namespace mg {

Word Word::power(std::uint32_t gen, std::int64_t exp) {
  const std::int8_t sign = exp < 0 ? -1 : 1;
  const std::uint64_t count = exp < 0 ? static_cast<std::uint64_t>(-exp) : static_cast<std::uint64_t>(exp);
  std::vector<Letter> ls(count, Letter{gen, sign});
  return Word(std::move(ls));
}

Word Word::inverse() const {
  std::vector<Letter> ls;
  ls.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) ls.push_back(it->inverse());
  return Word(std::move(ls));
}

Word Word::operator*(const Word& o) const {
  Word r = *this;
  r.append(o);
  return r;
}

Word Word::operator*(Letter l) const {
  Word r = *this;
  r.push_back(l);
  return r;
}

Word Word::subword(std::size_t from, std::size_t count) const {
  return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(from),
                                  letters_.begin() + static_cast<std::ptrdiff_t>(from + count)));
}

Word Word::cyclic_shift(std::size_t k) const {
  if (letters_.empty()) return {};
  k %= letters_.size();
  std::vector<Letter> ls;
  ls.reserve(letters_.size());
  ls.insert(ls.end(), letters_.begin() + static_cast<std::ptrdiff_t>(k), letters_.end());
  ls.insert(ls.end(), letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(k));
  return Word(std::move(ls));
}

bool Word::is_reduced() const {
  for (std::size_t i = 0; i + 1 < letters_.size(); ++i)
    if (letters_[i] == letters_[i + 1].inverse()) return false;
  return true;
}

bool Word::is_cyclically_reduced() const {
  if (!is_reduced()) return false;
  if (letters_.size() >= 2 && letters_.front() == letters_.back().inverse()) return false;
  return true;
}

std::uint32_t Word::min_alphabet_size() const {
  std::uint32_t m = 0;
  for (const Letter& l : letters_) m = std::max(m, l.gen + 1);
  return m;
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const Letter& l : w) {
    if (!stack.empty() && stack.back() == l.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

Word cyclic_reduce(const Word& w) {
  const Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == r[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return r.subword(lo, hi - lo);
}

std::size_t longest_common_prefix(const Word& u, const Word& v) {
  const std::size_t n = std::min(u.size(), v.size());
  std::size_t i = 0;
  while (i < n && u[i] == v[i]) ++i;
  return i;
}

bool lex_less(const Word& a, const Word& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return lex_less(a, b);
}

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_name(names_[i])) throw ParseError("invalid generator name '" + names_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw ParseError("duplicate generator name '" + names_[i] + "'");
  }
}

Alphabet Alphabet::standard(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  if (n <= 26) {
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  } else {
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  }
  return Alphabet(std::move(names));
}

bool Alphabet::valid_name(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name.substr(1)) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

std::optional<std::uint32_t> Alphabet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  Word w;
  std::size_t pos = 0;
  const std::size_t n = text.size();
  while (pos < n) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    while (pos < n && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != '^') ++pos;
    const std::string_view name = text.substr(start, pos - start);
    const auto gen = alphabet.index_of(name);
    if (!gen) throw ParseError("unknown generator '" + std::string(name) + "'", 0, start + 1);
    std::int64_t exp = 1;
    if (pos < n && text[pos] == '^') {
      ++pos;
      const std::size_t estart = pos;
      if (pos < n && (text[pos] == '-' || text[pos] == '+')) ++pos;
      while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      const std::string etext(text.substr(estart, pos - estart));
      try {
        exp = std::stoll(etext);
      } catch (const std::exception&) {
        throw ParseError("invalid exponent '" + etext + "'", 0, estart + 1);
      }
      if (exp == 0) throw ParseError("zero exponent not allowed", 0, estart + 1);
      if (pos < n && !std::isspace(static_cast<unsigned char>(text[pos])))
        throw ParseError("malformed token after exponent", 0, pos + 1);
    }
    w.append(Word::power(*gen, exp));
  }
  return w;
}

std::string print_word(const Word& w, const Alphabet& alphabet) {
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const std::int64_t exp = static_cast<std::int64_t>(j - i) * w[i].sign;
    if (!out.empty()) out += ' ';
    out += alphabet.name(w[i].gen);
    if (exp != 1) out += "^" + std::to_string(exp);
    i = j;
  }
  return out;
}

}  // namespace mg
