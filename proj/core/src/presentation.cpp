#include "mg/presentation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mg/errors.hpp"

namespace mg {

namespace {

std::string_view strip_comment(std::string_view line) {
  const std::size_t hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  return line;
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

ParsedPresentation parse_presentation(std::string_view text) {
  ParsedPresentation out;
  std::optional<Alphabet> alphabet;
  std::vector<Word> relators;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    line = strip_comment(line);
    if (blank(line)) continue;

    const std::size_t indent = line.find_first_not_of(" \t\r");
    const std::string_view body = line.substr(indent);

    if (body.rfind("gens:", 0) == 0) {
      if (alphabet) throw ParseError("duplicate 'gens:' line", line_no, indent + 1);
      std::vector<std::string> names;
      std::istringstream iss{std::string(body.substr(5))};
      std::string tok;
      while (iss >> tok) names.push_back(tok);
      if (names.empty()) throw ParseError("'gens:' line declares no generators", line_no, indent + 1);
      try {
        alphabet = Alphabet(std::move(names));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no, indent + 1);
      }
    } else if (body.rfind("rel:", 0) == 0) {
      if (!alphabet)
        throw ParseError("'rel:' before 'gens:' line", line_no, indent + 1);
      Word w;
      try {
        w = parse_word(body.substr(4), *alphabet);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no, indent + 1);
      }
      const Word reduced = cyclic_reduce(w);
      if (reduced.empty())
        throw ParseError("relator '" + std::string(body.substr(4)) +
                             "' reduces to the empty word",
                         line_no, indent + 1);
      if (reduced != w)
        out.warnings.push_back("relator " + std::to_string(relators.size() + 1) +
                               " cyclically reduced to '" + print_word(reduced, *alphabet) + "'");
      relators.push_back(reduced);
    } else {
      throw ParseError("unrecognized line '" + std::string(body) + "'", line_no, indent + 1);
    }
  }

  if (!alphabet) throw ParseError("missing 'gens:' line");
  out.presentation = Presentation{std::move(*alphabet), std::move(relators)};
  return out;
}

ParsedPresentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open presentation file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str());
}

std::string format_presentation(const Presentation& p) {
  std::string out = "gens:";
  for (const auto& name : p.alphabet.names()) out += " " + name;
  out += "\n";
  for (const Word& r : p.relators) out += "rel: " + print_word(r, p.alphabet) + "\n";
  return out;
}

SymmetrizedSet::SymmetrizedSet(std::vector<Word> words) : words_(std::move(words)) {
  std::sort(words_.begin(), words_.end(), shortlex_less);
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

bool SymmetrizedSet::contains(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w, shortlex_less);
}

std::size_t SymmetrizedSet::min_word_length() const {
  return words_.empty() ? 0 : words_.front().size();
}

SymmetrizedSet symmetrize(const Presentation& p) {
  std::vector<Word> words;
  for (const Word& r : p.relators) {
    const Word inv = r.inverse();
    for (std::size_t k = 0; k < r.size(); ++k) {
      words.push_back(r.cyclic_shift(k));
      words.push_back(inv.cyclic_shift(k));
    }
  }
  return SymmetrizedSet(std::move(words));
}

namespace {

// Sparse-table range minimum over the adjacent-lcp array, giving
// lcp(s_i, s_j) = min L[i..j-1] for the lex-sorted word list in O(1).
class LcpTable {
 public:
  explicit LcpTable(const std::vector<const Word*>& sorted) {
    const std::size_t n = sorted.size();
    if (n < 2) return;
    std::vector<std::size_t> base(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      base[i] = longest_common_prefix(*sorted[i], *sorted[i + 1]);
    levels_.push_back(std::move(base));
    for (std::size_t len = 2; len <= levels_[0].size(); len *= 2) {
      const auto& prev = levels_.back();
      std::vector<std::size_t> next(prev.size() - len / 2);
      for (std::size_t i = 0; i < next.size(); ++i)
        next[i] = std::min(prev[i], prev[i + len / 2]);
      levels_.push_back(std::move(next));
    }
  }

  // lcp between sorted words i < j.
  std::size_t lcp(std::size_t i, std::size_t j) const {
    const std::size_t width = j - i;  // range L[i..j-1], length width
    if (width == 1) return levels_[0][i];
    std::size_t k = 0;
    while ((2u << k) <= width) ++k;  // largest power of two <= width
    return std::min(levels_[k][i], levels_[k][j - (1u << k)]);
  }

 private:
  std::vector<std::vector<std::size_t>> levels_;
};

}  // namespace

SmallCancellationReport check_small_cancellation(const SymmetrizedSet& s, const Rational& lambda) {
  if (!lambda.is_positive() || Rational(1) < lambda)
    throw PreconditionError("lambda must satisfy 0 < lambda <= 1");

  SmallCancellationReport report;
  report.lambda = lambda;
  report.max_ratio = Rational(0);

  std::vector<const Word*> sorted;
  sorted.reserve(s.size());
  for (const Word& w : s.words()) sorted.push_back(&w);
  std::sort(sorted.begin(), sorted.end(),
            [](const Word* a, const Word* b) { return lex_less(*a, *b); });

  const LcpTable lcps(sorted);
  const std::size_t n = sorted.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t piece = lcps.lcp(i, j);
      if (piece == 0) continue;
      const std::size_t min_len = std::min(sorted[i]->size(), sorted[j]->size());
      const Rational ratio(static_cast<std::int64_t>(piece), static_cast<std::int64_t>(min_len));
      const bool better = report.max_ratio < ratio;
      bool tie_smaller = false;
      if (!better && ratio == report.max_ratio && report.witness_pair) {
        const auto& [br, bs] = *report.witness_pair;
        tie_smaller = lex_less(*sorted[i], br) ||
                      (*sorted[i] == br && lex_less(*sorted[j], bs));
      }
      if (better || tie_smaller) {
        report.max_ratio = ratio;
        report.witness_pair = std::make_pair(*sorted[i], *sorted[j]);
      }
      report.max_piece_len = std::max(report.max_piece_len, piece);
    }
  }

  report.passed = report.max_ratio < lambda;
  return report;
}

SmallCancellationReport check_small_cancellation(const Presentation& p, const Rational& lambda) {
  return check_small_cancellation(symmetrize(p), lambda);
}

ProperPowerReport is_proper_power_free(const Presentation& p) {
  ProperPowerReport out;
  for (const Word& r : p.relators) {
    const std::size_t n = r.size();
    for (std::size_t d = 1; d * 2 <= n; ++d) {
      if (n % d != 0) continue;
      bool periodic = true;
      for (std::size_t i = d; i < n && periodic; ++i) periodic = r[i] == r[i % d];
      if (periodic) {
        out.power_free = false;
        out.relator = r;
        out.root = r.subword(0, d);
        out.exponent = n / d;
        return out;
      }
    }
  }
  return out;
}

}  // namespace mg
