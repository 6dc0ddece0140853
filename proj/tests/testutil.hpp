#pragma once

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <unordered_map>
#include <vector>

#include "mg/finite_table.hpp"
#include "mg/formula.hpp"
#include "mg/marked.hpp"
#include "mg/presentation.hpp"
#include "mg/word.hpp"

namespace mgtest {

inline mg::Word word_of(std::string_view text, const mg::Alphabet& alphabet) {
  return mg::parse_word(text, alphabet);
}

/// Arbitrary letter sequence (not necessarily reduced).
inline mg::Word random_word(std::mt19937_64& rng, std::size_t arity, std::size_t len) {
  std::uniform_int_distribution<std::uint32_t> letter(0, static_cast<std::uint32_t>(2 * arity - 1));
  std::vector<mg::Letter> ls;
  ls.reserve(len);
  for (std::size_t i = 0; i < len; ++i) ls.push_back(mg::Letter::from_index(letter(rng)));
  return mg::Word(std::move(ls));
}

/// All reduced words of length <= max_len over the given arity, shortlex
/// order, including the empty word.
inline std::vector<mg::Word> reduced_words_up_to(std::size_t arity, unsigned max_len) {
  std::vector<mg::Word> out = {mg::Word{}};
  std::size_t level_begin = 0;
  for (unsigned len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::uint32_t li = 0; li < 2 * arity; ++li) {
        const mg::Letter l = mg::Letter::from_index(li);
        if (!out[i].empty() && out[i][out[i].size() - 1] == l.inverse()) continue;
        out.push_back(out[i] * l);
      }
    }
    level_begin = level_end;
  }
  return out;
}

/// Independent check that two marked groups have the same radius-r ball
/// pattern: over all reduced words u of length <= r+1 and v of length <= r,
/// equality u = v holds in one group iff it holds in the other. This is the
/// brute-force equivalent of basepoint-fixing labeled ball isomorphism.
inline bool brute_pattern_equal(const mg::MarkedGroup& a, const mg::MarkedGroup& b, unsigned r) {
  if (a.arity() != b.arity()) return false;
  std::unordered_map<std::string, std::string> fwd;
  std::unordered_map<std::string, std::string> bwd;
  const auto words = reduced_words_up_to(a.arity(), r + 1);
  // Words of length <= r must induce a class bijection.
  for (const mg::Word& w : words) {
    if (w.size() > r) continue;
    const auto ka = a.eval(w);
    const auto kb = b.eval(w);
    const auto fit = fwd.find(ka);
    if (fit == fwd.end())
      fwd.emplace(ka, kb);
    else if (fit->second != kb)
      return false;
    const auto bit = bwd.find(kb);
    if (bit == bwd.end())
      bwd.emplace(kb, ka);
    else if (bit->second != ka)
      return false;
  }
  // Length r+1 words must relate to the <= r classes identically.
  for (const mg::Word& w : words) {
    if (w.size() != r + 1) continue;
    const auto ka = a.eval(w);
    const auto kb = b.eval(w);
    const auto fit = fwd.find(ka);
    const auto bit = bwd.find(kb);
    if ((fit != fwd.end()) != (bit != bwd.end())) return false;
    if (fit != fwd.end() && fit->second != kb) return false;
  }
  return true;
}

/// Naive quadratic piece scan over a symmetrized set, the oracle for
/// check_small_cancellation.
struct NaivePieceScan {
  std::size_t max_piece_len = 0;
  mg::Rational max_ratio;
};

inline NaivePieceScan naive_piece_scan(const mg::SymmetrizedSet& s) {
  NaivePieceScan out;
  out.max_ratio = mg::Rational(0);
  const auto& words = s.words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (i == j) continue;
      const std::size_t piece = mg::longest_common_prefix(words[i], words[j]);
      if (piece == 0) continue;
      out.max_piece_len = std::max(out.max_piece_len, piece);
      const mg::Rational ratio(static_cast<std::int64_t>(piece),
                               static_cast<std::int64_t>(std::min(words[i].size(), words[j].size())));
      if (out.max_ratio < ratio) out.max_ratio = ratio;
    }
  }
  return out;
}

/// Second, deliberately naive formula evaluator (no short-circuiting, no
/// budget) used to cross-check eval_formula.
inline bool naive_eval(const mg::FiniteGroupTable& g, const mg::Formula& f, mg::Environment env) {
  using K = mg::Formula::Kind;
  switch (f.kind()) {
    case K::equals:
      return mg::eval_term(g, f.lhs(), env) == mg::eval_term(g, f.rhs(), env);
    case K::negation:
      return !naive_eval(g, f.children()[0], env);
    case K::conjunction: {
      bool v = true;
      for (const auto& c : f.children()) v = naive_eval(g, c, env) && v;
      return v;
    }
    case K::disjunction: {
      bool v = false;
      for (const auto& c : f.children()) v = naive_eval(g, c, env) || v;
      return v;
    }
    case K::forall:
    case K::exists: {
      bool all = true;
      bool any = false;
      for (std::uint32_t e = 0; e < g.order(); ++e) {
        env[f.quantified_var()] = e;
        const bool v = naive_eval(g, f.children()[0], env);
        all = all && v;
        any = any || v;
      }
      return f.kind() == K::forall ? all : any;
    }
  }
  return false;
}

/// (Z/2)^2 semidirect Z/2, the swap action: the order-8 dihedral table.
/// Elements are (v0, v1, s) encoded as v0 + 2*v1 + 4*s; element 0 is the
/// identity.
inline mg::FiniteGroupTable make_d4_table() {
  const auto mulfn = [](std::uint32_t x, std::uint32_t y) {
    const std::uint32_t xv0 = x & 1, xv1 = (x >> 1) & 1, xs = (x >> 2) & 1;
    const std::uint32_t yv0 = y & 1, yv1 = (y >> 1) & 1, ys = (y >> 2) & 1;
    // (v, s)(w, t) = (v + sigma^s w, s + t), sigma = coordinate swap.
    const std::uint32_t wv0 = xs ? yv1 : yv0;
    const std::uint32_t wv1 = xs ? yv0 : yv1;
    return ((xv0 ^ wv0) | ((xv1 ^ wv1) << 1) | ((xs ^ ys) << 2));
  };
  std::vector<std::vector<std::uint32_t>> mul(8, std::vector<std::uint32_t>(8));
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < 8; ++i) {
    names.push_back("e" + std::to_string(i));
    for (std::uint32_t j = 0; j < 8; ++j) mul[i][j] = mulfn(i, j);
  }
  return mg::FiniteGroupTable(std::move(names), std::move(mul));
}

/// Direct product of cyclic groups; covers all abelian tables used in tests.
inline mg::FiniteGroupTable product_of_cyclics(const std::vector<std::uint32_t>& orders) {
  std::uint32_t n = 1;
  for (const auto m : orders) n *= m;
  const auto decode = [&](std::uint32_t e) {
    std::vector<std::uint32_t> v;
    for (const auto m : orders) {
      v.push_back(e % m);
      e /= m;
    }
    return v;
  };
  const auto encode = [&](const std::vector<std::uint32_t>& v) {
    std::uint32_t e = 0;
    for (std::size_t i = orders.size(); i > 0; --i) e = e * orders[i - 1] + v[i - 1];
    return e;
  };
  std::vector<std::vector<std::uint32_t>> mul(n, std::vector<std::uint32_t>(n));
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < n; ++i) {
    names.push_back("e" + std::to_string(i));
    for (std::uint32_t j = 0; j < n; ++j) {
      auto a = decode(i);
      const auto b = decode(j);
      for (std::size_t k = 0; k < orders.size(); ++k) a[k] = (a[k] + b[k]) % orders[k];
      mul[i][j] = encode(a);
    }
  }
  return mg::FiniteGroupTable(std::move(names), std::move(mul));
}

/// Symmetric group on 3 symbols, order 6, for non-abelian cross-checks.
inline mg::FiniteGroupTable make_s3_table() {
  // Permutations of {0,1,2} enumerated in lex order; composition (p*q)(x) = p(q(x)).
  const std::vector<std::array<std::uint32_t, 3>> perms = {
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  const auto find = [&](const std::array<std::uint32_t, 3>& p) -> std::uint32_t {
    for (std::uint32_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return i;
    return 0;
  };
  std::vector<std::vector<std::uint32_t>> mul(6, std::vector<std::uint32_t>(6));
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < 6; ++i) {
    names.push_back("p" + std::to_string(i));
    for (std::uint32_t j = 0; j < 6; ++j) {
      std::array<std::uint32_t, 3> comp{};
      for (std::uint32_t x = 0; x < 3; ++x) comp[x] = perms[i][perms[j][x]];
      mul[i][j] = find(comp);
    }
  }
  return mg::FiniteGroupTable(std::move(names), std::move(mul));
}

}  // namespace mgtest
