#include "mg/oracle.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "mg/finite_table.hpp"

namespace mg {

namespace {

void key_append_u32(std::string& s, std::uint32_t v) {
  for (int i = 3; i >= 0; --i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void key_append_i64(std::string& s, std::int64_t v) {
  const auto u = static_cast<std::uint64_t>(v);
  for (int i = 7; i >= 0; --i) s.push_back(static_cast<char>((u >> (8 * i)) & 0xff));
}

void key_append_word(std::string& s, const Word& w) {
  key_append_u32(s, static_cast<std::uint32_t>(w.size()));
  for (const Letter& l : w) key_append_u32(s, l.index());
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class FreeOracle final : public GroupOracle {
 public:
  FreeOracle(std::size_t n, std::string descriptor)
      : GroupOracle(Alphabet::standard(n), std::move(descriptor)) {}

 protected:
  CanonicalKey eval(const Word& w) const override {
    CanonicalKey k;
    key_append_word(k, free_reduce(w));
    return k;
  }
};

class CyclicOracle final : public GroupOracle {
 public:
  CyclicOracle(std::uint64_t m, std::string descriptor)
      : GroupOracle(Alphabet::standard(1), std::move(descriptor)), m_(m) {}

 protected:
  CanonicalKey eval(const Word& w) const override {
    std::int64_t sum = 0;
    for (const Letter& l : w) sum += l.sign;
    std::int64_t r = sum % static_cast<std::int64_t>(m_);
    if (r < 0) r += static_cast<std::int64_t>(m_);
    CanonicalKey k;
    key_append_i64(k, r);
    return k;
  }

 private:
  std::uint64_t m_;
};

class ZnOracle final : public GroupOracle {
 public:
  ZnOracle(std::size_t n, std::string descriptor)
      : GroupOracle(Alphabet::standard(n), std::move(descriptor)) {}

 protected:
  CanonicalKey eval(const Word& w) const override {
    std::vector<std::int64_t> v(arity(), 0);
    for (const Letter& l : w) v[l.gen] += l.sign;
    CanonicalKey k;
    for (std::int64_t c : v) key_append_i64(k, c);
    return k;
  }
};

class TableOracle final : public GroupOracle {
 public:
  TableOracle(FiniteGroupTable table, std::string descriptor)
      : GroupOracle(Alphabet::standard(table.order() - 1), std::move(descriptor)),
        table_(std::move(table)) {}

 protected:
  CanonicalKey eval(const Word& w) const override {
    std::uint32_t e = 0;
    for (const Letter& l : w) {
      const std::uint32_t g = l.gen + 1;  // generator i marks element i+1
      e = table_.mul(e, l.sign > 0 ? g : table_.inv(g));
    }
    CanonicalKey k;
    key_append_u32(k, e);
    return k;
  }

 private:
  FiniteGroupTable table_;
};

class ApOracle final : public GroupOracle {
 public:
  ApOracle(std::uint32_t p, Alphabet alphabet, std::string descriptor)
      : GroupOracle(std::move(alphabet), std::move(descriptor)), p_(p) {}

 protected:
  CanonicalKey eval(const Word& w) const override {
    std::vector<std::uint32_t> v(p_, 0);
    for (const Letter& l : w) v[l.gen] = (v[l.gen] + p_ + l.sign) % p_;
    CanonicalKey k;
    for (std::uint32_t c : v) key_append_u32(k, c);
    return k;
  }

 private:
  std::uint32_t p_;
};

// Normal form in Z/p * Z/p: an alternating sequence of syllables c^i d^j ...
// with exponents in 1..p-1.
struct BpState {
  struct Syllable {
    std::uint32_t gen;  // relative index of c/d within the oracle
    std::uint32_t exp;  // 1..p-1
  };
  std::vector<Syllable> syllables;

  void push(std::uint32_t gen, int sign, std::uint32_t p) {
    const std::uint32_t delta = sign > 0 ? 1 : p - 1;
    if (!syllables.empty() && syllables.back().gen == gen) {
      syllables.back().exp = (syllables.back().exp + delta) % p;
      if (syllables.back().exp == 0) syllables.pop_back();
    } else {
      syllables.push_back({gen, delta % p});
      if (syllables.back().exp == 0) syllables.pop_back();
    }
  }

  void append_key(std::string& k) const {
    key_append_u32(k, static_cast<std::uint32_t>(syllables.size()));
    for (const auto& s : syllables) {
      key_append_u32(k, s.gen);
      key_append_u32(k, s.exp);
    }
  }
};

class BpOracle final : public GroupOracle {
 public:
  BpOracle(std::uint32_t p, std::string descriptor)
      : GroupOracle(Alphabet({"c", "d"}), std::move(descriptor)), p_(p) {}

 protected:
  CanonicalKey eval(const Word& w) const override {
    BpState state;
    for (const Letter& l : w) state.push(l.gen, l.sign, p_);
    CanonicalKey k;
    state.append_key(k);
    return k;
  }

 private:
  std::uint32_t p_;
};

// H_p = A_p semidirect B_p. Elements are pairs (v, w) with v in (Z/p)^p and
// w in B_p, multiplied as (v1, w1)(v2, w2) = (v1 + sigma^{s(w1)} v2, w1 w2),
// where (sigma v)[i] = v[(i+1) mod p] and s(w) is the exponent sum of w
// mod p. Conjugation by c and by d both send a_i to a_{i+1} (cyclically).
class HpOracle final : public GroupOracle {
 public:
  HpOracle(std::uint32_t p, Alphabet alphabet, std::string descriptor)
      : GroupOracle(std::move(alphabet), std::move(descriptor)), p_(p) {}

 protected:
  CanonicalKey eval(const Word& w) const override {
    std::vector<std::uint32_t> v(p_, 0);
    BpState b;
    std::uint32_t shift = 0;  // exponent sum of the B-part so far, mod p
    for (const Letter& l : w) {
      if (l.gen < p_) {
        // sigma^shift e_i = e_{(i - shift) mod p}
        const std::uint32_t idx = (l.gen + p_ - shift % p_) % p_;
        v[idx] = (v[idx] + p_ + l.sign) % p_;
      } else {
        b.push(l.gen - p_, l.sign, p_);
        shift = (shift + p_ + l.sign) % p_;
      }
    }
    CanonicalKey k;
    for (std::uint32_t c : v) key_append_u32(k, c);
    b.append_key(k);
    return k;
  }

 private:
  std::uint32_t p_;
};

Alphabet indexed_alphabet(const std::string& stem, std::uint32_t count,
                          std::vector<std::string> extra = {}) {
  std::vector<std::string> names;
  for (std::uint32_t i = 1; i <= count; ++i) names.push_back(stem + "_" + std::to_string(i));
  for (auto& e : extra) names.push_back(std::move(e));
  return Alphabet(std::move(names));
}

// Canonical coset representatives modulo an integer lattice, used to bucket
// group elements by their image in the abelianization. The basis is kept
// column-triangular (each column's first nonzero entry is its pivot);
// reduce() maps every coset to one vector.
class CosetReducer {
 public:
  CosetReducer(std::size_t dim, std::vector<std::vector<std::int64_t>> generators) : dim_(dim) {
    std::vector<std::vector<std::int64_t>>& work = generators;
    for (std::size_t row = 0; row < dim_; ++row) {
      // Gcd-eliminate until at most one working column is nonzero at `row`.
      while (true) {
        std::size_t best = work.size();
        for (std::size_t c = 0; c < work.size(); ++c) {
          if (work[c][row] == 0) continue;
          if (best == work.size() ||
              std::abs(work[c][row]) < std::abs(work[best][row]))
            best = c;
        }
        if (best == work.size()) break;
        bool others = false;
        for (std::size_t c = 0; c < work.size(); ++c) {
          if (c == best || work[c][row] == 0) continue;
          others = true;
          const std::int64_t q = work[c][row] / work[best][row];
          for (std::size_t r = 0; r < dim_; ++r) work[c][r] -= q * work[best][r];
        }
        if (!others) {
          if (work[best][row] < 0)
            for (auto& v : work[best]) v = -v;
          basis_.push_back(work[best]);
          pivot_rows_.push_back(row);
          work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
          break;
        }
      }
    }
  }

  std::vector<std::int64_t> reduce(std::vector<std::int64_t> v) const {
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      const std::size_t row = pivot_rows_[j];
      const std::int64_t p = basis_[j][row];
      std::int64_t q = v[row] / p;
      if (v[row] - q * p < 0) --q;  // floor division: canonical entry in [0, p)
      if (q != 0)
        for (std::size_t r = 0; r < dim_; ++r) v[r] -= q * basis_[j][r];
    }
    return v;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<std::int64_t>> basis_;
  std::vector<std::size_t> pivot_rows_;
};

// Dehn-backed oracle for a verified C'(1/6) presentation. Keys are
// equality-class ids from a registry. Candidate classes for a new
// Dehn-irreducible form are cut down twice before any Dehn test runs:
//  - by the word's canonical abelianization coset (a true invariant, so
//    different buckets can never be equal), and
//  - by the Greendlinger length bound: two distinct reduced words whose
//    combined length is at most half the shortest relator have a nonempty
//    quotient containing no more than half of any relator, hence nontrivial.
// Balls over presentations with long relators therefore key in O(1) per
// word, and short-relator presentations scan only abelianization-equal
// classes.
class PresOracle final : public GroupOracle {
 public:
  PresOracle(Presentation p, std::string descriptor)
      : GroupOracle(p.alphabet, std::move(descriptor)),
        solver_(std::move(p)),
        reducer_(make_reducer(solver_.presentation())) {
    half_min_ = solver_.min_relator_length() / 2;
  }

  const DehnSolver& solver() const { return solver_; }

 protected:
  CanonicalKey eval(const Word& w) const override {
    const Word d = solver_.dehn_reduce(free_reduce(w));
    CanonicalKey serial;
    key_append_word(serial, d);
    std::lock_guard<std::mutex> lock(mutex_);
    const auto hit = memo_.find(serial);
    if (hit != memo_.end()) return hit->second;
    const std::vector<std::int64_t> bucket_key = reducer_.reduce(abelianize(d));
    auto& bucket = buckets_[bucket_key];
    for (const std::size_t c : bucket) {
      if (d.size() + class_reps_[c].size() <= half_min_) continue;
      if (solver_.is_trivial(d * class_reps_[c].inverse()).trivial)
        return memo_[serial] = class_key(c);
    }
    bucket.push_back(class_reps_.size());
    class_reps_.push_back(d);
    return memo_[serial] = class_key(class_reps_.size() - 1);
  }

 private:
  static CosetReducer make_reducer(const Presentation& p) {
    std::vector<std::vector<std::int64_t>> cols;
    for (const Word& r : p.relators) {
      std::vector<std::int64_t> v(p.alphabet.size(), 0);
      for (const Letter& l : r) v[l.gen] += l.sign;
      if (std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; }))
        cols.push_back(std::move(v));
    }
    return CosetReducer(p.alphabet.size(), std::move(cols));
  }

  std::vector<std::int64_t> abelianize(const Word& w) const {
    std::vector<std::int64_t> v(arity(), 0);
    for (const Letter& l : w) v[l.gen] += l.sign;
    return v;
  }

  static CanonicalKey class_key(std::size_t c) {
    CanonicalKey k = "C";
    key_append_i64(k, static_cast<std::int64_t>(c));
    return k;
  }

  DehnSolver solver_;
  CosetReducer reducer_;
  std::size_t half_min_ = 0;
  mutable std::mutex mutex_;
  mutable std::map<std::string, CanonicalKey> memo_;
  mutable std::vector<Word> class_reps_;
  mutable std::map<std::vector<std::int64_t>, std::vector<std::size_t>> buckets_;
};

struct SpecParts {
  std::string head;
  std::string tail;
};

SpecParts split_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

std::uint64_t parse_count(const std::string& text, const std::string& spec) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw PreconditionError("malformed oracle spec '" + spec + "'");
  return std::stoull(text);
}

}  // namespace

CanonicalKey GroupOracle::normal_form(const Word& w) const {
  for (const Letter& l : w) {
    if (l.gen >= arity())
      throw PreconditionError("letter index " + std::to_string(l.gen) +
                              " out of range for oracle '" + descriptor_ + "' of arity " +
                              std::to_string(arity()));
  }
  return eval(w);
}

DehnSolver::DehnSolver(Presentation p) : pres_(std::move(p)), sym_(symmetrize(pres_)) {
  const auto report = check_small_cancellation(sym_, Rational(1, 6));
  if (!report.passed) throw SmallCancellationError(report);
  by_first_letter_.assign(2 * pres_.alphabet.size(), {});
  const auto& words = sym_.words();
  for (std::size_t i = 0; i < words.size(); ++i)
    by_first_letter_[words[i][0].index()].push_back(i);
}

bool DehnSolver::find_step(const Word& w, Match& out) const {
  if (2 * w.size() <= sym_.min_word_length()) return false;
  const auto& words = sym_.words();
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    std::size_t best_len = 0;
    std::size_t best_rel = 0;
    for (const std::size_t ri : by_first_letter_[w[pos].index()]) {
      const Word& rel = words[ri];
      const std::size_t limit = std::min(rel.size(), w.size() - pos);
      std::size_t m = 0;
      while (m < limit && w[pos + m] == rel[m]) ++m;
      if (2 * m > rel.size() && m > best_len) {
        best_len = m;
        best_rel = ri;
      }
    }
    if (best_len > 0) {
      out = Match{pos, best_rel, best_len};
      return true;
    }
  }
  return false;
}

DehnResult DehnSolver::is_trivial(const Word& w) const {
  DehnResult result;
  Word cur = cyclic_reduce(w);
  Match m;
  while (!cur.empty() && find_step(cur, m)) {
    const Word& rel = sym_.words()[m.relator_index];
    const Word replacement = rel.subword(m.matched_len, rel.size() - m.matched_len).inverse();
    result.trace.steps.push_back(DehnStep{m.pos, rel, m.matched_len, replacement});
    Word next = cur.subword(0, m.pos);
    next.append(replacement);
    next.append(cur.subword(m.pos + m.matched_len, cur.size() - m.pos - m.matched_len));
    cur = free_reduce(next);
  }
  result.trace.final_word = cur;
  result.trivial = cur.empty();
  return result;
}

Word DehnSolver::dehn_reduce(const Word& w) const {
  Word cur = free_reduce(w);
  Match m;
  while (!cur.empty() && find_step(cur, m)) {
    const Word& rel = sym_.words()[m.relator_index];
    Word next = cur.subword(0, m.pos);
    next.append(rel.subword(m.matched_len, rel.size() - m.matched_len).inverse());
    next.append(cur.subword(m.pos + m.matched_len, cur.size() - m.pos - m.matched_len));
    cur = free_reduce(next);
  }
  return cur;
}

DehnResult dehn_is_trivial(const Presentation& p, const Word& w) {
  return DehnSolver(p).is_trivial(w);
}

OraclePtr build_oracle(const std::string& spec, std::vector<std::string>* warnings) {
  const auto [head, tail] = split_spec(spec);
  const auto warn_nonprime = [&](std::uint64_t p) {
    if (!is_prime(p) && warnings)
      warnings->push_back("parameter " + std::to_string(p) + " in '" + spec + "' is not prime");
  };

  if (head == "free") {
    return std::make_shared<FreeOracle>(parse_count(tail, spec), spec);
  }
  if (head == "cyclic") {
    const auto m = parse_count(tail, spec);
    if (m == 0) throw PreconditionError("cyclic order must be positive");
    return std::make_shared<CyclicOracle>(m, spec);
  }
  if (head == "zn") {
    const auto n = parse_count(tail, spec);
    if (n == 0) throw PreconditionError("zn rank must be positive");
    return std::make_shared<ZnOracle>(n, spec);
  }
  if (head == "table") {
    if (tail.empty()) throw PreconditionError("table spec needs a file path");
    FiniteGroupTable table = FiniteGroupTable::load(tail);
    if (table.order() < 2)
      throw PreconditionError("table oracle needs a non-trivial group (order >= 2)");
    return std::make_shared<TableOracle>(std::move(table), spec);
  }
  if (head == "Ap") {
    const auto p = parse_count(tail, spec);
    if (p == 0) throw PreconditionError("Ap parameter must be positive");
    warn_nonprime(p);
    return std::make_shared<ApOracle>(static_cast<std::uint32_t>(p),
                                      indexed_alphabet("a", static_cast<std::uint32_t>(p)), spec);
  }
  if (head == "Bp") {
    const auto p = parse_count(tail, spec);
    if (p == 0) throw PreconditionError("Bp parameter must be positive");
    warn_nonprime(p);
    return std::make_shared<BpOracle>(static_cast<std::uint32_t>(p), spec);
  }
  if (head == "Hp") {
    const auto p = parse_count(tail, spec);
    if (p == 0) throw PreconditionError("Hp parameter must be positive");
    warn_nonprime(p);
    return std::make_shared<HpOracle>(
        static_cast<std::uint32_t>(p),
        indexed_alphabet("a", static_cast<std::uint32_t>(p), {"c", "d"}), spec);
  }
  if (head == "pres") {
    if (tail.empty()) throw PreconditionError("pres spec needs a file path");
    auto parsed = load_presentation(tail);
    if (warnings)
      for (auto& w : parsed.warnings) warnings->push_back(std::move(w));
    return std::make_shared<PresOracle>(std::move(parsed.presentation), spec);
  }
  throw PreconditionError("unknown oracle spec '" + spec + "'");
}

OraclePtr make_dehn_oracle(Presentation p, const std::string& descriptor) {
  return std::make_shared<PresOracle>(std::move(p), descriptor);
}

}  // namespace mg
