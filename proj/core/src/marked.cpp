#include "mg/marked.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace mg {

MarkedGroup::MarkedGroup(OraclePtr oracle, std::vector<Word> markers, Alphabet marker_names,
                         std::optional<Presentation> source)
    : oracle_(std::move(oracle)),
      markers_(std::move(markers)),
      marker_names_(std::move(marker_names)),
      source_(std::move(source)) {
  if (!oracle_) throw PreconditionError("marked group needs an oracle");
  if (marker_names_.size() != markers_.size())
    throw PreconditionError("marker name count != marker count");
  for (const Word& m : markers_)
    for (const Letter& l : m)
      if (l.gen >= oracle_->arity())
        throw PreconditionError("marker word uses a letter outside the oracle alphabet");
  standard_marking_ = markers_.size() == oracle_->arity();
  for (std::size_t i = 0; i < markers_.size() && standard_marking_; ++i)
    standard_marking_ = markers_[i].size() == 1 && markers_[i][0].gen == i &&
                        markers_[i][0].sign == 1;
}

MarkedGroup MarkedGroup::standard(OraclePtr oracle, std::optional<Presentation> source) {
  std::vector<Word> markers;
  for (std::size_t i = 0; i < oracle->arity(); ++i)
    markers.push_back(Word::single(static_cast<std::uint32_t>(i)));
  Alphabet names = oracle->alphabet();
  return MarkedGroup(std::move(oracle), std::move(markers), std::move(names), std::move(source));
}

CanonicalKey MarkedGroup::eval(const Word& w) const {
  for (const Letter& l : w)
    if (l.gen >= arity())
      throw PreconditionError("letter index " + std::to_string(l.gen) +
                              " out of range for marking of arity " + std::to_string(arity()));
  if (standard_marking_) return oracle_->normal_form(w);
  Word substituted;
  for (const Letter& l : w) {
    const Word& marker = markers_[l.gen];
    substituted.append(l.sign > 0 ? marker : marker.inverse());
  }
  return oracle_->normal_form(substituted);
}

std::string MarkedGroup::describe() const {
  std::string out = oracle_->descriptor();
  if (!standard_marking_) {
    out += " marked (";
    for (std::size_t i = 0; i < markers_.size(); ++i) {
      if (i) out += ", ";
      const std::string text = print_word(markers_[i], oracle_->alphabet());
      out += text.empty() ? "1" : text;
    }
    out += ")";
  }
  return out;
}

BallGraph ball(const MarkedGroup& m, unsigned radius, std::size_t cap) {
  if (cap < 1) throw CapExceeded(cap, 0);
  const std::size_t n = m.arity();
  BallGraph out;
  out.radius = radius;

  std::unordered_map<CanonicalKey, std::size_t> index;
  out.vertices.push_back({Word{}, m.eval(Word{}), 0});
  index.emplace(out.vertices[0].key, 0);

  std::vector<std::size_t> frontier = {0};
  for (unsigned depth = 1; depth <= radius && !frontier.empty(); ++depth) {
    std::vector<std::size_t> next;
    for (const std::size_t vi : frontier) {
      const Word rep = out.vertices[vi].rep;  // copy: vertices may reallocate
      for (std::uint32_t li = 0; li < 2 * n; ++li) {
        const Letter l = Letter::from_index(li);
        if (!rep.empty() && rep[rep.size() - 1] == l.inverse()) continue;  // stay reduced
        const Word w = rep * l;
        CanonicalKey key = m.eval(w);
        if (index.find(key) != index.end()) continue;
        if (out.vertices.size() >= cap) throw CapExceeded(cap, out.vertices.size());
        index.emplace(key, out.vertices.size());
        next.push_back(out.vertices.size());
        out.vertices.push_back({w, std::move(key), depth});
      }
    }
    frontier = std::move(next);
  }

  out.transitions.assign(out.vertices.size(), std::vector<std::int64_t>(2 * n, BallGraph::outside));
  for (std::size_t vi = 0; vi < out.vertices.size(); ++vi) {
    for (std::uint32_t li = 0; li < 2 * n; ++li) {
      const CanonicalKey key = m.eval(out.vertices[vi].rep * Letter::from_index(li));
      const auto it = index.find(key);
      if (it != index.end()) out.transitions[vi][li] = static_cast<std::int64_t>(it->second);
    }
  }
  return out;
}

BallSignature signature_of(const BallGraph& b) {
  BallSignature sig;
  sig.radius = b.radius;
  sig.vertex_count = b.vertices.size();
  for (const auto& row : b.transitions)
    sig.transitions.insert(sig.transitions.end(), row.begin(), row.end());
  return sig;
}

BallSignature ball_signature(const MarkedGroup& m, unsigned radius, std::size_t cap) {
  return signature_of(ball(m, radius, cap));
}

Rational SimilarityResult::distance() const {
  if (radius < 0) return Rational(2);
  if (radius > 62) return Rational(0);  // below int64 resolution; exact 0 only in the limit
  return Rational(1, static_cast<std::int64_t>(1) << radius);
}

SimilarityResult similarity_radius(const MarkedGroup& a, const MarkedGroup& b, unsigned max_r,
                                   std::size_t cap) {
  SimilarityResult out;
  if (a.arity() != b.arity()) {
    out.arity_mismatch = true;
    return out;  // radius -1 by convention
  }
  for (unsigned r = 0; r <= max_r; ++r) {
    BallSignature sa;
    BallSignature sb;
    try {
      sa = ball_signature(a, r, cap);
      sb = ball_signature(b, r, cap);
    } catch (const CapExceeded&) {
      out.capped = true;
      out.cap_hit = true;
      return out;
    }
    if (!(sa == sb)) return out;
    out.radius = static_cast<int>(r);
  }
  out.capped = true;
  return out;
}

NielsenMove NielsenMove::parse(const std::string& text) {
  const auto fail = [&] { throw ParseError("invalid Nielsen move '" + text + "'"); };
  const std::size_t colon = text.find(':');
  const std::string head = text.substr(0, colon == std::string::npos ? text.size() : colon);
  std::vector<std::string> parts;
  if (colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = rest.find(',', pos);
      parts.push_back(rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  const auto index_arg = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) fail();
    const auto v = std::stoull(s);
    if (v == 0) fail();  // 1-based in text form
    return static_cast<std::size_t>(v - 1);
  };

  NielsenMove mv;
  if (head == "swap") {
    if (parts.size() != 2) fail();
    mv.kind = Kind::swap;
    mv.i = index_arg(parts[0]);
    mv.j = index_arg(parts[1]);
  } else if (head == "invert") {
    if (parts.size() != 1) fail();
    mv.kind = Kind::invert;
    mv.i = index_arg(parts[0]);
  } else if (head == "rmul") {
    if (parts.size() != 3) fail();
    mv.kind = Kind::right_multiply;
    mv.i = index_arg(parts[0]);
    mv.j = index_arg(parts[1]);
    if (parts[2] == "+")
      mv.sign = 1;
    else if (parts[2] == "-")
      mv.sign = -1;
    else
      fail();
  } else if (head == "stab") {
    if (!parts.empty()) fail();
    mv.kind = Kind::stabilize;
  } else if (head == "destab") {
    if (parts.size() != 1) fail();
    mv.kind = Kind::destabilize;
    mv.i = index_arg(parts[0]);
  } else {
    fail();
  }
  return mv;
}

std::string NielsenMove::str() const {
  switch (kind) {
    case Kind::swap:
      return "swap:" + std::to_string(i + 1) + "," + std::to_string(j + 1);
    case Kind::invert:
      return "invert:" + std::to_string(i + 1);
    case Kind::right_multiply:
      return "rmul:" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
             (sign > 0 ? "+" : "-");
    case Kind::stabilize:
      return "stab";
    case Kind::destabilize:
      return "destab:" + std::to_string(i + 1);
  }
  return {};
}

MarkedGroup nielsen_apply(const MarkedGroup& m, const NielsenMove& move) {
  auto markers = m.markers();
  auto names = m.marker_names().names();
  const auto check_index = [&](std::size_t idx) {
    if (idx >= markers.size())
      throw PreconditionError("Nielsen move index " + std::to_string(idx + 1) +
                              " out of range for arity " + std::to_string(markers.size()));
  };

  switch (move.kind) {
    case NielsenMove::Kind::swap:
      check_index(move.i);
      check_index(move.j);
      if (move.i == move.j) throw PreconditionError("swap needs two distinct markers");
      std::swap(markers[move.i], markers[move.j]);
      std::swap(names[move.i], names[move.j]);
      break;
    case NielsenMove::Kind::invert:
      check_index(move.i);
      markers[move.i] = markers[move.i].inverse();
      break;
    case NielsenMove::Kind::right_multiply: {
      check_index(move.i);
      check_index(move.j);
      if (move.i == move.j)
        throw PreconditionError("right_multiply needs two distinct markers");
      const Word factor = move.sign > 0 ? markers[move.j] : markers[move.j].inverse();
      markers[move.i] = free_reduce(markers[move.i] * factor);
      break;
    }
    case NielsenMove::Kind::stabilize: {
      markers.push_back(Word{});
      std::string stem = "t";
      std::string name = stem;
      for (unsigned k = 2; std::find(names.begin(), names.end(), name) != names.end(); ++k)
        name = stem + std::to_string(k);
      names.push_back(name);
      break;
    }
    case NielsenMove::Kind::destabilize: {
      check_index(move.i);
      if (m.oracle().normal_form(markers[move.i]) != m.identity_key())
        throw PreconditionError("destabilize: marker " + std::to_string(move.i + 1) +
                                " does not evaluate to the identity");
      markers.erase(markers.begin() + static_cast<std::ptrdiff_t>(move.i));
      names.erase(names.begin() + static_cast<std::ptrdiff_t>(move.i));
      break;
    }
  }
  return MarkedGroup(m.oracle_ptr(), std::move(markers), Alphabet(std::move(names)), m.source());
}

namespace {

// Enumerates reduced words over the marking in shortlex order, calling fn on
// each; fn returns false to stop. Lengths 1..max_len.
template <typename Fn>
void for_each_reduced_word(std::size_t arity, unsigned max_len, Fn&& fn) {
  std::vector<Word> level;
  for (std::uint32_t li = 0; li < 2 * arity; ++li)
    level.push_back(Word({Letter::from_index(li)}));
  for (unsigned len = 1; len <= max_len && !level.empty(); ++len) {
    std::vector<Word> next;
    for (const Word& w : level) {
      if (!fn(w)) return;
      if (len + 1 <= max_len) {
        for (std::uint32_t li = 0; li < 2 * arity; ++li) {
          const Letter l = Letter::from_index(li);
          if (w[w.size() - 1] == l.inverse()) continue;
          next.push_back(w * l);
        }
      }
    }
    level = std::move(next);
  }
}

}  // namespace

std::vector<Word> kernel_elements(const MarkedGroup& m, unsigned max_len) {
  std::vector<Word> out;
  const CanonicalKey id = m.identity_key();
  for_each_reduced_word(m.arity(), max_len, [&](const Word& w) {
    if (m.eval(w) == id) out.push_back(w);
    return true;
  });
  return out;
}

bool in_basic_open(const MarkedGroup& m, const std::vector<Word>& inside,
                   const std::vector<Word>& outside) {
  const CanonicalKey id = m.identity_key();
  for (const Word& y : inside)
    if (m.eval(y) != id) return false;
  for (const Word& z : outside)
    if (m.eval(z) == id) return false;
  return true;
}

SimilarityResult injectivity_radius(const MarkedGroup& src, const MarkedGroup& dst, unsigned max_r,
                                    std::size_t cap) {
  if (src.arity() != dst.arity())
    throw PreconditionError("injectivity_radius needs equal arities (" +
                            std::to_string(src.arity()) + " vs " + std::to_string(dst.arity()) +
                            ")");
  if (src.source()) {
    const CanonicalKey id = dst.identity_key();
    for (const Word& rel : src.source()->relators) {
      if (dst.eval(rel) != id)
        throw PreconditionError(
            "generator map is not a homomorphism: relator '" +
            print_word(rel, src.source()->alphabet) + "' does not die in " + dst.describe());
    }
  }

  SimilarityResult out;
  for (unsigned r = 0; r <= max_r; ++r) {
    BallGraph b;
    try {
      b = ball(src, r, cap);
    } catch (const CapExceeded&) {
      out.capped = true;
      out.cap_hit = true;
      return out;
    }
    std::vector<CanonicalKey> keys;
    keys.reserve(b.vertices.size());
    for (const auto& v : b.vertices) keys.push_back(dst.eval(v.rep));
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) return out;
    out.radius = static_cast<int>(r);
  }
  out.capped = true;
  return out;
}

LacunaryReport check_lacunary_certificate(const LacunaryCertificate& cert, unsigned max_r,
                                          std::size_t cap) {
  if (cert.stages.size() < 2)
    throw PreconditionError("certificate needs at least two stages");
  for (std::size_t i = 0; i + 1 < cert.stages.size(); ++i) {
    if (!cert.stages[i].r)
      throw PreconditionError("stage " + std::to_string(i + 1) + " is missing a claimed radius");
    if (*cert.stages[i].r < 1)
      throw PreconditionError("claimed radii must be at least 1");
    if (!cert.stages[i].delta.is_positive())
      throw PreconditionError("delta values must be positive");
  }
  for (std::size_t i = 0; i + 1 < cert.stages.size(); ++i)
    if (cert.stages[i].group.arity() != cert.stages[i + 1].group.arity())
      throw PreconditionError("certificate stages have mismatched arities");

  LacunaryReport report;
  report.condition_ii_holds = true;
  for (std::size_t i = 0; i + 1 < cert.stages.size(); ++i) {
    const auto& stage = cert.stages[i];
    LacunaryReport::StageCheck check;
    check.label = stage.label;
    check.claimed_r = *stage.r;
    check.checked_r = std::min(check.claimed_r, max_r);
    check.truncated = check.claimed_r > max_r;
    const auto inj =
        injectivity_radius(stage.group, cert.stages[i + 1].group, check.checked_r, cap);
    check.injective = !inj.cap_hit && inj.radius >= 0 &&
                      static_cast<unsigned>(inj.radius) >= check.checked_r;
    check.ratio = Rational(static_cast<std::int64_t>(check.claimed_r)) / stage.delta;
    if (!check.injective) report.condition_ii_holds = false;
    report.stages.push_back(std::move(check));
  }

  report.ratios_strictly_increasing = true;
  for (std::size_t i = 0; i + 1 < report.stages.size(); ++i)
    if (!(report.stages[i].ratio < report.stages[i + 1].ratio))
      report.ratios_strictly_increasing = false;
  return report;
}

namespace {

Term word_to_term(const Word& w) {
  if (w.empty()) return Term::one();
  std::vector<Term> factors;
  for (const Letter& l : w) {
    Term v = Term::var("x" + std::to_string(l.gen + 1));
    factors.push_back(l.sign > 0 ? std::move(v) : Term::inverse_of(std::move(v)));
  }
  return factors.size() == 1 ? factors[0] : Term::product(std::move(factors));
}

}  // namespace

Formula pattern_sentence(const MarkedGroup& m, unsigned radius, std::size_t cap) {
  const BallGraph b = ball(m, radius, cap);
  const std::size_t n = m.arity();
  if (n == 0) throw PreconditionError("pattern sentence needs at least one marker");

  std::vector<Formula> conjuncts;
  std::unordered_set<std::string> seen;
  const auto add = [&](Formula f) {
    std::string text = print_formula(f);
    if (seen.insert(std::move(text)).second) conjuncts.push_back(std::move(f));
  };

  // Pairwise distinctness of vertex representatives.
  for (std::size_t u = 0; u < b.vertices.size(); ++u)
    for (std::size_t v = u + 1; v < b.vertices.size(); ++v)
      add(Formula::negation(
          Formula::equals(word_to_term(b.vertices[u].rep), word_to_term(b.vertices[v].rep))));

  // Ball transitions along positive letters. Negative-letter facts follow
  // from these plus distinctness, and unreduced steps are free-group
  // tautologies, so both are omitted.
  for (std::size_t u = 0; u < b.vertices.size(); ++u) {
    for (std::uint32_t gen = 0; gen < n; ++gen) {
      const Word& rep_u = b.vertices[u].rep;
      if (!rep_u.empty() && rep_u[rep_u.size() - 1] == (Letter{gen, 1}).inverse()) continue;
      const Word step = rep_u * Letter{gen, 1};
      const std::int64_t target = b.transitions[u][Letter{gen, 1}.index()];
      if (target >= 0) {
        const Word& rep = b.vertices[static_cast<std::size_t>(target)].rep;
        if (rep == step) continue;  // tree edge, tautological
        add(Formula::equals(word_to_term(step), word_to_term(rep)));
      } else {
        for (const auto& vertex : b.vertices)
          add(Formula::negation(Formula::equals(word_to_term(step), word_to_term(vertex.rep))));
      }
    }
  }

  Formula body = conjuncts.size() == 1 ? std::move(conjuncts[0])
                                       : Formula::conjunction(std::move(conjuncts));
  for (std::size_t i = n; i >= 1; --i)
    body = Formula::exists("x" + std::to_string(i), std::move(body));
  return body;
}

}  // namespace mg
