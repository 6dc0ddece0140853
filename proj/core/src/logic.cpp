#include "mg/logic.hpp"

#include <algorithm>
#include <set>

#include "mg/families.hpp"

namespace mg {

UpReport check_Up_membership(const MarkedGroup& m, unsigned p, std::size_t cap) {
  if (p < 1) throw PreconditionError("p must be at least 1");
  if (m.arity() != p + 2)
    throw PreconditionError("U_p test needs arity p + 2 = " + std::to_string(p + 2) +
                            ", marking has arity " + std::to_string(m.arity()));

  UpReport report;
  report.required_radius = std::max(p, 2u);
  const MarkedGroup hp = build_marked_group("Hp:" + std::to_string(p));
  report.similarity = similarity_radius(m, hp, report.required_radius, cap);
  report.member = report.similarity.radius >= 0 &&
                  static_cast<unsigned>(report.similarity.radius) == report.required_radius;

  const CanonicalKey id = m.identity_key();
  const auto marker_word = [](std::uint32_t i, std::int64_t e) { return Word::power(i, e); };

  report.orders_ok = true;
  for (std::uint32_t i = 0; i < p && report.orders_ok; ++i) {
    if (m.eval(marker_word(i, static_cast<std::int64_t>(p))) != id) report.orders_ok = false;
    for (std::uint32_t j = 1; j < p && report.orders_ok; ++j)
      if (m.eval(marker_word(i, j)) == id) report.orders_ok = false;
  }

  report.commute_ok = true;
  for (std::uint32_t i = 0; i < p && report.commute_ok; ++i)
    for (std::uint32_t j = i + 1; j < p && report.commute_ok; ++j) {
      const Word comm = Word({Letter{i, 1}, Letter{j, 1}, Letter{i, -1}, Letter{j, -1}});
      if (m.eval(comm) != id) report.commute_ok = false;
    }

  // Conjugation by c' and d' must permute the marker keys {a'_1 .. a'_p}.
  std::vector<CanonicalKey> base_keys;
  for (std::uint32_t i = 0; i < p; ++i) base_keys.push_back(m.eval(Word::single(i)));
  report.conjugation_permutes = true;
  for (const std::uint32_t t : {p, p + 1}) {
    std::set<std::size_t> image;
    for (std::uint32_t i = 0; i < p; ++i) {
      Word conj({Letter{t, -1}, Letter{i, 1}, Letter{t, 1}});
      const CanonicalKey k = m.eval(conj);
      const auto it = std::find(base_keys.begin(), base_keys.end(), k);
      if (it == base_keys.end()) {
        report.conjugation_permutes = false;
        break;
      }
      image.insert(static_cast<std::size_t>(it - base_keys.begin()));
    }
    if (!report.conjugation_permutes) break;
    if (image.size() != p) report.conjugation_permutes = false;
  }

  report.noncentral_ok =
      m.eval(Word({Letter{0, 1}, Letter{p, 1}})) != m.eval(Word({Letter{p, 1}, Letter{0, 1}}));
  return report;
}

}  // namespace mg
