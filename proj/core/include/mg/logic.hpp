#pragma once

#include "mg/formula.hpp"
#include "mg/marked.hpp"

namespace mg {

/// Outcome of the U_p ball test: membership means the marked group is
/// max(p,2)-similar to (H_p, X_p). The four fact fields confirm, through the
/// marking's oracle, what that similarity implies: marker orders, commuting
/// a-part, the conjugation permutation by c and d, and a non-central pair.
struct UpReport {
  bool member = false;
  unsigned required_radius = 0;
  SimilarityResult similarity;
  bool orders_ok = false;
  bool commute_ok = false;
  bool conjugation_permutes = false;
  bool noncentral_ok = false;
};

/// Requires arity(m) == p + 2; markers are read as (a'_1..a'_p, c', d').
UpReport check_Up_membership(const MarkedGroup& m, unsigned p, std::size_t cap);

}  // namespace mg
