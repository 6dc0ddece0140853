#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mg/marked.hpp"

namespace mg {

/// Result of building an explicit family member. `group` is absent when only
/// the presentation is constructible (Wnk with k < 30, surface genus 1);
/// `presentation` is absent for table-backed groups.
struct FamilyResult {
  std::optional<MarkedGroup> group;
  std::optional<Presentation> presentation;
  std::vector<std::string> notes;
};

/// Family specs: every oracle spec (free:N, cyclic:M, zn:N, table:PATH,
/// Ap:P, Bp:P, Hp:P, pres:PATH) plus
///   Wnk:N,K    <u, v | R_1..R_N>, R_j = u^j v u^j v^2 ... u^j v^K;
///              Dehn-backed oracle when K >= 30, presentation only below
///   surface:G  genus-G surface group, generators a_1 b_1 ... a_G b_G,
///              single relator of length 4G; Dehn-backed oracle when the
///              presentation passes C'(1/6) (G >= 2)
FamilyResult build_family(const std::string& spec);

/// Convenience: build_family and require the marked group.
MarkedGroup build_marked_group(const std::string& spec,
                               std::vector<std::string>* notes = nullptr);

/// Presentations used by the families (also exposed for direct use).
Presentation wnk_presentation(unsigned n, unsigned k);
Presentation surface_presentation(unsigned genus);

/// Certificate file: JSON {"stages": [{"group": SPEC, "delta": "3/2", "r": 8},
/// ...]}; "r" is required on every stage but the last.
LacunaryCertificate load_lacunary_certificate(const std::string& path);
LacunaryCertificate parse_lacunary_certificate(const std::string& json_text);

}  // namespace mg
