#pragma once

#include <string>

#include "mg/marked.hpp"
#include "mg/oracle.hpp"
#include "mg/presentation.hpp"

namespace mg {

/// Machine-readable documents for the exported types. All emitters are
/// deterministic: identical inputs give byte-identical output.

/// {"radius", "vertices", "reps", "transitions"}; reps use the word text
/// syntax over `names`, transitions use -1 for OUTSIDE.
std::string ball_to_json(const BallGraph& b, const Alphabet& names);

/// Same schema without "reps".
std::string signature_to_json(const BallSignature& s);

std::string small_cancellation_report_to_json(const SmallCancellationReport& r,
                                              const Alphabet& names);

std::string dehn_trace_to_json(const DehnTrace& t, const Alphabet& names, bool trivial);

std::string lacunary_report_to_json(const LacunaryReport& r);

}  // namespace mg
