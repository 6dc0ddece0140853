#include "mg/json_io.hpp"

#include <json.hpp>

namespace mg {

using nlohmann::ordered_json;

std::string ball_to_json(const BallGraph& b, const Alphabet& names) {
  ordered_json doc;
  doc["radius"] = b.radius;
  doc["vertices"] = b.vertices.size();
  ordered_json reps = ordered_json::array();
  for (const auto& v : b.vertices) reps.push_back(print_word(v.rep, names));
  doc["reps"] = std::move(reps);
  doc["transitions"] = b.transitions;
  return doc.dump();
}

std::string signature_to_json(const BallSignature& s) {
  ordered_json doc;
  doc["radius"] = s.radius;
  doc["vertices"] = s.vertex_count;
  const std::size_t letters = s.vertex_count == 0 ? 0 : s.transitions.size() / s.vertex_count;
  ordered_json rows = ordered_json::array();
  for (std::size_t v = 0; v < s.vertex_count; ++v) {
    ordered_json row = ordered_json::array();
    for (std::size_t l = 0; l < letters; ++l) row.push_back(s.transitions[v * letters + l]);
    rows.push_back(std::move(row));
  }
  doc["transitions"] = std::move(rows);
  return doc.dump();
}

std::string small_cancellation_report_to_json(const SmallCancellationReport& r,
                                              const Alphabet& names) {
  ordered_json doc;
  doc["lambda"] = r.lambda.str();
  doc["max_piece_len"] = r.max_piece_len;
  doc["max_ratio"] = r.max_ratio.str();
  if (r.witness_pair) {
    doc["witness_pair"] =
        ordered_json::array({print_word(r.witness_pair->first, names),
                             print_word(r.witness_pair->second, names)});
  } else {
    doc["witness_pair"] = nullptr;
  }
  doc["passed"] = r.passed;
  return doc.dump();
}

std::string dehn_trace_to_json(const DehnTrace& t, const Alphabet& names, bool trivial) {
  ordered_json doc;
  doc["trivial"] = trivial;
  ordered_json steps = ordered_json::array();
  for (const auto& s : t.steps) {
    ordered_json step;
    step["pos"] = s.pos;
    step["relator"] = print_word(s.relator, names);
    step["matched_len"] = s.matched_len;
    step["replacement"] = print_word(s.replacement, names);
    steps.push_back(std::move(step));
  }
  doc["steps"] = std::move(steps);
  doc["final_word"] = print_word(t.final_word, names);
  return doc.dump();
}

std::string lacunary_report_to_json(const LacunaryReport& r) {
  ordered_json doc;
  ordered_json stages = ordered_json::array();
  for (const auto& s : r.stages) {
    ordered_json stage;
    stage["label"] = s.label;
    stage["claimed_r"] = s.claimed_r;
    stage["checked_r"] = s.checked_r;
    stage["truncated"] = s.truncated;
    stage["injective"] = s.injective;
    stage["ratio"] = s.ratio.str();
    stages.push_back(std::move(stage));
  }
  doc["stages"] = std::move(stages);
  doc["condition_ii_holds"] = r.condition_ii_holds;
  doc["ratios_strictly_increasing"] = r.ratios_strictly_increasing;
  doc["delta_note"] = LacunaryReport::delta_note;
  return doc.dump();
}

}  // namespace mg
