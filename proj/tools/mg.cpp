// mg: exact computations on finitely generated marked groups.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mg/errors.hpp"
#include "mg/families.hpp"
#include "mg/finite_table.hpp"
#include "mg/json_io.hpp"
#include "mg/logic.hpp"
#include "mg/marked.hpp"
#include "mg/oracle.hpp"
#include "mg/presentation.hpp"

namespace {

using nlohmann::ordered_json;

struct Output {
  bool json = false;
  std::string command;
  ordered_json inputs = ordered_json::object();
  ordered_json result = ordered_json::object();
  std::vector<std::string> warnings;
  std::ostringstream human;
  int exit_code = 0;

  void flush() {
    if (json) {
      ordered_json envelope;
      envelope["command"] = command;
      envelope["inputs"] = inputs;
      envelope["result"] = result;
      envelope["warnings"] = warnings;
      std::cout << envelope.dump(2) << "\n";
    } else {
      std::cout << human.str();
      for (const auto& w : warnings) std::cout << "warning: " << w << "\n";
    }
  }
};

std::string yesno(bool b) { return b ? "yes" : "no"; }

ordered_json similarity_json(const mg::SimilarityResult& r, bool with_distance) {
  ordered_json out;
  out["radius"] = r.radius;
  out["capped"] = r.capped;
  out["cap_hit"] = r.cap_hit;
  out["arity_mismatch"] = r.arity_mismatch;
  if (with_distance) out["distance"] = r.distance().str();
  return out;
}

void print_similarity(Output& out, const mg::SimilarityResult& r, bool with_distance) {
  out.human << "radius: " << r.radius;
  if (r.capped) out.human << " (lower bound: scan stopped at the radius limit)";
  out.human << "\n";
  if (r.arity_mismatch) out.human << "note: arities differ, groups are not even 0-similar\n";
  if (with_distance) {
    out.human << "distance: " << r.distance().str();
    if (r.capped) out.human << " (upper bound)";
    out.human << "\n";
  }
  if (r.cap_hit) {
    out.human << "note: vertex cap hit; raise --cap to push further\n";
    out.exit_code = 2;
  }
}

mg::MarkedGroup load_group(const std::string& spec, Output& out) {
  return mg::build_marked_group(spec, &out.warnings);
}

void emit_ball_human(Output& out, const mg::BallGraph& b, const mg::Alphabet& names,
                     bool with_reps) {
  out.human << "radius: " << b.radius << "\n";
  out.human << "vertices: " << b.vertices.size() << "\n";
  if (b.vertices.size() > 60) {
    out.human << "(transition table suppressed; use --json for the full export)\n";
    return;
  }
  for (std::size_t v = 0; v < b.vertices.size(); ++v) {
    out.human << v;
    if (with_reps) {
      const std::string rep = mg::print_word(b.vertices[v].rep, names);
      out.human << " [" << (rep.empty() ? "1" : rep) << "]";
    }
    out.human << ":";
    for (const auto t : b.transitions[v]) {
      if (t == mg::BallGraph::outside)
        out.human << " .";
      else
        out.human << " " << t;
    }
    out.human << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"exact computations on finitely generated marked groups"};
  app.require_subcommand(1);
  Output out;
  app.add_flag("--json", out.json, "machine-readable output");
  app.fallthrough();

  std::function<void()> action;

  // Shared option storage; each subcommand binds the pieces it needs.
  std::string group_spec, a_spec, b_spec, src_spec, dst_spec, family_spec;
  std::string file, word_text, moves_text, sequence_file, table_file, formula_name, emit = "summary";
  std::string lambda_text = "1/6";
  std::vector<std::string> in_words, out_words;
  unsigned radius = 2;
  unsigned max_radius = 12;
  unsigned max_len = 6;
  unsigned p_param = 2;
  std::size_t cap = 1000000;
  std::uint64_t budget = 100000000;

  const auto add_cap = [&](CLI::App* cmd) {
    cmd->add_option("--cap", cap, "vertex cap for ball enumeration")->capture_default_str();
  };

  {
    auto* cmd = app.add_subcommand("check-sc", "verify the C'(lambda) small cancellation condition");
    cmd->add_option("--file", file, "presentation file")->required();
    cmd->add_option("--lambda", lambda_text, "exact rational bound")->capture_default_str();
    cmd->callback([&] {
      action = [&] {
        out.command = "check-sc";
        out.inputs = {{"file", file}, {"lambda", lambda_text}};
        auto parsed = mg::load_presentation(file);
        out.warnings = parsed.warnings;
        const auto report =
            mg::check_small_cancellation(parsed.presentation, mg::Rational::parse(lambda_text));
        out.result = ordered_json::parse(
            mg::small_cancellation_report_to_json(report, parsed.presentation.alphabet));
        out.human << "passed: " << yesno(report.passed) << "\n";
        out.human << "lambda: " << report.lambda.str() << "\n";
        out.human << "max piece length: " << report.max_piece_len << "\n";
        out.human << "max ratio: " << report.max_ratio.str() << "\n";
        if (report.witness_pair) {
          out.human << "witness pair: "
                    << mg::print_word(report.witness_pair->first, parsed.presentation.alphabet)
                    << " | "
                    << mg::print_word(report.witness_pair->second, parsed.presentation.alphabet)
                    << "\n";
        }
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("wp", "word problem via Dehn's algorithm (requires C'(1/6))");
    cmd->add_option("--file", file, "presentation file")->required();
    cmd->add_option("--word", word_text, "word in the presentation's generators")->required();
    cmd->callback([&] {
      action = [&] {
        out.command = "wp";
        out.inputs = {{"file", file}, {"word", word_text}};
        auto parsed = mg::load_presentation(file);
        out.warnings = parsed.warnings;
        const mg::Word w = mg::parse_word(word_text, parsed.presentation.alphabet);
        const auto result = mg::dehn_is_trivial(parsed.presentation, w);
        out.result = ordered_json::parse(
            mg::dehn_trace_to_json(result.trace, parsed.presentation.alphabet, result.trivial));
        out.human << "verdict: " << (result.trivial ? "trivial" : "nontrivial") << "\n";
        out.human << "steps: " << result.trace.steps.size() << "\n";
        for (const auto& step : result.trace.steps) {
          out.human << "  at " << step.pos << " matched " << step.matched_len << " of "
                    << mg::print_word(step.relator, parsed.presentation.alphabet) << " -> "
                    << mg::print_word(step.replacement, parsed.presentation.alphabet) << "\n";
        }
        const std::string fin = mg::print_word(result.trace.final_word, parsed.presentation.alphabet);
        out.human << "final word: " << (fin.empty() ? "1" : fin) << "\n";
      };
    });
  }

  for (const bool with_reps : {true, false}) {
    auto* cmd = with_reps
                    ? app.add_subcommand("ball", "Cayley ball of the marking")
                    : app.add_subcommand("signature", "canonical ball signature (shape only)");
    cmd->add_option("--group", group_spec, "group spec")->required();
    cmd->add_option("--radius", radius, "ball radius")->capture_default_str();
    add_cap(cmd);
    cmd->callback([&, with_reps] {
      action = [&, with_reps] {
        out.command = with_reps ? "ball" : "signature";
        out.inputs = {{"group", group_spec}, {"radius", radius}, {"cap", cap}};
        const auto m = load_group(group_spec, out);
        const auto b = mg::ball(m, radius, cap);
        if (with_reps) {
          out.result = ordered_json::parse(mg::ball_to_json(b, m.marker_names()));
        } else {
          out.result = ordered_json::parse(mg::signature_to_json(mg::signature_of(b)));
        }
        emit_ball_human(out, b, m.marker_names(), with_reps);
      };
    });
  }

  for (const bool with_distance : {false, true}) {
    auto* cmd = with_distance
                    ? app.add_subcommand("dist", "marked distance 2^-radius")
                    : app.add_subcommand("similar", "largest radius of ball isomorphism");
    cmd->add_option("--a", a_spec, "first group spec")->required();
    cmd->add_option("--b", b_spec, "second group spec")->required();
    cmd->add_option("--max-radius", max_radius, "radius scan limit")
        ->capture_default_str()
        ->check(CLI::Range(0u, 60u));
    add_cap(cmd);
    cmd->callback([&, with_distance] {
      action = [&, with_distance] {
        out.command = with_distance ? "dist" : "similar";
        out.inputs = {{"a", a_spec}, {"b", b_spec}, {"max_radius", max_radius}, {"cap", cap}};
        const auto ga = load_group(a_spec, out);
        const auto gb = load_group(b_spec, out);
        const auto r = mg::similarity_radius(ga, gb, max_radius, cap);
        out.result = similarity_json(r, with_distance);
        print_similarity(out, r, with_distance);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("nielsen", "apply Nielsen moves to the marking");
    cmd->add_option("--group", group_spec, "group spec")->required();
    cmd->add_option("--moves", moves_text,
                    "whitespace-separated moves: swap:I,J invert:I rmul:I,J,+ rmul:I,J,- stab destab:I")
        ->required();
    cmd->add_option("--max-radius", max_radius, "similarity scan limit vs the original")
        ->capture_default_str()
        ->check(CLI::Range(0u, 60u));
    add_cap(cmd);
    cmd->callback([&] {
      action = [&] {
        out.command = "nielsen";
        out.inputs = {{"group", group_spec}, {"moves", moves_text}, {"max_radius", max_radius}};
        const auto original = load_group(group_spec, out);
        auto current = original;
        std::istringstream iss(moves_text);
        std::string token;
        while (iss >> token) current = mg::nielsen_apply(current, mg::NielsenMove::parse(token));
        ordered_json markers = ordered_json::array();
        out.human << "markers:\n";
        for (std::size_t i = 0; i < current.arity(); ++i) {
          const std::string w = mg::print_word(current.markers()[i], current.oracle().alphabet());
          markers.push_back({{"name", current.marker_names().name(i)},
                             {"word", w}});
          out.human << "  " << current.marker_names().name(i) << " = " << (w.empty() ? "1" : w)
                    << "\n";
        }
        const auto sim = mg::similarity_radius(original, current, max_radius, cap);
        out.result["markers"] = std::move(markers);
        out.result["similarity_with_original"] = similarity_json(sim, false);
        out.human << "similarity with original:\n";
        print_similarity(out, sim, false);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("kernel", "kernel words of the marking, shortlex order");
    cmd->add_option("--group", group_spec, "group spec")->required();
    cmd->add_option("--max-len", max_len, "word length bound")->capture_default_str();
    cmd->callback([&] {
      action = [&] {
        out.command = "kernel";
        out.inputs = {{"group", group_spec}, {"max_len", max_len}};
        const auto m = load_group(group_spec, out);
        const auto kernel = mg::kernel_elements(m, max_len);
        ordered_json words = ordered_json::array();
        out.human << "count: " << kernel.size() << "\n";
        for (const auto& w : kernel) {
          const std::string text = mg::print_word(w, m.marker_names());
          words.push_back(text);
          out.human << text << "\n";
        }
        out.result = {{"count", kernel.size()}, {"words", std::move(words)}};
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("chabauty", "membership in the basic open set W(Y, Z)");
    cmd->add_option("--group", group_spec, "group spec")->required();
    cmd->add_option("--in", in_words, "word that must lie in the kernel (repeatable)");
    cmd->add_option("--out", out_words, "word that must avoid the kernel (repeatable)");
    cmd->callback([&] {
      action = [&] {
        out.command = "chabauty";
        out.inputs = {{"group", group_spec}, {"in", in_words}, {"out", out_words}};
        const auto m = load_group(group_spec, out);
        std::vector<mg::Word> inside;
        std::vector<mg::Word> outside;
        for (const auto& t : in_words) inside.push_back(mg::parse_word(t, m.marker_names()));
        for (const auto& t : out_words) outside.push_back(mg::parse_word(t, m.marker_names()));
        const bool member = mg::in_basic_open(m, inside, outside);
        out.result = {{"member", member}};
        out.human << "member: " << yesno(member) << "\n";
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("inj-radius",
                                   "ball injectivity radius of the generator-to-generator map");
    cmd->add_option("--src", src_spec, "source group spec")->required();
    cmd->add_option("--dst", dst_spec, "target group spec")->required();
    cmd->add_option("--max-radius", max_radius, "radius scan limit")
        ->capture_default_str()
        ->check(CLI::Range(0u, 60u));
    add_cap(cmd);
    cmd->callback([&] {
      action = [&] {
        out.command = "inj-radius";
        out.inputs = {{"src", src_spec}, {"dst", dst_spec}, {"max_radius", max_radius}, {"cap", cap}};
        const auto src = load_group(src_spec, out);
        const auto dst = load_group(dst_spec, out);
        const auto r = mg::injectivity_radius(src, dst, max_radius, cap);
        out.result = similarity_json(r, false);
        out.result["epimorphism"] = "trusted (declared by caller)";
        print_similarity(out, r, false);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("lh-check", "check a lacunary hyperbolicity certificate");
    cmd->add_option("--sequence", sequence_file, "JSON certificate file")->required();
    cmd->add_option("--max-radius", max_radius, "cap on checked radii")
        ->capture_default_str()
        ->check(CLI::Range(0u, 60u));
    add_cap(cmd);
    cmd->callback([&] {
      action = [&] {
        out.command = "lh-check";
        out.inputs = {{"sequence", sequence_file}, {"max_radius", max_radius}, {"cap", cap}};
        const auto cert = mg::load_lacunary_certificate(sequence_file);
        const auto report = mg::check_lacunary_certificate(cert, max_radius, cap);
        out.result = ordered_json::parse(mg::lacunary_report_to_json(report));
        for (const auto& s : report.stages) {
          out.human << s.label << ": r=" << s.claimed_r << " checked to " << s.checked_r
                    << (s.truncated ? " (truncated)" : "") << " injective=" << yesno(s.injective)
                    << " r/delta=" << s.ratio.str() << "\n";
        }
        out.human << "condition (ii) injectivity: " << (report.condition_ii_holds ? "holds" : "FAILS")
                  << "\n";
        out.human << "ratios strictly increasing on this prefix: "
                  << yesno(report.ratios_strictly_increasing) << "\n";
        out.human << "note: " << mg::LacunaryReport::delta_note << "\n";
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("family", "build one of the explicit families");
    cmd->add_option("--spec", family_spec, "family spec, e.g. Wnk:2,30 or Hp:3")->required();
    cmd->add_option("--emit", emit, "summary | presentation")->capture_default_str();
    cmd->callback([&] {
      action = [&] {
        out.command = "family";
        out.inputs = {{"spec", family_spec}, {"emit", emit}};
        const auto built = mg::build_family(family_spec);
        for (const auto& n : built.notes) out.warnings.push_back(n);
        if (emit == "presentation") {
          if (!built.presentation)
            throw mg::PreconditionError("spec '" + family_spec + "' has no presentation to emit");
          const std::string text = mg::format_presentation(*built.presentation);
          out.result = {{"presentation", text}};
          out.human << text;
          return;
        }
        if (emit != "summary") throw mg::PreconditionError("unknown --emit mode '" + emit + "'");
        ordered_json res;
        res["spec"] = family_spec;
        res["has_oracle"] = built.group.has_value();
        if (built.group) {
          res["arity"] = built.group->arity();
          res["markers"] = built.group->marker_names().names();
          out.human << "group: " << built.group->describe() << "\n";
          out.human << "arity: " << built.group->arity() << "\n";
        } else {
          out.human << "group: (presentation only, no word-problem oracle)\n";
        }
        if (built.presentation) {
          ordered_json lens = ordered_json::array();
          for (const auto& r : built.presentation->relators) lens.push_back(r.size());
          res["relator_lengths"] = std::move(lens);
          out.human << "relators:";
          for (const auto& r : built.presentation->relators) out.human << " " << r.size();
          out.human << (built.presentation->relators.empty() ? " (none)" : "") << "\n";
        }
        out.result = std::move(res);
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("modelcheck", "evaluate a sentence on a finite group table");
    cmd->add_option("--table", table_file, "group table JSON file")->required();
    cmd->add_option("--formula", formula_name, "named formula (psi:P, phi:P, zeta) or a file")
        ->required();
    cmd->add_option("--budget", budget, "evaluation budget")->capture_default_str();
    cmd->callback([&] {
      action = [&] {
        out.command = "modelcheck";
        out.inputs = {{"table", table_file}, {"formula", formula_name}, {"budget", budget}};
        const auto table = mg::FiniteGroupTable::load(table_file);
        mg::Formula formula = [&] {
          try {
            return mg::make_named_formula(formula_name);
          } catch (const mg::PreconditionError&) {
            std::ifstream in(formula_name);
            if (!in) throw;
            std::stringstream buf;
            buf << in.rdbuf();
            return mg::parse_formula(buf.str());
          }
        }();
        if (!formula.is_sentence())
          throw mg::PreconditionError("formula has free variables; only sentences are checkable");
        const bool value = mg::eval_formula(table, formula, {}, budget);
        out.result["formula"] = mg::print_formula(formula);
        out.result["value"] = value;
        out.human << "formula: " << mg::print_formula(formula) << "\n";
        out.human << "value: " << (value ? "true" : "false") << "\n";
        if (formula_name.rfind("phi:", 0) == 0 && value) {
          const auto p = static_cast<std::uint32_t>(std::stoul(formula_name.substr(4)));
          const auto witness = mg::find_phi_witness(table, p, budget);
          ordered_json wnames = ordered_json::array();
          out.human << "witness:";
          for (const auto e : witness) {
            wnames.push_back(table.name(e));
            out.human << " " << table.name(e);
          }
          out.human << "\n";
          const auto check = mg::verify_phi_witness(table, witness);
          out.result["witness"] = std::move(wnames);
          out.result["witness_check"] = {
              {"tuple_closed_under_conjugation", check.tuple_closed_under_conjugation},
              {"subgroup_normal", check.subgroup_normal},
              {"noncentral_witness_found", check.noncentral_witness_found},
              {"subgroup_order", check.subgroup_elements.size()}};
          out.human << "witness verified: " << yesno(check.all_ok()) << " (normal subgroup of order "
                    << check.subgroup_elements.size() << ")\n";
        }
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("up-check", "ball test for membership in U_p");
    cmd->add_option("--group", group_spec, "group spec of arity p + 2")->required();
    cmd->add_option("--p", p_param, "the parameter p")->required();
    add_cap(cmd);
    cmd->callback([&] {
      action = [&] {
        out.command = "up-check";
        out.inputs = {{"group", group_spec}, {"p", p_param}, {"cap", cap}};
        const auto m = load_group(group_spec, out);
        const auto report = mg::check_Up_membership(m, p_param, cap);
        out.result["member"] = report.member;
        out.result["required_radius"] = report.required_radius;
        out.result["similarity"] = similarity_json(report.similarity, false);
        out.result["orders_ok"] = report.orders_ok;
        out.result["commute_ok"] = report.commute_ok;
        out.result["conjugation_permutes"] = report.conjugation_permutes;
        out.result["noncentral_ok"] = report.noncentral_ok;
        out.human << "member: " << yesno(report.member) << "\n";
        out.human << "similarity radius: " << report.similarity.radius << " (required "
                  << report.required_radius << ")\n";
        out.human << "facts: orders=" << yesno(report.orders_ok)
                  << " commute=" << yesno(report.commute_ok)
                  << " conjugation-permutes=" << yesno(report.conjugation_permutes)
                  << " noncentral=" << yesno(report.noncentral_ok) << "\n";
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("pattern-sentence",
                                   "existential sentence pinning the radius-r ball pattern");
    cmd->add_option("--group", group_spec, "group spec")->required();
    cmd->add_option("--radius", radius, "pattern radius")->capture_default_str();
    add_cap(cmd);
    cmd->callback([&] {
      action = [&] {
        out.command = "pattern-sentence";
        out.inputs = {{"group", group_spec}, {"radius", radius}, {"cap", cap}};
        const auto m = load_group(group_spec, out);
        const auto f = mg::pattern_sentence(m, radius, cap);
        out.result = {{"formula", mg::print_formula(f)}, {"atoms", f.atom_count()}};
        out.human << mg::print_formula(f) << "\n";
      };
    });
  }

  {
    auto* cmd = app.add_subcommand("growth", "ball sizes up to a radius");
    cmd->add_option("--group", group_spec, "group spec")->required();
    cmd->add_option("--max-radius", max_radius, "largest radius")->capture_default_str();
    add_cap(cmd);
    cmd->callback([&] {
      action = [&] {
        out.command = "growth";
        out.inputs = {{"group", group_spec}, {"max_radius", max_radius}, {"cap", cap}};
        const auto m = load_group(group_spec, out);
        ordered_json sizes = ordered_json::array();
        for (unsigned r = 0; r <= max_radius; ++r) {
          const auto b = mg::ball(m, r, cap);
          sizes.push_back(b.vertices.size());
          if (r) out.human << " ";
          out.human << b.vertices.size();
        }
        out.human << "\n";
        out.result = {{"sizes", std::move(sizes)}};
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    action();
  } catch (const mg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  out.flush();
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
