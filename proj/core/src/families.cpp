#include "mg/families.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace mg {

namespace {

std::pair<std::string, std::string> split_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) return {spec, ""};
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

std::uint64_t parse_count(const std::string& text, const std::string& spec) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw PreconditionError("malformed family spec '" + spec + "'");
  return std::stoull(text);
}

Word commutator(std::uint32_t a, std::uint32_t b) {
  return Word({Letter{a, 1}, Letter{b, 1}, Letter{a, -1}, Letter{b, -1}});
}

// Presentation attached to structural oracles, for display and for the
// homomorphism checks in injectivity_radius.
std::optional<Presentation> structural_presentation(const std::string& head, std::uint64_t param,
                                                    const Alphabet& alphabet) {
  Presentation p;
  p.alphabet = alphabet;
  if (head == "free") return p;
  if (head == "cyclic") {
    p.relators.push_back(Word::power(0, static_cast<std::int64_t>(param)));
    return p;
  }
  if (head == "zn") {
    for (std::uint32_t i = 0; i < param; ++i)
      for (std::uint32_t j = i + 1; j < param; ++j) p.relators.push_back(commutator(i, j));
    return p;
  }
  if (head == "Ap") {
    for (std::uint32_t i = 0; i < param; ++i)
      p.relators.push_back(Word::power(i, static_cast<std::int64_t>(param)));
    for (std::uint32_t i = 0; i < param; ++i)
      for (std::uint32_t j = i + 1; j < param; ++j) p.relators.push_back(commutator(i, j));
    return p;
  }
  if (head == "Bp") {
    p.relators.push_back(Word::power(0, static_cast<std::int64_t>(param)));
    p.relators.push_back(Word::power(1, static_cast<std::int64_t>(param)));
    return p;
  }
  if (head == "Hp") {
    const auto pp = static_cast<std::uint32_t>(param);
    const std::uint32_t c = pp;
    const std::uint32_t d = pp + 1;
    for (std::uint32_t i = 0; i < pp; ++i)
      p.relators.push_back(Word::power(i, static_cast<std::int64_t>(pp)));
    for (std::uint32_t i = 0; i < pp; ++i)
      for (std::uint32_t j = i + 1; j < pp; ++j) p.relators.push_back(commutator(i, j));
    p.relators.push_back(Word::power(c, static_cast<std::int64_t>(pp)));
    p.relators.push_back(Word::power(d, static_cast<std::int64_t>(pp)));
    // t^-1 a_i t a_{i+1}^-1 for t in {c, d}: conjugation advances the cycle.
    for (const std::uint32_t t : {c, d}) {
      for (std::uint32_t i = 0; i < pp; ++i) {
        const std::uint32_t next = (i + 1) % pp;
        if (next == i) continue;  // p == 1
        p.relators.push_back(Word({Letter{t, -1}, Letter{i, 1}, Letter{t, 1}, Letter{next, -1}}));
      }
    }
    return p;
  }
  return std::nullopt;  // table, pres
}

}  // namespace

Presentation wnk_presentation(unsigned n, unsigned k) {
  if (n < 1 || k < 1) throw PreconditionError("Wnk parameters must be positive");
  Presentation p;
  p.alphabet = Alphabet({"u", "v"});
  for (unsigned j = 1; j <= n; ++j) {
    Word r;
    for (unsigned m = 1; m <= k; ++m) {
      r.append(Word::power(0, j));
      r.append(Word::power(1, m));
    }
    p.relators.push_back(r);
  }
  return p;
}

Presentation surface_presentation(unsigned genus) {
  if (genus < 1) throw PreconditionError("surface genus must be positive");
  std::vector<std::string> names;
  for (unsigned i = 1; i <= genus; ++i) {
    names.push_back("a_" + std::to_string(i));
    names.push_back("b_" + std::to_string(i));
  }
  Presentation p;
  p.alphabet = Alphabet(std::move(names));
  Word r;
  for (unsigned i = 0; i < genus; ++i) r.append(commutator(2 * i, 2 * i + 1));
  p.relators.push_back(r);
  return p;
}

FamilyResult build_family(const std::string& spec) {
  FamilyResult out;
  const auto [head, tail] = split_spec(spec);

  if (head == "Wnk") {
    const std::size_t comma = tail.find(',');
    if (comma == std::string::npos)
      throw PreconditionError("Wnk spec needs two parameters, e.g. Wnk:2,30");
    const auto n = parse_count(tail.substr(0, comma), spec);
    const auto k = parse_count(tail.substr(comma + 1), spec);
    Presentation p = wnk_presentation(static_cast<unsigned>(n), static_cast<unsigned>(k));
    out.presentation = p;
    if (k >= 30) {
      out.group = MarkedGroup::standard(make_dehn_oracle(p, spec), p);
    } else {
      out.notes.push_back("Wnk with k < 30 is not covered by the C'(1/6) guarantee; "
                          "presentation emitted without a word-problem oracle");
    }
    return out;
  }

  if (head == "surface") {
    const auto g = parse_count(tail, spec);
    Presentation p = surface_presentation(static_cast<unsigned>(g));
    out.presentation = p;
    const auto report = check_small_cancellation(p, Rational(1, 6));
    if (report.passed) {
      out.group = MarkedGroup::standard(make_dehn_oracle(p, spec), p);
    } else {
      out.notes.push_back("surface:" + tail + " fails C'(1/6) (max piece ratio " +
                          report.max_ratio.str() +
                          "); presentation emitted without a word-problem oracle");
    }
    return out;
  }

  // Oracle-backed specs.
  std::vector<std::string> warnings;
  OraclePtr oracle = build_oracle(spec, &warnings);
  out.notes = std::move(warnings);
  std::optional<Presentation> source;
  if (head == "pres") {
    source = load_presentation(tail).presentation;
  } else if (head != "table") {
    const auto param = tail.find_first_not_of("0123456789") == std::string::npos && !tail.empty()
                           ? std::stoull(tail)
                           : 0;
    source = structural_presentation(head, param, oracle->alphabet());
  }
  out.presentation = source;
  out.group = MarkedGroup::standard(std::move(oracle), std::move(source));
  return out;
}

MarkedGroup build_marked_group(const std::string& spec, std::vector<std::string>* notes) {
  FamilyResult r = build_family(spec);
  if (notes)
    for (auto& n : r.notes) notes->push_back(std::move(n));
  if (!r.group)
    throw PreconditionError("spec '" + spec + "' yields no word-problem oracle: " +
                            (r.notes.empty() ? "" : r.notes.front()));
  return std::move(*r.group);
}

LacunaryCertificate parse_lacunary_certificate(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("stages") || !doc["stages"].is_array())
    throw ParseError("certificate document needs a 'stages' array");
  LacunaryCertificate cert;
  for (const auto& stage : doc["stages"]) {
    if (!stage.contains("group") || !stage.contains("delta"))
      throw ParseError("each stage needs 'group' and 'delta'");
    LacunaryCertificate::Stage s{
        build_marked_group(stage["group"].get<std::string>()),
        Rational::parse(stage["delta"].is_number_integer()
                            ? std::to_string(stage["delta"].get<std::int64_t>())
                            : stage["delta"].get<std::string>()),
        std::nullopt, stage["group"].get<std::string>()};
    if (stage.contains("r")) s.r = stage["r"].get<unsigned>();
    cert.stages.push_back(std::move(s));
  }
  return cert;
}

LacunaryCertificate load_lacunary_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open certificate file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_lacunary_certificate(buf.str());
}

}  // namespace mg
