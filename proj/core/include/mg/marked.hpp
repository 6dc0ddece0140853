#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mg/formula.hpp"
#include "mg/oracle.hpp"
#include "mg/rational.hpp"

namespace mg {

/// A point of the space of marked groups: an oracle together with an ordered
/// marking. Markers are words over the oracle's generators (single letters
/// for a fresh marking; arbitrary words after Nielsen moves).
class MarkedGroup {
 public:
  MarkedGroup(OraclePtr oracle, std::vector<Word> markers, Alphabet marker_names,
              std::optional<Presentation> source = std::nullopt);

  /// Marking by the oracle's own generators.
  static MarkedGroup standard(OraclePtr oracle, std::optional<Presentation> source = std::nullopt);

  std::size_t arity() const { return markers_.size(); }
  const GroupOracle& oracle() const { return *oracle_; }
  const OraclePtr& oracle_ptr() const { return oracle_; }
  const std::vector<Word>& markers() const { return markers_; }
  const Alphabet& marker_names() const { return marker_names_; }
  const std::optional<Presentation>& source() const { return source_; }

  /// Key of a word over the marking: substitute marker words, then evaluate.
  CanonicalKey eval(const Word& w) const;
  CanonicalKey identity_key() const { return oracle_->identity_key(); }

  std::string describe() const;

 private:
  OraclePtr oracle_;
  std::vector<Word> markers_;
  Alphabet marker_names_;
  std::optional<Presentation> source_;
  bool standard_marking_ = false;  // markers are exactly the oracle generators
};

/// Exact closed ball of radius r in the Cayley graph of the marking.
/// Vertices are numbered by discovery order of a shortlex breadth-first
/// search over reduced words (generator order, then sign, + before -);
/// vertex 0 is the identity and each vertex's rep is its shortlex-least
/// geodesic word.
struct BallGraph {
  static constexpr std::int64_t outside = -1;

  struct Vertex {
    Word rep;
    CanonicalKey key;
    unsigned depth = 0;
  };

  unsigned radius = 0;
  std::vector<Vertex> vertices;
  /// transitions[v][Letter::index()] = target vertex, or `outside` when the
  /// neighbor lies beyond the ball. Edges exist iff both endpoints are
  /// inside; a trivial marker yields a loop at every vertex.
  std::vector<std::vector<std::int64_t>> transitions;
};

BallGraph ball(const MarkedGroup& m, unsigned radius, std::size_t cap);

/// The abstract labeled shape of a ball: no keys, no representative words.
/// Because discovery order is forced by the shortlex BFS, two marked groups
/// have equal signatures iff their radius-r balls admit a basepoint-fixing,
/// label-preserving isomorphism.
struct BallSignature {
  unsigned radius = 0;
  std::size_t vertex_count = 0;
  std::vector<std::int64_t> transitions;  // row-major vertex x letter index

  friend bool operator==(const BallSignature&, const BallSignature&) = default;
};

BallSignature ball_signature(const MarkedGroup& m, unsigned radius, std::size_t cap);
BallSignature signature_of(const BallGraph& b);

/// Result of a bounded similarity computation. `radius` is the largest
/// r <= max_r at which the signatures agree, or -1 if they differ already at
/// r = 0 (or the arities differ). `capped` means the scan stopped for a
/// reason other than a mismatch (max_r reached, or the vertex cap hit at the
/// next radius), so the true radius may be larger.
struct SimilarityResult {
  int radius = -1;
  bool capped = false;
  bool cap_hit = false;
  bool arity_mismatch = false;

  /// Marked distance 2^{-radius}; 2 when radius = -1. An upper bound when
  /// capped.
  Rational distance() const;
};

SimilarityResult similarity_radius(const MarkedGroup& a, const MarkedGroup& b, unsigned max_r,
                                   std::size_t cap);

/// An elementary move on the marking; the underlying group is unchanged.
struct NielsenMove {
  enum class Kind { swap, invert, right_multiply, stabilize, destabilize };

  Kind kind = Kind::stabilize;
  std::size_t i = 0;  // 0-based marker index
  std::size_t j = 0;
  int sign = 1;  // for right_multiply: x_i -> x_i x_j^{sign}

  /// Text forms: swap:I,J | invert:I | rmul:I,J,+ | rmul:I,J,- | stab |
  /// destab:I with 1-based indices.
  static NielsenMove parse(const std::string& text);
  std::string str() const;
};

/// Applies one move. destabilize requires the dropped marker to evaluate to
/// the identity.
MarkedGroup nielsen_apply(const MarkedGroup& m, const NielsenMove& move);

/// All nonempty reduced words over the marking of length <= max_len that
/// evaluate to the identity, in shortlex order.
std::vector<Word> kernel_elements(const MarkedGroup& m, unsigned max_len);

/// Membership of the marked group in the basic open set W(Y, Z): every word
/// of `inside` evaluates to the identity and no word of `outside` does.
bool in_basic_open(const MarkedGroup& m, const std::vector<Word>& inside,
                   const std::vector<Word>& outside);

/// Largest r <= max_r such that the generator-to-generator map src -> dst
/// (trusted to be a well-defined epimorphism) is injective on src's r-ball.
/// When src carries a presentation, each relator is verified to die in dst.
SimilarityResult injectivity_radius(const MarkedGroup& src, const MarkedGroup& dst, unsigned max_r,
                                    std::size_t cap);

/// A chain of marked groups with canonical generator-to-generator
/// epimorphisms, trusted hyperbolicity constants delta_i, and claimed
/// injectivity radii r_i (one per consecutive pair).
struct LacunaryCertificate {
  struct Stage {
    MarkedGroup group;
    Rational delta;                 // trusted, never verified
    std::optional<unsigned> r;      // claimed radius; required on all but the last stage
    std::string label;
  };
  std::vector<Stage> stages;
};

struct LacunaryReport {
  struct StageCheck {
    std::string label;
    unsigned claimed_r = 0;
    unsigned checked_r = 0;  // min(claimed_r, max_r)
    bool truncated = false;  // claimed_r exceeded max_r
    bool injective = false;
    Rational ratio;  // r_i / delta_i
  };
  std::vector<StageCheck> stages;
  bool condition_ii_holds = false;
  bool ratios_strictly_increasing = false;
  /// delta_i are trusted inputs; this report never verifies them.
  static constexpr const char* delta_note = "delta values are UNVERIFIED (trusted inputs)";
};

LacunaryReport check_lacunary_certificate(const LacunaryCertificate& cert, unsigned max_r,
                                          std::size_t cap);

/// The finite existential sentence asserting the existence of an n-tuple
/// whose radius-r ball pattern equals m's: variables x1..xn, one conjunct
/// per informative ball transition plus pairwise distinctness of vertex
/// representatives. A finite truncation of the Scott sentence without the
/// generation clause.
Formula pattern_sentence(const MarkedGroup& m, unsigned radius, std::size_t cap);

}  // namespace mg
