#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <random>

#include "mg/errors.hpp"
#include "mg/families.hpp"
#include "mg/oracle.hpp"
#include "testutil.hpp"

using namespace mg;
using mgtest::random_word;

namespace {

Presentation pres_of(const std::string& text) { return parse_presentation(text).presentation; }

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/mgtest_") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("structural oracle evaluations") {
  const auto free2 = build_oracle("free:2");
  CHECK(free2->arity() == 2);
  CHECK(free2->normal_form(parse_word("a b b^-1", free2->alphabet())) ==
        free2->normal_form(parse_word("a", free2->alphabet())));

  const auto c6 = build_oracle("cyclic:6");
  CHECK(c6->arity() == 1);
  CHECK(c6->normal_form(Word::power(0, 7)) == c6->normal_form(Word::single(0)));
  const auto c5 = build_oracle("cyclic:5");
  CHECK(c5->normal_form(Word::power(0, 5)) == c5->identity_key());

  const auto z2 = build_oracle("zn:2");
  CHECK(z2->normal_form(parse_word("a b", z2->alphabet())) ==
        z2->normal_form(parse_word("b a", z2->alphabet())));
  CHECK(z2->normal_form(parse_word("a b", z2->alphabet())) !=
        z2->normal_form(parse_word("a b^-1", z2->alphabet())));
}

TEST_CASE("Bp oracle: free product of two cyclics") {
  const auto b3 = build_oracle("Bp:3");
  CHECK(b3->arity() == 2);
  const auto& ab = b3->alphabet();
  CHECK(b3->normal_form(parse_word("c^3", ab)) == b3->identity_key());
  CHECK(b3->normal_form(parse_word("d^-3", ab)) == b3->identity_key());
  // (cd)^3 is an alternating nonempty normal form, hence non-identity.
  CHECK(b3->normal_form(parse_word("c d c d c d", ab)) != b3->identity_key());
  CHECK(b3->normal_form(parse_word("c d c^-1 d^-1", ab)) != b3->identity_key());
  CHECK(b3->normal_form(parse_word("c^2", ab)) == b3->normal_form(parse_word("c^-1", ab)));
}

TEST_CASE("Hp oracle: orders, commutation, and the cyclic conjugation action") {
  const auto h3 = build_oracle("Hp:3");
  REQUIRE(h3->arity() == 5);
  const auto& ab = h3->alphabet();
  CHECK(ab.names() == std::vector<std::string>{"a_1", "a_2", "a_3", "c", "d"});

  CHECK(h3->normal_form(parse_word("c^-1 a_1 c", ab)) == h3->normal_form(parse_word("a_2", ab)));

  // a_i have key order exactly p.
  for (int i = 1; i <= 3; ++i) {
    const std::string a = "a_" + std::to_string(i);
    CHECK(h3->normal_form(parse_word(a + "^3", ab)) == h3->identity_key());
    CHECK(h3->normal_form(parse_word(a, ab)) != h3->identity_key());
    CHECK(h3->normal_form(parse_word(a + "^2", ab)) != h3->identity_key());
  }

  // The a_i commute.
  CHECK(h3->normal_form(parse_word("a_1 a_2 a_1^-1 a_2^-1", ab)) == h3->identity_key());

  // Conjugation by c and by d induce the same cyclic permutation of the keys.
  std::map<CanonicalKey, CanonicalKey> conj_c;
  std::map<CanonicalKey, CanonicalKey> conj_d;
  for (int i = 1; i <= 3; ++i) {
    const std::string a = "a_" + std::to_string(i);
    conj_c[h3->normal_form(parse_word(a, ab))] =
        h3->normal_form(parse_word("c^-1 " + a + " c", ab));
    conj_d[h3->normal_form(parse_word(a, ab))] =
        h3->normal_form(parse_word("d^-1 " + a + " d", ab));
  }
  CHECK(conj_c == conj_d);
  // It is a 3-cycle: following it three times returns to the start.
  CanonicalKey k = h3->normal_form(parse_word("a_1", ab));
  for (int step = 0; step < 3; ++step) {
    CHECK(conj_c.count(k) == 1);
    k = conj_c[k];
  }
  CHECK(k == h3->normal_form(parse_word("a_1", ab)));
  CHECK(conj_c[h3->normal_form(parse_word("a_1", ab))] != h3->normal_form(parse_word("a_1", ab)));

  // c and d generate a free-product part: cd has infinite order (no small power dies).
  CHECK(h3->normal_form(parse_word("c d c d c d", ab)) != h3->identity_key());
}

TEST_CASE("oracle congruence spot test") {
  std::mt19937_64 rng(41);
  for (const std::string spec : {"cyclic:6", "zn:2", "Bp:3", "Hp:3", "Ap:3"}) {
    const auto oracle = build_oracle(spec);
    const std::size_t n = oracle->arity();
    // Bucket random words by key, then probe congruence on colliding pairs.
    std::map<CanonicalKey, Word> seen;
    int checked = 0;
    for (int i = 0; i < 4000 && checked < 40; ++i) {
      const Word u = random_word(rng, n, rng() % 9);
      const auto key = oracle->normal_form(u);
      const auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, u);
        continue;
      }
      const Word& v = it->second;
      const Word w = random_word(rng, n, 1 + rng() % 6);
      CHECK(oracle->normal_form(w * u) == oracle->normal_form(w * v));
      CHECK(oracle->normal_form(u * w) == oracle->normal_form(v * w));
      ++checked;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("normal_form rejects out-of-range letters") {
  const auto c5 = build_oracle("cyclic:5");
  CHECK_THROWS_AS(c5->normal_form(Word::single(1)), PreconditionError);
}

TEST_CASE("build_oracle spec errors and warnings") {
  CHECK_THROWS_AS(build_oracle("nonsense:3"), PreconditionError);
  CHECK_THROWS_AS(build_oracle("cyclic:x"), PreconditionError);
  CHECK_THROWS_AS(build_oracle("cyclic:0"), PreconditionError);
  CHECK_THROWS_AS(build_oracle("pres:/no/such/file.gp"), Error);

  std::vector<std::string> warnings;
  build_oracle("Ap:4", &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("not prime") != std::string::npos);
  warnings.clear();
  build_oracle("Hp:5", &warnings);
  CHECK(warnings.empty());
}

TEST_CASE("finite table oracle validates axioms and derives inverses") {
  const auto table = mgtest::make_s3_table();
  const std::string path = write_temp("s3.json", table.to_json_text());
  const auto oracle = build_oracle("table:" + path);
  CHECK(oracle->arity() == 5);
  // Generator i marks element i+1: word g1 g1 evaluates to p1*p1.
  const auto& ab = oracle->alphabet();
  CHECK(oracle->normal_form(parse_word("a a", ab)) == oracle->identity_key());  // transposition^2

  auto bad = table.to_json_text();
  // Break associativity/identity by pointing an entry somewhere else.
  bad.replace(bad.find("\"mul\":[[0,1"), 12, "\"mul\":[[0,2");
  const std::string bad_path = write_temp("s3bad.json", bad);
  CHECK_THROWS_AS(build_oracle("table:" + bad_path), PreconditionError);
  std::remove(path.c_str());
  std::remove(bad_path.c_str());
}

TEST_CASE("pres oracle requires C'(1/6) and carries the failing report") {
  const Presentation g1 = surface_presentation(1);
  try {
    make_dehn_oracle(g1, "pres:genus1");
    FAIL("expected SmallCancellationError");
  } catch (const SmallCancellationError& e) {
    CHECK(e.report().max_ratio == Rational(1, 4));
    CHECK(!e.report().passed);
  }
}

TEST_CASE("Dehn algorithm on <a | a^5>") {
  const Presentation p = pres_of("gens: a\nrel: a^5\n");
  const auto trivial = dehn_is_trivial(p, Word::power(0, 5));
  CHECK(trivial.trivial);
  CHECK(trivial.trace.steps.size() == 1);
  CHECK(trivial.trace.final_word.empty());

  const auto nontrivial = dehn_is_trivial(p, Word::power(0, 3));
  CHECK(!nontrivial.trivial);
  CHECK(!nontrivial.trace.final_word.empty());
}

TEST_CASE("Dehn algorithm on <c,d | c^3, d^3>") {
  const Presentation p = pres_of("gens: c d\nrel: c^3\nrel: d^3\n");
  const Word comm = parse_word("c d c^-1 d^-1", p.alphabet);
  CHECK(!dehn_is_trivial(p, comm).trivial);
  CHECK(dehn_is_trivial(p, parse_word("c d^3 c^2", p.alphabet)).trivial);
}

TEST_CASE("Dehn trace replays and strictly shortens") {
  std::mt19937_64 rng(43);
  const Presentation a7 = pres_of("gens: a\nrel: a^7\n");
  const Presentation c3d3 = pres_of("gens: c d\nrel: c^3\nrel: d^3\n");
  for (const Presentation* p : {&a7, &c3d3}) {
    const DehnSolver solver(*p);
    for (int i = 0; i < 200; ++i) {
      const Word w = random_word(rng, p->alphabet.size(), rng() % 20);
      const auto result = solver.is_trivial(w);
      CHECK(result.trace.steps.size() <= std::max<std::size_t>(w.size(), 1));
      // Replay every step literally.
      Word cur = cyclic_reduce(w);
      std::size_t prev_len = cur.size() + 1;
      for (const auto& step : result.trace.steps) {
        REQUIRE(step.pos + step.matched_len <= cur.size());
        CHECK(cur.subword(step.pos, step.matched_len) ==
              step.relator.subword(0, step.matched_len));
        CHECK(step.replacement ==
              step.relator.subword(step.matched_len, step.relator.size() - step.matched_len)
                  .inverse());
        Word next = cur.subword(0, step.pos);
        next.append(step.replacement);
        next.append(cur.subword(step.pos + step.matched_len,
                                cur.size() - step.pos - step.matched_len));
        cur = free_reduce(next);
        CHECK(cur.size() < prev_len);
        prev_len = cur.size();
      }
      CHECK(cur == result.trace.final_word);
      CHECK(result.trivial == cur.empty());
    }
  }
}

TEST_CASE("Dehn equality matches cyclic:m on all short words") {
  for (unsigned m = 4; m <= 6; ++m) {
    const Presentation p = pres_of("gens: a\nrel: a^" + std::to_string(m) + "\n");
    const DehnSolver solver(p);
    const auto cyc = build_oracle("cyclic:" + std::to_string(m));
    for (int i = -6; i <= 6; ++i) {
      for (int j = -6; j <= 6; ++j) {
        const Word u = Word::power(0, i);
        const Word v = Word::power(0, j);
        const bool dehn_eq = solver.is_trivial(u * v.inverse()).trivial;
        const bool structural_eq = cyc->normal_form(u) == cyc->normal_form(v);
        CHECK(dehn_eq == structural_eq);
      }
    }
  }
}

TEST_CASE("pres oracle keys agree with cyclic:5 classes") {
  const Presentation p = pres_of("gens: a\nrel: a^5\n");
  const auto dehn = make_dehn_oracle(p, "pres:a5");
  const auto cyc = build_oracle("cyclic:5");
  const auto words = mgtest::reduced_words_up_to(1, 6);
  for (const Word& u : words) {
    for (const Word& v : words) {
      CHECK((dehn->normal_form(u) == dehn->normal_form(v)) ==
            (cyc->normal_form(u) == cyc->normal_form(v)));
    }
  }
}

TEST_CASE("pres oracle identifies words differing by conjugated relators") {
  std::mt19937_64 rng(59);
  const auto surface = build_family("surface:2");
  REQUIRE(surface.group);
  const auto& oracle = surface.group->oracle();
  const Word relator = surface.presentation->relators[0];
  for (int i = 0; i < 200; ++i) {
    const Word u = random_word(rng, 4, rng() % 8);
    const Word t = random_word(rng, 4, rng() % 4);
    // u  and  u * t R^{+-1} t^-1 are the same element.
    const Word conj = t * (rng() % 2 ? relator : relator.inverse()) * t.inverse();
    CHECK(oracle.normal_form(u) == oracle.normal_form(u * conj));
    CHECK(oracle.normal_form(u) != oracle.normal_form(u * relator.subword(0, 3)));
  }
  // The two halves of the relator meet: a_1 b_1 a_1^-1 b_1^-1 = b_2 a_2 b_2^-1 a_2^-1.
  const auto& ab = oracle.alphabet();
  CHECK(oracle.normal_form(parse_word("a_1 b_1 a_1^-1 b_1^-1", ab)) ==
        oracle.normal_form(parse_word("b_2 a_2 b_2^-1 a_2^-1", ab)));
}

TEST_CASE("pres oracle free regime: long relators behave freely on short words") {
  const Presentation p = wnk_presentation(1, 30);
  const auto dehn = make_dehn_oracle(p, "pres:w1");
  const auto free2 = build_oracle("free:2");
  std::mt19937_64 rng(47);
  for (int i = 0; i < 200; ++i) {
    const Word u = random_word(rng, 2, rng() % 10);
    const Word v = random_word(rng, 2, rng() % 10);
    CHECK((dehn->normal_form(u) == dehn->normal_form(v)) ==
          (free2->normal_form(u) == free2->normal_form(v)));
  }
}
