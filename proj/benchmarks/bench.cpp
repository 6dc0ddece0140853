#include <benchmark/benchmark.h>

#include <random>

#include "mg/families.hpp"
#include "mg/marked.hpp"
#include "mg/oracle.hpp"

namespace {

mg::Word random_word(std::mt19937_64& rng, std::size_t arity, std::size_t len) {
  std::vector<mg::Letter> ls;
  ls.reserve(len);
  for (std::size_t i = 0; i < len; ++i)
    ls.push_back(mg::Letter::from_index(static_cast<std::uint32_t>(rng() % (2 * arity))));
  return mg::Word(std::move(ls));
}

void BM_FreeReduce(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const mg::Word w = random_word(rng, 2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mg::free_reduce(w));
}
BENCHMARK(BM_FreeReduce)->Arg(64)->Arg(1024);

void BM_BallFree2(benchmark::State& state) {
  const auto m = mg::build_marked_group("free:2");
  for (auto _ : state)
    benchmark::DoNotOptimize(mg::ball(m, static_cast<unsigned>(state.range(0)), 1u << 21));
}
BENCHMARK(BM_BallFree2)->Arg(4)->Arg(6)->Arg(8);

void BM_BallHp3(benchmark::State& state) {
  const auto m = mg::build_marked_group("Hp:3");
  for (auto _ : state)
    benchmark::DoNotOptimize(mg::ball(m, static_cast<unsigned>(state.range(0)), 1u << 21));
}
BENCHMARK(BM_BallHp3)->Arg(2)->Arg(3);

void BM_SmallCancellationWnk(benchmark::State& state) {
  const mg::Presentation p = mg::wnk_presentation(static_cast<unsigned>(state.range(0)), 30);
  for (auto _ : state)
    benchmark::DoNotOptimize(mg::check_small_cancellation(p, mg::Rational(1, 6)));
}
BENCHMARK(BM_SmallCancellationWnk)->Arg(1)->Arg(2)->Arg(4);

void BM_DehnWordProblem(benchmark::State& state) {
  mg::Presentation p;
  p.alphabet = mg::Alphabet({"c", "d"});
  p.relators = {mg::Word::power(0, 3), mg::Word::power(1, 3)};
  const mg::DehnSolver solver(p);
  std::mt19937_64 rng(2);
  std::vector<mg::Word> words;
  for (int i = 0; i < 64; ++i) words.push_back(random_word(rng, 2, 24));
  for (auto _ : state)
    for (const auto& w : words) benchmark::DoNotOptimize(solver.is_trivial(w));
}
BENCHMARK(BM_DehnWordProblem);

void BM_SimilarityZm(benchmark::State& state) {
  const auto a = mg::build_marked_group("cyclic:20");
  const auto b = mg::build_marked_group("free:1");
  for (auto _ : state) benchmark::DoNotOptimize(mg::similarity_radius(a, b, 16, 1u << 21));
}
BENCHMARK(BM_SimilarityZm);

}  // namespace

BENCHMARK_MAIN();
