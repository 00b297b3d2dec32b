// SPDX-License-Identifier: Apache-2.0

#include "qae/decomposer.hpp"
#include "qae/encoding.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <numeric>

using namespace qae;

namespace
{

Qubo two_variable_example()
{
  Qubo q(2);
  q.set_weight(0, 0, -1.0);
  q.set_weight(0, 1, 2.0);
  q.set_weight(1, 1, -1.0);
  return q;
}

ErrorCode code_of(auto &&f)
{
  try
  {
    f();
  }
  catch (const Error &e)
  {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

} // namespace

TEST_CASE("clamp over every variable reproduces the QUBO")
{
  std::mt19937_64 rng(1);
  const Qubo q = testing::random_qubo(6, rng);
  std::vector<std::size_t> all(6);
  std::iota(all.begin(), all.end(), std::size_t{0});
  const BitString x{1, 0, 1, 1, 0, 1};
  const Qubo c = clamp(q, x, all);
  for (std::size_t i = 0; i < 6; i++)
  {
    for (std::size_t j = i; j < 6; j++)
    {
      CHECK(c.weight(i, j) == q.weight(i, j));
    }
  }
  CHECK(c.offset() == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("clamp of the two-variable example")
{
  const Qubo q = two_variable_example();
  const std::size_t subset[] = {0};
  const Qubo c = clamp(q, BitString{0, 1}, subset);
  REQUIRE(c.size() == 1);
  CHECK(c.weight(0, 0) == 1.0);
  CHECK(c.offset() == -1.0);
  CHECK(qubo_energy(c, BitString{0}) == -1.0);
  CHECK(qubo_energy(c, BitString{1}) == 0.0);
}

TEST_CASE("clamp identity holds exhaustively")
{
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; t++)
  {
    const std::size_t m = 12;
    Qubo q = testing::random_qubo(m, rng);
    q.set_offset(0.5);
    BitString x(m);
    for (auto &b : x)
    {
      b = static_cast<std::uint8_t>(rng() & 1);
    }
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::vector<std::size_t> subset(perm.begin(), perm.begin() + 5);
    const Qubo c = clamp(q, x, subset);
    for (std::uint64_t code = 0; code < 32; code++)
    {
      const BitString y = testing::bits_of(code, 5);
      BitString full = x;
      for (std::size_t k = 0; k < 5; k++)
      {
        full[subset[k]] = y[k];
      }
      CHECK(qubo_energy(c, y) == doctest::Approx(testing::brute_energy(q, full)).epsilon(1e-12));
    }
  }
}

TEST_CASE("clamp validates the subset")
{
  const Qubo q = two_variable_example();
  const std::size_t out_of_range[] = {2};
  const std::size_t duplicate[] = {1, 1};
  CHECK(code_of([&] { clamp(q, BitString{0, 0}, out_of_range); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { clamp(q, BitString{0, 0}, duplicate); }) == ErrorCode::DuplicateIndex);
  const std::size_t ok[] = {0};
  CHECK(code_of([&] { clamp(q, BitString{0}, ok); }) == ErrorCode::LengthMismatch);
}

TEST_CASE("decomposer parameters are validated")
{
  DecomposerParams p;
  p.subsolver = std::make_shared<ExactSampler>();
  p.sub_size = 25;
  CHECK_THROWS_AS(p.validate(), Error);
  p.sub_size = 0;
  CHECK_THROWS_AS(p.validate(), Error);
  p.sub_size = 8;
  p.num_repeats = 0;
  CHECK_THROWS_AS(p.validate(), Error);
  p.num_repeats = 1;
  CHECK_NOTHROW(p.validate());
  p.subsolver = nullptr;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("a QUBO that fits one block is solved by the subsolver")
{
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; t++)
  {
    const Qubo q = testing::random_qubo(10, rng);
    DecomposerParams p{16, 5, std::make_shared<ExactSampler>(), static_cast<std::uint64_t>(t)};
    const BitString x = solve_decomposed(q, p);
    CHECK(qubo_energy(q, x) == doctest::Approx(qubo_energy(q, solve_exact(q))).epsilon(1e-12));
  }
}

TEST_CASE("decomposer reaches the exact optimum on m = 20")
{
  std::mt19937_64 rng(2020);
  int hits = 0;
  for (int t = 0; t < 100; t++)
  {
    const Qubo q = testing::random_qubo(20, rng);
    DecomposerParams p{8, 50, std::make_shared<ExactSampler>(), static_cast<std::uint64_t>(t)};
    DecomposerStats stats;
    const BitString x = solve_decomposed(q, p, &stats);
    const double e = qubo_energy(q, x);
    CHECK(e <= stats.initial_energy + 1e-12);
    CHECK(e == doctest::Approx(stats.final_energy));
    hits += std::abs(e - qubo_energy(q, solve_exact(q))) <= 1e-9;
  }
  CHECK(hits >= 95);
}

TEST_CASE("large QUBOs start from a greedy descent and only improve")
{
  std::mt19937_64 rng(64);
  const std::size_t m = 300;
  const Qubo q = testing::random_qubo(m, rng);
  DecomposerParams p{16, 3, std::make_shared<ExactSampler>(), 7};
  DecomposerStats stats;
  const BitString x = solve_decomposed(q, p, &stats);
  CHECK(stats.passes >= 1);
  CHECK(stats.subproblems == stats.passes * ((m + 15) / 16));
  CHECK(qubo_energy(q, x) <= stats.initial_energy);
  // Result is 1-flip optimal within each accepted block, and no worse than greedy.
  CHECK(x == solve_decomposed(q, p));
}

TEST_CASE("decomposed sampler with tabu blocks")
{
  std::mt19937_64 rng(5);
  const Qubo q = testing::random_qubo(40, rng);
  const DecomposingSampler sampler(std::make_shared<TabuSampler>(), 16, 10);
  CHECK(sampler.name() == "tabu-decomposed");
  const BitString a = sampler.sample(q, 3);
  CHECK(a == sampler.sample(q, 3));
  CHECK(a.size() == 40);
  CHECK_THROWS_AS(DecomposingSampler(std::make_shared<ExactSampler>(), 64, 50), Error);
}
