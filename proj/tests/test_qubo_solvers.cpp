// SPDX-License-Identifier: Apache-2.0

#include "qae/encoding.hpp"
#include "qae/qubo_solvers.hpp"
#include "test_support.hpp"

#include <doctest.h>

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

} // namespace

TEST_CASE("solve_exact examples")
{
  Qubo single(1);
  single.set_weight(0, 0, 5.0);
  CHECK(solve_exact(single) == BitString{0});

  // (1,0) and (0,1) tie at -1; (1,0) is integer 1, (0,1) is integer 2.
  const Qubo q = two_variable_example();
  const BitString x = solve_exact(q);
  CHECK(x == BitString{1, 0});
  CHECK(qubo_energy(q, x) == -1.0);

  // (a + lambda) v^2 with a + lambda = -1: minimum -1 at v = -1 (sign bit only).
  const Qubo enc = build_qubo({SymmetricMatrix::from_rows({{2.0}}), -3.0, EncodingConfig{2}});
  const BitString y = solve_exact(enc);
  CHECK(decode(y, 1, EncodingConfig{2}) == RealVector{-1.0});
  CHECK(qubo_energy(enc, y) == -1.0);
}

TEST_CASE("solve_exact breaks exact ties by integer order")
{
  CHECK(solve_exact(Qubo(5)) == BitString(5, 0));
  Qubo q(3);
  q.set_weight(1, 1, -1.0);
  q.set_weight(2, 2, -1.0);
  q.set_weight(1, 2, 1.0);
  // Minimum -1 at every integer from 2 to 7 (bit 0 is free); 2 wins.
  CHECK(solve_exact(q) == BitString{0, 1, 0});
}

TEST_CASE("solve_exact refuses more than 24 variables")
{
  try
  {
    solve_exact(Qubo(25));
    FAIL("expected TooLarge");
  }
  catch (const Error &e)
  {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("solve_exact agrees with an exhaustive loop")
{
  std::mt19937_64 rng(100);
  for (int t = 0; t < 60; t++)
  {
    const std::size_t m = 1 + t % 14;
    const Qubo q = testing::random_qubo(m, rng);
    const auto brute = testing::brute_minimum(q);
    CHECK(solve_exact(q) == brute.bits);
  }
}

TEST_CASE("flip state keeps incremental gains consistent")
{
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; t++)
  {
    const std::size_t m = 2 + t % 30;
    const Qubo q = testing::random_qubo(m, rng, -5.0, 5.0);
    FlipState state(q, BitString(m, 0));
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    for (int f = 0; f < 500; f++)
    {
      state.flip(pick(rng));
    }
    const double tol = 1e-9 * std::max(1.0, q.magnitude());
    const FlipState fresh(q, state.bits());
    for (std::size_t i = 0; i < m; i++)
    {
      BitString flipped = state.bits();
      flipped[i] ^= 1;
      const double direct = testing::brute_energy(q, flipped) - testing::brute_energy(q, state.bits());
      CHECK(std::abs(state.gain(i) - fresh.gain(i)) <= tol);
      CHECK(std::abs(state.gain(i) - direct) <= tol);
    }
    CHECK(std::abs(state.energy() - testing::brute_energy(q, state.bits())) <= tol);
  }
}

TEST_CASE("tabu defaults")
{
  const TabuParams small = TabuParams::defaults(16, 1);
  CHECK(small.max_iterations == 500);
  CHECK(small.tenure == 4);
  CHECK(small.restarts == 4);
  const TabuParams large = TabuParams::defaults(640, 1);
  CHECK(large.max_iterations == 6400);
  CHECK(large.tenure == 20);
  TabuParams bad = small;
  bad.tenure = 0;
  CHECK_THROWS_AS(solve_tabu(two_variable_example(), bad), Error);
}

TEST_CASE("solve_tabu on non-negative weights returns zero")
{
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; t++)
  {
    const Qubo q = testing::random_qubo(12, rng, 0.0, 1.0);
    const BitString x = solve_tabu(q, TabuParams::defaults(12, t));
    CHECK(x == BitString(12, 0));
    CHECK(qubo_energy(q, x) == 0.0);
  }
}

TEST_CASE("solve_tabu matches the exact solver")
{
  CHECK(qubo_energy(two_variable_example(), solve_tabu(two_variable_example(), TabuParams::defaults(2, 0))) == -1.0);

  std::mt19937_64 rng(16);
  int hits = 0;
  for (int t = 0; t < 100; t++)
  {
    const Qubo q = testing::random_qubo(16, rng);
    const double exact = qubo_energy(q, solve_exact(q));
    const double tabu = qubo_energy(q, solve_tabu(q, TabuParams::defaults(16, static_cast<std::uint64_t>(t))));
    CHECK(tabu >= exact - 1e-12);
    hits += std::abs(tabu - exact) <= 1e-9;
  }
  CHECK(hits >= 95);
}

TEST_CASE("solve_tabu is deterministic and never worse than its start")
{
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; t++)
  {
    const std::size_t m = 5 + 10 * t;
    const Qubo q = testing::random_qubo(m, rng);
    const TabuParams p = TabuParams::defaults(m, 99);
    const BitString a = solve_tabu(q, p);
    CHECK(a == solve_tabu(q, p));
    CHECK(a.size() == m);
    // The first descent starts at the zero string.
    CHECK(qubo_energy(q, a) <= qubo_energy(q, BitString(m, 0)));
  }
}

TEST_CASE("samplers expose their capabilities")
{
  const ExactSampler exact;
  CHECK(exact.capability().max_variables == kExactMaxVariables);
  CHECK(exact.capability().deterministic);
  const TabuSampler tabu;
  CHECK(tabu.capability().max_variables == kUnboundedVariables);
  CHECK_FALSE(tabu.capability().deterministic);
  const Qubo q = two_variable_example();
  CHECK(exact.sample(q, 1) == exact.sample(q, 2));
  CHECK(tabu.sample(q, 5) == tabu.sample(q, 5));
}

TEST_CASE("seed mixing and bit packing")
{
  CHECK(mix_seed(0, 0) != mix_seed(0, 1));
  CHECK(mix_seed(1, 0) != mix_seed(0, 0));
  CHECK(bits_to_integer(BitString{1, 0}) == 1);
  CHECK(bits_to_integer(BitString{0, 1}) == 2);
  CHECK_THROWS_AS(bits_to_integer(BitString(65, 0)), Error);
}
