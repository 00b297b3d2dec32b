// SPDX-License-Identifier: Apache-2.0

#include "qae/decomposer.hpp"
#include "qae/eigensolver.hpp"
#include "qae/reference.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace qae;

namespace
{

QaeConfig exact_config(int qubits)
{
  QaeConfig cfg;
  cfg.enc.qubits = qubits;
  cfg.solver = std::make_shared<ExactSampler>();
  return cfg;
}

QaeConfig decomposed_config(int qubits, std::uint64_t seed = 0)
{
  QaeConfig cfg;
  cfg.enc.qubits = qubits;
  cfg.solver = std::make_shared<DecomposingSampler>(std::make_shared<TabuSampler>(), 64, 50);
  cfg.seed = seed;
  return cfg;
}

QaeConfig exact_decomposed_config(int qubits)
{
  QaeConfig cfg;
  cfg.enc.qubits = qubits;
  cfg.solver = std::make_shared<DecomposingSampler>(std::make_shared<ExactSampler>(), 16, 50);
  return cfg;
}

class ZeroSampler final : public Sampler
{
public:
  SamplerCapability capability() const override { return {kUnboundedVariables, true}; }
  BitString sample(const Qubo &q, std::uint64_t) const override { return BitString(q.size(), 0); }
  std::string name() const override { return "zero"; }
};

double lambda_min(const SymmetricMatrix &a)
{
  return eigh_reference(a).values.front();
}

} // namespace

TEST_CASE("is_trivial")
{
  CHECK(is_trivial(BitString{0, 0, 0, 0}));
  CHECK_FALSE(is_trivial(BitString{0, 0, 1, 0}));
  CHECK_FALSE(is_trivial(BitString{0, 0, 0, 1})); // sign bit alone decodes to -1
  CHECK(is_trivial(BitString{}));
}

TEST_CASE("lambda range for the identity doubles the lower end")
{
  const LambdaSearchState st = find_lambda_range(SymmetricMatrix::identity(2), exact_config(3));
  CHECK(st.lo <= -2.0);
  CHECK(st.hi == 1.0);
  CHECK(st.lo_doublings == 1);
  CHECK(st.bracketed());
}

TEST_CASE("lambda range for diag(-5, 3)")
{
  const LambdaSearchState st = find_lambda_range(SymmetricMatrix::diagonal(std::vector<double>{-5.0, 3.0}), exact_config(3));
  CHECK(st.lo == -5.0);
  CHECK(st.hi == 5.0);
}

TEST_CASE("lambda range for [[-1]] skips the degenerate upper end")
{
  const LambdaSearchState st = find_lambda_range(SymmetricMatrix::from_rows({{-1.0}}), exact_config(3));
  CHECK(st.lo == -1.0);
  CHECK(st.hi == 2.0);
  CHECK(st.hi_doublings == 1);
}

TEST_CASE("lambda search errors")
{
  CHECK_THROWS_AS(find_lambda_range(SymmetricMatrix::zeros(2), exact_config(3)), Error);
  try
  {
    ground_state(SymmetricMatrix::zeros(1), exact_config(3));
    FAIL("expected ZeroMatrix");
  }
  catch (const Error &e)
  {
    CHECK(e.code() == ErrorCode::ZeroMatrix);
  }

  QaeConfig cfg = exact_config(3);
  cfg.solver = std::make_shared<ZeroSampler>();
  try
  {
    ground_state(SymmetricMatrix::identity(2), cfg);
    FAIL("expected RangeNotFound");
  }
  catch (const Error &e)
  {
    CHECK(e.code() == ErrorCode::RangeNotFound);
  }

  QaeConfig bad = exact_config(3);
  bad.rq_tolerance = 0.0;
  CHECK_THROWS_AS(ground_state(SymmetricMatrix::identity(2), bad), Error);
  bad = exact_config(3);
  bad.solver = nullptr;
  CHECK_THROWS_AS(ground_state(SymmetricMatrix::identity(2), bad), Error);
}

TEST_CASE("ground state of [[-2]]")
{
  for (int k : {4, 8, 10})
  {
    const Eigenpair p = ground_state(SymmetricMatrix::from_rows({{-2.0}}), exact_config(k));
    CHECK(std::abs(p.value + 2.0) <= 4.0 * std::ldexp(1.0, 1 - k) * 2.0);
    CHECK(std::abs(std::abs(p.vector[0]) - 1.0) <= 1e-12);
  }
}

TEST_CASE("ground state of diag(1, 2, 3) with an exact block solver")
{
  const Eigenpair p = ground_state(SymmetricMatrix::diagonal(std::vector<double>{1.0, 2.0, 3.0}), exact_decomposed_config(10));
  CHECK(std::abs(p.value - 1.0) <= 0.01);
  const double sign = p.vector[0] < 0 ? -1.0 : 1.0;
  const double dist = std::hypot(sign * p.vector[0] - 1.0, p.vector[1], p.vector[2]);
  CHECK(dist <= 0.05);
  CHECK(p.meta.evaluations >= 1);
  CHECK(p.meta.iterations >= p.meta.evaluations);
}

TEST_CASE("ground state of a degenerate spectrum")
{
  const Eigenpair p = ground_state(SymmetricMatrix::identity(3), decomposed_config(10));
  CHECK(std::abs(p.value - 1.0) <= 0.01);
}

TEST_CASE("deflation examples")
{
  Eigenpair e1;
  e1.vector = {1.0, 0.0};
  const SymmetricMatrix a = SymmetricMatrix::diagonal(std::vector<double>{1.0, 2.0});
  CHECK(deflate(a, e1, 3.0) == SymmetricMatrix::diagonal(std::vector<double>{4.0, 2.0}));
  CHECK(deflate(a, e1, 0.0) == a);

  Eigenpair bad;
  bad.vector = {1.0, 1.0};
  try
  {
    deflate(a, bad, 1.0);
    FAIL("expected NotNormalized");
  }
  catch (const Error &e)
  {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
  bad.vector = {1.0};
  CHECK_THROWS_AS(deflate(a, bad, 1.0), Error);
  CHECK_THROWS_AS(deflate(a, e1, -1.0), Error);
}

TEST_CASE("deflation with an exact eigenvector shifts only that eigenvalue")
{
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; t++)
  {
    const SymmetricMatrix a = testing::random_symmetric(4, rng);
    const FullSpectrum s = eigh_reference(a);
    const double mu = 16.0 * max_abs_element(a);
    Eigenpair p;
    p.vector = s.vectors[0];
    std::vector<double> want(s.values.begin() + 1, s.values.end());
    want.push_back(s.values[0] + mu);
    std::sort(want.begin(), want.end());
    const FullSpectrum d = eigh_reference(deflate(a, p, mu));
    for (std::size_t i = 0; i < 4; i++)
    {
      CHECK(std::abs(d.values[i] - want[i]) <= 1e-9);
    }
  }
}

TEST_CASE("spectrum examples")
{
  const auto diag = SymmetricMatrix::diagonal(std::vector<double>{1.0, 2.0, 3.0});
  const auto pairs = spectrum(diag, 2, decomposed_config(10));
  REQUIRE(pairs.size() == 2);
  CHECK(std::abs(pairs[0].value - 1.0) <= 0.02);
  CHECK(std::abs(pairs[1].value - 2.0) <= 0.02);

  const auto swap = SymmetricMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const auto pm = spectrum(swap, 2, decomposed_config(10));
  CHECK(std::abs(pm[0].value + 1.0) <= 0.02);
  CHECK(std::abs(pm[1].value - 1.0) <= 0.02);

  std::mt19937_64 rng(9);
  const SymmetricMatrix a = testing::random_symmetric(3, rng);
  const auto one = spectrum(a, 1, decomposed_config(10, 5));
  const Eigenpair g = ground_state(a, decomposed_config(10, 5));
  CHECK(one[0].value == g.value);
  CHECK(one[0].vector == g.vector);

  CHECK_THROWS_AS(spectrum(a, 0, decomposed_config(10)), Error);
  CHECK_THROWS_AS(spectrum(a, 4, decomposed_config(10)), Error);
}

TEST_CASE("spectrum hook sees every step and resumes identically")
{
  std::mt19937_64 rng(10);
  const SymmetricMatrix a = testing::random_symmetric(3, rng);
  const QaeConfig cfg = decomposed_config(8, 3);
  std::vector<SpectrumState> snapshots;
  std::size_t pair_events = 0;
  const auto full = spectrum(a, 2, cfg, {}, [&](const SpectrumState &s, CheckpointEvent ev) {
    snapshots.push_back(s);
    pair_events += ev == CheckpointEvent::Eigenpair;
  });
  CHECK(pair_events == 2);
  for (std::size_t i = 0; i < snapshots.size(); i += 3)
  {
    const auto resumed = spectrum(a, 2, cfg, snapshots[i]);
    REQUIRE(resumed.size() == full.size());
    for (std::size_t k = 0; k < full.size(); k++)
    {
      CHECK(resumed[k].value == full[k].value);
      CHECK(resumed[k].vector == full[k].vector);
    }
  }
}

TEST_CASE("bracket invariant holds after every bisection step")
{
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; t++)
  {
    const SymmetricMatrix a = testing::random_symmetric(2, rng);
    const QaeConfig cfg = exact_config(6);
    GroundStateSearch search(a, cfg, 1);
    while (!search.done())
    {
      search.step();
      const LambdaSearchState &st = search.state();
      if (!st.bracketed())
      {
        continue;
      }
      CHECK(st.lo < st.hi);
      bool lo_seen = false, hi_seen = false;
      for (auto it = st.history.rbegin(); it != st.history.rend(); ++it)
      {
        if (!lo_seen && it->lambda == st.lo)
        {
          CHECK_FALSE(it->trivial);
          lo_seen = true;
        }
        if (!hi_seen && it->lambda == st.hi)
        {
          CHECK(it->trivial);
          hi_seen = true;
        }
      }
      CHECK(lo_seen);
      CHECK(hi_seen);
    }
  }
}

TEST_CASE("ground state is deterministic and variational")
{
  std::mt19937_64 rng(33);
  for (int t = 0; t < 10; t++)
  {
    const SymmetricMatrix a = testing::random_symmetric(1 + t % 4, rng);
    const QaeConfig cfg = decomposed_config(10, static_cast<std::uint64_t>(t));
    const Eigenpair p = ground_state(a, cfg);
    const Eigenpair q = ground_state(a, cfg);
    CHECK(p.value == q.value);
    CHECK(p.vector == q.vector);
    CHECK(p.lambda_star == q.lambda_star);
    CHECK(p.meta.iterations == q.meta.iterations);
    CHECK(p.value >= lambda_min(a) - 1e-9 * spectral_scale(a));
    CHECK(std::abs(norm2(p.vector) - 1.0) <= 1e-12);
  }
}

TEST_CASE("quantization ceiling with an exact solver")
{
  std::mt19937_64 rng(55);
  struct Case
  {
    std::size_t n;
    int k;
  };
  for (const Case c : {Case{1, 4}, Case{1, 8}, Case{2, 4}, Case{2, 6}, Case{2, 8}, Case{3, 4}, Case{3, 5}})
  {
    for (int t = 0; t < 4; t++)
    {
      const SymmetricMatrix a = testing::random_symmetric(c.n, rng);
      const Eigenpair p = ground_state(a, exact_config(c.k));
      const double err = p.value - lambda_min(a);
      CHECK(err >= -1e-9 * spectral_scale(a));
      CHECK(err <= 8.0 * std::ldexp(1.0, 1 - c.k) * spectral_scale(a));
    }
  }
}

TEST_CASE("ten qubits are within the plateau of fourteen")
{
  std::mt19937_64 rng(66);
  for (int t = 0; t < 4; t++)
  {
    const SymmetricMatrix a = testing::random_symmetric(2 + t % 3, rng);
    const double ref = lambda_min(a);
    const double e10 = ground_state(a, decomposed_config(10)).value - ref;
    const double e14 = ground_state(a, decomposed_config(14)).value - ref;
    CHECK(e10 <= 2.0 * e14 + std::ldexp(1.0, 1 - 10) * spectral_scale(a));
  }
}
