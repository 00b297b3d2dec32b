// SPDX-License-Identifier: Apache-2.0

#include "qae/eigensolver.hpp"

#include "qae/encoding.hpp"

#include <algorithm>
#include <cmath>

namespace qae
{

namespace
{

// (v, (A + lambda I) v) vanishes for every v, i.e. A == -lambda I.
bool objective_vanishes(const SymmetricMatrix &a, double lambda)
{
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; i++)
  {
    for (std::size_t j = 0; j < n; j++)
    {
      if (a(i, j) != (i == j ? -lambda : 0.0))
      {
        return false;
      }
    }
  }
  return true;
}

const LambdaStep *last_nontrivial(const std::vector<LambdaStep> &history)
{
  for (auto it = history.rbegin(); it != history.rend(); ++it)
  {
    if (!it->trivial)
    {
      return &*it;
    }
  }
  return nullptr;
}

} // namespace

void QaeConfig::validate() const
{
  enc.validate();
  if (!solver)
  {
    throw Error(ErrorCode::InvalidArgument, "eigensolver needs a QUBO sampler");
  }
  if (!(lambda_tolerance > 0.0) || !(rq_tolerance > 0.0))
  {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  }
  if (!(mu_multiplier > 0.0))
  {
    throw Error(ErrorCode::InvalidArgument, "mu multiplier must be positive");
  }
  if (max_bisections < 1 || max_doublings < 0)
  {
    throw Error(ErrorCode::InvalidArgument, "bisection and doubling limits must be positive");
  }
}

bool is_trivial(std::span<const std::uint8_t> x)
{
  return std::all_of(x.begin(), x.end(), [](std::uint8_t b) { return b == 0; });
}

GroundStateSearch::GroundStateSearch(const SymmetricMatrix &a, const QaeConfig &cfg, std::uint64_t seed,
                                     LambdaSearchState state)
  : a_(a), cfg_(cfg), seed_(seed), scale_(spectral_scale(a)), g_(max_abs_element(a)), state_(std::move(state))
{
  cfg_.validate();
  if (g_ == 0.0)
  {
    throw Error(ErrorCode::ZeroMatrix, "matrix has no non-zero element");
  }
}

LambdaStep GroundStateSearch::solve_at(double lambda)
{
  LambdaStep s;
  s.lambda = lambda;
  const Qubo q = build_qubo(ObjectiveSpec{a_, lambda, cfg_.enc});
  s.bits = cfg_.solver->sample(q, mix_seed(seed_, state_.history.size()));
  if (s.bits.size() != q.size())
  {
    throw Error(ErrorCode::LengthMismatch, "sampler returned a bit string of the wrong length");
  }
  // A vanishing objective is minimized by the zero vector among others, so it
  // never certifies a non-trivial solution.
  s.trivial = is_trivial(s.bits) || objective_vanishes(a_, lambda);
  if (!s.trivial)
  {
    s.rq = rayleigh_quotient(a_, decode(s.bits, a_.dim(), cfg_.enc));
  }
  return s;
}

void GroundStateSearch::step()
{
  auto &st = state_;
  switch (st.phase)
  {
    case SearchPhase::LowerEnd:
    {
      const double lambda = -std::ldexp(g_, st.lo_doublings);
      LambdaStep s = solve_at(lambda);
      const bool ok = !s.trivial;
      st.history.push_back(std::move(s));
      if (ok)
      {
        st.lo = lambda;
        st.phase = SearchPhase::UpperEnd;
      }
      else if (++st.lo_doublings > cfg_.max_doublings)
      {
        throw Error(ErrorCode::RangeNotFound, "no non-trivial solution down to lambda = " + std::to_string(lambda));
      }
      break;
    }
    case SearchPhase::UpperEnd:
    {
      const double lambda = std::ldexp(g_, st.hi_doublings);
      LambdaStep s = solve_at(lambda);
      const bool ok = s.trivial && !objective_vanishes(a_, lambda);
      st.history.push_back(std::move(s));
      if (ok)
      {
        st.hi = lambda;
        st.phase = SearchPhase::Bisection;
        if (st.hi - st.lo < cfg_.lambda_tolerance * scale_)
        {
          st.phase = SearchPhase::Done;
        }
      }
      else if (++st.hi_doublings > cfg_.max_doublings)
      {
        throw Error(ErrorCode::RangeNotFound, "no trivial solution up to lambda = " + std::to_string(lambda));
      }
      break;
    }
    case SearchPhase::Bisection:
    {
      const double mid = 0.5 * (st.lo + st.hi);
      // Bracket narrower than the floating-point grid.
      const bool stalled = !(st.lo < mid && mid < st.hi);
      LambdaStep s = solve_at(mid);
      bool converged = false;
      if (s.trivial)
      {
        st.hi = mid;
      }
      else
      {
        st.lo = mid;
        // The same code word returned again carries no new information about
        // the boundary; only a different non-trivial solution is an iterate.
        const LambdaStep *prev = last_nontrivial(st.history);
        if (!prev || prev->bits != s.bits)
        {
          converged = st.last_rq && std::abs(s.rq - *st.last_rq) < cfg_.rq_tolerance * scale_;
          st.last_rq = s.rq;
        }
      }
      st.history.push_back(std::move(s));
      st.bisections++;
      if (converged || st.hi - st.lo < cfg_.lambda_tolerance * scale_ || st.bisections >= cfg_.max_bisections ||
          stalled)
      {
        st.phase = SearchPhase::Done;
      }
      break;
    }
    case SearchPhase::Done:
      break;
  }
}

void GroundStateSearch::run()
{
  while (!done())
  {
    step();
  }
}

Eigenpair GroundStateSearch::result() const
{
  const LambdaStep *best = nullptr;
  std::uint64_t evaluations = 0;
  for (const auto &s : state_.history)
  {
    if (s.trivial)
    {
      continue;
    }
    evaluations++;
    if (!best || s.rq < best->rq)
    {
      best = &s;
    }
  }
  if (!best)
  {
    throw Error(ErrorCode::RangeNotFound, "no non-trivial solution recorded yet");
  }
  Eigenpair pair;
  pair.vector = normalized(decode(best->bits, a_.dim(), cfg_.enc));
  pair.value = rayleigh_quotient(a_, pair.vector);
  pair.lambda_star = best->lambda;
  pair.meta.iterations = state_.history.size();
  pair.meta.evaluations = evaluations;
  pair.meta.seed = seed_;
  return pair;
}

LambdaSearchState find_lambda_range(const SymmetricMatrix &a, const QaeConfig &cfg)
{
  GroundStateSearch search(a, cfg, state_seed(cfg.seed, 0));
  while (!search.state().bracketed())
  {
    search.step();
  }
  return search.state();
}

std::uint64_t state_seed(std::uint64_t base, std::size_t k)
{
  return mix_seed(base, k);
}

Eigenpair ground_state(const SymmetricMatrix &a, const QaeConfig &cfg)
{
  GroundStateSearch search(a, cfg, state_seed(cfg.seed, 0));
  search.run();
  return search.result();
}

SymmetricMatrix deflate(const SymmetricMatrix &a, const Eigenpair &pair, double mu)
{
  const std::size_t n = a.dim();
  if (pair.vector.size() != n)
  {
    throw Error(ErrorCode::LengthMismatch, "eigenvector length does not match matrix dimension");
  }
  if (std::abs(norm2(pair.vector) - 1.0) > 1e-9)
  {
    throw Error(ErrorCode::NotNormalized, "deflation vector must have unit norm");
  }
  if (!std::isfinite(mu) || mu < 0.0)
  {
    throw Error(ErrorCode::InvalidArgument, "deflation shift must be finite and non-negative");
  }
  std::vector<double> out(a.entries().begin(), a.entries().end());
  const auto &v = pair.vector;
  for (std::size_t i = 0; i < n; i++)
  {
    for (std::size_t j = 0; j < n; j++)
    {
      out[i * n + j] += mu * v[i] * v[j];
    }
  }
  return SymmetricMatrix(n, std::move(out));
}

std::vector<Eigenpair> spectrum(const SymmetricMatrix &a, std::size_t n_states, const QaeConfig &cfg,
                                SpectrumState resume, const CheckpointHook &hook)
{
  cfg.validate();
  if (n_states < 1 || n_states > a.dim())
  {
    throw Error(ErrorCode::InvalidArgument, "number of states must be in [1, " + std::to_string(a.dim()) + "]");
  }
  const double mu = cfg.mu_multiplier * max_abs_element(a);

  SpectrumState st = std::move(resume);
  if (!st.current)
  {
    st.current = a;
  }
  if (st.current->dim() != a.dim())
  {
    throw Error(ErrorCode::LengthMismatch, "resume state does not match the matrix dimension");
  }
  while (st.pairs.size() < n_states)
  {
    const std::size_t k = st.pairs.size();
    const SymmetricMatrix current = *st.current;
    GroundStateSearch search(current, cfg, state_seed(cfg.seed, k), st.search.value_or(LambdaSearchState{}));
    while (!search.done())
    {
      search.step();
      st.search = search.state();
      if (hook)
      {
        hook(st, CheckpointEvent::LambdaStep);
      }
    }
    Eigenpair pair = search.result();
    st.current = deflate(current, pair, mu);
    pair.value = rayleigh_quotient(a, pair.vector);
    st.pairs.push_back(std::move(pair));
    st.search.reset();
    if (hook)
    {
      hook(st, CheckpointEvent::Eigenpair);
    }
  }

  std::vector<Eigenpair> out(st.pairs.begin(), st.pairs.begin() + static_cast<std::ptrdiff_t>(n_states));
  std::stable_sort(out.begin(), out.end(), [](const Eigenpair &x, const Eigenpair &y) { return x.value < y.value; });
  return out;
}

} // namespace qae
