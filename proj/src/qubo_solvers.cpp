// SPDX-License-Identifier: Apache-2.0

#include "qae/qubo_solvers.hpp"

#include "qae/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace qae
{

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index)
{
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t bits_to_integer(std::span<const std::uint8_t> x)
{
  if (x.size() > 64)
  {
    throw Error(ErrorCode::TooLarge, "bit string longer than 64 variables");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < x.size(); i++)
  {
    if (x[i])
    {
      v |= std::uint64_t{1} << i;
    }
  }
  return v;
}

FlipState::FlipState(const Qubo &q, BitString x) : q_(&q)
{
  assign(x);
}

void FlipState::assign(const BitString &x)
{
  const std::size_t m = q_->size();
  if (x.size() != m)
  {
    throw Error(ErrorCode::LengthMismatch, "bit string length does not match QUBO size");
  }
  x_ = x;
  field_.assign(m, 0.0);
  for (std::size_t i = 0; i < m; i++)
  {
    field_[i] = q_->linear(i);
  }
  for (std::size_t j = 0; j < m; j++)
  {
    if (!x_[j])
    {
      continue;
    }
    const auto row = q_->couplings(j);
    for (std::size_t i = 0; i < m; i++)
    {
      field_[i] += row[i];
    }
  }
  energy_ = qubo_energy(*q_, x_);
}

void FlipState::flip(std::size_t i)
{
  energy_ += gain(i);
  const double sign = x_[i] ? -1.0 : 1.0;
  x_[i] ^= 1;
  const auto row = q_->couplings(i);
  const std::size_t m = x_.size();
  for (std::size_t j = 0; j < m; j++)
  {
    field_[j] += sign * row[j];
  }
}

BitString solve_exact(const Qubo &q)
{
  const std::size_t m = q.size();
  if (m > kExactMaxVariables)
  {
    throw Error(ErrorCode::TooLarge, "exact solver is limited to " + std::to_string(kExactMaxVariables) +
                                         " variables, got " + std::to_string(m));
  }
  const double tie = 1e-10 * std::max(q.magnitude(), 1e-300);

  // Walk the reflected Gray code: step t flips the bit at ctz(t).
  FlipState state(q, BitString(m, 0));
  std::uint64_t code = 0;
  double best_energy = state.energy();
  std::uint64_t best_code = 0;
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t t = 1; t < total; t++)
  {
    const auto bit = static_cast<std::size_t>(std::countr_zero(t));
    state.flip(bit);
    code ^= std::uint64_t{1} << bit;
    const double e = state.energy();
    if (e < best_energy - tie)
    {
      best_energy = e;
      best_code = code;
    }
    else if (e <= best_energy + tie && code < best_code)
    {
      best_energy = std::min(best_energy, e);
      best_code = code;
    }
  }
  BitString x(m, 0);
  for (std::size_t i = 0; i < m; i++)
  {
    x[i] = static_cast<std::uint8_t>((best_code >> i) & 1);
  }
  return x;
}

TabuParams TabuParams::defaults(std::size_t m, std::uint64_t seed)
{
  TabuParams p;
  p.max_iterations = std::max<std::size_t>(500, 10 * m);
  p.tenure = std::min<std::size_t>(20, std::max<std::size_t>(4, m / 4));
  p.restarts = 4;
  p.seed = seed;
  return p;
}

void TabuParams::validate() const
{
  if (max_iterations == 0 || tenure == 0 || restarts == 0)
  {
    throw Error(ErrorCode::InvalidArgument, "tabu parameters must be strictly positive");
  }
}

BitString solve_tabu(const Qubo &q, const TabuParams &params)
{
  params.validate();
  const std::size_t m = q.size();
  // A tenure of m or more would leave no admissible move.
  const std::size_t tenure = std::min(params.tenure, m - 1);
  std::mt19937_64 rng(params.seed);

  FlipState state(q, BitString(m, 0));
  BitString best = state.bits();
  double best_energy = state.energy();

  std::vector<std::size_t> tabu_until(m, 0);
  for (std::size_t run = 0; run < params.restarts; run++)
  {
    if (run > 0)
    {
      BitString start(m);
      for (auto &b : start)
      {
        b = static_cast<std::uint8_t>(rng() & 1);
      }
      state.assign(start);
      if (state.energy() < best_energy)
      {
        best_energy = state.energy();
        best = state.bits();
      }
    }
    std::fill(tabu_until.begin(), tabu_until.end(), 0);
    for (std::size_t it = 1; it <= params.max_iterations; it++)
    {
      std::size_t move = m;
      double move_gain = 0.0;
      for (std::size_t i = 0; i < m; i++)
      {
        const double g = state.gain(i);
        const bool admissible = tabu_until[i] < it || state.energy() + g < best_energy;
        if (admissible && (move == m || g < move_gain))
        {
          move = i;
          move_gain = g;
        }
      }
      if (move == m)
      {
        break;
      }
      state.flip(move);
      tabu_until[move] = it + tenure;
      if (state.energy() < best_energy)
      {
        best_energy = state.energy();
        best = state.bits();
      }
    }
  }
  return best;
}

BitString ExactSampler::sample(const Qubo &q, std::uint64_t) const
{
  return solve_exact(q);
}

TabuSampler::TabuSampler(std::size_t max_iterations, std::size_t tenure, std::size_t restarts)
  : max_iterations_(max_iterations), tenure_(tenure), restarts_(restarts)
{
}

BitString TabuSampler::sample(const Qubo &q, std::uint64_t seed) const
{
  TabuParams p = TabuParams::defaults(q.size(), seed);
  if (max_iterations_ != 0)
  {
    p.max_iterations = max_iterations_;
  }
  if (tenure_ != 0)
  {
    p.tenure = tenure_;
  }
  if (restarts_ != 0)
  {
    p.restarts = restarts_;
  }
  return solve_tabu(q, p);
}

} // namespace qae
