// SPDX-License-Identifier: Apache-2.0

#include "qae/decomposer.hpp"

#include "qae/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qae
{

namespace
{

std::vector<std::uint8_t> membership(std::size_t m, std::span<const std::size_t> subset)
{
  std::vector<std::uint8_t> in(m, 0);
  for (std::size_t i : subset)
  {
    if (i >= m)
    {
      throw Error(ErrorCode::IndexOutOfRange, "subset index " + std::to_string(i) + " outside [0, " +
                                                  std::to_string(m) + ")");
    }
    if (in[i])
    {
      throw Error(ErrorCode::DuplicateIndex, "subset index " + std::to_string(i) + " repeated");
    }
    in[i] = 1;
  }
  return in;
}

// Clamp with the full energy of x already known.
Qubo clamp_with_energy(const Qubo &q, std::span<const std::uint8_t> x, std::span<const std::size_t> subset,
                       double energy_x)
{
  const std::size_t m = q.size();
  if (x.size() != m)
  {
    throw Error(ErrorCode::LengthMismatch, "bit string length does not match QUBO size");
  }
  if (subset.empty())
  {
    throw Error(ErrorCode::InvalidArgument, "clamp subset must not be empty");
  }
  const auto in = membership(m, subset);

  Qubo sub(subset.size());
  // Energy with the subset zeroed: drop every term that touches a set subset bit.
  double offset = energy_x;
  for (std::size_t k = 0; k < subset.size(); k++)
  {
    const std::size_t i = subset[k];
    const auto row = q.couplings(i);
    double outside = 0.0;
    for (std::size_t j = 0; j < m; j++)
    {
      if (!in[j] && x[j])
      {
        outside += row[j];
      }
    }
    const double lin = q.linear(i) + outside;
    sub.set_weight(k, k, lin);
    if (x[i])
    {
      offset -= lin;
    }
    for (std::size_t l = k + 1; l < subset.size(); l++)
    {
      const double w = row[subset[l]];
      sub.set_weight(k, l, w);
      if (x[i] && x[subset[l]])
      {
        offset -= w;
      }
    }
  }
  sub.set_offset(offset);
  return sub;
}

} // namespace

Qubo clamp(const Qubo &q, std::span<const std::uint8_t> x, std::span<const std::size_t> subset)
{
  if (x.size() != q.size())
  {
    throw Error(ErrorCode::LengthMismatch, "bit string length does not match QUBO size");
  }
  return clamp_with_energy(q, x, subset, qubo_energy(q, x));
}

void DecomposerParams::validate() const
{
  if (!subsolver)
  {
    throw Error(ErrorCode::InvalidArgument, "decomposer needs a subsolver");
  }
  if (sub_size < 1 || sub_size > subsolver->capability().max_variables)
  {
    throw Error(ErrorCode::InvalidArgument, "sub_size must be in [1, " +
                                                std::to_string(subsolver->capability().max_variables) + "]");
  }
  if (num_repeats < 1)
  {
    throw Error(ErrorCode::InvalidArgument, "num_repeats must be at least 1");
  }
}

BitString solve_decomposed(const Qubo &q, const DecomposerParams &params, DecomposerStats *stats)
{
  params.validate();
  const std::size_t m = q.size();
  const Sampler &subsolver = *params.subsolver;
  const bool deterministic = subsolver.capability().deterministic;
  const double eps = 1e-12 * std::max(q.magnitude(), 1e-300);
  std::uint64_t sub_calls = 0;

  BitString start;
  if (m <= 4 * params.sub_size)
  {
    start = solve_tabu(q, TabuParams::defaults(m, mix_seed(params.seed, 0)));
  }
  else
  {
    std::mt19937_64 rng(mix_seed(params.seed, 0));
    start.resize(m);
    for (auto &b : start)
    {
      b = static_cast<std::uint8_t>(rng() & 1);
    }
  }
  FlipState state(q, start);
  if (m > 4 * params.sub_size)
  {
    for (std::size_t i = 0; i < m; i++)
    {
      if (state.gain(i) < 0.0)
      {
        state.flip(i);
      }
    }
  }

  DecomposerStats local;
  local.initial_energy = state.energy();

  const std::size_t group_size = std::min(params.sub_size, m);
  std::vector<std::size_t> ranked(m);
  std::vector<std::size_t> group;
  BitString current;
  std::size_t idle = 0;
  while (idle < params.num_repeats)
  {
    std::iota(ranked.begin(), ranked.end(), std::size_t{0});
    std::stable_sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(state.gain(a)) > std::abs(state.gain(b));
    });

    bool improved = false;
    for (std::size_t begin = 0; begin < m; begin += group_size)
    {
      const std::size_t end = std::min(begin + group_size, m);
      group.assign(ranked.begin() + static_cast<std::ptrdiff_t>(begin),
                   ranked.begin() + static_cast<std::ptrdiff_t>(end));
      // Pad a short tail group from the top of the ranking.
      for (std::size_t k = 0; group.size() < group_size; k++)
      {
        group.push_back(ranked[k]);
      }

      const Qubo sub = clamp_with_energy(q, state.bits(), group, state.energy());
      current.resize(group.size());
      for (std::size_t k = 0; k < group.size(); k++)
      {
        current[k] = state.bits()[group[k]];
      }
      const BitString y = subsolver.sample(sub, mix_seed(params.seed, ++sub_calls));
      local.subproblems++;
      if (qubo_energy(sub, y) < qubo_energy(sub, current) - eps)
      {
        for (std::size_t k = 0; k < group.size(); k++)
        {
          if (y[k] != current[k])
          {
            state.flip(group[k]);
          }
        }
        improved = true;
        local.accepted++;
      }
    }
    local.passes++;
    if (improved)
    {
      idle = 0;
    }
    else
    {
      idle++;
      // With a seed-independent subsolver every further pass repeats this one.
      if (deterministic)
      {
        break;
      }
    }
  }

  local.final_energy = qubo_energy(q, state.bits());
  if (stats)
  {
    *stats = local;
  }
  return state.bits();
}

DecomposingSampler::DecomposingSampler(std::shared_ptr<const Sampler> subsolver, std::size_t sub_size,
                                       std::size_t num_repeats)
  : subsolver_(std::move(subsolver)), sub_size_(sub_size), num_repeats_(num_repeats)
{
  DecomposerParams{sub_size_, num_repeats_, subsolver_, 0}.validate();
}

BitString DecomposingSampler::sample(const Qubo &q, std::uint64_t seed) const
{
  return solve_decomposed(q, DecomposerParams{sub_size_, num_repeats_, subsolver_, seed});
}

std::string DecomposingSampler::name() const
{
  return subsolver_->name() + "-decomposed";
}

} // namespace qae
