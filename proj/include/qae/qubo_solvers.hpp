// SPDX-License-Identifier: Apache-2.0
//
// QUBO minimizers behind a common sampler interface.

#ifndef QAE_QUBO_SOLVERS_HPP
#define QAE_QUBO_SOLVERS_HPP

#include "qae/core.hpp"

#include <limits>
#include <memory>
#include <random>
#include <string>

namespace qae
{

inline constexpr std::size_t kUnboundedVariables = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kExactMaxVariables = 24;

struct SamplerCapability
{
  std::size_t max_variables = kUnboundedVariables;
  // Output depends on the QUBO only, never on the seed.
  bool deterministic = false;
};

/// Anything that can minimize a QUBO: classical heuristics, the exact
/// enumerator, the decomposer, or an annealer client.
///
/// sample() must return a bit string of length q.size() whose energy is no
/// worse than any state the sampler evaluated.
class Sampler
{
public:
  virtual ~Sampler() = default;
  virtual SamplerCapability capability() const = 0;
  virtual BitString sample(const Qubo &q, std::uint64_t seed) const = 0;
  virtual std::string name() const = 0;
};

// splitmix64 finalizer; used to derive independent seeds from (base, index).
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index);

// Bit string read as an unsigned integer, bit 0 least significant.
std::uint64_t bits_to_integer(std::span<const std::uint8_t> x);

/// Current assignment plus local fields, kept consistent under single flips.
///
/// field(i) = w_ii + sum_{j != i} w_ij x_j, and flipping bit i changes the
/// energy by gain(i) = (1 - 2 x_i) field(i).
class FlipState
{
public:
  FlipState(const Qubo &q, BitString x);

  void flip(std::size_t i);
  void assign(const BitString &x);

  double gain(std::size_t i) const noexcept { return x_[i] ? -field_[i] : field_[i]; }
  double field(std::size_t i) const noexcept { return field_[i]; }
  double energy() const noexcept { return energy_; }
  const BitString &bits() const noexcept { return x_; }
  std::size_t size() const noexcept { return x_.size(); }

private:
  const Qubo *q_;
  BitString x_;
  std::vector<double> field_;
  double energy_ = 0.0;
};

/// Global minimizer by exhaustive Gray-code enumeration. Near-ties (energies
/// within 1e-10 of the weight magnitude) resolve to the smallest integer value.
BitString solve_exact(const Qubo &q);

struct TabuParams
{
  std::size_t max_iterations = 500;
  std::size_t tenure = 4;
  std::size_t restarts = 4;
  std::uint64_t seed = 0;

  // max_iterations = max(500, 10 m), tenure = min(20, max(4, m / 4)), 4 restarts.
  static TabuParams defaults(std::size_t m, std::uint64_t seed);
  void validate() const;
};

/// Single-flip tabu search with aspiration. The first descent starts from the
/// all-zero string, each restart from a seeded random string.
BitString solve_tabu(const Qubo &q, const TabuParams &params);

class ExactSampler final : public Sampler
{
public:
  SamplerCapability capability() const override { return {kExactMaxVariables, true}; }
  BitString sample(const Qubo &q, std::uint64_t seed) const override;
  std::string name() const override { return "exact"; }
};

class TabuSampler final : public Sampler
{
public:
  TabuSampler() = default;
  // Zero fields fall back to the size-dependent defaults.
  explicit TabuSampler(std::size_t max_iterations, std::size_t tenure = 0, std::size_t restarts = 0);

  SamplerCapability capability() const override { return {kUnboundedVariables, false}; }
  BitString sample(const Qubo &q, std::uint64_t seed) const override;
  std::string name() const override { return "tabu"; }

private:
  std::size_t max_iterations_ = 0;
  std::size_t tenure_ = 0;
  std::size_t restarts_ = 0;
};

} // namespace qae

#endif
