// SPDX-License-Identifier: Apache-2.0
//
// qbsolv-style decomposition: clamp all but a block of variables to the
// current solution, minimize the resulting subQUBO, keep strict improvements.

#ifndef QAE_DECOMPOSER_HPP
#define QAE_DECOMPOSER_HPP

#include "qae/qubo_solvers.hpp"

#include <memory>

namespace qae
{

/// SubQUBO over `subset` with every other variable fixed to its value in x.
///
/// For any assignment y of the subset variables,
///   qubo_energy(clamp(q, x, subset), y) == qubo_energy(q, x with y on subset).
Qubo clamp(const Qubo &q, std::span<const std::uint8_t> x, std::span<const std::size_t> subset);

struct DecomposerParams
{
  std::size_t sub_size = 64;
  std::size_t num_repeats = 50;
  std::shared_ptr<const Sampler> subsolver = std::make_shared<TabuSampler>();
  std::uint64_t seed = 0;

  void validate() const;
};

struct DecomposerStats
{
  std::size_t passes = 0;
  std::size_t subproblems = 0;
  std::size_t accepted = 0;
  double initial_energy = 0.0;
  double final_energy = 0.0;
};

BitString solve_decomposed(const Qubo &q, const DecomposerParams &params, DecomposerStats *stats = nullptr);

class DecomposingSampler final : public Sampler
{
public:
  DecomposingSampler(std::shared_ptr<const Sampler> subsolver, std::size_t sub_size = 64,
                     std::size_t num_repeats = 50);

  SamplerCapability capability() const override { return {kUnboundedVariables, false}; }
  BitString sample(const Qubo &q, std::uint64_t seed) const override;
  std::string name() const override;

private:
  std::shared_ptr<const Sampler> subsolver_;
  std::size_t sub_size_;
  std::size_t num_repeats_;
};

} // namespace qae

#endif
