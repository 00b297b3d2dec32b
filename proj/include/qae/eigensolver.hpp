// SPDX-License-Identifier: Apache-2.0
//
// Annealer eigensolver driver.
//
// The lowest eigenpair minimizes the Rayleigh quotient. For a penalty lambda
// the QUBO of (v, (A + lambda I) v) has the zero vector as its minimizer when
// lambda is large and a non-zero minimizer when lambda is very negative; the
// eigenvector is read off near the boundary between the two regimes, which is
// located by bracketing and bisection on lambda. Excited states come from
// repeated runs on A + mu v v^T.

#ifndef QAE_EIGENSOLVER_HPP
#define QAE_EIGENSOLVER_HPP

#include "qae/core.hpp"
#include "qae/qubo_solvers.hpp"

#include <functional>
#include <memory>
#include <optional>

namespace qae
{

struct QaeConfig
{
  EncodingConfig enc;
  std::shared_ptr<const Sampler> solver;
  // Tolerances are relative to spectral_scale of the matrix being solved.
  double lambda_tolerance = 1e-6;
  double rq_tolerance = 1e-8;
  int max_bisections = 60;
  int max_doublings = 60;
  double mu_multiplier = 16.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LambdaStep
{
  double lambda = 0.0;
  BitString bits;
  bool trivial = true;
  double rq = 0.0; // Rayleigh quotient of the decoded vector; unused when trivial

  bool operator==(const LambdaStep &) const = default;
};

enum class SearchPhase
{
  LowerEnd,
  UpperEnd,
  Bisection,
  Done,
};

struct LambdaSearchState
{
  SearchPhase phase = SearchPhase::LowerEnd;
  double lo = 0.0; // best solution non-trivial
  double hi = 0.0; // best solution trivial
  int lo_doublings = 0;
  int hi_doublings = 0;
  int bisections = 0;
  std::optional<double> last_rq;
  std::vector<LambdaStep> history;

  bool bracketed() const { return phase == SearchPhase::Bisection || phase == SearchPhase::Done; }
  bool operator==(const LambdaSearchState &) const = default;
};

bool is_trivial(std::span<const std::uint8_t> x);

/// Resumable lambda search for the lowest eigenpair of one matrix.
///
/// Every call to step() performs exactly one QUBO solve. The sampler seed for
/// a solve is mix_seed(seed, history index), so a search rebuilt from a saved
/// state continues exactly as the original would have.
class GroundStateSearch
{
public:
  GroundStateSearch(const SymmetricMatrix &a, const QaeConfig &cfg, std::uint64_t seed,
                    LambdaSearchState state = {});

  bool done() const { return state_.phase == SearchPhase::Done; }
  void step();
  void run();

  const LambdaSearchState &state() const { return state_; }
  // Minimum Rayleigh quotient over all non-trivial solutions seen.
  Eigenpair result() const;

private:
  LambdaStep solve_at(double lambda);

  const SymmetricMatrix &a_;
  const QaeConfig &cfg_;
  std::uint64_t seed_;
  double scale_;
  double g_;
  LambdaSearchState state_;
};

/// Bracket [lo, hi] with a non-trivial minimizer at lo and a trivial one at hi,
/// starting from -/+ max|a_ij| and doubling whichever end fails.
LambdaSearchState find_lambda_range(const SymmetricMatrix &a, const QaeConfig &cfg);

Eigenpair ground_state(const SymmetricMatrix &a, const QaeConfig &cfg);

/// A + mu v v^T. The vector must have unit norm to within 1e-9.
SymmetricMatrix deflate(const SymmetricMatrix &a, const Eigenpair &pair, double mu);

struct SpectrumState
{
  // Completed pairs in discovery order, values measured on the original matrix.
  std::vector<Eigenpair> pairs;
  std::optional<SymmetricMatrix> current;
  std::optional<LambdaSearchState> search;
};

enum class CheckpointEvent
{
  LambdaStep,
  Eigenpair,
};

using CheckpointHook = std::function<void(const SpectrumState &, CheckpointEvent)>;

// Seed used for the k-th eigenpair.
std::uint64_t state_seed(std::uint64_t base, std::size_t k);

/// Lowest n_states eigenpairs by serial deflated runs, ascending by value.
///
/// `resume` continues a previously checkpointed run; `hook` is called after
/// every QUBO solve and after every completed eigenpair.
std::vector<Eigenpair> spectrum(const SymmetricMatrix &a, std::size_t n_states, const QaeConfig &cfg,
                                SpectrumState resume = {}, const CheckpointHook &hook = {});

} // namespace qae

#endif
