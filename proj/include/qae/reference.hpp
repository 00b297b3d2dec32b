// SPDX-License-Identifier: Apache-2.0

#ifndef QAE_REFERENCE_HPP
#define QAE_REFERENCE_HPP

#include "qae/core.hpp"

namespace qae
{

struct FullSpectrum
{
  RealVector values;               // ascending
  std::vector<RealVector> vectors; // vectors[i] pairs with values[i]
};

/// Dense symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps until max |a_ij| (i != j) < 1e-12 * spectral_scale, at most 100
/// sweeps (NoConvergence otherwise). Each eigenvector is signed so that its
/// largest-magnitude component is positive.
FullSpectrum eigh_reference(const SymmetricMatrix &a);

} // namespace qae

#endif
