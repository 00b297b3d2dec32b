// SPDX-License-Identifier: Apache-2.0
//
// Fixed-point binary encoding of real vectors and the QUBO form of the
// penalized objective F(v) = (v, Av) + lambda (v, v).
//
// Variable layout is element-major. Element a owns variables [a*K, a*K + K);
// within the block the K-1 magnitude bits come first, most significant first,
// and the sign bit is last:
//
//   v_a = -x[a*K + K-1] + sum_{i=1}^{K-1} 2^-i x[a*K + i-1]
//
// so every element lies in [-1, 1 - 2^(1-K)] on a grid of step 2^(1-K).

#ifndef QAE_ENCODING_HPP
#define QAE_ENCODING_HPP

#include "qae/core.hpp"

namespace qae
{

struct ObjectiveSpec
{
  SymmetricMatrix a;
  double lambda = 0.0;
  EncodingConfig enc;
};

// Weight of bit k (0-based) inside one element block.
double code_weight(int k, int qubits);

RealVector decode(std::span<const std::uint8_t> x, std::size_t n, const EncodingConfig &enc);

// Nearest code word to v, elementwise; elements are clipped to the code range.
BitString encode_nearest(std::span<const double> v, const EncodingConfig &enc);

Qubo build_qubo(const ObjectiveSpec &spec);

double qubo_energy(const Qubo &q, std::span<const std::uint8_t> x);

double objective_value(const ObjectiveSpec &spec, std::span<const double> v);

} // namespace qae

#endif
