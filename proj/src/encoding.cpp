// SPDX-License-Identifier: Apache-2.0

#include "qae/encoding.hpp"

#include <cmath>

namespace qae
{

double code_weight(int k, int qubits)
{
  return k == qubits - 1 ? -1.0 : std::ldexp(1.0, -(k + 1));
}

RealVector decode(std::span<const std::uint8_t> x, std::size_t n, const EncodingConfig &enc)
{
  enc.validate();
  const auto K = static_cast<std::size_t>(enc.qubits);
  if (x.size() != n * K)
  {
    throw Error(ErrorCode::LengthMismatch, "bit string has " + std::to_string(x.size()) + " variables, expected " +
                                               std::to_string(n * K));
  }
  RealVector v(n, 0.0);
  for (std::size_t a = 0; a < n; a++)
  {
    double s = 0.0;
    for (std::size_t k = 0; k < K; k++)
    {
      if (x[a * K + k])
      {
        s += code_weight(static_cast<int>(k), enc.qubits);
      }
    }
    v[a] = s;
  }
  return v;
}

BitString encode_nearest(std::span<const double> v, const EncodingConfig &enc)
{
  enc.validate();
  const auto K = static_cast<std::size_t>(enc.qubits);
  const double step = enc.resolution();
  // Integer code c in [-2^(K-1), 2^(K-1) - 1] with value c * step.
  const double lo = -std::ldexp(1.0, enc.qubits - 1);
  const double hi = std::ldexp(1.0, enc.qubits - 1) - 1.0;
  BitString x(v.size() * K, 0);
  for (std::size_t a = 0; a < v.size(); a++)
  {
    double c = std::nearbyint(v[a] / step);
    c = std::min(std::max(c, lo), hi);
    auto code = static_cast<std::int64_t>(c);
    if (code < 0)
    {
      x[a * K + K - 1] = 1;
      code += static_cast<std::int64_t>(1) << (K - 1);
    }
    // Magnitude bits, most significant first.
    for (std::size_t k = 0; k + 1 < K; k++)
    {
      x[a * K + k] = static_cast<std::uint8_t>((code >> (K - 2 - k)) & 1);
    }
  }
  return x;
}

Qubo build_qubo(const ObjectiveSpec &spec)
{
  spec.enc.validate();
  if (!std::isfinite(spec.lambda))
  {
    throw Error(ErrorCode::InvalidArgument, "lambda must be finite");
  }
  const std::size_t n = spec.a.dim();
  const auto K = static_cast<std::size_t>(spec.enc.qubits);
  std::vector<double> c(K);
  for (std::size_t k = 0; k < K; k++)
  {
    c[k] = code_weight(static_cast<int>(k), spec.enc.qubits);
  }

  // (v, (A + lambda I) v) = sum_{p,q} B_{a(p) a(q)} c_p c_q x_p x_q.
  // Diagonal p == q folds into the linear term (x^2 = x); each unordered pair
  // p < q appears twice in the double sum.
  Qubo q(n * K);
  for (std::size_t a = 0; a < n; a++)
  {
    for (std::size_t b = a; b < n; b++)
    {
      const double bab = a == b ? spec.a(a, a) + spec.lambda : spec.a(a, b);
      if (bab == 0.0)
      {
        continue;
      }
      for (std::size_t k = 0; k < K; k++)
      {
        const std::size_t p = a * K + k;
        for (std::size_t l = a == b ? k : 0; l < K; l++)
        {
          const std::size_t r = b * K + l;
          const double w = p == r ? bab * c[k] * c[k] : 2.0 * bab * c[k] * c[l];
          q.set_weight(std::min(p, r), std::max(p, r), w);
        }
      }
    }
  }
  return q;
}

double qubo_energy(const Qubo &q, std::span<const std::uint8_t> x)
{
  const std::size_t m = q.size();
  if (x.size() != m)
  {
    throw Error(ErrorCode::LengthMismatch, "bit string length does not match QUBO size");
  }
  double e = 0.0;
  for (std::size_t i = 0; i < m; i++)
  {
    if (!x[i])
    {
      continue;
    }
    e += q.linear(i);
    const auto row = q.couplings(i);
    for (std::size_t j = i + 1; j < m; j++)
    {
      if (x[j])
      {
        e += row[j];
      }
    }
  }
  return q.offset() + e;
}

double objective_value(const ObjectiveSpec &spec, std::span<const double> v)
{
  return dot(v, multiply(spec.a, v)) + spec.lambda * dot(v, v);
}

} // namespace qae
