// SPDX-License-Identifier: Apache-2.0

#include "qae/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qae
{

namespace
{

constexpr int kMaxSweeps = 100;

double max_off_diagonal(const std::vector<double> &a, std::size_t n)
{
  double m = 0.0;
  for (std::size_t i = 0; i < n; i++)
  {
    for (std::size_t j = i + 1; j < n; j++)
    {
      m = std::max(m, std::abs(a[i * n + j]));
    }
  }
  return m;
}

} // namespace

FullSpectrum eigh_reference(const SymmetricMatrix &input)
{
  const std::size_t n = input.dim();
  const double threshold = 1e-12 * spectral_scale(input);
  std::vector<double> a(input.entries().begin(), input.entries().end());
  // Columns of v accumulate the rotations.
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; i++)
  {
    v[i * n + i] = 1.0;
  }

  int sweep = 0;
  while (max_off_diagonal(a, n) >= threshold)
  {
    if (sweep++ == kMaxSweeps)
    {
      throw Error(ErrorCode::NoConvergence, "Jacobi iteration did not converge in 100 sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; p++)
    {
      for (std::size_t q = p + 1; q < n; q++)
      {
        const double apq = a[p * n + q];
        if (apq == 0.0)
        {
          continue;
        }
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        // Rotation angle from cot(2 theta) = (aqq - app) / (2 apq), taking the
        // smaller root for t = tan(theta).
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; k++)
        {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; k++)
        {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;

        for (std::size_t k = 0; k < n; k++)
        {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

  FullSpectrum out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t col : order)
  {
    out.values.push_back(a[col * n + col]);
    RealVector vec(n);
    std::size_t lead = 0;
    for (std::size_t k = 0; k < n; k++)
    {
      vec[k] = v[k * n + col];
      if (std::abs(vec[k]) > std::abs(vec[lead]))
      {
        lead = k;
      }
    }
    if (vec[lead] < 0.0)
    {
      for (double &x : vec)
      {
        x = -x;
      }
    }
    out.vectors.push_back(std::move(vec));
  }
  return out;
}

} // namespace qae
