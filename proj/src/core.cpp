// SPDX-License-Identifier: Apache-2.0

#include "qae/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qae
{

const char *to_string(ErrorCode code)
{
  switch (code)
  {
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::NotSymmetric:
      return "NotSymmetric";
    case ErrorCode::ZeroVector:
      return "ZeroVector";
    case ErrorCode::LengthMismatch:
      return "LengthMismatch";
    case ErrorCode::TooLarge:
      return "TooLarge";
    case ErrorCode::IndexOutOfRange:
      return "IndexOutOfRange";
    case ErrorCode::DuplicateIndex:
      return "DuplicateIndex";
    case ErrorCode::RangeNotFound:
      return "RangeNotFound";
    case ErrorCode::ZeroMatrix:
      return "ZeroMatrix";
    case ErrorCode::NotNormalized:
      return "NotNormalized";
    case ErrorCode::NoConvergence:
      return "NoConvergence";
    case ErrorCode::ParseError:
      return "ParseError";
    case ErrorCode::NotSymmetricHeader:
      return "NotSymmetricHeader";
    case ErrorCode::IndexOutOfBounds:
      return "IndexOutOfBounds";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

SymmetricMatrix::SymmetricMatrix(std::size_t n, std::vector<double> entries)
  : n_(n), a_(std::move(entries))
{
  if (n_ == 0)
  {
    throw Error(ErrorCode::InvalidArgument, "matrix dimension must be positive");
  }
  if (a_.size() != n_ * n_)
  {
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(n_ * n_) + " entries, got " +
                                               std::to_string(a_.size()));
  }
  double max_abs = 0.0;
  for (double x : a_)
  {
    if (!std::isfinite(x))
    {
      throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
    }
    max_abs = std::max(max_abs, std::abs(x));
  }
  const double tol = 1e-12 * max_abs;
  for (std::size_t i = 0; i < n_; i++)
  {
    for (std::size_t j = i + 1; j < n_; j++)
    {
      double &upper = a_[i * n_ + j];
      double &lower = a_[j * n_ + i];
      if (std::abs(upper - lower) > tol)
      {
        throw Error(ErrorCode::NotSymmetric, "entries (" + std::to_string(i) + "," + std::to_string(j) +
                                                 ") and its transpose differ");
      }
      const double avg = 0.5 * (upper + lower);
      upper = avg;
      lower = avg;
    }
  }
}

SymmetricMatrix SymmetricMatrix::zeros(std::size_t n)
{
  return SymmetricMatrix(n, std::vector<double>(n * n, 0.0));
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n)
{
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; i++)
  {
    a[i * n + i] = 1.0;
  }
  return SymmetricMatrix(n, std::move(a));
}

SymmetricMatrix SymmetricMatrix::diagonal(std::span<const double> d)
{
  const std::size_t n = d.size();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; i++)
  {
    a[i * n + i] = d[i];
  }
  return SymmetricMatrix(n, std::move(a));
}

SymmetricMatrix SymmetricMatrix::from_rows(const std::vector<std::vector<double>> &rows)
{
  const std::size_t n = rows.size();
  std::vector<double> a;
  a.reserve(n * n);
  for (const auto &r : rows)
  {
    if (r.size() != n)
    {
      throw Error(ErrorCode::LengthMismatch, "matrix rows must be square");
    }
    a.insert(a.end(), r.begin(), r.end());
  }
  return SymmetricMatrix(n, std::move(a));
}

Qubo::Qubo(std::size_t m) : m_(m), linear_(m, 0.0), coupling_(m * m, 0.0)
{
  if (m_ == 0)
  {
    throw Error(ErrorCode::InvalidArgument, "QUBO must have at least one variable");
  }
}

double Qubo::weight(std::size_t i, std::size_t j) const
{
  if (i > j || j >= m_)
  {
    throw Error(ErrorCode::IndexOutOfRange, "QUBO weight index must satisfy i <= j < m");
  }
  return i == j ? linear_[i] : coupling_[i * m_ + j];
}

void Qubo::set_weight(std::size_t i, std::size_t j, double w)
{
  if (i > j || j >= m_)
  {
    throw Error(ErrorCode::IndexOutOfRange, "QUBO weight index must satisfy i <= j < m");
  }
  if (i == j)
  {
    linear_[i] = w;
  }
  else
  {
    coupling_[i * m_ + j] = w;
    coupling_[j * m_ + i] = w;
  }
}

void Qubo::add_weight(std::size_t i, std::size_t j, double w)
{
  set_weight(i, j, weight(i, j) + w);
}

double Qubo::magnitude() const
{
  double s = 0.0;
  for (std::size_t i = 0; i < m_; i++)
  {
    s += std::abs(linear_[i]);
    for (std::size_t j = i + 1; j < m_; j++)
    {
      s += std::abs(coupling_[i * m_ + j]);
    }
  }
  return s;
}

bool Qubo::is_zero() const
{
  auto zero = [](double w) { return w == 0.0; };
  return std::all_of(linear_.begin(), linear_.end(), zero) &&
         std::all_of(coupling_.begin(), coupling_.end(), zero);
}

std::vector<double> Qubo::to_symmetric() const
{
  std::vector<double> full(m_ * m_, 0.0);
  for (std::size_t i = 0; i < m_; i++)
  {
    full[i * m_ + i] = linear_[i];
    for (std::size_t j = i + 1; j < m_; j++)
    {
      full[i * m_ + j] = 0.5 * coupling_[i * m_ + j];
      full[j * m_ + i] = 0.5 * coupling_[i * m_ + j];
    }
  }
  return full;
}

Qubo Qubo::from_symmetric(std::size_t m, std::span<const double> full, double offset)
{
  if (full.size() != m * m)
  {
    throw Error(ErrorCode::LengthMismatch, "symmetric weight matrix must be m x m");
  }
  Qubo q(m);
  for (std::size_t i = 0; i < m; i++)
  {
    q.set_weight(i, i, full[i * m + i]);
    for (std::size_t j = i + 1; j < m; j++)
    {
      q.set_weight(i, j, full[i * m + j] + full[j * m + i]);
    }
  }
  q.set_offset(offset);
  return q;
}

double EncodingConfig::resolution() const
{
  return std::ldexp(1.0, 1 - qubits);
}

void EncodingConfig::validate() const
{
  // 52 magnitude bits is the most a double can resolve.
  if (qubits < 2 || qubits > 53)
  {
    throw Error(ErrorCode::InvalidArgument, "qubits per element must be in [2, 53]");
  }
}

double dot(std::span<const double> a, std::span<const double> b)
{
  if (a.size() != b.size())
  {
    throw Error(ErrorCode::LengthMismatch, "dot product of vectors with different lengths");
  }
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> v)
{
  return std::sqrt(dot(v, v));
}

RealVector multiply(const SymmetricMatrix &a, std::span<const double> v)
{
  if (v.size() != a.dim())
  {
    throw Error(ErrorCode::LengthMismatch, "vector length does not match matrix dimension");
  }
  RealVector out(a.dim(), 0.0);
  for (std::size_t i = 0; i < a.dim(); i++)
  {
    out[i] = dot(a.row(i), v);
  }
  return out;
}

RealVector normalized(std::span<const double> v)
{
  const double nrm = norm2(v);
  if (nrm < 1e-300)
  {
    throw Error(ErrorCode::ZeroVector, "cannot normalize a zero vector");
  }
  RealVector out(v.begin(), v.end());
  for (double &x : out)
  {
    x /= nrm;
  }
  return out;
}

double max_abs_element(const SymmetricMatrix &a)
{
  double m = 0.0;
  for (double x : a.entries())
  {
    m = std::max(m, std::abs(x));
  }
  return m;
}

double spectral_scale(const SymmetricMatrix &a)
{
  return std::max(1.0, max_abs_element(a));
}

double trace(const SymmetricMatrix &a)
{
  double t = 0.0;
  for (std::size_t i = 0; i < a.dim(); i++)
  {
    t += a(i, i);
  }
  return t;
}

double rayleigh_quotient(const SymmetricMatrix &a, std::span<const double> v)
{
  if (v.size() != a.dim())
  {
    throw Error(ErrorCode::LengthMismatch, "vector length does not match matrix dimension");
  }
  const double vv = dot(v, v);
  if (std::sqrt(vv) < 1e-300)
  {
    throw Error(ErrorCode::ZeroVector, "Rayleigh quotient of a zero vector");
  }
  return dot(v, multiply(a, v)) / vv;
}

} // namespace qae
