// SPDX-License-Identifier: Apache-2.0
//
// Shared domain types for the annealer eigensolver: dense symmetric input
// matrices, QUBO instances, bit strings and eigenpairs.

#ifndef QAE_CORE_HPP
#define QAE_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qae
{

enum class ErrorCode
{
  InvalidArgument,
  NotSymmetric,
  ZeroVector,
  LengthMismatch,
  TooLarge,
  IndexOutOfRange,
  DuplicateIndex,
  RangeNotFound,
  ZeroMatrix,
  NotNormalized,
  NoConvergence,
  ParseError,
  NotSymmetricHeader,
  IndexOutOfBounds,
};

const char *to_string(ErrorCode code);

class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string &what);
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

using RealVector = std::vector<double>;

// One binary variable per byte; values are 0 or 1.
using BitString = std::vector<std::uint8_t>;

/// Dense real symmetric matrix stored row-major.
///
/// Construction checks symmetry against 1e-12 * max|a_ij|. Inputs within that
/// tolerance are symmetrized by averaging; anything worse is rejected.
class SymmetricMatrix
{
public:
  SymmetricMatrix(std::size_t n, std::vector<double> entries);

  static SymmetricMatrix zeros(std::size_t n);
  static SymmetricMatrix identity(std::size_t n);
  static SymmetricMatrix diagonal(std::span<const double> d);
  static SymmetricMatrix from_rows(const std::vector<std::vector<double>> &rows);

  std::size_t dim() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }
  std::span<const double> entries() const noexcept { return a_; }

  bool operator==(const SymmetricMatrix &other) const = default;

private:
  std::size_t n_;
  std::vector<double> a_;
};

/// Quadratic pseudo-Boolean objective offset + sum_{i<=j} w_ij x_i x_j.
///
/// Only the upper triangle is addressable. Couplings are mirrored internally
/// so that the row of neighbours of a variable is contiguous.
class Qubo
{
public:
  explicit Qubo(std::size_t m);

  std::size_t size() const noexcept { return m_; }

  // i <= j required.
  double weight(std::size_t i, std::size_t j) const;
  void set_weight(std::size_t i, std::size_t j, double w);
  void add_weight(std::size_t i, std::size_t j, double w);

  double linear(std::size_t i) const noexcept { return linear_[i]; }
  // Couplings of variable i with every j (entry i itself is zero).
  std::span<const double> couplings(std::size_t i) const { return {coupling_.data() + i * m_, m_}; }

  double offset() const noexcept { return offset_; }
  void set_offset(double c) { offset_ = c; }

  // Sum of |w_ij| over the upper triangle.
  double magnitude() const;
  bool is_zero() const;

  // Full symmetric matrix S with x^T S x == energy - offset: diagonal holds the
  // linear weights, off-diagonal entries hold half of each coupling.
  std::vector<double> to_symmetric() const;
  static Qubo from_symmetric(std::size_t m, std::span<const double> full, double offset = 0.0);

  bool operator==(const Qubo &other) const = default;

private:
  std::size_t m_;
  std::vector<double> linear_;
  std::vector<double> coupling_;
  double offset_ = 0.0;
};

struct EncodingConfig
{
  // Binary variables per vector element, sign bit included.
  int qubits = 10;

  double resolution() const;
  void validate() const;
};

struct SolveMeta
{
  std::uint64_t iterations = 0;  // QUBO solves performed
  std::uint64_t evaluations = 0; // Rayleigh quotients evaluated
  std::uint64_t seed = 0;
};

struct Eigenpair
{
  double value = 0.0;
  RealVector vector;
  double lambda_star = 0.0;
  SolveMeta meta;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
RealVector multiply(const SymmetricMatrix &a, std::span<const double> v);
RealVector normalized(std::span<const double> v);

double max_abs_element(const SymmetricMatrix &a);
// max(1, max_abs_element(a)); the scale all tolerances are expressed in.
double spectral_scale(const SymmetricMatrix &a);
double trace(const SymmetricMatrix &a);

/// (v, Av) / (v, v). Throws ZeroVector when ||v|| < 1e-300.
double rayleigh_quotient(const SymmetricMatrix &a, std::span<const double> v);

} // namespace qae

#endif
