// SPDX-License-Identifier: Apache-2.0

#include "qae/matrix_market.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qae
{

namespace
{

std::string lowercase(std::string s)
{
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool blank(const std::string &line)
{
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

} // namespace

SymmetricMatrix read_matrix_market(std::istream &in)
{
  std::string line;
  if (!std::getline(in, line))
  {
    throw Error(ErrorCode::ParseError, "empty MatrixMarket input");
  }
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lowercase(object) != "matrix" || lowercase(format) != "coordinate" ||
      lowercase(field) != "real")
  {
    throw Error(ErrorCode::ParseError, "expected '%%MatrixMarket matrix coordinate real symmetric' header");
  }
  if (lowercase(symmetry) != "symmetric")
  {
    throw Error(ErrorCode::NotSymmetricHeader, "matrix is declared '" + symmetry + "', not symmetric");
  }

  std::size_t lineno = 1;
  do
  {
    if (!std::getline(in, line))
    {
      throw Error(ErrorCode::ParseError, "missing size line");
    }
    lineno++;
  } while (blank(line) || line[0] == '%');

  long long rows = 0, cols = 0, nnz = 0;
  {
    std::istringstream size_line(line);
    std::string extra;
    if (!(size_line >> rows >> cols >> nnz) || (size_line >> extra))
    {
      throw Error(ErrorCode::ParseError, "malformed size line " + std::to_string(lineno));
    }
  }
  if (rows <= 0 || rows != cols || nnz < 0)
  {
    throw Error(ErrorCode::ParseError, "size line must describe a square matrix with non-negative entry count");
  }
  const auto n = static_cast<std::size_t>(rows);
  std::vector<double> a(n * n, 0.0);

  long long seen = 0;
  while (std::getline(in, line))
  {
    lineno++;
    if (blank(line) || line[0] == '%')
    {
      continue;
    }
    long long i = 0, j = 0;
    double value = 0.0;
    std::string extra;
    std::istringstream entry(line);
    if (!(entry >> i >> j >> value) || (entry >> extra))
    {
      throw Error(ErrorCode::ParseError, "malformed entry on line " + std::to_string(lineno));
    }
    if (i < 1 || j < 1 || i > rows || j > rows)
    {
      throw Error(ErrorCode::IndexOutOfBounds, "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                                   ") outside a " + std::to_string(rows) + "x" +
                                                   std::to_string(rows) + " matrix");
    }
    if (++seen > nnz)
    {
      throw Error(ErrorCode::ParseError, "more entries than declared on the size line");
    }
    const auto r = static_cast<std::size_t>(i - 1);
    const auto c = static_cast<std::size_t>(j - 1);
    a[r * n + c] = value;
    a[c * n + r] = value;
  }
  if (seen != nnz)
  {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(nnz) + " entries, found " + std::to_string(seen));
  }
  return SymmetricMatrix(n, std::move(a));
}

SymmetricMatrix load_matrix(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  }
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream &out, const SymmetricMatrix &a)
{
  const std::size_t n = a.dim();
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < n; i++)
  {
    for (std::size_t j = 0; j <= i; j++)
    {
      nnz += a(i, j) != 0.0;
    }
  }
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << n << ' ' << n << ' ' << nnz << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < n; i++)
  {
    for (std::size_t j = 0; j <= i; j++)
    {
      if (a(i, j) != 0.0)
      {
        out << i + 1 << ' ' << j + 1 << ' ' << a(i, j) << '\n';
      }
    }
  }
}

void save_matrix(const std::string &path, const SymmetricMatrix &a)
{
  std::ofstream out(path);
  if (!out)
  {
    throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  }
  write_matrix_market(out, a);
}

std::string matrix_digest(const SymmetricMatrix &a)
{
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; b++)
    {
      h ^= (word >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(a.dim());
  for (double x : a.entries())
  {
    mix(std::bit_cast<std::uint64_t>(x));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

} // namespace qae
