// SPDX-License-Identifier: Apache-2.0
//
// MatrixMarket coordinate reader/writer for real symmetric matrices.

#ifndef QAE_MATRIX_MARKET_HPP
#define QAE_MATRIX_MARKET_HPP

#include "qae/core.hpp"

#include <iosfwd>
#include <string>

namespace qae
{

// Header must be "%%MatrixMarket matrix coordinate real symmetric". Indices are
// 1-based; entries from either triangle are mirrored, missing entries are 0.
SymmetricMatrix read_matrix_market(std::istream &in);
SymmetricMatrix load_matrix(const std::string &path);

// Writes the lower triangle with 17 significant digits.
void write_matrix_market(std::ostream &out, const SymmetricMatrix &a);
void save_matrix(const std::string &path, const SymmetricMatrix &a);

// 64-bit FNV-1a over the dimension and the bit patterns of the entries.
std::string matrix_digest(const SymmetricMatrix &a);

} // namespace qae

#endif
