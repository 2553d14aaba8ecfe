#pragma once

#include <iosfwd>
#include <string>

#include "quadphi/matrix.hpp"

namespace quadphi::mm {

/// Reads a Matrix Market file: array or coordinate layout, real field,
/// general or symmetric symmetry. The matrix must be square with finite
/// entries. Throws std::runtime_error naming the path on any failure.
DenseMatrix read_matrix(const std::string& path);

DenseMatrix read_matrix_stream(std::istream& in, const std::string& what);

/// Writes array/real/general with shortest round-trip decimals, column by
/// column; written atomically (temp file plus rename).
void write_matrix(const std::string& path, const DenseMatrix& m);

std::string matrix_to_string(const DenseMatrix& m);

} // namespace quadphi::mm
