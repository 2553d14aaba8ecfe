#pragma once

#include <cstddef>
#include <vector>

namespace quadphi {

/// Square real matrix with value semantics, row-major storage.
///
/// Matrices built from external data (from_rows, file readers) are validated
/// to contain only finite entries. Arithmetic results are produced through
/// the same ctor but skip re-validation; finiteness is preserved at the
/// operating scales this library targets.
class DenseMatrix {
public:
    DenseMatrix() = default;

    /// n-by-n zero matrix, n >= 1.
    explicit DenseMatrix(int n);

    static DenseMatrix identity(int n);

    /// Builds from a row-major flat array of length n*n; rejects NaN/Inf.
    static DenseMatrix from_rows(int n, const std::vector<double>& row_major);

    int dim() const { return n_; }

    double operator()(int i, int j) const { return a_[std::size_t(i) * n_ + j]; }
    double& operator()(int i, int j) { return a_[std::size_t(i) * n_ + j]; }

    const double* data() const { return a_.data(); }
    double* data() { return a_.data(); }

    bool all_finite() const;

private:
    int n_ = 0;
    std::vector<double> a_;
};

/// Matrix product. Increments the global multiplication counter once per call.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix sub(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scale(const DenseMatrix& a, double c);

/// y += c*x, in place.
void axpy_inplace(DenseMatrix& y, double c, const DenseMatrix& x);

/// a += c*I, in place.
void add_diag_inplace(DenseMatrix& a, double c);

/// Max over columns of the sum of absolute entries.
double one_norm(const DenseMatrix& a);

/// Largest absolute entry.
double max_abs(const DenseMatrix& a);

std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x);

/// Global matrix-product counter; incremented exactly once per matmul call,
/// safe under concurrent increments. Callers measure costs as deltas.
long long matmul_count();

} // namespace quadphi
