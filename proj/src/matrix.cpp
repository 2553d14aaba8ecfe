#include "quadphi/matrix.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

namespace quadphi {

namespace {

std::atomic<long long> g_matmul_count{0};

void require_same_dim(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                    std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) +
                                    ")");
    }
}

} // namespace

DenseMatrix::DenseMatrix(int n) : n_(n), a_(std::size_t(n) * n, 0.0) {
    if (n < 1) {
        throw std::invalid_argument("DenseMatrix: dimension must be positive, got " +
                                    std::to_string(n));
    }
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

DenseMatrix DenseMatrix::from_rows(int n, const std::vector<double>& row_major) {
    DenseMatrix m(n);
    if (row_major.size() != std::size_t(n) * n) {
        throw std::invalid_argument("DenseMatrix::from_rows: expected " +
                                    std::to_string(std::size_t(n) * n) + " entries, got " +
                                    std::to_string(row_major.size()));
    }
    for (std::size_t k = 0; k < row_major.size(); ++k) {
        if (!std::isfinite(row_major[k])) {
            throw std::invalid_argument("DenseMatrix::from_rows: non-finite entry at index " +
                                        std::to_string(k));
        }
        m.a_[k] = row_major[k];
    }
    return m;
}

bool DenseMatrix::all_finite() const {
    for (double v : a_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_dim(a, b, "matmul");
    g_matmul_count.fetch_add(1, std::memory_order_relaxed);

    const int n = a.dim();
    DenseMatrix c(n);
    const double* pa = a.data();
    const double* pb = b.data();
    double* pc = c.data();
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const double aik = pa[std::size_t(i) * n + k];
            if (aik == 0.0) continue;
            const double* brow = pb + std::size_t(k) * n;
            double* crow = pc + std::size_t(i) * n;
            for (int j = 0; j < n; ++j) {
                crow[j] += aik * brow[j];
            }
        }
    }
    return c;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_dim(a, b, "add");
    const int n = a.dim();
    DenseMatrix c(n);
    for (std::size_t k = 0; k < std::size_t(n) * n; ++k) {
        c.data()[k] = a.data()[k] + b.data()[k];
    }
    return c;
}

DenseMatrix sub(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_dim(a, b, "sub");
    const int n = a.dim();
    DenseMatrix c(n);
    for (std::size_t k = 0; k < std::size_t(n) * n; ++k) {
        c.data()[k] = a.data()[k] - b.data()[k];
    }
    return c;
}

DenseMatrix scale(const DenseMatrix& a, double c) {
    const int n = a.dim();
    DenseMatrix r(n);
    for (std::size_t k = 0; k < std::size_t(n) * n; ++k) {
        r.data()[k] = a.data()[k] * c;
    }
    return r;
}

void axpy_inplace(DenseMatrix& y, double c, const DenseMatrix& x) {
    require_same_dim(y, x, "axpy_inplace");
    const std::size_t len = std::size_t(y.dim()) * y.dim();
    for (std::size_t k = 0; k < len; ++k) {
        y.data()[k] += c * x.data()[k];
    }
}

void add_diag_inplace(DenseMatrix& a, double c) {
    for (int i = 0; i < a.dim(); ++i) {
        a(i, i) += c;
    }
}

double one_norm(const DenseMatrix& a) {
    const int n = a.dim();
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
        double colsum = 0.0;
        for (int i = 0; i < n; ++i) {
            colsum += std::fabs(a(i, j));
        }
        if (colsum > best) best = colsum;
    }
    return best;
}

double max_abs(const DenseMatrix& a) {
    const int n = a.dim();
    double best = 0.0;
    for (std::size_t k = 0; k < std::size_t(n) * n; ++k) {
        const double v = std::fabs(a.data()[k]);
        if (v > best) best = v;
    }
    return best;
}

std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x) {
    const int n = a.dim();
    if (x.size() != std::size_t(n)) {
        throw std::invalid_argument("matvec: vector length " + std::to_string(x.size()) +
                                    " does not match matrix dimension " + std::to_string(n));
    }
    std::vector<double> y(std::size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            acc += a(i, j) * x[std::size_t(j)];
        }
        y[std::size_t(i)] = acc;
    }
    return y;
}

long long matmul_count() { return g_matmul_count.load(std::memory_order_relaxed); }

} // namespace quadphi
