#include "quadphi/taylor.hpp"

#include <stdexcept>
#include <string>

#include "quadphi/params.hpp"

namespace quadphi {

double taylor_coeff(int j, int k) {
    if (j < 0 || k < 0) throw std::invalid_argument("taylor_coeff: indices must be nonnegative");
    double c = 1.0;
    for (int i = 2; i <= j; ++i) c /= double(i); // c = 1/j!
    for (int i = 0; i < k; ++i) {
        c = -c / (double(2 * i + j + 1) * double(2 * i + j + 2));
    }
    return c;
}

std::vector<double> taylor_coeff_row(int j, int m) {
    if (j < 0 || m < 0) throw std::invalid_argument("taylor_coeff_row: indices must be nonnegative");
    std::vector<double> row(std::size_t(m) + 1);
    double c = 1.0;
    for (int i = 2; i <= j; ++i) c /= double(i);
    row[0] = c;
    for (int k = 0; k < m; ++k) {
        c = -c / (double(2 * k + j + 1) * double(2 * k + j + 2));
        row[std::size_t(k + 1)] = c;
    }
    return row;
}

PhiFamily ps_eval_family(const TaylorRequest& req) {
    const int m = req.m;
    const int L = req.L;
    if (!is_supported_degree(m)) {
        throw std::invalid_argument("ps_eval_family: unsupported degree m = " + std::to_string(m));
    }
    if (L < 0) throw std::invalid_argument("ps_eval_family: L must be nonnegative");

    int q = 1;
    while (q * q < m) ++q;
    const int r = m / q; // exact for every supported degree

    if (req.powers.size() != std::size_t(q)) {
        throw std::invalid_argument("ps_eval_family: expected " + std::to_string(q) +
                                    " powers, got " + std::to_string(req.powers.size()));
    }
    const int n = req.powers.front().dim();
    for (const DenseMatrix& p : req.powers) {
        if (p.dim() != n) {
            throw std::invalid_argument("ps_eval_family: powers have inconsistent dimensions");
        }
    }

    // Block of `count` consecutive coefficients starting at index `lo`:
    // c[lo]*I + c[lo+1]*X + ... assembled in ascending order.
    const auto block = [&](const std::vector<double>& c, int lo, int count) {
        DenseMatrix b(n);
        add_diag_inplace(b, c[std::size_t(lo)]);
        for (int i = 1; i < count; ++i) {
            axpy_inplace(b, c[std::size_t(lo + i)], req.powers[std::size_t(i - 1)]);
        }
        return b;
    };

    PhiFamily fam;
    fam.level = 0;
    fam.members.reserve(std::size_t(L) + 1);

    const DenseMatrix& top_power = req.powers[std::size_t(q - 1)];
    for (int j = 0; j <= L; ++j) {
        const std::vector<double> c = taylor_coeff_row(j, m);
        DenseMatrix t = block(c, m - q, q + 1);
        for (int k = r - 2; k >= 0; --k) {
            t = add(matmul(t, top_power), block(c, q * k, q));
        }
        fam.members.push_back(std::move(t));
    }
    return fam;
}

} // namespace quadphi
