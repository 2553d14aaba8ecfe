#include "quadphi/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace quadphi::oracle {

namespace {

// sum_{k=0}^\infty (-1)^k x^k/(2k+l)! by direct summation; forward-stable for
// the small arguments it is used at (|x| < ~2, terms decay immediately).
double scalar_phi_series(int l, double x) {
    double inv_lfact = 1.0;
    for (int i = 2; i <= l; ++i) inv_lfact /= double(i);
    double term = inv_lfact;
    double sum = term;
    for (int k = 1; k <= 40; ++k) {
        term *= -x / (double(2 * k + l - 1) * double(2 * k + l));
        sum += term;
        if (std::fabs(term) < 0x1p-60 * std::fabs(sum)) break;
    }
    return sum;
}

} // namespace

double scalar_phi(int l, double x) {
    if (x < 0.0) throw std::invalid_argument("scalar_phi: argument must be nonnegative");
    if (l < 0 || l > 3) {
        throw std::invalid_argument("scalar_phi: index must be in 0..3, got " + std::to_string(l) +
                                    "; use the series reference for higher indices");
    }
    const double t = std::sqrt(x);
    switch (l) {
        case 0:
            return std::cos(t);
        case 1:
            return x < 1e-8 ? scalar_phi_series(1, x) : std::sin(t) / t;
        case 2: {
            if (x < 1e-8) return scalar_phi_series(2, x);
            // half-angle form: (1 - cos t)/x = 2 sin^2(t/2)/x, no cancellation
            const double s = std::sin(0.5 * t);
            return 2.0 * s * s / x;
        }
        default: {
            // (t - sin t)/t^3 cancels catastrophically for small t; the series
            // converges to full precision well past the crossover, so switch
            // high enough that the closed form has lost nothing.
            if (x < 2.0) return scalar_phi_series(3, x);
            return (t - std::sin(t)) / (x * t);
        }
    }
}

ExtendedMatrix ExtendedMatrix::identity(int dim) {
    ExtendedMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = ExtendedReal(1.0);
    return m;
}

ExtendedMatrix ExtendedMatrix::from_dense(const DenseMatrix& src) {
    ExtendedMatrix m(src.dim());
    for (int i = 0; i < src.dim(); ++i) {
        for (int j = 0; j < src.dim(); ++j) {
            m(i, j) = ExtendedReal(src(i, j));
        }
    }
    return m;
}

DenseMatrix ExtendedMatrix::round_to_double() const {
    DenseMatrix m(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = (*this)(i, j).to_double();
        }
    }
    return m;
}

ExtendedMatrix ext_matmul(const ExtendedMatrix& x, const ExtendedMatrix& y) {
    if (x.n != y.n) throw std::invalid_argument("ext_matmul: dimension mismatch");
    const int n = x.n;
    ExtendedMatrix z(n);
    mpfr_t tmp;
    mpfr_init2(tmp, ExtendedReal::kPrecision);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            mpfr_ptr acc = z(i, j).raw();
            for (int k = 0; k < n; ++k) {
                mpfr_mul(tmp, x(i, k).raw(), y(k, j).raw(), MPFR_RNDN);
                mpfr_add(acc, acc, tmp, MPFR_RNDN);
            }
        }
    }
    mpfr_clear(tmp);
    return z;
}

void ext_axpy_inplace(ExtendedMatrix& y, const ExtendedReal& c, const ExtendedMatrix& x) {
    if (x.n != y.n) throw std::invalid_argument("ext_axpy_inplace: dimension mismatch");
    mpfr_t tmp;
    mpfr_init2(tmp, ExtendedReal::kPrecision);
    for (std::size_t k = 0; k < y.a.size(); ++k) {
        mpfr_mul(tmp, c.raw(), x.a[k].raw(), MPFR_RNDN);
        mpfr_add(y.a[k].raw(), y.a[k].raw(), tmp, MPFR_RNDN);
    }
    mpfr_clear(tmp);
}

ExtendedMatrix ext_scale(const ExtendedMatrix& x, const ExtendedReal& c) {
    ExtendedMatrix z(x.n);
    for (std::size_t k = 0; k < x.a.size(); ++k) {
        mpfr_mul(z.a[k].raw(), x.a[k].raw(), c.raw(), MPFR_RNDN);
    }
    return z;
}

ExtendedReal ext_one_norm(const ExtendedMatrix& x) {
    ExtendedReal best(0.0);
    mpfr_t colsum, tmp;
    mpfr_init2(colsum, ExtendedReal::kPrecision);
    mpfr_init2(tmp, ExtendedReal::kPrecision);
    for (int j = 0; j < x.n; ++j) {
        mpfr_set_zero(colsum, 1);
        for (int i = 0; i < x.n; ++i) {
            mpfr_abs(tmp, x(i, j).raw(), MPFR_RNDN);
            mpfr_add(colsum, colsum, tmp, MPFR_RNDN);
        }
        if (mpfr_cmp(colsum, best.raw()) > 0) {
            mpfr_set(best.raw(), colsum, MPFR_RNDN);
        }
    }
    mpfr_clear(colsum);
    mpfr_clear(tmp);
    return best;
}

namespace {

constexpr int kOracleMaxDim = 16;
constexpr double kOracleMaxNorm = 1e4;
constexpr int kOracleMaxTerms = 600;

} // namespace

ExtendedFamily series_reference_extended(const DenseMatrix& a, int L) {
    if (L < 0) throw std::invalid_argument("series reference: L must be nonnegative");
    if (a.dim() > kOracleMaxDim) {
        throw std::invalid_argument("series reference: dimension " + std::to_string(a.dim()) +
                                    " exceeds the desk-scale cap " +
                                    std::to_string(kOracleMaxDim));
    }
    const double norm_a = one_norm(a);
    if (norm_a > kOracleMaxNorm) {
        throw std::invalid_argument("series reference: 1-norm " + std::to_string(norm_a) +
                                    " exceeds the desk-scale cap");
    }

    const int n = a.dim();
    const ExtendedMatrix aext = ExtendedMatrix::from_dense(a);

    ExtendedFamily fam;
    fam.members.reserve(std::size_t(L) + 1);

    // k = 0 term: scaled = A^0/(2*0)! = I; the index-l term divides further
    // by (2k+1)...(2k+l), i.e. by l! here.
    ExtendedMatrix scaled = ExtendedMatrix::identity(n); // A^k/(2k)!
    for (int l = 0; l <= L; ++l) {
        ExtendedReal div(1.0);
        for (int j = 1; j <= l; ++j) div *= ExtendedReal(double(j));
        fam.members.push_back(ext_scale(scaled, ExtendedReal(1.0) / div));
    }

    const double log_norm = norm_a > 0.0 ? std::log(norm_a) : 0.0;
    double sign = 1.0;
    for (int k = 1; k <= kOracleMaxTerms; ++k) {
        scaled = ext_matmul(aext, scaled);
        const ExtendedReal denom = ExtendedReal(double(2 * k - 1)) * ExtendedReal(double(2 * k));
        scaled = ext_scale(scaled, ExtendedReal(1.0) / denom);
        sign = -sign;

        for (int l = 0; l <= L; ++l) {
            ExtendedReal div(1.0);
            for (int j = 1; j <= l; ++j) div *= ExtendedReal(double(2 * k + j));
            ext_axpy_inplace(fam.members[std::size_t(l)], ExtendedReal(sign) / div, scaled);
        }

        if (norm_a == 0.0) break;

        // a-priori tail majorant norm^(k+1)/(2k+2)!, in log space, against
        // the current partial sums (floored at one)
        double cur_norm = 1.0;
        for (const ExtendedMatrix& s : fam.members) {
            cur_norm = std::max(cur_norm, ext_one_norm(s).to_double());
        }
        const double log_bound = double(k + 1) * log_norm - std::lgamma(double(2 * (k + 1) + 1));
        if (log_bound < std::log(0x1p-120) + std::log(cur_norm)) break;
        if (k == kOracleMaxTerms) {
            throw std::runtime_error("series reference: did not converge within the term cap");
        }
    }
    return fam;
}

PhiFamily series_reference(const DenseMatrix& a, int L) {
    const ExtendedFamily ext = series_reference_extended(a, L);
    PhiFamily fam;
    fam.level = 0;
    fam.members.reserve(ext.members.size());
    for (const ExtendedMatrix& m : ext.members) {
        fam.members.push_back(m.round_to_double());
    }
    return fam;
}

double series_recurrence_residual(const DenseMatrix& a, int L) {
    if (L < 2) throw std::invalid_argument("series_recurrence_residual: needs L >= 2");
    const ExtendedFamily ext = series_reference_extended(a, L);
    const ExtendedMatrix aext = ExtendedMatrix::from_dense(a);

    double max_norm = 0.0;
    for (const ExtendedMatrix& m : ext.members) {
        max_norm = std::max(max_norm, ext_one_norm(m).to_double());
    }

    double worst = 0.0;
    for (int l = 0; l + 2 <= L; ++l) {
        // residual of S_l - (I/l! - A*S_{l+2})
        ExtendedMatrix r = ext_matmul(aext, ext.members[std::size_t(l + 2)]);
        ext_axpy_inplace(r, ExtendedReal(1.0), ext.members[std::size_t(l)]);
        ExtendedReal inv_lfact(1.0);
        for (int i = 2; i <= l; ++i) inv_lfact /= ExtendedReal(double(i));
        for (int i = 0; i < r.n; ++i) {
            r(i, i) = r(i, i) - inv_lfact;
        }
        worst = std::max(worst, ext_one_norm(r).to_double());
    }
    return worst / std::max(1.0, max_norm);
}

namespace {

void validate_action_args(const DenseMatrix& a, std::size_t len, int steps) {
    if (len != std::size_t(a.dim())) {
        throw std::invalid_argument("action oracle: vector length does not match dimension");
    }
    if (steps < 100) {
        throw std::invalid_argument("action oracle: steps must be at least 100");
    }
}

// Classical fourth-order step for z = (y, v) with y' = v, v' = -A y + g(t).
struct SecondOrderSystem {
    const DenseMatrix& a;
    std::vector<double> y, v;

    void rk4_integrate(int steps, const std::vector<double>& force_dir, double force_coeff,
                       int force_power) {
        const int n = a.dim();
        const double h = 1.0 / double(steps);
        std::vector<double> k1y(n), k2y(n), k3y(n), k4y(n);
        std::vector<double> k1v(n), k2v(n), k3v(n), k4v(n);
        std::vector<double> yt(n);

        const auto accel = [&](const std::vector<double>& yy, double t, std::vector<double>& out) {
            out = matvec(a, yy);
            double g = 0.0;
            if (force_coeff != 0.0) {
                g = force_coeff * (force_power == 0 ? 1.0 : std::pow(t, force_power));
            }
            for (int i = 0; i < n; ++i) {
                out[std::size_t(i)] = -out[std::size_t(i)] + g * force_dir[std::size_t(i)];
            }
        };

        for (int step = 0; step < steps; ++step) {
            const double t = double(step) * h;

            k1y = v;
            accel(y, t, k1v);

            for (int i = 0; i < n; ++i) yt[i] = y[i] + 0.5 * h * k1y[std::size_t(i)];
            for (int i = 0; i < n; ++i) k2y[i] = v[i] + 0.5 * h * k1v[std::size_t(i)];
            accel(yt, t + 0.5 * h, k2v);

            for (int i = 0; i < n; ++i) yt[i] = y[i] + 0.5 * h * k2y[std::size_t(i)];
            for (int i = 0; i < n; ++i) k3y[i] = v[i] + 0.5 * h * k2v[std::size_t(i)];
            accel(yt, t + 0.5 * h, k3v);

            for (int i = 0; i < n; ++i) yt[i] = y[i] + h * k3y[std::size_t(i)];
            for (int i = 0; i < n; ++i) k4y[i] = v[i] + h * k3v[std::size_t(i)];
            accel(yt, t + h, k4v);

            for (int i = 0; i < n; ++i) {
                y[i] += h / 6.0 * (k1y[i] + 2.0 * k2y[i] + 2.0 * k3y[i] + k4y[i]);
                v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
            }
        }
    }
};

} // namespace

std::vector<double> ode_action_oracle(const DenseMatrix& a, const std::vector<double>& u, int L,
                                      int steps) {
    if (L < 2) {
        throw std::invalid_argument(
            "ode_action_oracle: L must be >= 2; the homogeneous variant covers 0 and 1");
    }
    validate_action_args(a, u.size(), steps);

    double coeff = 1.0;
    for (int i = 2; i <= L - 2; ++i) coeff /= double(i); // 1/(L-2)!

    SecondOrderSystem sys{a, std::vector<double>(u.size(), 0.0),
                          std::vector<double>(u.size(), 0.0)};
    sys.rk4_integrate(steps, u, coeff, L - 2);
    return sys.y;
}

std::pair<std::vector<double>, std::vector<double>> homogeneous_action_oracle(
    const DenseMatrix& a, const std::vector<double>& y0, const std::vector<double>& y0p,
    int steps) {
    validate_action_args(a, y0.size(), steps);
    if (y0p.size() != y0.size()) {
        throw std::invalid_argument("homogeneous_action_oracle: initial data length mismatch");
    }

    SecondOrderSystem sys{a, y0, y0p};
    sys.rk4_integrate(steps, y0, 0.0, 0);
    return {sys.y, sys.v};
}

} // namespace quadphi::oracle
