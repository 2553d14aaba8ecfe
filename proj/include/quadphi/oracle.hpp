#pragma once

#include <mpfr.h>

#include <utility>
#include <vector>

#include "quadphi/matrix.hpp"
#include "quadphi/phi_family.hpp"

namespace quadphi::oracle {

/// Closed-form scalar functions for indices 0..3 at nonnegative arguments,
/// with series branches where the closed forms would cancel.
double scalar_phi(int l, double x);

/// Extended-precision real used only by the reference computations. The
/// contract is the per-operation relative error, not the representation;
/// 256 bits leaves room for the series' internal term growth at the top of
/// the supported norm range, where partial sums overshoot the limit by tens
/// of orders of magnitude.
class ExtendedReal {
public:
    static constexpr mpfr_prec_t kPrecision = 256;

    ExtendedReal() { mpfr_init2(v_, kPrecision); mpfr_set_zero(v_, 1); }
    ExtendedReal(double x) { mpfr_init2(v_, kPrecision); mpfr_set_d(v_, x, MPFR_RNDN); }
    ExtendedReal(const ExtendedReal& o) { mpfr_init2(v_, kPrecision); mpfr_set(v_, o.v_, MPFR_RNDN); }
    ExtendedReal(ExtendedReal&& o) noexcept { mpfr_init2(v_, kPrecision); mpfr_swap(v_, o.v_); }
    ExtendedReal& operator=(const ExtendedReal& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ExtendedReal& operator=(ExtendedReal&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~ExtendedReal() { mpfr_clear(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
        ExtendedReal r;
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) {
        ExtendedReal r;
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b) {
        ExtendedReal r;
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend ExtendedReal operator/(const ExtendedReal& a, const ExtendedReal& b) {
        ExtendedReal r;
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    ExtendedReal& operator+=(const ExtendedReal& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ExtendedReal& operator*=(const ExtendedReal& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    ExtendedReal& operator/=(const ExtendedReal& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

    friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
        return mpfr_cmp(a.v_, b.v_) < 0;
    }
    friend bool operator>(const ExtendedReal& a, const ExtendedReal& b) { return b < a; }

    friend ExtendedReal abs(const ExtendedReal& a) {
        ExtendedReal r;
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

private:
    mpfr_t v_;
};

/// Square matrix over ExtendedReal.
struct ExtendedMatrix {
    int n = 0;
    std::vector<ExtendedReal> a;

    ExtendedMatrix() = default;
    explicit ExtendedMatrix(int dim) : n(dim), a(std::size_t(dim) * dim) {}

    const ExtendedReal& operator()(int i, int j) const { return a[std::size_t(i) * n + j]; }
    ExtendedReal& operator()(int i, int j) { return a[std::size_t(i) * n + j]; }

    static ExtendedMatrix identity(int dim);
    static ExtendedMatrix from_dense(const DenseMatrix& m);
    DenseMatrix round_to_double() const;
};

ExtendedMatrix ext_matmul(const ExtendedMatrix& x, const ExtendedMatrix& y);
void ext_axpy_inplace(ExtendedMatrix& y, const ExtendedReal& c, const ExtendedMatrix& x);
ExtendedMatrix ext_scale(const ExtendedMatrix& x, const ExtendedReal& c);
ExtendedReal ext_one_norm(const ExtendedMatrix& x);

struct ExtendedFamily {
    std::vector<ExtendedMatrix> members;
};

/// Brute-force series summed in extended precision, terminated once the
/// a-priori term majorant norm^k/(2k)! drops below 2^-120 of the current
/// largest partial-sum norm (floored at one, so transient cancellation
/// plateaus cannot stop the sum early). Guarded to desk scale: n <= 16,
/// 1-norm <= 1e4.
ExtendedFamily series_reference_extended(const DenseMatrix& a, int L);

/// Same, rounded to working precision.
PhiFamily series_reference(const DenseMatrix& a, int L);

/// Max relative residual of the downward index recurrence over the extended
/// family, evaluated before rounding; a self-consistency figure for the
/// reference itself.
double series_recurrence_residual(const DenseMatrix& a, int L);

/// Integrates y'' + A y = t^(L-2)/(L-2)! * u, y(0) = y'(0) = 0 from 0 to 1
/// with the classical fourth-order one-step method at fixed step 1/steps and
/// returns y(1), which equals the index-L function of A applied to u.
/// Requires L >= 2 and steps >= 100.
std::vector<double> ode_action_oracle(const DenseMatrix& a, const std::vector<double>& u, int L,
                                      int steps);

/// Homogeneous variant: y'' + A y = 0 with initial data (y0, y0'); returns
/// (y(1), y'(1)), covering the index-0 and index-1 actions.
std::pair<std::vector<double>, std::vector<double>> homogeneous_action_oracle(
    const DenseMatrix& a, const std::vector<double>& y0, const std::vector<double>& y0p,
    int steps);

} // namespace quadphi::oracle
