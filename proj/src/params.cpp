#include "quadphi/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "quadphi/ddouble.hpp"

namespace quadphi {

double ThetaTable::theta(int m) const {
    if (m < 1 || m > 20) {
        throw std::invalid_argument("ThetaTable::theta: m must be in 1..20, got " +
                                    std::to_string(m));
    }
    return thetas[std::size_t(m - 1)];
}

const ThetaTable& default_theta_table() {
    // Output of regenerate_theta_table(0x1p-53, 150), frozen for deterministic
    // startup; the regeneration command re-derives it for audit.
    static const ThetaTable table = [] {
        ThetaTable t;
        t.tol = 0x1p-53;
        t.nu = 150;
        t.thetas = {
            5.161913648257799e-08,  // m = 1
            4.307719974061541e-05,  // m = 2
            1.4545576320301734e-03, // m = 3
            1.3213746092333167e-02, // m = 4
            6.131971713330131e-02,  // m = 5
            1.9214924614061601e-01, // m = 6
            4.6845791475789156e-01, // m = 7
            9.625107537431177e-01,  // m = 8
            1.749801512050908e+00,  // m = 9
            2.904562147159595e+00,  // m = 10
            4.497025097953156e+00,  // m = 11
            6.59200768568553e+00,   // m = 12
            9.248374623712152e+00,  // m = 13
            1.2519035011064261e+01, // m = 14
            1.6451238305307925e+01, // m = 15
            2.1087018598336726e+01, // m = 16
            2.6463695615530014e+01, // m = 17
            3.2614379562437534e+01, // m = 18
            3.9568451000377536e+01, // m = 19
            4.73520019557327e+01,   // m = 20
        };
        return t;
    }();
    return table;
}

ThetaTable regenerate_theta_table(double tol, int nu) {
    ThetaTable t;
    t.tol = tol;
    t.nu = nu;
    for (int m = 1; m <= 20; ++m) {
        t.thetas[std::size_t(m - 1)] = solve_theta(m, tol, nu);
    }
    return t;
}

double h_m_truncated(int m, double theta, int nu) {
    if (m < 1) throw std::invalid_argument("h_m_truncated: m must be >= 1");
    if (nu < 1) throw std::invalid_argument("h_m_truncated: nu must be >= 1");
    if (theta < 0.0) throw std::invalid_argument("h_m_truncated: theta must be nonnegative");
    if (theta == 0.0) return 0.0;

    const DDouble th(theta);

    // Leading term theta^(m+1)/(2m+2)!.
    DDouble term(1.0);
    for (int i = 0; i < m + 1; ++i) term *= th;
    for (int i = 2; i <= 2 * (m + 1); ++i) term /= DDouble(double(i));

    DDouble sum = term;
    for (int k = m + 2; k <= m + nu; ++k) {
        term *= th / DDouble(double(2 * k - 1) * double(2 * k));
        sum += term;
    }
    return sum.to_double();
}

double solve_theta(int m, double tol, int nu) {
    if (m < 1) throw std::invalid_argument("solve_theta: m must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_theta: tol must be positive");

    // [0, 100] brackets the working-precision regime; loose tolerances push
    // the root higher, so the bracket doubles up to a hard cap.
    double lo = 0.0;
    double hi = 100.0;
    constexpr double kMaxBracket = 1e6;
    while (!(h_m_truncated(m, hi, nu) > tol)) {
        hi *= 2.0;
        if (hi > kMaxBracket) {
            throw std::runtime_error("solve_theta: no bracket below " +
                                     std::to_string(kMaxBracket) + " for m = " +
                                     std::to_string(m) + "; tol is too large");
        }
    }

    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (h_m_truncated(m, mid, nu) <= tol) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (lo > 0.0 && hi - lo <= 1e-9 * lo) break;
    }
    if (!(lo > 0.0)) {
        throw std::runtime_error("solve_theta: bisection collapsed to zero for m = " +
                                 std::to_string(m));
    }
    return lo;
}

namespace {

struct PowerState {
    std::vector<DenseMatrix> powers; // powers[i-1] = A^i
    std::vector<double> d;           // d[i-1] = 1-norm of A^i (exact for built powers)
};

ScalingPlan finalize(int m, int s, double eta, PowerState&& st) {
    ScalingPlan plan;
    plan.m = m;
    plan.s = s;
    plan.eta = eta;

    int q = 1;
    while (q * q < m) ++q;

    plan.scaled_powers.reserve(std::size_t(q));
    for (int i = 1; i <= q; ++i) {
        DenseMatrix& p = st.powers[std::size_t(i - 1)];
        if (s > 0) {
            p = scale(p, std::ldexp(1.0, -2 * i * s)); // exact: power of two
        }
        plan.scaled_powers.push_back(std::move(p));
    }
    return plan;
}

} // namespace

ScalingPlan select_parameters(const DenseMatrix& a, const ThetaTable& table) {
    if (!a.all_finite()) {
        throw std::invalid_argument("select_parameters: input has non-finite entries");
    }

    PowerState st;
    st.powers.push_back(a);
    const double d1 = one_norm(a);
    st.d.push_back(d1);

    if (d1 <= table.theta(1)) return finalize(1, 0, d1, std::move(st));

    st.powers.push_back(matmul(st.powers[0], st.powers[0]));
    const double d2 = one_norm(st.powers[1]);
    st.d.push_back(d2);

    double alpha2 = std::max(std::sqrt(d2), std::cbrt(d1 * d2));
    double eta = alpha2;
    if (eta <= table.theta(2)) return finalize(2, 0, eta, std::move(st));
    if (eta <= table.theta(4)) return finalize(4, 0, eta, std::move(st));

    st.powers.push_back(matmul(st.powers[0], st.powers[1]));
    const double d3 = one_norm(st.powers[2]);
    st.d.push_back(d3);
    double d4 = std::min(d1 * d3, d2 * d2);
    alpha2 = std::max(std::sqrt(d2), std::cbrt(d3));
    double alpha3 = std::max(std::cbrt(d3), std::pow(d4, 0.25));
    eta = std::min(alpha2, alpha3);
    if (eta <= table.theta(6)) return finalize(6, 0, eta, std::move(st));
    if (eta <= table.theta(9)) return finalize(9, 0, eta, std::move(st));

    st.powers.push_back(matmul(st.powers[1], st.powers[1]));
    d4 = one_norm(st.powers[3]);
    st.d.push_back(d4);
    double d5 = std::min(d1 * d4, d2 * d3);
    alpha3 = std::max(std::cbrt(d3), std::pow(d4, 0.25));
    double alpha4 = std::max(std::pow(d4, 0.25), std::pow(d5, 0.2));
    eta = std::min({alpha2, alpha3, alpha4});
    if (eta <= table.theta(12)) return finalize(12, 0, eta, std::move(st));
    if (eta <= table.theta(16)) return finalize(16, 0, eta, std::move(st));

    st.powers.push_back(matmul(st.powers[0], st.powers[3]));
    d5 = one_norm(st.powers[4]);
    st.d.push_back(d5);
    const double d6 = std::min({d1 * d5, d2 * d4, d3 * d3});
    alpha4 = std::max(std::pow(d4, 0.25), std::pow(d5, 0.2));
    const double alpha5 = std::max(std::pow(d5, 0.2), std::pow(d6, 1.0 / 6.0));
    eta = std::min({alpha2, alpha3, alpha4, alpha5});
    if (eta <= table.theta(20)) return finalize(20, 0, eta, std::move(st));

    const int s = int(std::ceil(0.5 * std::log2(eta / table.theta(20))));
    return finalize(20, s, eta, std::move(st));
}

} // namespace quadphi
