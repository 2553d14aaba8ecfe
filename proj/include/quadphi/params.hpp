#pragma once

#include <array>
#include <vector>

#include "quadphi/matrix.hpp"

namespace quadphi {

/// Degrees the block evaluation scheme is cost-optimal for, capped at 20.
inline constexpr std::array<int, 8> kDegreeSet{1, 2, 4, 6, 9, 12, 16, 20};

inline bool is_supported_degree(int m) {
    for (int d : kDegreeSet) {
        if (d == m) return true;
    }
    return false;
}

/// Per-degree argument-norm thresholds: theta(m) is the largest argument
/// 1-norm at which the degree-m Taylor remainder stays below tol.
struct ThetaTable {
    std::array<double, 20> thetas{}; // thetas[m-1], m = 1..20
    double tol = 0.0;
    int nu = 0;

    double theta(int m) const;
};

/// Table solved once at tol = 2^-53, nu = 150 and frozen as constants.
const ThetaTable& default_theta_table();

/// Re-solves all 20 thresholds; used by the table-regeneration command.
ThetaTable regenerate_theta_table(double tol, int nu);

/// Truncated remainder-majorant sum_{k=m+1}^{nu+m} theta^k/(2k)!, evaluated
/// in extended precision with a term recurrence.
double h_m_truncated(int m, double theta, int nu);

/// Largest theta in [0, 100] with h_m_truncated(m, theta, nu) <= tol,
/// located by bisection to relative width 1e-9. Throws when the bracket
/// cannot be established (misconfigured tol).
double solve_theta(int m, double tol, int nu);

/// Chosen degree, scaling exponent, and pre-scaled powers of the input.
struct ScalingPlan {
    int m = 0;
    int s = 0;
    std::vector<DenseMatrix> scaled_powers; // scaled_powers[i-1] = A^i / 4^(i*s), i = 1..ceil(sqrt(m))
    double eta = 0.0;                       // norm surrogate that drove the choice
};

/// Walks the degree ladder with lazily built powers and norm-product bounds
/// for the powers not yet formed; picks the first degree whose threshold
/// admits the running norm surrogate, otherwise m = 20 with the smallest
/// scaling exponent that brings the surrogate under theta_20.
ScalingPlan select_parameters(const DenseMatrix& a, const ThetaTable& table);

} // namespace quadphi
