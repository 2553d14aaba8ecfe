#pragma once

#include <vector>

#include "quadphi/quadphi.hpp"

namespace quadphi {

/// Diagnostic forward-error bounds along one scaled-and-restored run.
/// All bounds are conditional on the restoring inputs carrying at most a 5%
/// relative error, which is not checkable at runtime; hypothesis_verified
/// stays false to record that.
struct ErrorBoundReport {
    int L = 0;
    int s = 0;
    std::vector<std::vector<double>> level_norms; // [i][k], i = 0..s
    double initial_error = 0.0;
    std::vector<double> bounds;     // general forward bound per k
    std::vector<double> psd_bounds; // simplified bound valid when all norms <= 1
    bool hypothesis_verified = false;
};

/// General forward bound per final index k:
///   k in {0,1}:  4.1^s * prod_j max_{i<=k} norm[j][i] * e0
///   k >= 2:      prod_j (4.1 * max_{i<=k} norm[j][i] + 0.25) * e0
/// where the products run over levels j = 0..s-1.
std::vector<double> forward_bound(const std::vector<std::vector<double>>& level_norms, double e0,
                                  int L);

/// Bound under the idealization that the two leading inputs are exact:
///   k in {0,1}:  0
///   k >= 2:      (1/4)^s * prod_j (max(norm[j][0], norm[j][1]) + 1) * e0
std::vector<double> exact_leading_bound(const std::vector<std::vector<double>>& level_norms,
                                        double e0, int L, int s);

/// Simplified bound for arguments whose families stay bounded by one in norm
/// (positive semi-definite inputs): 4.1^s e0 for k <= 1, 4.35^s e0 for k >= 2.
std::vector<double> psd_bound(double e0, int L, int s);

ErrorBoundReport make_error_report(const QuadphiResult& run, double e0);

} // namespace quadphi
