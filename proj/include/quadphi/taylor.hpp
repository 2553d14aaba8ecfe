#pragma once

#include <vector>

#include "quadphi/matrix.hpp"
#include "quadphi/phi_family.hpp"

namespace quadphi {

/// Inputs for one simultaneous truncated-series evaluation: degree m from
/// the supported set, highest index L, and the pre-computed powers
/// X^1..X^q with q = ceil(sqrt(m)).
struct TaylorRequest {
    int m = 0;
    int L = 0;
    std::vector<DenseMatrix> powers;
};

/// Series coefficient (-1)^k / (2k+j)!, built by a multiplicative recurrence
/// so no large factorial is ever formed.
double taylor_coeff(int j, int k);

/// Coefficients c_0..c_m for index j, same recurrence.
std::vector<double> taylor_coeff_row(int j, int m);

/// Degree-m truncated series of all indices j = 0..L at the common argument,
/// assembled block-by-block from the shared powers: the top block covers
/// coefficients m-q..m, then r-1 multiplications by X^q fold in the blocks
/// q*k..q*k+q-1 for k = r-2 down to 0. Costs exactly (L+1)(r-1) matrix
/// products beyond the supplied powers.
PhiFamily ps_eval_family(const TaylorRequest& req);

} // namespace quadphi
