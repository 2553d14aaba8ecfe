#pragma once

#include <vector>

#include "quadphi/matrix.hpp"
#include "quadphi/params.hpp"
#include "quadphi/phi_family.hpp"

namespace quadphi {

/// One quadruple-angle restoring step: produces the family at four times the
/// argument, reading only the input level.
///
///   C0' = 2*C0^2 - I
///   C1' = C0*C1
///   Ck' = 2^-k * (C0*Ck + C1*C(k-1) + sum_{j=2..k} C_j/(k-j)!)   for k >= 2
///
/// Costs 2 + 2(L-1) matrix products for L >= 1, one product for L = 0.
PhiFamily quad_step(const PhiFamily& fam);

struct QuadphiResult {
    PhiFamily family; // level-s family approximating the functions of the input
    int m = 0;
    int s = 0;
    double eta = 0.0;
    std::vector<std::vector<double>> level_norms; // [i][k] = 1-norm of C_k at level i
    long long products = 0;                       // matrix products consumed by this call
};

/// Full pipeline: parameter selection, simultaneous truncated-series
/// evaluation at the scaled argument, then s restoring steps.
QuadphiResult quadphi(const DenseMatrix& a, int L);

/// Applies the index-L result to a vector.
std::vector<double> phi_action(const DenseMatrix& a, const std::vector<double>& b, int L);

} // namespace quadphi
