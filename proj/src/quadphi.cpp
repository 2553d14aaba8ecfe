#include "quadphi/quadphi.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "quadphi/taylor.hpp"

namespace quadphi {

namespace {

std::vector<double> family_norms(const PhiFamily& fam) {
    std::vector<double> norms;
    norms.reserve(fam.members.size());
    for (const DenseMatrix& c : fam.members) {
        norms.push_back(one_norm(c));
    }
    return norms;
}

} // namespace

PhiFamily quad_step(const PhiFamily& fam) {
    if (fam.members.empty()) {
        throw std::invalid_argument("quad_step: empty family");
    }
    const int n = fam.dim();
    for (const DenseMatrix& c : fam.members) {
        if (c.dim() != n) {
            throw std::invalid_argument("quad_step: family members have inconsistent dimensions");
        }
    }
    const int L = fam.highest_index();

    // Reciprocal factorials 1/0!..1/L! for the sum weights.
    std::vector<double> inv_fact(std::size_t(L) + 1, 1.0);
    for (int i = 2; i <= L; ++i) {
        inv_fact[std::size_t(i)] = inv_fact[std::size_t(i - 1)] / double(i);
    }

    PhiFamily out;
    out.level = fam.level + 1;
    out.members.reserve(std::size_t(L) + 1);

    const DenseMatrix& c0 = fam.members[0];

    DenseMatrix next0 = scale(matmul(c0, c0), 2.0);
    add_diag_inplace(next0, -1.0);
    out.members.push_back(std::move(next0));

    if (L >= 1) {
        out.members.push_back(matmul(c0, fam.members[1]));
    }

    for (int k = 2; k <= L; ++k) {
        DenseMatrix acc = matmul(c0, fam.members[std::size_t(k)]);
        acc = add(acc, matmul(fam.members[1], fam.members[std::size_t(k - 1)]));
        for (int j = 2; j <= k; ++j) {
            axpy_inplace(acc, inv_fact[std::size_t(k - j)], fam.members[std::size_t(j)]);
        }
        out.members.push_back(scale(acc, std::ldexp(1.0, -k)));
    }
    return out;
}

QuadphiResult quadphi(const DenseMatrix& a, int L) {
    if (L < 0) throw std::invalid_argument("quadphi: L must be nonnegative");
    if (a.dim() < 1) throw std::invalid_argument("quadphi: empty matrix");
    if (!a.all_finite()) throw std::invalid_argument("quadphi: input has non-finite entries");

    const long long count0 = matmul_count();

    ScalingPlan plan = select_parameters(a, default_theta_table());

    TaylorRequest req;
    req.m = plan.m;
    req.L = L;
    req.powers = std::move(plan.scaled_powers);

    QuadphiResult result;
    result.m = plan.m;
    result.s = plan.s;
    result.eta = plan.eta;

    result.family = ps_eval_family(req);
    result.level_norms.push_back(family_norms(result.family));

    for (int i = 0; i < plan.s; ++i) {
        result.family = quad_step(result.family);
        result.level_norms.push_back(family_norms(result.family));
    }

    result.products = matmul_count() - count0;
    return result;
}

std::vector<double> phi_action(const DenseMatrix& a, const std::vector<double>& b, int L) {
    if (b.size() != std::size_t(a.dim())) {
        throw std::invalid_argument("phi_action: vector length " + std::to_string(b.size()) +
                                    " does not match matrix dimension " +
                                    std::to_string(a.dim()));
    }
    const QuadphiResult r = quadphi(a, L);
    return matvec(r.family.members[std::size_t(L)], b);
}

} // namespace quadphi
