#include "quadphi/verify.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "quadphi/bounds.hpp"
#include "quadphi/gallery.hpp"
#include "quadphi/mmio.hpp"
#include "quadphi/oracle.hpp"
#include "quadphi/quadphi.hpp"

namespace quadphi::verify {

namespace {

constexpr double kTol = 0x1p-53;

double log_spaced(double lo, double hi, int i, int count) {
    if (count <= 1) return hi;
    return lo * std::pow(hi / lo, double(i) / double(count - 1));
}

DenseMatrix seeded_matrix(const char* kind, int n, std::uint64_t seed, double norm) {
    return gallery::generate({kind, n, seed, {norm}});
}

std::vector<double> seeded_vector(int n, std::uint64_t seed) {
    std::vector<double> v(std::size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
        v[std::size_t(i)] = gallery::uniform_pm1(seed, std::uint64_t(i));
    }
    return v;
}

double max_abs_vec_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::fabs(a[i] - b[i]));
    }
    return worst;
}

double max_rel_family_diff(const PhiFamily& got, const PhiFamily& want) {
    double worst = 0.0;
    for (std::size_t k = 0; k < want.members.size(); ++k) {
        const double denom = one_norm(want.members[k]);
        const double diff = one_norm(sub(got.members[k], want.members[k]));
        worst = std::max(worst, diff / std::max(denom, 1e-300));
    }
    return worst;
}

void push(std::vector<CheckRow>& rows, std::string case_id, std::string metric, double value,
          double threshold) {
    rows.push_back({std::move(case_id), std::move(metric), value, threshold, value <= threshold});
}

} // namespace

bool all_pass(const std::vector<CheckRow>& rows) {
    for (const CheckRow& r : rows) {
        if (!r.pass) return false;
    }
    return true;
}

std::vector<CheckRow> identities_suite(std::uint64_t seed, int n_random, int n_quad) {
    std::vector<CheckRow> rows;

    for (int i = 0; i < n_random; ++i) {
        const double target = log_spaced(0.1, 1e3, i, n_random);
        const DenseMatrix a = seeded_matrix("symmetric-psd", 8, seed + std::uint64_t(i), target);
        const double norm_a = one_norm(a);
        const QuadphiResult run = quadphi(a, 9);
        const auto& c = run.family.members;

        // squared leading member plus argument times squared second member
        DenseMatrix resid = matmul(c[0], c[0]);
        resid = add(resid, matmul(a, matmul(c[1], c[1])));
        add_diag_inplace(resid, -1.0);
        push(rows, "identities/pyth-" + std::to_string(i), "residual_1norm", one_norm(resid),
             1e-12 * (1.0 + norm_a * norm_a));

        double max_c = 0.0;
        for (const DenseMatrix& m : c) max_c = std::max(max_c, one_norm(m));

        double worst_down = 0.0;
        for (int l = 0; l + 2 <= 9; ++l) {
            DenseMatrix d = add(c[std::size_t(l)], matmul(a, c[std::size_t(l + 2)]));
            double inv_lfact = 1.0;
            for (int f = 2; f <= l; ++f) inv_lfact /= double(f);
            add_diag_inplace(d, -inv_lfact);
            worst_down = std::max(worst_down, one_norm(d));
        }
        push(rows, "identities/down-" + std::to_string(i), "recurrence_resid", worst_down,
             1e-11 * (1.0 + norm_a) * max_c);
    }

    for (int i = 0; i < n_quad; ++i) {
        const double target = log_spaced(0.05, 50.0, i, n_quad);
        const DenseMatrix a =
            seeded_matrix("random-dense", 6, seed + 1000 + std::uint64_t(i), target);
        const PhiFamily stepped = quad_step(quadphi(a, 7).family);
        const PhiFamily direct = quadphi(scale(a, 4.0), 7).family;
        push(rows, "identities/quad-" + std::to_string(i), "rel_1norm_diff",
             max_rel_family_diff(stepped, direct), 1e-11);
    }

    // two-point addition identities, scalar and 3x3, against the series
    const struct {
        double a, b;
    } pairs[] = {{0.7, 0.3}, {1.5, -0.5}};
    const DenseMatrix scalar_arg = DenseMatrix::from_rows(1, {1.7});
    const DenseMatrix small = seeded_matrix("random-dense", 3, seed + 2000, 2.0);
    for (const auto& pr : pairs) {
        for (const DenseMatrix* arg : {&scalar_arg, &small}) {
            const DenseMatrix& x = *arg;
            const double asc = pr.a, bsc = pr.b, csc = pr.a + pr.b;
            const PhiFamily fa = oracle::series_reference(scale(x, asc * asc), 7);
            const PhiFamily fb = oracle::series_reference(scale(x, bsc * bsc), 7);
            const PhiFamily fc = oracle::series_reference(scale(x, csc * csc), 7);

            double worst = 0.0;
            for (int l = 2; l <= 7; ++l) {
                DenseMatrix lhs1 = scale(fc.members[std::size_t(l)], std::pow(csc, l));
                DenseMatrix rhs1 = scale(matmul(fb.members[0], fa.members[std::size_t(l)]),
                                         std::pow(asc, l));
                rhs1 = add(rhs1, scale(matmul(fb.members[1], fa.members[std::size_t(l - 1)]),
                                       std::pow(asc, l - 1) * bsc));
                for (int k = 2; k <= l; ++k) {
                    double w = std::pow(asc, l - k) * std::pow(bsc, k);
                    for (int f = 2; f <= l - k; ++f) w /= double(f);
                    axpy_inplace(rhs1, w, fb.members[std::size_t(k)]);
                }
                const double r1 =
                    one_norm(sub(lhs1, rhs1)) / (1.0 + one_norm(lhs1));

                DenseMatrix lhs2 = scale(fc.members[std::size_t(l - 1)], std::pow(csc, l - 1));
                DenseMatrix rhs2 =
                    scale(matmul(x, matmul(fb.members[1], fa.members[std::size_t(l)])),
                          -std::pow(asc, l) * bsc);
                rhs2 = add(rhs2, scale(matmul(fb.members[0], fa.members[std::size_t(l - 1)]),
                                       std::pow(asc, l - 1)));
                for (int k = 2; k <= l; ++k) {
                    double w = std::pow(asc, l - k) * std::pow(bsc, k - 1);
                    for (int f = 2; f <= l - k; ++f) w /= double(f);
                    axpy_inplace(rhs2, w, fb.members[std::size_t(k - 1)]);
                }
                const double r2 =
                    one_norm(sub(lhs2, rhs2)) / (1.0 + one_norm(lhs2));
                worst = std::max({worst, r1, r2});
            }
            std::ostringstream id;
            id << "identities/addition-a" << asc << "-b" << bsc << '-'
               << (arg == &scalar_arg ? "scalar" : "3x3");
            push(rows, id.str(), "identity_resid", worst, 1e-12);
        }
    }
    return rows;
}

std::vector<CheckRow> oracle_suite(std::uint64_t seed) {
    std::vector<CheckRow> rows;

    {
        const DenseMatrix a = seeded_matrix("random-dense", 4, seed, 20.0);
        push(rows, "oracle/series-self", "recurrence_resid",
             oracle::series_recurrence_residual(a, 7), 1e-24);
    }

    {
        double worst = 0.0;
        for (double x : {0.1, 1.0, 10.0, 100.0}) {
            const PhiFamily f = oracle::series_reference(DenseMatrix::from_rows(1, {x}), 3);
            for (int l = 0; l <= 3; ++l) {
                worst = std::max(worst,
                                 std::fabs(f.members[std::size_t(l)](0, 0) -
                                           oracle::scalar_phi(l, x)));
            }
        }
        push(rows, "oracle/scalar-cross", "abs_diff", worst, 1e-15);
    }

    {
        // fourth-order convergence: halving the step shrinks the error ~16x
        const DenseMatrix a = seeded_matrix("random-dense", 4, seed + 7, 25.0);
        const std::vector<double> u = seeded_vector(4, seed + 8);
        const int L = 4;
        const std::vector<double> ref =
            matvec(oracle::series_reference(a, L).members[std::size_t(L)], u);
        const double e1 = max_abs_vec_diff(oracle::ode_action_oracle(a, u, L, 200), ref);
        const double e2 = max_abs_vec_diff(oracle::ode_action_oracle(a, u, L, 400), ref);
        const double ratio = e1 / std::max(e2, 1e-300);
        push(rows, "oracle/rk4-order", "ratio_dev_from_16", std::fabs(ratio - 16.0), 4.0);
    }

    {
        const DenseMatrix a = seeded_matrix("random-dense", 5, seed + 9, 10.0);
        const std::vector<double> u = seeded_vector(5, seed + 10);
        const std::vector<double> ref =
            matvec(oracle::series_reference(a, 4).members[4], u);
        push(rows, "oracle/ode-cross", "abs_diff",
             max_abs_vec_diff(oracle::ode_action_oracle(a, u, 4, 10000), ref), 1e-8);
    }

    {
        // homogeneous integrator against the series on index 0 and 1
        const DenseMatrix a = seeded_matrix("symmetric-psd", 4, seed + 11, 30.0);
        const std::vector<double> y0 = seeded_vector(4, seed + 12);
        const std::vector<double> y0p = seeded_vector(4, seed + 13);
        const auto [y1, v1] = oracle::homogeneous_action_oracle(a, y0, y0p, 10000);
        const PhiFamily f = oracle::series_reference(a, 1);
        std::vector<double> want = matvec(f.members[0], y0);
        const std::vector<double> w1 = matvec(f.members[1], y0p);
        for (std::size_t i = 0; i < want.size(); ++i) want[i] += w1[i];
        push(rows, "oracle/homogeneous", "abs_diff", max_abs_vec_diff(y1, want), 1e-8);
    }

    return rows;
}

std::vector<CheckRow> gallery_suite() {
    std::vector<CheckRow> rows;
    const auto suite = gallery::default_suite();

    bool seen_scaled = false;
    std::vector<int> seen_degrees;

    int roundtrip_failures = 0;
    for (const auto& entry : suite) {
        const DenseMatrix a = gallery::generate(entry.spec);
        const QuadphiResult run = quadphi(a, 7);
        const PhiFamily ref = oracle::series_reference(a, 7);
        push(rows, "gallery/" + entry.id, "rel_1norm_err",
             max_rel_family_diff(run.family, ref), 1e-11);

        if (run.s > 0) seen_scaled = true;
        if (run.s == 0) seen_degrees.push_back(run.m);

        std::istringstream round(mm::matrix_to_string(a));
        const DenseMatrix back = mm::read_matrix_stream(round, entry.id);
        bool identical = back.dim() == a.dim();
        if (identical) {
            for (int i = 0; i < a.dim() && identical; ++i) {
                for (int j = 0; j < a.dim() && identical; ++j) {
                    identical = std::bit_cast<std::uint64_t>(a(i, j)) ==
                                std::bit_cast<std::uint64_t>(back(i, j));
                }
            }
        }
        if (!identical) ++roundtrip_failures;
    }

    int missing = seen_scaled ? 0 : 1;
    for (int m : {1, 2, 4, 6, 9, 12, 16, 20}) {
        bool found = false;
        for (int d : seen_degrees) {
            if (d == m) found = true;
        }
        if (!found) ++missing;
    }
    push(rows, "gallery/branch-coverage", "missing_selector_branches", double(missing), 0.0);
    push(rows, "gallery/mm-roundtrip", "bit_exact_failures", double(roundtrip_failures), 0.0);
    return rows;
}

std::vector<CheckRow> bounds_suite() {
    std::vector<CheckRow> rows;
    for (const auto& entry : gallery::default_suite()) {
        const DenseMatrix a = gallery::generate(entry.spec);
        const QuadphiResult run = quadphi(a, 7);
        const PhiFamily ref = oracle::series_reference(a, 7);

        double max_t = 0.0;
        for (double v : run.level_norms.front()) max_t = std::max(max_t, v);
        const double e0 = kTol * (1.0 + max_t);

        const std::vector<double> fb = forward_bound(run.level_norms, e0, 7);
        const std::vector<double> pb = psd_bound(e0, 7, run.s);

        double worst_ratio = 0.0;
        double worst_psd_ratio = 0.0;
        for (int k = 0; k <= 7; ++k) {
            const double observed =
                one_norm(sub(run.family.members[std::size_t(k)], ref.members[std::size_t(k)]));
            worst_ratio = std::max(worst_ratio, observed / fb[std::size_t(k)]);
            worst_psd_ratio = std::max(worst_psd_ratio, observed / pb[std::size_t(k)]);
        }
        push(rows, "bounds/" + entry.id, "observed_over_bound", worst_ratio, 1.0);
        if (entry.psd) {
            push(rows, "bounds/" + entry.id + "-psd", "observed_over_psd_bound", worst_psd_ratio,
                 1.0);
        }
    }
    return rows;
}

std::vector<CheckRow> action_suite(std::uint64_t seed, int trials, int steps) {
    std::vector<CheckRow> rows;
    for (int t = 0; t < trials; ++t) {
        const int L = 2 + (t % 6);
        const double target = log_spaced(0.5, 50.0, t, trials);
        const DenseMatrix a =
            seeded_matrix("random-dense", 6, seed + 3000 + std::uint64_t(t), target);
        const std::vector<double> u = seeded_vector(6, seed + 4000 + std::uint64_t(t));
        const std::vector<double> got = phi_action(a, u, L);
        const std::vector<double> want = oracle::ode_action_oracle(a, u, L, steps);
        push(rows, "action/case-" + std::to_string(t) + "-l" + std::to_string(L), "abs_diff",
             max_abs_vec_diff(got, want), 1e-8);
    }
    return rows;
}

} // namespace quadphi::verify
