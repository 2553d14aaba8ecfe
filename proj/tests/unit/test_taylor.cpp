#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <set>

#include "quadphi/ddouble.hpp"
#include "quadphi/oracle.hpp"
#include "quadphi/params.hpp"
#include "quadphi/taylor.hpp"
#include "test_util.hpp"

using namespace quadphi;
using testutil::horner_eval;
using testutil::max_entry_diff;
using testutil::random_matrix;

namespace {

std::vector<DenseMatrix> build_powers(const DenseMatrix& x, int q) {
    std::vector<DenseMatrix> powers{x};
    for (int i = 1; i < q; ++i) {
        powers.push_back(matmul(powers.back(), x));
    }
    return powers;
}

int q_of(int m) {
    int q = 1;
    while (q * q < m) ++q;
    return q;
}

} // namespace

TEST_SUITE("taylor") {

    TEST_CASE("coefficient values") {
        CHECK(taylor_coeff(0, 0) == 1.0);
        CHECK(taylor_coeff(2, 0) == 0.5);
        CHECK(taylor_coeff(1, 3) == doctest::Approx(-1.0 / 5040.0).epsilon(1e-15));
        CHECK_THROWS_AS(taylor_coeff(-1, 0), std::invalid_argument);
    }

    TEST_CASE("coefficient rows match pointwise queries") {
        for (int j : {0, 1, 5}) {
            const auto row = taylor_coeff_row(j, 20);
            for (int k = 0; k <= 20; ++k) {
                CHECK(row[std::size_t(k)] == taylor_coeff(j, k));
            }
        }
    }

    TEST_CASE("block index coverage tiles 0..m exactly once") {
        for (int m : kDegreeSet) {
            const int q = q_of(m);
            const int r = m / q;
            REQUIRE(q * r == m);

            std::multiset<int> touched;
            for (int i = 0; i <= q; ++i) touched.insert(m - q + i);
            for (int k = 0; k <= r - 2; ++k) {
                for (int i = 0; i < q; ++i) touched.insert(q * k + i);
            }
            CAPTURE(m);
            CHECK(touched.size() == std::size_t(m) + 1);
            for (int idx = 0; idx <= m; ++idx) {
                CHECK(touched.count(idx) == 1);
            }
        }
    }

    TEST_CASE("zero argument keeps only the constant terms") {
        const DenseMatrix zero(3);
        const PhiFamily fam = ps_eval_family({4, 2, build_powers(zero, 2)});
        REQUIRE(fam.members.size() == 3);
        CHECK(max_entry_diff(fam.members[0], DenseMatrix::identity(3)) == 0.0);
        CHECK(max_entry_diff(fam.members[1], DenseMatrix::identity(3)) == 0.0);
        CHECK(max_entry_diff(fam.members[2], scale(DenseMatrix::identity(3), 0.5)) == 0.0);
    }

    TEST_CASE("scalar degree-6 value against the leading closed form") {
        const DenseMatrix x = DenseMatrix::from_rows(1, {0.01});
        const PhiFamily fam = ps_eval_family({6, 0, build_powers(x, 3)});
        CHECK(std::fabs(fam.members[0](0, 0) - std::cos(0.1)) <= 1e-16);
    }

    TEST_CASE("matches plain Horner on a random small-norm argument") {
        const DenseMatrix x = random_matrix(5, 17, 0.1);
        const PhiFamily fam = ps_eval_family({9, 3, build_powers(x, 3)});
        for (int j = 0; j <= 3; ++j) {
            const DenseMatrix ref = horner_eval(taylor_coeff_row(j, 9), x);
            CHECK(testutil::rel_norm_diff(fam.members[std::size_t(j)], ref) <= 1e-14);
        }
    }

    TEST_CASE("consumes exactly (L+1)(r-1) products beyond the powers") {
        for (int m : {4, 9, 16}) {
            const int q = q_of(m);
            const int r = m / q;
            for (int L : {0, 3, 7}) {
                const DenseMatrix x = random_matrix(4, 23, 0.3);
                const auto powers = build_powers(x, q);
                const long long before = matmul_count();
                (void)ps_eval_family({m, L, powers});
                CAPTURE(m);
                CAPTURE(L);
                CHECK(matmul_count() - before == (long long)(L + 1) * (r - 1));
            }
        }
    }

    TEST_CASE("scalar truncation error stays within the remainder majorant") {
        // the truncated polynomial itself, summed in extended precision, so
        // the check isolates the truncation remainder from evaluation rounding
        const auto truncated_series = [](int j, int m, double x) {
            DDouble term(1.0);
            for (int i = 2; i <= j; ++i) term /= DDouble(double(i));
            DDouble sum = term;
            for (int k = 1; k <= m; ++k) {
                term = -term * DDouble(x) /
                       DDouble(double(2 * k + j - 1) * double(2 * k + j));
                sum += term;
            }
            return sum.to_double();
        };

        for (int m : kDegreeSet) {
            const double theta = default_theta_table().theta(m);
            for (int step = 1; step <= 4; ++step) {
                const double x = theta * double(step) / 4.0;
                for (int j = 0; j <= 3; ++j) {
                    const double exact_t = truncated_series(j, m, x);
                    const double phi = oracle::scalar_phi(j, x);
                    const double budget = h_m_truncated(m, x, 200) + 4.0 * 0x1p-53;
                    CAPTURE(m);
                    CAPTURE(j);
                    CAPTURE(x);
                    CHECK(std::fabs(exact_t - phi) <= budget);
                }
            }
        }
    }

    TEST_CASE("block evaluation tracks the exact truncated polynomial") {
        // the float path carries rounding proportional to the series'
        // internal term growth; budget it by the largest term magnitude
        for (int m : kDegreeSet) {
            const double x = default_theta_table().theta(m);
            const auto powers = build_powers(DenseMatrix::from_rows(1, {x}), q_of(m));
            const PhiFamily fam = ps_eval_family({m, 3, powers});
            for (int j = 0; j <= 3; ++j) {
                DDouble term(1.0), sum(1.0);
                for (int i = 2; i <= j; ++i) {
                    term /= DDouble(double(i));
                    sum = term;
                }
                double max_term = std::fabs(term.to_double());
                for (int k = 1; k <= m; ++k) {
                    term = -term * DDouble(x) /
                           DDouble(double(2 * k + j - 1) * double(2 * k + j));
                    sum += term;
                    max_term = std::max(max_term, std::fabs(term.to_double()));
                }
                const double budget = 64.0 * 0x1p-53 * std::max(1.0, max_term);
                CAPTURE(m);
                CAPTURE(j);
                CHECK(std::fabs(fam.members[std::size_t(j)](0, 0) - sum.to_double()) <= budget);
            }
        }
    }

    TEST_CASE("powers list sanity: supplied powers equal the first power iterated") {
        const DenseMatrix x = random_matrix(4, 29, 1.5);
        const auto powers = build_powers(x, 4);
        DenseMatrix expect = x;
        for (std::size_t i = 1; i < powers.size(); ++i) {
            expect = matmul(expect, x);
            CHECK(testutil::rel_norm_diff(powers[i], expect) == 0.0);
        }
    }

    TEST_CASE("requests are validated") {
        const DenseMatrix x = random_matrix(3, 31, 0.5);
        CHECK_THROWS_AS(ps_eval_family({5, 1, build_powers(x, 3)}), std::invalid_argument);
        CHECK_THROWS_AS(ps_eval_family({9, 1, build_powers(x, 2)}), std::invalid_argument);
        CHECK_THROWS_AS(ps_eval_family({9, -1, build_powers(x, 3)}), std::invalid_argument);

        auto mixed = build_powers(x, 3);
        mixed[1] = DenseMatrix(4);
        CHECK_THROWS_AS(ps_eval_family({9, 1, mixed}), std::invalid_argument);
    }
}
