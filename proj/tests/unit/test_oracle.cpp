#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "quadphi/ddouble.hpp"
#include "quadphi/oracle.hpp"
#include "test_util.hpp"

using namespace quadphi;
using namespace quadphi::oracle;
using testutil::max_entry_diff;
using testutil::random_matrix;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

double max_vec_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::fabs(a[i] - b[i]));
    }
    return worst;
}

} // namespace

TEST_SUITE("oracle") {

    TEST_CASE("extended scalar arithmetic keeps sub-double bits") {
        const DDouble one(1.0);
        const DDouble tiny(0x1p-70);
        const DDouble sum = one + tiny;
        CHECK(sum.hi == 1.0);
        CHECK(sum.lo == 0x1p-70);
        CHECK((sum - one).to_double() == 0x1p-70);

        // (1/3) * 3 recovers 1 to ~2^-104
        const DDouble third = DDouble(1.0) / DDouble(3.0);
        const DDouble back = third * DDouble(3.0);
        CHECK(std::fabs((back - DDouble(1.0)).to_double()) < 0x1p-100);
    }

    TEST_CASE("reference scalar carries far more than double precision") {
        const ExtendedReal one(1.0);
        const ExtendedReal tiny(0x1p-200);
        CHECK((one + tiny - one).to_double() == 0x1p-200);

        ExtendedReal third = ExtendedReal(1.0) / ExtendedReal(3.0);
        third *= ExtendedReal(3.0);
        CHECK(std::fabs((third - ExtendedReal(1.0)).to_double()) < 0x1p-250);
        CHECK(abs(ExtendedReal(-2.0)).to_double() == 2.0);
    }

    TEST_CASE("closed-form scalars at reference points") {
        CHECK(scalar_phi(0, kPi2) == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(std::fabs(scalar_phi(1, kPi2)) <= 1e-15);
        CHECK(scalar_phi(2, 1.0) == doctest::Approx(0.45969769413186).epsilon(1e-13));
        CHECK(scalar_phi(0, 0.0) == 1.0);
        CHECK(scalar_phi(1, 0.0) == 1.0);
        CHECK(scalar_phi(2, 0.0) == 0.5);
        CHECK(scalar_phi(3, 0.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-16));
    }

    TEST_CASE("scalar branches agree at their crossovers") {
        // series below, closed form above; both accurate where they meet
        for (double x : {0.9e-8, 1.1e-8}) {
            CHECK(scalar_phi(1, x) == doctest::Approx(1.0 - x / 6.0).epsilon(1e-15));
            CHECK(scalar_phi(2, x) == doctest::Approx(0.5 - x / 24.0).epsilon(1e-15));
        }
        // both sides of the index-3 branch point agree with the series
        for (double x : {1.9, 1.999999, 2.000001, 2.1}) {
            const PhiFamily ref = series_reference(DenseMatrix::from_rows(1, {x}), 3);
            CHECK(std::fabs(scalar_phi(3, x) - ref.members[3](0, 0)) <= 1e-16);
        }
    }

    TEST_CASE("scalar preconditions") {
        CHECK_THROWS_AS(scalar_phi(4, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(scalar_phi(0, -1.0), std::invalid_argument);
    }

    TEST_CASE("series at zero argument gives reciprocal factorials") {
        const PhiFamily fam = series_reference(DenseMatrix(3), 5);
        double fact = 1.0;
        for (int k = 0; k <= 5; ++k) {
            if (k >= 2) fact *= double(k);
            const DenseMatrix want = scale(DenseMatrix::identity(3), 1.0 / fact);
            CHECK(max_entry_diff(fam.members[std::size_t(k)], want) <= 0x1p-53 / fact);
        }
    }

    TEST_CASE("series at pi^2 reproduces the closed forms") {
        const PhiFamily fam = series_reference(scale(DenseMatrix::identity(2), kPi2), 1);
        CHECK(max_entry_diff(fam.members[0], scale(DenseMatrix::identity(2), -1.0)) <= 1e-15);
        // the stored double of pi^2 is not exactly pi^2, which perturbs the
        // index-1 value away from zero by ~|fl(pi^2)-pi^2|/pi^2 ~ 5e-17
        CHECK(max_entry_diff(fam.members[1], DenseMatrix(2)) <= 1e-15);
    }

    TEST_CASE("series is self-consistent under the index recurrence") {
        const DenseMatrix a = random_matrix(4, 61, 20.0);
        CHECK(series_recurrence_residual(a, 7) <= 1e-24);
    }

    TEST_CASE("series agrees with the scalar closed forms") {
        for (double x : {0.1, 1.0, 10.0, 100.0}) {
            const PhiFamily fam = series_reference(DenseMatrix::from_rows(1, {x}), 3);
            for (int l = 0; l <= 3; ++l) {
                CAPTURE(x);
                CAPTURE(l);
                CHECK(std::fabs(fam.members[std::size_t(l)](0, 0) - scalar_phi(l, x)) <= 1e-15);
            }
        }
    }

    TEST_CASE("series guards its desk-scale envelope") {
        CHECK_THROWS_AS(series_reference(DenseMatrix(17), 2), std::invalid_argument);
        CHECK_THROWS_AS(series_reference(scale(DenseMatrix::identity(4), 2e4), 2),
                        std::invalid_argument);
    }

    TEST_CASE("integrator: polynomial forcing is exact at cubic order") {
        const std::vector<double> u{1.0, 1.0};
        const std::vector<double> y = ode_action_oracle(DenseMatrix(2), u, 3, 1000);
        CHECK(max_vec_diff(y, {1.0 / 6.0, 1.0 / 6.0}) <= 1e-12);
    }

    TEST_CASE("integrator: scalar unit argument") {
        const std::vector<double> y =
            ode_action_oracle(DenseMatrix::identity(1), {1.0}, 2, 10000);
        CHECK(std::fabs(y[0] - (1.0 - std::cos(1.0))) <= 1e-10);
    }

    TEST_CASE("integrator matches the series on a random instance") {
        const DenseMatrix a = random_matrix(5, 71, 15.0);
        const std::vector<double> u{0.4, -0.9, 0.2, 0.8, -0.3};
        const std::vector<double> want = matvec(series_reference(a, 4).members[4], u);
        CHECK(max_vec_diff(ode_action_oracle(a, u, 4, 10000), want) <= 1e-8);
    }

    TEST_CASE("integrator converges at fourth order") {
        const DenseMatrix a = random_matrix(4, 81, 25.0);
        const std::vector<double> u{1.0, -0.5, 0.25, 0.7};
        const std::vector<double> ref = matvec(series_reference(a, 4).members[4], u);
        const double e1 = max_vec_diff(ode_action_oracle(a, u, 4, 200), ref);
        const double e2 = max_vec_diff(ode_action_oracle(a, u, 4, 400), ref);
        CAPTURE(e1);
        CAPTURE(e2);
        const double ratio = e1 / e2;
        CHECK(ratio >= 12.0);
        CHECK(ratio <= 20.0);
    }

    TEST_CASE("integrator preconditions") {
        CHECK_THROWS_AS(ode_action_oracle(DenseMatrix(2), {1.0, 1.0}, 1, 1000),
                        std::invalid_argument);
        CHECK_THROWS_AS(ode_action_oracle(DenseMatrix(2), {1.0, 1.0}, 3, 50),
                        std::invalid_argument);
        CHECK_THROWS_AS(ode_action_oracle(DenseMatrix(2), {1.0}, 3, 1000), std::invalid_argument);
    }

    TEST_CASE("homogeneous integrator") {
        // zero argument: y stays on the line y0 + t*y0'
        const auto [y, v] = homogeneous_action_oracle(DenseMatrix(2), {1.0, 0.0}, {0.0, 0.0}, 100);
        CHECK(max_vec_diff(y, {1.0, 0.0}) <= 1e-14);
        CHECK(max_vec_diff(v, {0.0, 0.0}) <= 1e-14);

        // pi^2 argument flips the sign of the initial vector
        const auto [y2, v2] = homogeneous_action_oracle(scale(DenseMatrix::identity(3), kPi2),
                                                        {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 100000);
        CHECK(max_vec_diff(y2, {-1.0, 0.0, 0.0}) <= 1e-9);

        // random instance against the series decomposition
        const DenseMatrix a = random_matrix(4, 91, 10.0);
        const std::vector<double> y0{0.2, -0.4, 0.6, 0.1};
        const std::vector<double> y0p{-0.3, 0.5, 0.05, -0.8};
        const auto [yr, vr] = homogeneous_action_oracle(a, y0, y0p, 10000);
        const PhiFamily fam = series_reference(a, 1);
        std::vector<double> want = matvec(fam.members[0], y0);
        const std::vector<double> part = matvec(fam.members[1], y0p);
        for (std::size_t i = 0; i < want.size(); ++i) want[i] += part[i];
        CHECK(max_vec_diff(yr, want) <= 1e-8);
    }
}
