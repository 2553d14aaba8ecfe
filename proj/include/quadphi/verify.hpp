#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quadphi::verify {

/// One verification outcome; pass means value <= threshold.
struct CheckRow {
    std::string case_id;
    std::string metric;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

bool all_pass(const std::vector<CheckRow>& rows);

/// Structural identities of the computed families on seeded matrices:
/// squared-plus-scaled-square residual and the downward index recurrence on
/// n_random symmetric positive semi-definite 8x8 instances (1-norms spread
/// up to 1e3), quadruple consistency against a separately scaled run on
/// n_quad general 6x6 instances (1-norms up to 50), and the two-point
/// addition identities on scalar and 3x3 instances against the series
/// reference.
std::vector<CheckRow> identities_suite(std::uint64_t seed, int n_random, int n_quad);

/// Internal consistency of the references themselves: series recurrence
/// residual before rounding, scalar closed forms against the series,
/// integrator order ratio, and integrator-versus-series cross checks.
std::vector<CheckRow> oracle_suite(std::uint64_t seed);

/// Relative equivalence of the computed families against the
/// extended-precision series on every default-gallery member, plus selector
/// branch coverage and interchange-format round-trips.
std::vector<CheckRow> gallery_suite();

/// Observed error against the series reference stays below the propagated
/// forward bound on every gallery member; bounded-family members also meet
/// the simplified constant-ratio bound.
std::vector<CheckRow> bounds_suite();

/// Vector action against the fixed-step integrator on seeded 6x6 instances.
std::vector<CheckRow> action_suite(std::uint64_t seed, int trials, int steps);

} // namespace quadphi::verify
