#include "quadphi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quadphi {

namespace {

void validate_table(const std::vector<std::vector<double>>& level_norms, int L) {
    if (level_norms.empty()) {
        throw std::invalid_argument("error bounds: empty norm table");
    }
    for (const auto& row : level_norms) {
        if (row.size() < std::size_t(L) + 1) {
            throw std::invalid_argument("error bounds: norm table rows must cover indices 0..L");
        }
    }
}

double prefix_max(const std::vector<double>& row, int k) {
    double best = row[0];
    for (int i = 1; i <= k; ++i) {
        best = std::max(best, row[std::size_t(i)]);
    }
    return best;
}

} // namespace

std::vector<double> forward_bound(const std::vector<std::vector<double>>& level_norms, double e0,
                                  int L) {
    validate_table(level_norms, L);
    if (!(e0 > 0.0)) throw std::invalid_argument("forward_bound: e0 must be positive");

    const int s = int(level_norms.size()) - 1;
    std::vector<double> out(std::size_t(L) + 1);
    for (int k = 0; k <= L; ++k) {
        double prod = 1.0;
        if (k <= 1) {
            for (int j = 0; j < s; ++j) {
                prod *= prefix_max(level_norms[std::size_t(j)], k);
            }
            out[std::size_t(k)] = std::pow(4.1, s) * prod * e0;
        } else {
            for (int j = 0; j < s; ++j) {
                prod *= 4.1 * prefix_max(level_norms[std::size_t(j)], k) + 0.25;
            }
            out[std::size_t(k)] = prod * e0;
        }
    }
    return out;
}

std::vector<double> exact_leading_bound(const std::vector<std::vector<double>>& level_norms,
                                        double e0, int L, int s) {
    validate_table(level_norms, L);
    if (!(e0 > 0.0)) throw std::invalid_argument("exact_leading_bound: e0 must be positive");

    std::vector<double> out(std::size_t(L) + 1, 0.0);
    for (int k = 2; k <= L; ++k) {
        double prod = 1.0;
        for (int j = 0; j < s; ++j) {
            prod *= prefix_max(level_norms[std::size_t(j)], 1) + 1.0;
        }
        out[std::size_t(k)] = std::pow(0.25, s) * prod * e0;
    }
    return out;
}

std::vector<double> psd_bound(double e0, int L, int s) {
    if (!(e0 > 0.0)) throw std::invalid_argument("psd_bound: e0 must be positive");
    std::vector<double> out(std::size_t(L) + 1);
    for (int k = 0; k <= L; ++k) {
        out[std::size_t(k)] = std::pow(k <= 1 ? 4.1 : 4.35, s) * e0;
    }
    return out;
}

ErrorBoundReport make_error_report(const QuadphiResult& run, double e0) {
    ErrorBoundReport report;
    report.L = run.family.highest_index();
    report.s = run.s;
    report.level_norms = run.level_norms;
    report.initial_error = e0;
    report.bounds = forward_bound(run.level_norms, e0, report.L);
    report.psd_bounds = psd_bound(e0, report.L, run.s);
    return report;
}

} // namespace quadphi
