#include "quadphi/cli_ops.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "quadphi/bounds.hpp"
#include "quadphi/csv.hpp"
#include "quadphi/gallery.hpp"
#include "quadphi/mmio.hpp"
#include "quadphi/params.hpp"
#include "quadphi/quadphi.hpp"
#include "quadphi/verify.hpp"

namespace quadphi::cli {

namespace {

namespace fs = std::filesystem;
using csvio::fmt_double;

void ensure_dir(const std::string& dir) {
    if (dir.empty()) return;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create directory '" + dir + "': " + ec.message());
    }
}

std::string matrix_as_csv(const DenseMatrix& m) {
    std::ostringstream out;
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) {
            if (j) out << ',';
            out << fmt_double(m(i, j));
        }
        out << '\n';
    }
    return out.str();
}

void write_family_member(const std::string& dir, int k, const DenseMatrix& m,
                         const std::string& format) {
    const fs::path base = fs::path(dir) / ("C_" + std::to_string(k));
    if (format == "csv") {
        csvio::atomic_write_text((base.string() + ".csv"), matrix_as_csv(m));
    } else {
        mm::write_matrix(base.string() + ".mtx", m);
    }
}

} // namespace

int cmd_phi(const std::string& input, int L, const std::string& out_dir,
            const std::string& format) {
    try {
        if (format != "mtx" && format != "csv") {
            std::cerr << "error: unknown format '" << format << "' (expected mtx or csv)\n";
            return kExitUsageOrIo;
        }
        const DenseMatrix a = mm::read_matrix(input);
        const QuadphiResult run = quadphi(a, L);

        ensure_dir(out_dir);
        for (int k = 0; k <= L; ++k) {
            write_family_member(out_dir, k, run.family.members[std::size_t(k)], format);
        }
        csvio::write_csv((fs::path(out_dir) / "plan.csv").string(), {"m", "s", "eta", "products"},
                         {{std::to_string(run.m), std::to_string(run.s), fmt_double(run.eta),
                           std::to_string(run.products)}});

        // diagnostic forward bounds along the run, conditional on the
        // restoring hypothesis (see the bounds module)
        double max_t = 0.0;
        for (double v : run.level_norms.front()) max_t = std::max(max_t, v);
        const ErrorBoundReport report = make_error_report(run, 0x1p-53 * (1.0 + max_t));
        std::vector<std::vector<std::string>> bound_rows;
        for (int k = 0; k <= L; ++k) {
            bound_rows.push_back({std::to_string(k), fmt_double(report.bounds[std::size_t(k)]),
                                  fmt_double(report.psd_bounds[std::size_t(k)])});
        }
        csvio::write_csv((fs::path(out_dir) / "bounds.csv").string(), {"k", "bound", "psd_bound"},
                         bound_rows);
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsageOrIo;
    }
}

int cmd_theta(double tol, int nu, const std::string& out_path) {
    try {
        const ThetaTable table = regenerate_theta_table(tol, nu);
        std::vector<std::vector<std::string>> rows;
        for (int m = 1; m <= 20; ++m) {
            rows.push_back({std::to_string(m), fmt_double(table.theta(m))});
        }
        if (out_path.empty()) {
            std::cout << csvio::to_csv({"m", "theta"}, rows);
        } else {
            csvio::write_csv(out_path, {"m", "theta"}, rows);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsageOrIo;
    }
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, int steps,
               const std::string& out_path) {
    try {
        std::vector<verify::CheckRow> rows;
        if (suite == "identities") {
            rows = verify::identities_suite(seed, trials, std::max(1, trials / 2));
        } else if (suite == "oracle") {
            rows = verify::oracle_suite(seed);
        } else if (suite == "bounds") {
            rows = verify::bounds_suite();
        } else if (suite == "gallery") {
            rows = verify::gallery_suite();
        } else if (suite == "action") {
            rows = verify::action_suite(seed, std::min(trials, 20), steps);
        } else {
            std::cerr << "error: unknown suite '" << suite
                      << "' (expected identities, oracle, bounds, gallery, or action)\n";
            return kExitUsageOrIo;
        }

        std::vector<std::vector<std::string>> out;
        out.reserve(rows.size());
        for (const auto& r : rows) {
            out.push_back({r.case_id, r.metric, fmt_double(r.value), fmt_double(r.threshold),
                           r.pass ? "true" : "false"});
        }
        const std::vector<std::string> header{"case", "metric", "value", "threshold", "pass"};
        if (out_path.empty()) {
            std::cout << csvio::to_csv(header, out);
        } else {
            csvio::write_csv(out_path, header, out);
        }
        return verify::all_pass(rows) ? kExitOk : kExitVerifyFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsageOrIo;
    }
}

int cmd_bench(const std::vector<int>& sizes, int L, int trials, std::uint64_t seed,
              const std::string& out_path) {
    try {
        std::vector<std::vector<std::string>> rows;
        for (int n : sizes) {
            if (n < 1) {
                std::cerr << "error: sizes must be positive\n";
                return kExitUsageOrIo;
            }
            for (int t = 0; t < trials; ++t) {
                const DenseMatrix a = gallery::generate(
                    {"random-dense", n, seed + std::uint64_t(t), {double(n)}});
                const auto start = std::chrono::steady_clock::now();
                const QuadphiResult run = quadphi(a, L);
                const std::chrono::duration<double> elapsed =
                    std::chrono::steady_clock::now() - start;
                rows.push_back({std::to_string(n), std::to_string(L), std::to_string(run.m),
                                std::to_string(run.s), std::to_string(run.products),
                                fmt_double(elapsed.count())});
            }
        }
        const std::vector<std::string> header{"n", "L", "m", "s", "products", "seconds"};
        if (out_path.empty()) {
            std::cout << csvio::to_csv(header, rows);
        } else {
            csvio::write_csv(out_path, header, rows);
        }
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsageOrIo;
    }
}

int cmd_gallery(const std::string& out_dir) {
    try {
        ensure_dir(out_dir);
        std::vector<std::vector<std::string>> manifest;
        for (const auto& entry : gallery::default_suite()) {
            const DenseMatrix a = gallery::generate(entry.spec);
            mm::write_matrix((fs::path(out_dir) / (entry.id + ".mtx")).string(), a);
            manifest.push_back(
                {entry.id, std::to_string(a.dim()), fmt_double(one_norm(a))});
        }
        csvio::write_csv((fs::path(out_dir) / "manifest.csv").string(), {"name", "n", "norm1"},
                         manifest);
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsageOrIo;
    }
}

} // namespace quadphi::cli
