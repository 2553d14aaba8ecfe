#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace quadphi::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsageOrIo = 1;
inline constexpr int kExitVerifyFailed = 2;

/// Reads a matrix, computes the index-0..L family, writes C_0..C_L in the
/// selected format plus plan.csv (m,s,eta,products) into out_dir.
int cmd_phi(const std::string& input, int L, const std::string& out_dir,
            const std::string& format);

/// Re-solves the threshold table and writes CSV m,theta (stdout when the
/// path is empty).
int cmd_theta(double tol, int nu, const std::string& out_path);

/// Runs one named verification suite and writes CSV
/// case,metric,value,threshold,pass; returns 2 when any row fails.
int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, int steps,
               const std::string& out_path);

/// Seeded timing/cost rows: n,L,m,s,products,seconds per case. Timing is
/// informational only; the asserted cost model is the product count.
int cmd_bench(const std::vector<int>& sizes, int L, int trials, std::uint64_t seed,
              const std::string& out_path);

/// Writes the default suite as Matrix Market files plus manifest.csv
/// (name,n,norm1) into out_dir.
int cmd_gallery(const std::string& out_dir);

} // namespace quadphi::cli
