#include <cstdint>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quadphi/cli_ops.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Simultaneous oscillatory matrix functions via quadruple-angle "
                 "scaling-and-restoring"};
    app.require_subcommand(1);

    std::string input;
    std::string out;
    std::string format = "mtx";
    std::string suite;
    int L = 0;
    double tol = 0x1p-53;
    int nu = 150;
    std::uint64_t seed = 1;
    int trials = 100;
    int steps = 10000;
    std::vector<int> sizes;

    auto* phi = app.add_subcommand("phi", "compute C_0..C_L for a Matrix Market input");
    phi->add_option("--input", input, "input matrix file")->required();
    phi->add_option("--l", L, "highest index L")->check(CLI::NonNegativeNumber);
    phi->add_option("--out", out, "output directory")->required();
    phi->add_option("--format", format, "output format: mtx or csv");

    auto* theta = app.add_subcommand("theta", "regenerate the threshold table as CSV");
    theta->add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);
    theta->add_option("--nu", nu, "series truncation length")->check(CLI::PositiveNumber);
    theta->add_option("--out", out, "output CSV path (stdout when omitted)");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "identities|oracle|bounds|gallery|action")->required();
    verify->add_option("--seed", seed, "seed for randomized cases");
    verify->add_option("--trials", trials, "number of randomized cases")
        ->check(CLI::PositiveNumber);
    verify->add_option("--steps", steps, "integrator steps for the action suite")
        ->check(CLI::PositiveNumber);
    verify->add_option("--out", out, "report CSV path (stdout when omitted)");

    auto* bench = app.add_subcommand("bench", "product-count and timing rows");
    bench->add_option("sizes", sizes, "matrix dimensions")->required();
    bench->add_option("--l", L, "highest index L")->check(CLI::NonNegativeNumber);
    bench->add_option("--trials", trials, "repetitions per size")->check(CLI::PositiveNumber);
    bench->add_option("--seed", seed, "seed for the benchmark matrices");
    bench->add_option("--out", out, "output CSV path (stdout when omitted)");

    auto* gal = app.add_subcommand("gallery", "write the default matrix suite");
    gal->add_option("--out", out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return quadphi::cli::kExitUsageOrIo;
    }

    if (phi->parsed()) return quadphi::cli::cmd_phi(input, L, out, format);
    if (theta->parsed()) return quadphi::cli::cmd_theta(tol, nu, out);
    if (verify->parsed()) return quadphi::cli::cmd_verify(suite, seed, trials, steps, out);
    if (bench->parsed()) return quadphi::cli::cmd_bench(sizes, L, trials, seed, out);
    if (gal->parsed()) return quadphi::cli::cmd_gallery(out);
    return quadphi::cli::kExitUsageOrIo;
}
