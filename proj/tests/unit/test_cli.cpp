#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "quadphi/csv.hpp"
#include "quadphi/mmio.hpp"
#include "test_util.hpp"

using namespace quadphi;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() / "quadphi-cli-io";
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
    ++counter;

    const std::string cmd = std::string(QUADPHI_CLI_BIN) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("quadphi-cli-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_SUITE("cli") {

    TEST_CASE("phi on a zero matrix") {
        const fs::path dir = fresh_dir("phi-zero");
        const fs::path input = dir / "zero.mtx";
        mm::write_matrix(input.string(), DenseMatrix(4));

        const CliResult r =
            run_cli("phi --input " + input.string() + " --l 2 --out " + dir.string());
        CHECK(r.exit_code == 0);

        const DenseMatrix c2 = mm::read_matrix((dir / "C_2.mtx").string());
        CHECK(testutil::max_entry_diff(c2, scale(DenseMatrix::identity(4), 0.5)) == 0.0);

        const csvio::CsvTable plan = csvio::read_csv((dir / "plan.csv").string());
        REQUIRE(plan.rows.size() == 1);
        CHECK(plan.header == std::vector<std::string>{"m", "s", "eta", "products"});
        CHECK(plan.rows[0][0] == "1");
        CHECK(plan.rows[0][1] == "0");
        CHECK(std::stod(plan.rows[0][2]) == 0.0);
        CHECK(plan.rows[0][3] == "0");

        // no restoring steps: every bound equals the initial error
        const csvio::CsvTable bounds = csvio::read_csv((dir / "bounds.csv").string());
        CHECK(bounds.header == std::vector<std::string>{"k", "bound", "psd_bound"});
        REQUIRE(bounds.rows.size() == 3);
        for (const auto& row : bounds.rows) {
            CHECK(std::stod(row[1]) == doctest::Approx(0x1p-53 * 2.0).epsilon(1e-12));
            CHECK(std::stod(row[2]) == doctest::Approx(0x1p-53 * 2.0).epsilon(1e-12));
        }
    }

    TEST_CASE("phi on a large scaled identity reports the scaling plan") {
        const fs::path dir = fresh_dir("phi-big");
        const fs::path input = dir / "big.mtx";
        mm::write_matrix(input.string(), scale(DenseMatrix::identity(8), 1000.0));

        const CliResult r =
            run_cli("phi --input " + input.string() + " --l 0 --out " + dir.string());
        CHECK(r.exit_code == 0);

        const csvio::CsvTable plan = csvio::read_csv((dir / "plan.csv").string());
        REQUIRE(plan.rows.size() == 1);
        CHECK(plan.rows[0][0] == "20");
        CHECK(plan.rows[0][1] == "3");
        CHECK(std::stod(plan.rows[0][2]) == doctest::Approx(1000.0).epsilon(1e-12));
        // power build (q-1) + block folds (L+1)(r-1) + one product per restoring step
        CHECK(plan.rows[0][3] == std::to_string(4 + 3 + 3));
    }

    TEST_CASE("phi csv output format") {
        const fs::path dir = fresh_dir("phi-csv");
        const fs::path input = dir / "m.mtx";
        mm::write_matrix(input.string(), scale(DenseMatrix::identity(2), 0.5));

        const CliResult r = run_cli("phi --input " + input.string() + " --l 1 --out " +
                                    dir.string() + " --format csv");
        CHECK(r.exit_code == 0);
        CHECK(fs::exists(dir / "C_0.csv"));
        CHECK(fs::exists(dir / "C_1.csv"));

        CHECK(run_cli("phi --input " + input.string() + " --l 1 --out " + dir.string() +
                      " --format xml")
                  .exit_code == 1);
    }

    TEST_CASE("phi with a missing input names the path and exits 1") {
        const CliResult r = run_cli("phi --input /nowhere/missing.mtx --l 1 --out /tmp");
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("/nowhere/missing.mtx") != std::string::npos);
    }

    TEST_CASE("phi rejects a non-square input") {
        const fs::path dir = fresh_dir("phi-nonsquare");
        const fs::path input = dir / "rect.mtx";
        {
            std::ofstream f(input);
            f << "%%MatrixMarket matrix coordinate real general\n2 3 1\n1 1 1.0\n";
        }
        const CliResult r =
            run_cli("phi --input " + input.string() + " --l 1 --out " + dir.string());
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("square") != std::string::npos);
    }

    TEST_CASE("theta table rows at default settings") {
        const CliResult r = run_cli("theta");
        CHECK(r.exit_code == 0);
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line);
        CHECK(line == "m,theta");
        double th10 = 0.0, th20 = 0.0;
        while (std::getline(in, line)) {
            const auto comma = line.find(',');
            const int m = std::stoi(line.substr(0, comma));
            const double v = std::stod(line.substr(comma + 1));
            if (m == 10) th10 = v;
            if (m == 20) th20 = v;
        }
        CHECK(testutil::matches_printed(th10, 2.90, 3));
        CHECK(testutil::matches_printed(th20, 47.35, 4));
    }

    TEST_CASE("looser tolerance gives uniformly larger thresholds") {
        const fs::path dir = fresh_dir("theta");
        const fs::path strict = dir / "strict.csv";
        const fs::path loose = dir / "loose.csv";
        CHECK(run_cli("theta --out " + strict.string()).exit_code == 0);
        CHECK(run_cli("theta --tol 1e-8 --out " + loose.string()).exit_code == 0);

        const csvio::CsvTable a = csvio::read_csv(strict.string());
        const csvio::CsvTable b = csvio::read_csv(loose.string());
        REQUIRE(a.rows.size() == 20);
        REQUIRE(b.rows.size() == 20);
        for (std::size_t i = 0; i < 20; ++i) {
            CHECK(std::stod(b.rows[i][1]) > std::stod(a.rows[i][1]));
        }
    }

    TEST_CASE("verify: unknown suite is a usage error") {
        const CliResult r = run_cli("verify no-such-suite");
        CHECK(r.exit_code == 1);
        CHECK(r.err.find("unknown suite") != std::string::npos);
    }

    TEST_CASE("verify: quick identities run passes") {
        const fs::path dir = fresh_dir("verify");
        const fs::path report = dir / "report.csv";
        const CliResult r =
            run_cli("verify identities --trials 4 --seed 3 --out " + report.string());
        CHECK(r.exit_code == 0);
        const csvio::CsvTable t = csvio::read_csv(report.string());
        CHECK(t.header ==
              std::vector<std::string>{"case", "metric", "value", "threshold", "pass"});
        CHECK(t.rows.size() > 4);
        for (const auto& row : t.rows) {
            CHECK(row[4] == "true");
        }
    }

    TEST_CASE("bench: degenerate size runs and is deterministic") {
        const CliResult r1 = run_cli("bench 1 4 --l 3 --trials 2 --seed 9");
        CHECK(r1.exit_code == 0);
        const CliResult r2 = run_cli("bench 1 4 --l 3 --trials 2 --seed 9");

        const auto products_column = [](const std::string& csv) {
            std::vector<std::string> col;
            std::istringstream in(csv);
            std::string line;
            std::getline(in, line); // header
            while (std::getline(in, line)) {
                std::istringstream ls(line);
                std::string field;
                for (int i = 0; i <= 4 && std::getline(ls, field, ','); ++i) {
                }
                col.push_back(field);
            }
            return col;
        };
        CHECK(products_column(r1.out) == products_column(r2.out));
        CHECK(products_column(r1.out).size() == 4);
    }

    TEST_CASE("bench products column obeys the cost model") {
        const CliResult r = run_cli("bench 16 --l 7 --trials 1 --seed 5");
        CHECK(r.exit_code == 0);
        std::istringstream in(r.out);
        std::string line;
        std::getline(in, line); // header
        REQUIRE(std::getline(in, line));
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) f.push_back(field);
        REQUIRE(f.size() == 6);
        const int L = std::stoi(f[1]);
        const int m = std::stoi(f[2]);
        const int s = std::stoi(f[3]);
        int q = 1;
        while (q * q < m) ++q;
        const long long expect =
            (q - 1) + (long long)(L + 1) * (m / q - 1) +
            (L >= 1 ? (long long)s * (2 + 2 * (L - 1)) : (long long)s);
        CHECK(std::stoll(f[4]) == expect);
    }

    TEST_CASE("gallery writes the suite and its manifest") {
        const fs::path dir = fresh_dir("gallery");
        const CliResult r = run_cli("gallery --out " + dir.string());
        CHECK(r.exit_code == 0);

        const csvio::CsvTable manifest = csvio::read_csv((dir / "manifest.csv").string());
        CHECK(manifest.header == std::vector<std::string>{"name", "n", "norm1"});
        CHECK(manifest.rows.size() >= 30);
        for (const auto& row : manifest.rows) {
            const fs::path member = dir / (row[0] + ".mtx");
            CAPTURE(member.string());
            CHECK(fs::exists(member));
            const DenseMatrix m = mm::read_matrix(member.string());
            CHECK(m.dim() == std::stoi(row[1]));
            CHECK(one_norm(m) == std::stod(row[2]));
        }
    }

    TEST_CASE("missing subcommand is a usage error") {
        CHECK(run_cli("").exit_code == 1);
    }
}
