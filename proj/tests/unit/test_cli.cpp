#include <doctest.h>

#include <gabor/cli.hpp>
#include <gabor/table.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace gabor;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
};

CliRun run_cli(const std::vector<std::string>& args) {
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    const int code = cli_dispatch(args);
    std::cout.rdbuf(old);
    return {code, captured.str()};
}

fs::path temp_dir() {
    const fs::path dir = fs::temp_directory_path() / "gabor_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

}  // namespace

TEST_CASE("coherence prints the six-digit alltop value") {
    const CliRun run = run_cli({"coherence", "--window", "alltop", "--n", "5"});
    CHECK(run.exit_code == 0);
    CHECK(run.out == "mu,0.447214\n");
}

TEST_CASE("coherence in json carries full precision") {
    const CliRun run = run_cli({"coherence", "--window", "alltop", "--n", "5", "--format",
                                "json"});
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("\"mu\": 0.447213595") != std::string::npos);
}

TEST_CASE("verify-identities emits six passing rows and exits zero") {
    const CliRun run = run_cli({"verify-identities", "--n", "8"});
    CHECK(run.exit_code == 0);
    const Table table = Table::from_csv(run.out);
    CHECK(table.header() ==
          std::vector<std::string>{"check_id", "n", "max_abs_deviation", "pass"});
    REQUIRE(table.rows().size() == 6);
    for (std::size_t r = 0; r < 6; ++r) CHECK(table.text(r, 3) == "1");
}

TEST_CASE("gen-window rejects a composite alltop length with an error line") {
    const CliRun run = run_cli({"gen-window", "--window", "alltop", "--n", "4"});
    CHECK(run.exit_code == 1);
    CHECK(run.out.rfind("error,invalid_parameter,", 0) == 0);
}

TEST_CASE("usage problems exit with code two") {
    CHECK(run_cli({"coherence", "--n", "5", "--bogus-flag"}).exit_code == 2);
    CHECK(run_cli({"no-such-command"}).exit_code == 2);
    CHECK(run_cli({"coherence"}).exit_code == 2);  // missing required --n
    CHECK(run_cli({"coherence", "--n", "5", "--format", "yaml"}).exit_code == 2);
    CHECK(run_cli({}).exit_code == 2);
}

TEST_CASE("gen-window output is a parseable vector table and is deterministic") {
    const fs::path out = temp_dir() / "window.csv";
    const std::vector<std::string> args = {"gen-window", "--window", "rademacher", "--n", "8",
                                           "--seed",     "7",        "--out",      out.string()};
    CHECK(run_cli(args).exit_code == 0);
    const std::string first = read_file(out);
    const Table table = Table::from_csv(first);
    CHECK(table.header() == std::vector<std::string>{"index", "re", "im"});
    CHECK(table.rows().size() == 8);
    CHECK(run_cli(args).exit_code == 0);
    CHECK(read_file(out) == first);
}

TEST_CASE("apply and adjoint run the operator on file vectors") {
    const fs::path dir = temp_dir();
    const fs::path x_path = dir / "x.csv";
    const fs::path y_path = dir / "y.csv";
    const fs::path coeff_path = dir / "coeffs.csv";

    // x = e_0 of length 25, so y is the window itself
    std::string x_csv = "index,re,im\n";
    for (int i = 0; i < 25; ++i)
        x_csv += std::to_string(i) + (i == 0 ? ",1,0\n" : ",0,0\n");
    write_file(x_path, x_csv);

    CHECK(run_cli({"apply", "--window", "alltop", "--n", "5", "--in", x_path.string(), "--out",
                   y_path.string()})
              .exit_code == 0);
    const Table y_table = Table::from_csv(read_file(y_path));
    REQUIRE(y_table.rows().size() == 5);
    CHECK(y_table.numeric(0, 1) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-5));

    CHECK(run_cli({"adjoint", "--window", "alltop", "--n", "5", "--in", y_path.string(), "--out",
                   coeff_path.string()})
              .exit_code == 0);
    const Table coeff_table = Table::from_csv(read_file(coeff_path));
    REQUIRE(coeff_table.rows().size() == 25);
    CHECK(coeff_table.numeric(0, 1) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(std::abs(coeff_table.numeric(1, 1)) < 0.5);
}

TEST_CASE("apply rejects a wrong-length vector with a domain error") {
    const fs::path dir = temp_dir();
    const fs::path x_path = dir / "short.csv";
    write_file(x_path, "index,re,im\n0,1,0\n");
    const CliRun run =
        run_cli({"apply", "--window", "rademacher", "--n", "5", "--in", x_path.string()});
    CHECK(run.exit_code == 1);
    CHECK(run.out.rfind("error,dimension_mismatch,", 0) == 0);
}

TEST_CASE("rip estimates are byte-identical across worker counts") {
    const fs::path dir = temp_dir();
    const fs::path a = dir / "rip1.csv";
    const fs::path b = dir / "rip4.csv";
    CHECK(run_cli({"rip-estimate", "--window", "steinhaus", "--n", "4", "--s", "2", "--trials",
                   "50", "--seed", "3", "--jobs", "1", "--out", a.string()})
              .exit_code == 0);
    CHECK(run_cli({"rip-estimate", "--window", "steinhaus", "--n", "4", "--s", "2", "--trials",
                   "50", "--seed", "3", "--jobs", "4", "--out", b.string()})
              .exit_code == 0);
    const std::string text = read_file(a);
    CHECK(text == read_file(b));
    const Table table = Table::from_csv(text);
    CHECK(table.text(0, 4) == "montecarlo");
    CHECK(table.numeric(0, 6) >= 0.0);
}

TEST_CASE("rip-exact reports the enumeration and matches the estimate schema") {
    const CliRun run =
        run_cli({"rip-exact", "--window", "rademacher", "--n", "4", "--s", "2", "--seed", "0"});
    CHECK(run.exit_code == 0);
    const Table table = Table::from_csv(run.out);
    CHECK(table.header() ==
          std::vector<std::string>{"n", "s", "window", "seed", "mode", "trials", "delta_hat",
                                   "mean_delta", "std_delta"});
    CHECK(table.text(0, 4) == "exact");
    CHECK(table.text(0, 5) == "120");
}

TEST_CASE("rip-exact over budget is a resource error") {
    const CliRun run = run_cli({"rip-exact", "--window", "rademacher", "--n", "8", "--s", "5",
                                "--budget", "1000"});
    CHECK(run.exit_code == 1);
    CHECK(run.out.rfind("error,resource_limit,", 0) == 0);
}

TEST_CASE("recover identifies a one-sparse observation from files") {
    const fs::path dir = temp_dir();
    const fs::path y_path = dir / "obs.csv";
    const fs::path truth_path = dir / "truth.csv";

    std::string truth_csv = "index,re,im\n";
    for (int i = 0; i < 25; ++i)
        truth_csv += std::to_string(i) + (i == 7 ? ",1,0\n" : ",0,0\n");
    write_file(truth_path, truth_csv);
    CHECK(run_cli({"apply", "--window", "alltop", "--n", "5", "--in", truth_path.string(),
                   "--out", y_path.string()})
              .exit_code == 0);

    // the observation went through a six-digit CSV round trip, so ask for a
    // tolerance the perturbed data can meet
    const CliRun run = run_cli({"recover", "--algo", "omp", "--window", "alltop", "--n", "5",
                                "--s", "1", "--in", y_path.string(), "--truth",
                                truth_path.string(), "--tol", "1e-4"});
    CHECK(run.exit_code == 0);
    const Table table = Table::from_csv(run.out);
    CHECK(table.header() ==
          std::vector<std::string>{"algo", "n", "s", "window", "seed", "noise", "rel_error",
                                   "residual", "iters", "converged"});
    CHECK(table.numeric(0, 6) < 1e-4);  // rel_error vs the 6-digit serialized input
    CHECK(table.text(0, 9) == "1");
}

TEST_CASE("channel-sim emits one extended row per trial") {
    const CliRun run = run_cli({"channel-sim", "--window", "rademacher", "--n", "16", "--s", "2",
                                "--seed", "5", "--algo", "htp", "--trials", "3"});
    CHECK(run.exit_code == 0);
    const Table table = Table::from_csv(run.out);
    REQUIRE(table.rows().size() == 3);
    CHECK(table.header() ==
          std::vector<std::string>{"algo", "n", "s", "window", "seed", "noise", "rel_error",
                                   "residual", "iters", "converged", "precision", "recall",
                                   "sigma_s_over_sqrt_s", "tau"});
    for (std::size_t r = 0; r < 3; ++r) {
        CHECK(table.numeric(r, 6) < 1e-6);
        CHECK(table.text(r, 10) == "1");
        CHECK(table.text(r, 11) == "1");
    }
}

TEST_CASE("phase-transition sweeps are deterministic across worker counts") {
    const fs::path dir = temp_dir();
    const fs::path a = dir / "sweep1.csv";
    const fs::path b = dir / "sweep4.csv";
    const std::vector<std::string> base = {"phase-transition", "--n", "8",  "--s",     "1,2",
                                           "--window",         "rademacher", "--algo", "omp",
                                           "--trials",         "5",          "--seed", "1"};
    auto with = [&](const fs::path& out, const std::string& jobs) {
        std::vector<std::string> args = base;
        args.insert(args.end(), {"--jobs", jobs, "--out", out.string()});
        return args;
    };
    CHECK(run_cli(with(a, "1")).exit_code == 0);
    CHECK(run_cli(with(b, "4")).exit_code == 0);
    const std::string text = read_file(a);
    CHECK(text == read_file(b));

    const Table table = Table::from_csv(text);
    REQUIRE(table.rows().size() == 2);
    CHECK(table.header() ==
          std::vector<std::string>{"n", "s", "window", "algo", "trials", "success_rate",
                                   "mean_rel_error", "mean_iters"});
}

TEST_CASE("a coherence-guaranteed cell has unit success rate") {
    // alltop at prime n: mu = 1/sqrt(n) < 1 makes noiseless 1-sparse omp exact
    const CliRun run = run_cli({"phase-transition", "--n", "5", "--s", "1", "--window",
                                "alltop", "--algo", "omp", "--trials", "50", "--seed", "1"});
    CHECK(run.exit_code == 0);
    const Table table = Table::from_csv(run.out);
    CHECK(table.numeric(0, 5) == doctest::Approx(1.0));
}

TEST_CASE("a fully dense target cell has zero success rate") {
    const CliRun run = run_cli({"phase-transition", "--n", "4", "--s", "16", "--window",
                                "steinhaus", "--algo", "iht", "--trials", "4", "--seed", "2"});
    CHECK(run.exit_code == 0);
    const Table table = Table::from_csv(run.out);
    CHECK(table.numeric(0, 5) == doctest::Approx(0.0));
}

TEST_CASE("plot renders sweeps and flags missing columns as usage errors") {
    const fs::path dir = temp_dir();
    const fs::path sweep_path = dir / "sweep_for_plot.csv";
    const fs::path svg_path = dir / "plot.svg";
    CHECK(run_cli({"phase-transition", "--n", "8", "--s", "1,2", "--window", "rademacher",
                   "--algo", "omp", "--trials", "3", "--seed", "4", "--out",
                   sweep_path.string()})
              .exit_code == 0);
    CHECK(run_cli({"plot", "--in", sweep_path.string(), "--x", "s", "--y", "success_rate",
                   "--series", "window", "--out", svg_path.string()})
              .exit_code == 0);
    const std::string svg = read_file(svg_path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("class=\"marker\"") != std::string::npos);

    CHECK(run_cli({"plot", "--in", sweep_path.string(), "--x", "nope", "--y", "success_rate",
                   "--series", "window"})
              .exit_code == 2);
}

TEST_CASE("json sweep output mirrors the csv rows") {
    const CliRun run = run_cli({"phase-transition", "--n", "5", "--s", "1", "--window",
                                "alltop", "--algo", "omp", "--trials", "2", "--seed", "0",
                                "--format", "json"});
    CHECK(run.exit_code == 0);
    CHECK(run.out.find("\"success_rate\": 1.0") != std::string::npos);
    CHECK(run.out.find("\"window\": \"alltop\"") != std::string::npos);
}
