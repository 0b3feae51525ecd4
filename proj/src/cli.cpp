#include <gabor/cli.hpp>

#include <gabor/analysis.hpp>
#include <gabor/channel.hpp>
#include <gabor/gabor_operator.hpp>
#include <gabor/parallel.hpp>
#include <gabor/recovery.hpp>
#include <gabor/rng.hpp>
#include <gabor/svg.hpp>
#include <gabor/sweep.hpp>
#include <gabor/table.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace gabor {

namespace {

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidParameter, "cannot open output file: " + out_path);
    out << content;
}

std::string read_input(const std::string& in_path) {
    if (in_path.empty() || in_path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidParameter, "cannot open input file: " + in_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Table vector_to_table(const CVec& v) {
    Table table({"index", "re", "im"});
    for (Index i = 0; i < v.size(); ++i)
        table.add_row({static_cast<std::int64_t>(i), v[i].real(), v[i].imag()});
    return table;
}

CVec table_to_vector(const Table& table) {
    const Index idx_col = table.column("index");
    const Index re_col = table.column("re");
    const Index im_col = table.column("im");
    if (idx_col < 0 || re_col < 0 || im_col < 0)
        throw Error(ErrorCode::InvalidParameter, "vector CSV requires columns index,re,im");
    CVec v(static_cast<Index>(table.rows().size()));
    for (std::size_t r = 0; r < table.rows().size(); ++r) {
        if (static_cast<Index>(table.numeric(r, idx_col)) != static_cast<Index>(r))
            throw Error(ErrorCode::InvalidParameter, "vector CSV indices must ascend from 0");
        v[static_cast<Index>(r)] = Complex(table.numeric(r, re_col), table.numeric(r, im_col));
    }
    return v;
}

CVec read_vector(const std::string& in_path) {
    return table_to_vector(Table::from_csv(read_input(in_path)));
}

std::string render(const Table& table, OutputFormat format) {
    return format == OutputFormat::Csv ? table.to_csv() : table.to_json();
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw UsageError("unknown format: " + name);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string item;
    for (const char c : text) {
        if (c == ',') {
            parts.push_back(item);
            item.clear();
        } else {
            item += c;
        }
    }
    parts.push_back(item);
    return parts;
}

std::vector<Index> parse_index_list(const std::string& text) {
    std::vector<Index> out;
    for (const auto& part : split_list(text)) {
        try {
            out.push_back(static_cast<Index>(std::stoll(part)));
        } catch (const std::exception&) {
            throw UsageError("expected an integer list, got: " + text);
        }
    }
    return out;
}

Table rip_table(const RipEstimate& est, std::uint64_t seed_cell) {
    Table table({"n", "s", "window", "seed", "mode", "trials", "delta_hat", "mean_delta",
                 "std_delta"});
    table.add_row({static_cast<std::int64_t>(est.n), static_cast<std::int64_t>(est.s),
                   std::string(window_kind_name(est.kind)),
                   static_cast<std::int64_t>(seed_cell),
                   std::string(est.mode == RipMode::Exact ? "exact" : "montecarlo"),
                   static_cast<std::int64_t>(est.trials), est.delta_hat, est.mean_delta,
                   est.std_delta});
    return table;
}

Table recovery_header_table() {
    return Table({"algo", "n", "s", "window", "seed", "noise", "rel_error", "residual", "iters",
                  "converged"});
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args) {
    CLI::App app{"Gabor time-frequency measurement toolkit"};
    app.require_subcommand(1);

    struct {
        std::string window = "rademacher";
        Index n = 0;
        Index s = 1;
        std::uint64_t seed = 0;
        std::uint64_t trials = 100;
        std::uint64_t budget = 1000000;
        std::string algo = "omp";
        double noise = 0.0;
        double threshold = 1e-4;
        double tol = 1e-8;
        Index max_iters = 0;
        std::string coeffs = "unit";
        std::string in_path;
        std::string truth_path;
        std::string out_path;
        std::string format = "csv";
        int jobs = default_jobs();
        std::string ns_list, ss_list, window_list, algo_list;
        std::string x_col, y_col, series_col;
    } opt;

    auto add_common = [&](CLI::App* sub, bool with_window = true) {
        if (with_window)
            sub->add_option("--window", opt.window,
                            "window kind: rademacher|steinhaus|alltop|gaussian");
        sub->add_option("--seed", opt.seed, "64-bit seed (default 0)");
        sub->add_option("--out", opt.out_path, "output path (default stdout)");
        sub->add_option("--format", opt.format, "output format: csv|json");
    };

    auto* gen = app.add_subcommand("gen-window", "emit a window as index,re,im CSV");
    gen->add_option("--n", opt.n, "signal length")->required();
    add_common(gen);

    auto* apply = app.add_subcommand("apply", "y = Psi x for x of length n^2");
    apply->add_option("--n", opt.n)->required();
    apply->add_option("--in", opt.in_path, "input vector CSV (default stdin)");
    add_common(apply);

    auto* adjoint = app.add_subcommand("adjoint", "Psi* y for y of length n");
    adjoint->add_option("--n", opt.n)->required();
    adjoint->add_option("--in", opt.in_path, "input vector CSV (default stdin)");
    add_common(adjoint);

    auto* coh = app.add_subcommand("coherence", "maximum atom cross-correlation");
    coh->add_option("--n", opt.n)->required();
    add_common(coh);

    auto* ripmc = app.add_subcommand("rip-estimate", "Monte Carlo RIP estimate");
    ripmc->add_option("--n", opt.n)->required();
    ripmc->add_option("--s", opt.s, "sparsity")->required();
    ripmc->add_option("--trials", opt.trials, "number of sampled supports");
    ripmc->add_option("--jobs", opt.jobs, "worker threads (env GABOR_RIP_JOBS)");
    add_common(ripmc);

    auto* ripex = app.add_subcommand("rip-exact", "exhaustive RIP constant");
    ripex->add_option("--n", opt.n)->required();
    ripex->add_option("--s", opt.s, "sparsity")->required();
    ripex->add_option("--budget", opt.budget, "support enumeration budget");
    add_common(ripex);

    auto* verify = app.add_subcommand("verify-identities", "numerical identity suite");
    verify->add_option("--n", opt.n)->required();
    verify->add_option("--out", opt.out_path);
    verify->add_option("--format", opt.format);

    auto* recover = app.add_subcommand("recover", "sparse recovery from an observation file");
    recover->add_option("--n", opt.n)->required();
    recover->add_option("--s", opt.s, "target sparsity")->required();
    recover->add_option("--algo", opt.algo, "iht|htp|cosamp|omp|bp");
    recover->add_option("--in", opt.in_path, "observation CSV (default stdin)");
    recover->add_option("--truth", opt.truth_path, "optional truth vector for rel_error");
    recover->add_option("--tol", opt.tol);
    recover->add_option("--max-iters", opt.max_iters);
    add_common(recover);

    auto* chan = app.add_subcommand("channel-sim", "seeded channel identification runs");
    chan->add_option("--n", opt.n)->required();
    chan->add_option("--s", opt.s, "channel sparsity")->required();
    chan->add_option("--algo", opt.algo, "iht|htp|cosamp|omp|bp");
    chan->add_option("--noise", opt.noise, "noise norm tau");
    chan->add_option("--trials", opt.trials, "number of experiments");
    chan->add_option("--coeffs", opt.coeffs, "coefficient model: unit|gaussian");
    chan->add_option("--tol", opt.tol);
    chan->add_option("--max-iters", opt.max_iters);
    add_common(chan);

    auto* sweep = app.add_subcommand("phase-transition", "success-rate sweep over (n, s)");
    sweep->add_option("--n", opt.ns_list, "comma-separated n values")->required();
    sweep->add_option("--s", opt.ss_list, "comma-separated s values")->required();
    sweep->add_option("--window", opt.window_list, "comma-separated window kinds")->required();
    sweep->add_option("--algo", opt.algo_list, "comma-separated algorithms")->required();
    sweep->add_option("--trials", opt.trials, "trials per cell");
    sweep->add_option("--seed", opt.seed);
    sweep->add_option("--noise", opt.noise);
    sweep->add_option("--threshold", opt.threshold, "relative-error success threshold");
    sweep->add_option("--jobs", opt.jobs, "worker threads (env GABOR_RIP_JOBS)");
    sweep->add_option("--out", opt.out_path);
    sweep->add_option("--format", opt.format);

    auto* plot = app.add_subcommand("plot", "scatter SVG from a CSV table");
    plot->add_option("--in", opt.in_path, "input table CSV (default stdin)");
    plot->add_option("--x", opt.x_col, "x column")->required();
    plot->add_option("--y", opt.y_col, "y column")->required();
    plot->add_option("--series", opt.series_col, "series column")->required();
    plot->add_option("--out", opt.out_path);

    // CLI11 wants argc/argv; keep the caller's order.
    std::vector<std::string> argv_storage;
    argv_storage.push_back("gabor-rip");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_storage) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 2;
    }

    try {
        const OutputFormat format = parse_format(opt.format);

        if (gen->parsed()) {
            const Window w = make_window(parse_window_kind(opt.window), opt.n, opt.seed);
            write_output(render(vector_to_table(w.g), format), opt.out_path);
            return 0;
        }

        if (apply->parsed() || adjoint->parsed()) {
            const GaborOperator op(make_window(parse_window_kind(opt.window), opt.n, opt.seed));
            const CVec input = read_vector(opt.in_path);
            const CVec output = apply->parsed() ? op.synthesis(input) : op.analysis(input);
            write_output(render(vector_to_table(output), format), opt.out_path);
            return 0;
        }

        if (coh->parsed()) {
            const GaborOperator op(make_window(parse_window_kind(opt.window), opt.n, opt.seed));
            const Real mu = op.coherence();
            if (format == OutputFormat::Csv) {
                write_output("mu," + format_sig6(mu) + "\n", opt.out_path);
            } else {
                write_output("{\"mu\": " + format_full(mu) + "}\n", opt.out_path);
            }
            return 0;
        }

        if (ripmc->parsed()) {
            const GaborOperator op(make_window(parse_window_kind(opt.window), opt.n, opt.seed));
            // sampling stream decoupled from the window draws
            const std::uint64_t mc_seed = SplitStream(opt.seed).substream(1).next();
            const RipEstimate est =
                monte_carlo_rip(op, opt.s, opt.trials, mc_seed, opt.jobs);
            write_output(render(rip_table(est, opt.seed), format), opt.out_path);
            return 0;
        }

        if (ripex->parsed()) {
            const GaborOperator op(make_window(parse_window_kind(opt.window), opt.n, opt.seed));
            const RipEstimate est = exact_rip_constant(op, opt.s, opt.budget);
            write_output(render(rip_table(est, opt.seed), format), opt.out_path);
            return 0;
        }

        if (verify->parsed()) {
            const IdentityReport report = verify_identities(opt.n);
            Table table({"check_id", "n", "max_abs_deviation", "pass"});
            for (const auto& check : report.checks)
                table.add_row({check.id, static_cast<std::int64_t>(report.n),
                               check.max_abs_deviation,
                               static_cast<std::int64_t>(check.pass ? 1 : 0)});
            write_output(render(table, format), opt.out_path);
            if (!report.all_pass()) {
                std::cout << "error,identity_check_failed,one or more identities exceeded "
                             "tolerance\n";
                return 1;
            }
            return 0;
        }

        if (recover->parsed()) {
            const GaborOperator op(make_window(parse_window_kind(opt.window), opt.n, opt.seed));
            const CVec y = read_vector(opt.in_path);
            SolverOptions solver;
            solver.tol = opt.tol;
            solver.max_iters = opt.max_iters;
            const Algorithm algo = parse_algorithm(opt.algo);
            const RecoveryResult result = run_solver(algo, op, y, opt.s, solver);

            Real rel_error = std::numeric_limits<Real>::quiet_NaN();
            if (!opt.truth_path.empty()) {
                const CVec truth = read_vector(opt.truth_path);
                if (truth.size() != result.x_hat.size())
                    throw Error(ErrorCode::DimensionMismatch, "truth vector has wrong length");
                const Real tn = truth.norm();
                rel_error = tn > 0 ? (truth - result.x_hat.to_dense()).norm() / tn
                                   : result.x_hat.to_dense().norm();
            }

            Table table = recovery_header_table();
            table.add_row({std::string(algorithm_name(algo)), static_cast<std::int64_t>(opt.n),
                           static_cast<std::int64_t>(opt.s), opt.window,
                           static_cast<std::int64_t>(opt.seed), 0.0, rel_error,
                           result.residual_norm, static_cast<std::int64_t>(result.iterations),
                           static_cast<std::int64_t>(result.converged ? 1 : 0)});
            write_output(render(table, format), opt.out_path);
            return 0;
        }

        if (chan->parsed()) {
            const Algorithm algo = parse_algorithm(opt.algo);
            SolverOptions solver;
            solver.tol = opt.tol;
            solver.max_iters = opt.max_iters;

            Table table({"algo", "n", "s", "window", "seed", "noise", "rel_error", "residual",
                         "iters", "converged", "precision", "recall", "sigma_s_over_sqrt_s",
                         "tau"});
            SplitStream root(opt.seed);
            for (std::uint64_t t = 0; t < opt.trials; ++t) {
                ChannelConfig config;
                config.n = opt.n;
                config.s = opt.s;
                config.kind = parse_window_kind(opt.window);
                config.window_seed = opt.seed;
                config.coefficients = parse_coefficient_model(opt.coeffs);
                config.noise_tau = opt.noise;
                config.seed = root.substream(t).next();
                const ChannelRecord record = run_experiment(config, algo, solver);
                table.add_row({std::string(algorithm_name(algo)),
                               static_cast<std::int64_t>(opt.n),
                               static_cast<std::int64_t>(opt.s), opt.window,
                               static_cast<std::int64_t>(opt.seed), opt.noise, record.rel_error,
                               record.result.residual_norm,
                               static_cast<std::int64_t>(record.result.iterations),
                               static_cast<std::int64_t>(record.result.converged ? 1 : 0),
                               record.precision, record.recall, record.sigma_s_over_sqrt_s,
                               record.tau});
            }
            write_output(render(table, format), opt.out_path);
            return 0;
        }

        if (sweep->parsed()) {
            SweepConfig config;
            config.ns = parse_index_list(opt.ns_list);
            config.ss = parse_index_list(opt.ss_list);
            for (const auto& name : split_list(opt.window_list))
                config.windows.push_back(parse_window_kind(name));
            for (const auto& name : split_list(opt.algo_list))
                config.algorithms.push_back(parse_algorithm(name));
            config.trials = static_cast<int>(opt.trials);
            config.base_seed = opt.seed;
            config.noise_tau = opt.noise;
            config.success_threshold = opt.threshold;
            config.jobs = opt.jobs;
            config.out_path = opt.out_path;
            config.format = parse_format(opt.format);
            write_output(render(phase_transition(config), config.format), opt.out_path);
            return 0;
        }

        if (plot->parsed()) {
            const Table table = Table::from_csv(read_input(opt.in_path));
            const std::string svg =
                svg_scatter_string(table, opt.x_col, opt.y_col, opt.series_col);
            write_output(svg, opt.out_path);
            return 0;
        }

        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 2;
    } catch (const Error& e) {
        std::cout << "error," << e.code_name() << "," << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << "error,internal," << e.what() << "\n";
        return 1;
    }
}

}  // namespace gabor
