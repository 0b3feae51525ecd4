#include <gabor/sweep.hpp>

#include <gabor/parallel.hpp>
#include <gabor/rng.hpp>

#include <cmath>

namespace gabor {

namespace {

struct TrialOutcome {
    bool success = false;
    Real rel_error = 0.0;
    Real iterations = 0.0;
};

struct Cell {
    Index n;
    Index s;
    WindowKind kind;
    Algorithm algorithm;
};

}  // namespace

Table phase_transition(const SweepConfig& config) {
    if (config.ns.empty() || config.ss.empty() || config.windows.empty() ||
        config.algorithms.empty())
        throw Error(ErrorCode::InvalidParameter, "sweep lists must be nonempty");
    if (config.trials < 1)
        throw Error(ErrorCode::InvalidParameter, "at least one trial per cell required");
    if (config.success_threshold <= 0.0)
        throw Error(ErrorCode::InvalidParameter, "success threshold must be positive");

    std::vector<Cell> cells;
    for (const Index n : config.ns)
        for (const Index s : config.ss)
            for (const WindowKind kind : config.windows)
                for (const Algorithm algo : config.algorithms)
                    cells.push_back({n, s, kind, algo});

    const std::size_t trials = static_cast<std::size_t>(config.trials);
    std::vector<TrialOutcome> outcomes(cells.size() * trials);

    SplitStream base(config.base_seed);
    parallel_for_index(outcomes.size(), config.jobs, [&](std::size_t flat) {
        const std::size_t cell_idx = flat / trials;
        const std::size_t trial_idx = flat % trials;
        const Cell& cell = cells[cell_idx];

        SplitStream trial_stream = base.substream(cell_idx).substream(trial_idx);

        ChannelConfig cc;
        cc.n = cell.n;
        cc.s = cell.s;
        cc.kind = cell.kind;
        cc.window_seed = trial_stream.substream(0).next();
        cc.seed = trial_stream.substream(1).next();
        cc.noise_tau = config.noise_tau;

        TrialOutcome& out = outcomes[flat];
        try {
            const ChannelRecord record = run_experiment(cc, cell.algorithm, config.solver);
            out.rel_error = record.rel_error;
            out.iterations = static_cast<Real>(record.result.iterations);
            out.success = std::isfinite(record.rel_error) &&
                          record.rel_error < config.success_threshold;
        } catch (const Error&) {
            // configuration-level failure (e.g. alltop over a composite n):
            // the trial simply counts as unsuccessful
            out.rel_error = 1.0;
            out.iterations = 0.0;
            out.success = false;
        }
    });

    Table table({"n", "s", "window", "algo", "trials", "success_rate", "mean_rel_error",
                 "mean_iters"});
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const Cell& cell = cells[c];
        std::size_t successes = 0;
        Real err_sum = 0.0;
        Real iter_sum = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
            const TrialOutcome& out = outcomes[c * trials + t];
            successes += out.success ? 1 : 0;
            err_sum += out.rel_error;
            iter_sum += out.iterations;
        }
        const Real denom = static_cast<Real>(trials);
        table.add_row({static_cast<std::int64_t>(cell.n), static_cast<std::int64_t>(cell.s),
                       std::string(window_kind_name(cell.kind)),
                       std::string(algorithm_name(cell.algorithm)),
                       static_cast<std::int64_t>(config.trials),
                       static_cast<double>(successes) / denom, err_sum / denom,
                       iter_sum / denom});
    }
    return table;
}

}  // namespace gabor
