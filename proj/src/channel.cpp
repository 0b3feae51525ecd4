#include <gabor/channel.hpp>

#include <gabor/gabor_operator.hpp>
#include <gabor/rng.hpp>

#include <algorithm>
#include <cmath>

namespace gabor {

const char* coefficient_model_name(CoefficientModel model) {
    switch (model) {
        case CoefficientModel::UnitModulusRandomPhase: return "unit";
        case CoefficientModel::ComplexGaussian: return "gaussian";
    }
    return "unknown";
}

CoefficientModel parse_coefficient_model(const std::string& name) {
    if (name == "unit") return CoefficientModel::UnitModulusRandomPhase;
    if (name == "gaussian") return CoefficientModel::ComplexGaussian;
    throw Error(ErrorCode::InvalidParameter, "unknown coefficient model: " + name);
}

ChannelExperiment make_channel_experiment(const ChannelConfig& config) {
    Dimension dim(config.n);
    const Index N = dim.atom_count();
    if (config.s < 0 || config.s > N)
        throw Error(ErrorCode::InvalidParameter, "channel sparsity out of range");
    if (config.noise_tau < 0.0)
        throw Error(ErrorCode::InvalidParameter, "noise level must be nonnegative");

    ChannelExperiment exp;
    exp.config = config;
    exp.window = make_window(config.kind, config.n, config.window_seed);

    SplitStream root(config.seed);
    SplitStream support_stream = root.substream(0);
    SplitStream coeff_stream = root.substream(1);
    SplitStream noise_stream = root.substream(2);

    std::vector<Index> support = support_stream.sample_without_replacement(N, config.s);
    std::sort(support.begin(), support.end());
    CVec values(config.s);
    for (Index i = 0; i < config.s; ++i) {
        switch (config.coefficients) {
            case CoefficientModel::UnitModulusRandomPhase:
                values[i] = coeff_stream.next_unit();
                break;
            case CoefficientModel::ComplexGaussian:
                values[i] = Complex(coeff_stream.next_gaussian(), coeff_stream.next_gaussian()) /
                            std::sqrt(2.0);
                break;
        }
    }
    exp.truth = SparseVector(N, std::move(support), std::move(values));

    exp.observation = apply_channel(exp.truth, exp.window);
    if (config.noise_tau > 0.0) {
        CVec noise(config.n);
        for (Index q = 0; q < config.n; ++q)
            noise[q] = Complex(noise_stream.next_gaussian(), noise_stream.next_gaussian());
        const Real norm = noise.norm();
        if (norm > 0.0) exp.observation += noise * (config.noise_tau / norm);
    }
    return exp;
}

CVec apply_channel(const SparseVector& x, const Window& g) {
    return GaborOperator(g).synthesis(x);
}

namespace {

std::pair<Real, Real> support_precision_recall(const SparseVector& truth,
                                               const SparseVector& estimate) {
    const auto& ts = truth.support();
    const auto& es = estimate.support();
    if (ts.empty() && es.empty()) return {1.0, 1.0};
    std::size_t hits = 0;
    for (const Index i : es)
        if (std::binary_search(ts.begin(), ts.end(), i)) ++hits;
    const Real precision = es.empty() ? (ts.empty() ? 1.0 : 0.0)
                                      : static_cast<Real>(hits) / static_cast<Real>(es.size());
    const Real recall = ts.empty() ? 1.0
                                   : static_cast<Real>(hits) / static_cast<Real>(ts.size());
    return {precision, recall};
}

}  // namespace

ChannelRecord run_experiment(const ChannelConfig& config, Algorithm algorithm,
                             const SolverOptions& opts) {
    const ChannelExperiment exp = make_channel_experiment(config);
    const GaborOperator op(exp.window);

    ChannelRecord record;
    record.config = config;
    record.algorithm = algorithm;
    record.tau = config.noise_tau;
    record.sigma_s_over_sqrt_s =
        config.s > 0
            ? best_s_term_error(exp.truth.to_dense(), config.s) / std::sqrt(static_cast<Real>(config.s))
            : 0.0;

    if (config.s == 0 && config.noise_tau == 0.0) {
        record.result.x_hat = SparseVector::zero(op.atom_count());
        record.result.converged = true;
        record.result.algorithm = algorithm;
        record.result.residual_norm = exp.observation.norm();
    } else {
        try {
            record.result = run_solver(algorithm, op, exp.observation, config.s, opts);
        } catch (const Error& e) {
            record.solver_error = true;
            record.error_message = e.what();
            record.result.x_hat = SparseVector::zero(op.atom_count());
            record.result.algorithm = algorithm;
            record.result.residual_norm = exp.observation.norm();
        }
    }

    const CVec diff = exp.truth.to_dense() - record.result.x_hat.to_dense();
    const Real truth_norm = exp.truth.norm();
    if (truth_norm > 0.0)
        record.rel_error = diff.norm() / truth_norm;
    else
        record.rel_error = record.result.x_hat.nnz() == 0 ? 0.0 : diff.norm();

    std::tie(record.precision, record.recall) =
        support_precision_recall(exp.truth, record.result.x_hat);
    return record;
}

}  // namespace gabor
