#pragma once

#include <gabor/recovery.hpp>
#include <gabor/types.hpp>
#include <gabor/window.hpp>

#include <cstdint>
#include <string>

namespace gabor {

enum class CoefficientModel { UnitModulusRandomPhase, ComplexGaussian };

const char* coefficient_model_name(CoefficientModel model);
CoefficientModel parse_coefficient_model(const std::string& name);

/// Delay-Doppler identification setup: a random s-sparse coefficient vector x
/// drives the channel Gamma = sum_lambda x_lambda pi(lambda), probed by the
/// window, observed as y = Psi_g x + e with ||e||_2 = noise_tau exactly.
struct ChannelConfig {
    Index n = 0;
    Index s = 0;
    WindowKind kind = WindowKind::Rademacher;
    std::uint64_t window_seed = 0;
    CoefficientModel coefficients = CoefficientModel::UnitModulusRandomPhase;
    Real noise_tau = 0.0;
    std::uint64_t seed = 0;
};

struct ChannelExperiment {
    ChannelConfig config;
    Window window;
    SparseVector truth;
    CVec observation;
};

ChannelExperiment make_channel_experiment(const ChannelConfig& config);

/// The channel response Gamma g; identical to the synthesis product by
/// construction, named so channel call sites read as channels.
CVec apply_channel(const SparseVector& x, const Window& g);

struct ChannelRecord {
    ChannelConfig config;
    Algorithm algorithm = Algorithm::OMP;
    RecoveryResult result;
    Real rel_error = 0.0;           // ||x - x_hat||_2 / ||x||_2 (0 when both vanish)
    Real precision = 1.0;
    Real recall = 1.0;
    Real sigma_s_over_sqrt_s = 0.0; // best s-term l1 error of the truth / sqrt(s)
    Real tau = 0.0;
    bool solver_error = false;      // solver raised; x_hat = 0 was recorded
    std::string error_message;
};

/// Runs one seeded experiment end to end. Solver errors land in the record
/// rather than propagating, so sweeps never abort.
ChannelRecord run_experiment(const ChannelConfig& config, Algorithm algorithm,
                             const SolverOptions& opts = {});

}  // namespace gabor
