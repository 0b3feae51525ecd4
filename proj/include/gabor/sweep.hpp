#pragma once

#include <gabor/channel.hpp>
#include <gabor/table.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace gabor {

enum class OutputFormat { Csv, Json };

/// Phase-transition sweep: one cell per (n, s, window, algorithm), `trials`
/// seeded experiments per cell. A trial counts as a success when its relative
/// error falls below success_threshold.
struct SweepConfig {
    std::vector<Index> ns;
    std::vector<Index> ss;
    std::vector<WindowKind> windows;
    std::vector<Algorithm> algorithms;
    int trials = 1;
    std::uint64_t base_seed = 0;
    Real noise_tau = 0.0;
    Real success_threshold = 1e-4;
    std::string out_path;  // empty -> stdout (handled by the CLI)
    OutputFormat format = OutputFormat::Csv;
    int jobs = 1;
    SolverOptions solver;
};

/// Runs the sweep. Trial randomness is keyed by (base_seed, cell index,
/// trial index) and rows are assembled in canonical cell order, so the table
/// is byte-identical for every jobs value. Per-trial solver failures count
/// as unsuccessful and never abort the sweep.
Table phase_transition(const SweepConfig& config);

}  // namespace gabor
