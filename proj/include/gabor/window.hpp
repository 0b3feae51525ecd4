#pragma once

#include <gabor/types.hpp>

#include <cstdint>
#include <string>

namespace gabor {

enum class WindowKind { Rademacher, Steinhaus, Alltop, Gaussian };

const char* window_kind_name(WindowKind kind);
WindowKind parse_window_kind(const std::string& name);

/// Generating vector of a Gabor system: the unnormalized sequence epsilon and
/// the unit-norm window g derived from it.
///
///   Rademacher  epsilon_q in {+1, -1},            g = epsilon / sqrt(n)
///   Steinhaus   |epsilon_q| = 1 (random phase),   g = epsilon / sqrt(n)
///   Alltop      epsilon_q = exp(2 pi i q^3 / n),  g = epsilon / sqrt(n)
///                 (requires n >= 5 prime; seed ignored)
///   Gaussian    epsilon_q iid standard normal,    g = epsilon / ||epsilon||_2
struct Window {
    Index n = 0;
    WindowKind kind = WindowKind::Rademacher;
    std::uint64_t seed = 0;
    CVec epsilon;
    CVec g;

    /// True when |epsilon_q| = 1 for all q (every kind except Gaussian), the
    /// hypothesis under which the chaos-process identity is exact.
    bool unimodular() const { return kind != WindowKind::Gaussian; }
};

/// Deterministic: equal (kind, n, seed) yields bit-identical vectors.
Window make_window(WindowKind kind, Index n, std::uint64_t seed);

}  // namespace gabor
