#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gabor {

using Index = Eigen::Index;
using Real = double;
using Complex = std::complex<Real>;

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

enum class ErrorCode {
    DimensionMismatch,
    InvalidParameter,
    ResourceLimit,
    InvalidSupport,
    IllConditionedSupport,
    NoConvergence,
};

/// Domain error carrying a machine-readable code (mirrored by the CLI as
/// `error,<code>,<message>`).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

    const char* code_name() const {
        switch (code_) {
            case ErrorCode::DimensionMismatch: return "dimension_mismatch";
            case ErrorCode::InvalidParameter: return "invalid_parameter";
            case ErrorCode::ResourceLimit: return "resource_limit";
            case ErrorCode::InvalidSupport: return "invalid_support";
            case ErrorCode::IllConditionedSupport: return "ill_conditioned_support";
            case ErrorCode::NoConvergence: return "no_convergence";
        }
        return "unknown";
    }

private:
    ErrorCode code_;
};

/// Ambient signal length n together with the derived atom count N = n^2.
class Dimension {
public:
    explicit Dimension(Index n) : n_(n) {
        if (n < 2) throw Error(ErrorCode::InvalidParameter, "signal length must be at least 2");
    }

    Index n() const { return n_; }
    Index atom_count() const { return n_ * n_; }

private:
    Index n_;
};

/// Lattice point lambda = (k, ell): translation by k, modulation by ell.
/// Components may be arbitrary integers; operators reduce them mod n, so
/// differences lambda - lambda' can be formed freely.
struct TFIndex {
    std::int64_t k = 0;
    std::int64_t ell = 0;

    TFIndex reduced(Index n) const {
        auto wrap = [n](std::int64_t v) {
            std::int64_t r = v % static_cast<std::int64_t>(n);
            return r < 0 ? r + n : r;
        };
        return {wrap(k), wrap(ell)};
    }

    /// Column index of pi(k, ell) under the k-fast, ell-slow ordering.
    Index linear(Index n) const {
        const TFIndex r = reduced(n);
        return static_cast<Index>(r.ell) * n + static_cast<Index>(r.k);
    }

    static TFIndex from_linear(Index idx, Index n) {
        if (idx < 0 || idx >= n * n)
            throw Error(ErrorCode::InvalidParameter, "linear atom index out of range");
        return {idx % n, idx / n};
    }

    friend TFIndex operator-(TFIndex a, TFIndex b) { return {a.k - b.k, a.ell - b.ell}; }
    friend TFIndex operator+(TFIndex a, TFIndex b) { return {a.k + b.k, a.ell + b.ell}; }
    friend bool operator==(TFIndex a, TFIndex b) { return a.k == b.k && a.ell == b.ell; }
};

}  // namespace gabor
