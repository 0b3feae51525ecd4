#pragma once

#include <gabor/dft.hpp>
#include <gabor/types.hpp>
#include <gabor/window.hpp>

#include <vector>

namespace gabor {

/// Length-n^2 vector with explicit support (sorted, distinct indices).
class SparseVector {
public:
    SparseVector() = default;
    SparseVector(Index size, std::vector<Index> support, CVec values);

    static SparseVector zero(Index size) { return SparseVector(size, {}, CVec(0)); }
    static SparseVector from_dense(const CVec& x);

    CVec to_dense() const;

    Index size() const { return size_; }
    Index nnz() const { return static_cast<Index>(support_.size()); }
    const std::vector<Index>& support() const { return support_; }
    const CVec& values() const { return values_; }

    Real norm() const { return values_.norm(); }

private:
    Index size_ = 0;
    std::vector<Index> support_;
    CVec values_;
};

/// Block row A_q = (T^q | M T^q | ... | M^{n-1} T^q) applied to z in C^{n^2}:
/// out_k = sum_ell z_{(k-q, ell)} omega^{ell k}. Window-independent.
CVec a_q_apply(Index q, const CVec& z);

/// All n products A_q z at once; row q of the result is A_q z. Shares the
/// per-row transforms, so the batch costs O(n^2 log n) instead of n times the
/// single-q cost.
CMat a_q_apply_all(const CVec& z, const DftPlan& plan);
CMat a_q_apply_all(const CVec& z);

/// The Gabor synthesis operator: columns pi(k, ell) g at column index
/// ell*n + k (k fast, ell slow), applied implicitly through length-n
/// transforms. Immutable after construction; safe for concurrent use.
class GaborOperator {
public:
    explicit GaborOperator(Window window);

    const Window& window() const { return window_; }
    Index n() const { return window_.n; }
    Index atom_count() const { return window_.n * window_.n; }

    /// Column idx(lambda) of the dense matrix: pi(lambda) g.
    CVec atom(TFIndex lambda) const;

    /// y = Psi x for dense x in C^{n^2}. O(n^2 log n).
    CVec synthesis(const CVec& x) const;

    /// y = Psi x by direct atom summation, O(s n); equals the dense product
    /// to rounding. Recovery loops keep their iterates sparse to use this.
    CVec synthesis(const SparseVector& x) const;

    /// Psi^* y: entry idx(k, ell) is sum_q y_q conj(g_{(q-k) mod n}) omega^{-ell q}.
    CVec analysis(const CVec& y) const;

    /// <pi(lambda) g, pi(lambda') g>, conjugate-linear in the second argument.
    Complex atom_inner_product(TFIndex lambda, TFIndex lambda_prime) const;

    /// max_{lambda != lambda'} |<pi(lambda) g, pi(lambda') g>|. The modulus
    /// depends only on lambda - lambda', so the n^2 - 1 difference classes are
    /// scanned with one transform per time offset.
    Real coherence() const;

    /// Dense n x n^2 materialization; the oracle for the fast paths.
    /// Guarded at n <= max_n unless the caller raises the limit.
    CMat dense(Index max_n = 256) const;

    const DftPlan& plan() const { return plan_; }

private:
    Window window_;
    DftPlan plan_;
};

}  // namespace gabor
