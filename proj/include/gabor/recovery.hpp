#pragma once

#include <gabor/gabor_operator.hpp>
#include <gabor/types.hpp>

#include <chrono>
#include <optional>
#include <string>
#include <vector>

namespace gabor {

enum class Algorithm { IHT, HTP, CoSaMP, OMP, BasisPursuit };

const char* algorithm_name(Algorithm algo);
Algorithm parse_algorithm(const std::string& name);

/// Published sufficient RIP conditions delta_{kappa s} < delta_star. Metadata
/// for reporting only; no solver consults these.
struct AlgorithmThreshold {
    Algorithm algorithm;
    int kappa;
    Real delta_star;
};

const std::vector<AlgorithmThreshold>& algorithm_thresholds();

enum class GuaranteeStatus { Yes, No, Unknown };

/// Whether the sufficient condition delta_{kappa s} < delta_star holds, given
/// an exact RIP constant at order kappa*s (pass NaN when none is available).
GuaranteeStatus guarantee_status(Algorithm algo, Real delta_kappa_s);

struct SolverOptions {
    Real tol = 1e-8;
    Index max_iters = 0;  // 0 -> 1000 for the greedy solvers, 5000 for basis pursuit
    bool adaptive_step = false;  // IHT only; classical fixed step 1 when false
    Real bp_threshold = 0.0;     // soft-threshold level; 0 -> scaled from ||Psi* y||_inf
    std::optional<SparseVector> warm_start;
};

struct RecoveryResult {
    SparseVector x_hat;
    Real residual_norm = 0.0;  // ||y - Psi x_hat||_2
    Index iterations = 0;
    bool converged = false;
    bool diverged = false;  // non-finite iterate encountered
    Algorithm algorithm = Algorithm::IHT;
    std::chrono::duration<Real> elapsed{0};
};

/// l1 norm of x minus its s largest-magnitude entries (ties to lower index).
Real best_s_term_error(const CVec& x, Index s);

/// Least-squares coefficients on the given atoms, aligned with `support`.
/// Solved through the s x s normal equations; a Gram matrix with an
/// eigenvalue at or below 1e-10 is rejected as ill-conditioned.
CVec least_squares_on_support(const GaborOperator& op, const CVec& y,
                              const std::vector<Index>& support);

/// x <- H_s(x + Psi^*(y - Psi x)) with hard thresholding to the s largest
/// magnitudes.
RecoveryResult iht(const GaborOperator& op, const CVec& y, Index s,
                   const SolverOptions& opts = {});

/// Support of the s largest magnitudes of the gradient step, then least
/// squares on that support; stops early when the support repeats.
RecoveryResult htp(const GaborOperator& op, const CVec& y, Index s,
                   const SolverOptions& opts = {});

/// Proxy, merge top-2s with the current support, least squares, prune to s.
RecoveryResult cosamp(const GaborOperator& op, const CVec& y, Index s,
                      const SolverOptions& opts = {});

/// s rounds of pick-max-correlation followed by least squares.
RecoveryResult omp(const GaborOperator& op, const CVec& y, Index s,
                   const SolverOptions& opts = {});

/// min ||x||_1 subject to Psi x = y, by Douglas-Rachford splitting between
/// complex soft-thresholding and projection onto the affine constraint. The
/// projection uses the tight-frame identity Psi Psi^* = n I, so each
/// iteration is two fast applies. Never throws on non-convergence; the
/// result carries converged = false instead.
RecoveryResult basis_pursuit(const GaborOperator& op, const CVec& y,
                             const SolverOptions& opts = {});

/// Dispatch by algorithm; s is ignored for basis pursuit.
RecoveryResult run_solver(Algorithm algo, const GaborOperator& op, const CVec& y, Index s,
                          const SolverOptions& opts = {});

}  // namespace gabor
