#pragma once

#include <gabor/gabor_operator.hpp>
#include <gabor/types.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gabor {

enum class RipMode { Exact, MonteCarlo };

/// Restricted-isometry statistics for one (operator, s) pair. delta_hat is
/// the maximum over the examined supports of max(lambda_max - 1,
/// 1 - lambda_min) of the support's Gram matrix; it estimates delta_s from
/// below unless the enumeration was exhaustive. mean/std summarize the
/// per-support deltas as a dispersion proxy.
struct RipEstimate {
    Index n = 0;
    Index s = 0;
    WindowKind kind = WindowKind::Rademacher;
    std::uint64_t seed = 0;
    RipMode mode = RipMode::Exact;
    std::uint64_t trials = 0;  // supports examined
    Real delta_hat = 0.0;
    Real mean_delta = 0.0;
    Real std_delta = 0.0;           // sample std, 0 when fewer than 2 supports
    std::vector<Real> per_trial;    // Monte Carlo only
    std::uint64_t support_count = 0;  // Exact only
};

/// Extremal eigenvalues of the s x s Gram of the selected atoms.
std::pair<Real, Real> submatrix_extremal_eigs(const GaborOperator& op,
                                              const std::vector<Index>& support);

/// max(lambda_max - 1, 1 - lambda_min) for one support.
Real support_delta(const GaborOperator& op, const std::vector<Index>& support);

/// Exhaustive maximum over all size-s supports. Refuses to enumerate more
/// than `budget` supports and points the caller at the Monte Carlo estimator.
RipEstimate exact_rip_constant(const GaborOperator& op, Index s,
                               std::uint64_t budget = 1000000);

/// Maximum over `trials` uniform random size-s supports. Trial t draws its
/// support from substream (seed, t), so the result does not depend on the
/// worker count, and supports are nested across s for fixed (seed, t).
RipEstimate monte_carlo_rip(const GaborOperator& op, Index s, std::uint64_t trials,
                            std::uint64_t seed, int jobs = 1);

/// The support Monte Carlo trial t examines; exposed so tests can build
/// vectors living on exactly the sampled supports.
std::vector<Index> rip_trial_support(std::uint64_t seed, std::uint64_t trial, Index atom_count,
                                     Index s);

/// (s - 1) * mu, the coherence upper bound on delta_s.
Real coherence_rip_bound(Real mu, Index s);

/// sqrt((N - n) / (n (N - 1))), the lower bound on the coherence of any
/// n x N unit-norm frame.
Real welch_bound(Index n, Index N);

/// Hermitian zero-diagonal n x n matrix with entries (A_{q'} x)^* (A_q z) for
/// q' != q. Built from the shift blocks only; no window enters.
struct ChaosMatrix {
    Index n = 0;
    CMat B;
    CVec source_x;
    CVec source_z;  // equals source_x for the quadratic form
};

ChaosMatrix chaos_matrix(const CVec& x);
ChaosMatrix chaos_bilinear(const CVec& x, const CVec& z);

/// lhs = x^*(Psi^*Psi - I)x (computed as ||Psi x||^2 - ||x||^2), and
/// rhs = eps^* B(x) eps / n. The two agree exactly when the window sequence
/// is unimodular (Rademacher, Steinhaus, Alltop).
std::pair<Real, Real> chaos_rip_link(const GaborOperator& op, const CVec& x);

/// sum_lambda |Re x_lambda| + |Im x_lambda|.
Real star_norm(const CVec& x);

/// d1 = ||B(x) - B(y)||_{2->2} (power iteration on M^*M, 1e-8 relative,
/// deterministic start) and d2 = ||B(x) - B(y)||_F.
std::pair<Real, Real> metric_d1_d2(const CVec& x, const CVec& y);

struct IdentityCheck {
    std::string id;
    Real max_abs_deviation = 0.0;
    bool pass = false;
};

struct IdentityReport {
    Index n = 0;
    std::vector<IdentityCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Dense numerical verification, each check to 1e-8 per entry:
///   aq_maps_basis_to_shift      A_q e_lambda = pi(lambda) e_q
///   aq_adjoint_sum_identity     sum_q A_q^* A_q = n I
///   aq_projection_sum_identity  sum_q A_q P_lambda A_q^* = I (sampled lambda)
///   pair_energy_sparsity_bound  sum_{q,q'} |x^* A_{q'}^* A_q y|^2
///                                 <= n ||x||_0 ||x||_2^2 ||y||_2^2
///   bilinear_unitary_product    B(e_l', e_l)^* B(e_l', e_l) = I (k' != k)
///   bilinear_frobenius_energy   ||B(e_l', e_l)||_F^2 = n     (k' != k)
IdentityReport verify_identities(Index n);

}  // namespace gabor
