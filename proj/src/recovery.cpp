#include <gabor/recovery.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gabor {

const char* algorithm_name(Algorithm algo) {
    switch (algo) {
        case Algorithm::IHT: return "iht";
        case Algorithm::HTP: return "htp";
        case Algorithm::CoSaMP: return "cosamp";
        case Algorithm::OMP: return "omp";
        case Algorithm::BasisPursuit: return "bp";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "iht") return Algorithm::IHT;
    if (name == "htp") return Algorithm::HTP;
    if (name == "cosamp") return Algorithm::CoSaMP;
    if (name == "omp") return Algorithm::OMP;
    if (name == "bp") return Algorithm::BasisPursuit;
    throw Error(ErrorCode::InvalidParameter, "unknown algorithm: " + name);
}

const std::vector<AlgorithmThreshold>& algorithm_thresholds() {
    static const std::vector<AlgorithmThreshold> table = {
        {Algorithm::BasisPursuit, 2, 3.0 / (4.0 + std::sqrt(6.0))},
        {Algorithm::CoSaMP, 4, std::sqrt(2.0 / (5.0 + std::sqrt(73.0)))},
        {Algorithm::IHT, 3, 0.5},
        {Algorithm::HTP, 3, 1.0 / std::sqrt(3.0)},
    };
    return table;
}

GuaranteeStatus guarantee_status(Algorithm algo, Real delta_kappa_s) {
    if (!std::isfinite(delta_kappa_s)) return GuaranteeStatus::Unknown;
    for (const auto& row : algorithm_thresholds())
        if (row.algorithm == algo)
            return delta_kappa_s < row.delta_star ? GuaranteeStatus::Yes : GuaranteeStatus::No;
    return GuaranteeStatus::Unknown;
}

namespace {

constexpr Index kGreedyDefaultIters = 1000;
constexpr Index kBasisPursuitDefaultIters = 5000;

/// Indices of the s largest magnitudes, ties to the lower index; returned
/// sorted ascending.
std::vector<Index> top_magnitude_indices(const CVec& v, Index s) {
    const Index n = v.size();
    const Index keep = std::min(s, n);
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index(0));
    auto by_magnitude = [&v](Index a, Index b) {
        const Real ma = std::abs(v[a]);
        const Real mb = std::abs(v[b]);
        if (ma != mb) return ma > mb;
        return a < b;
    };
    std::nth_element(order.begin(), order.begin() + keep, order.end(), by_magnitude);
    std::vector<Index> chosen(order.begin(), order.begin() + keep);
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

SparseVector hard_threshold(const CVec& v, Index s) {
    std::vector<Index> support = top_magnitude_indices(v, s);
    // drop exact zeros so ||x||_0 reflects the stored support
    std::vector<Index> pruned;
    for (const Index i : support)
        if (v[i] != Complex(0, 0)) pruned.push_back(i);
    CVec values(static_cast<Index>(pruned.size()));
    for (std::size_t i = 0; i < pruned.size(); ++i) values[static_cast<Index>(i)] = v[pruned[i]];
    return SparseVector(v.size(), std::move(pruned), std::move(values));
}

bool finite(const CVec& v) { return v.allFinite(); }

struct IterationGuard {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    void stamp(RecoveryResult& result) const {
        result.elapsed = std::chrono::steady_clock::now() - start;
    }
};

RecoveryResult finish(RecoveryResult result, const GaborOperator& op, const CVec& y,
                      const IterationGuard& guard) {
    result.residual_norm = (y - op.synthesis(result.x_hat)).norm();
    guard.stamp(result);
    return result;
}

}  // namespace

Real best_s_term_error(const CVec& x, Index s) {
    if (s < 0) throw Error(ErrorCode::InvalidParameter, "s must be nonnegative");
    if (s >= x.size()) return 0.0;
    const std::vector<Index> keep = top_magnitude_indices(x, s);
    std::vector<bool> kept(static_cast<std::size_t>(x.size()), false);
    for (const Index i : keep) kept[static_cast<std::size_t>(i)] = true;
    Real dropped = 0.0;
    for (Index i = 0; i < x.size(); ++i)
        if (!kept[static_cast<std::size_t>(i)]) dropped += std::abs(x[i]);
    return dropped;
}

CVec least_squares_on_support(const GaborOperator& op, const CVec& y,
                              const std::vector<Index>& support) {
    if (y.size() != op.n())
        throw Error(ErrorCode::DimensionMismatch, "observation must have length n");
    const Index s = static_cast<Index>(support.size());
    if (s == 0) return CVec(0);
    if (s > op.n())
        throw Error(ErrorCode::InvalidSupport, "support larger than measurement count");

    CMat atoms(op.n(), s);
    for (Index i = 0; i < s; ++i) {
        const Index idx = support[static_cast<std::size_t>(i)];
        if (idx < 0 || idx >= op.atom_count())
            throw Error(ErrorCode::InvalidSupport, "support index out of range");
        atoms.col(i) = op.atom(TFIndex::from_linear(idx, op.n()));
    }
    const CMat gram = atoms.adjoint() * atoms;
    Eigen::SelfAdjointEigenSolver<CMat> eig(gram);
    if (eig.eigenvalues().minCoeff() <= 1e-10)
        throw Error(ErrorCode::IllConditionedSupport,
                    "selected atoms are numerically dependent");
    const CVec rhs = atoms.adjoint() * y;
    const CVec scaled =
        eig.eigenvalues().cwiseInverse().cast<Complex>().asDiagonal() *
        (eig.eigenvectors().adjoint() * rhs);
    return eig.eigenvectors() * scaled;
}

namespace {

SparseVector sparse_from(const std::vector<Index>& sorted_support, const CVec& coeffs,
                         Index size) {
    std::vector<Index> support;
    std::vector<Complex> values;
    for (std::size_t i = 0; i < sorted_support.size(); ++i) {
        if (coeffs[static_cast<Index>(i)] == Complex(0, 0)) continue;
        support.push_back(sorted_support[i]);
        values.push_back(coeffs[static_cast<Index>(i)]);
    }
    CVec v(static_cast<Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<Index>(i)] = values[i];
    return SparseVector(size, std::move(support), std::move(v));
}

}  // namespace

RecoveryResult iht(const GaborOperator& op, const CVec& y, Index s, const SolverOptions& opts) {
    if (y.size() != op.n())
        throw Error(ErrorCode::DimensionMismatch, "observation must have length n");
    if (s < 0 || s > op.atom_count())
        throw Error(ErrorCode::InvalidParameter, "sparsity s out of range");

    IterationGuard guard;
    RecoveryResult result;
    result.algorithm = Algorithm::IHT;

    const Index max_iters = opts.max_iters > 0 ? opts.max_iters : kGreedyDefaultIters;
    const Real ynorm = y.norm();
    SparseVector x = opts.warm_start ? *opts.warm_start : SparseVector::zero(op.atom_count());
    CVec residual = y - op.synthesis(x);

    for (Index t = 1; t <= max_iters; ++t) {
        result.iterations = t;
        const CVec grad = op.analysis(residual);

        Real step = 1.0;
        if (opts.adaptive_step) {
            // normalized-IHT style step on the current direction's support
            const auto dir_support = top_magnitude_indices(grad, std::max<Index>(s, 1));
            Real num = 0.0;
            CVec restricted = CVec::Zero(op.atom_count());
            for (const Index i : dir_support) {
                num += std::norm(grad[i]);
                restricted[i] = grad[i];
            }
            const Real den = op.synthesis(restricted).squaredNorm();
            if (den > 0.0) step = num / den;
        }

        CVec dense = x.to_dense();
        dense += step * grad;
        if (!finite(dense)) {
            result.diverged = true;
            break;
        }
        SparseVector next = hard_threshold(dense, s);
        const CVec next_dense = next.to_dense();
        const Real change = (next_dense - x.to_dense()).norm();
        x = std::move(next);
        residual = y - op.synthesis(x);

        if (residual.norm() <= opts.tol * ynorm) {
            result.converged = true;
            break;
        }
        if (change <= opts.tol * std::max(next_dense.norm(), Real(1e-300))) break;
    }

    result.x_hat = std::move(x);
    return finish(std::move(result), op, y, guard);
}

RecoveryResult htp(const GaborOperator& op, const CVec& y, Index s, const SolverOptions& opts) {
    if (y.size() != op.n())
        throw Error(ErrorCode::DimensionMismatch, "observation must have length n");
    if (s < 0 || s > op.n())
        throw Error(ErrorCode::InvalidParameter, "sparsity s out of range for least squares");

    IterationGuard guard;
    RecoveryResult result;
    result.algorithm = Algorithm::HTP;

    const Index max_iters = opts.max_iters > 0 ? opts.max_iters : kGreedyDefaultIters;
    const Real ynorm = y.norm();
    SparseVector x = opts.warm_start ? *opts.warm_start : SparseVector::zero(op.atom_count());
    std::vector<Index> prev_support;

    for (Index t = 1; t <= max_iters; ++t) {
        result.iterations = t;
        const CVec residual = y - op.synthesis(x);
        if (residual.norm() <= opts.tol * ynorm) {
            result.converged = true;
            break;
        }
        CVec proxy = x.to_dense() + op.analysis(residual);
        if (!finite(proxy)) {
            result.diverged = true;
            break;
        }
        std::vector<Index> support = top_magnitude_indices(proxy, std::min(s, op.atom_count()));
        const bool repeated = (support == prev_support);
        const CVec coeffs = least_squares_on_support(op, y, support);
        x = sparse_from(support, coeffs, op.atom_count());
        if (repeated) {
            result.converged = (y - op.synthesis(x)).norm() <= opts.tol * ynorm;
            break;
        }
        prev_support = std::move(support);
    }

    result.x_hat = std::move(x);
    return finish(std::move(result), op, y, guard);
}

RecoveryResult cosamp(const GaborOperator& op, const CVec& y, Index s,
                      const SolverOptions& opts) {
    if (y.size() != op.n())
        throw Error(ErrorCode::DimensionMismatch, "observation must have length n");
    if (s < 0 || 3 * s > op.atom_count())
        throw Error(ErrorCode::InvalidParameter, "sparsity s out of range");

    IterationGuard guard;
    RecoveryResult result;
    result.algorithm = Algorithm::CoSaMP;

    const Index max_iters = opts.max_iters > 0 ? opts.max_iters : kGreedyDefaultIters;
    const Real ynorm = y.norm();
    SparseVector x = opts.warm_start ? *opts.warm_start : SparseVector::zero(op.atom_count());
    CVec residual = y - op.synthesis(x);

    for (Index t = 1; t <= max_iters; ++t) {
        result.iterations = t;
        if (residual.norm() <= opts.tol * ynorm) {
            result.converged = true;
            break;
        }
        const CVec proxy = op.analysis(residual);
        if (!finite(proxy)) {
            result.diverged = true;
            break;
        }
        std::vector<Index> merged = top_magnitude_indices(proxy, 2 * s);
        merged.insert(merged.end(), x.support().begin(), x.support().end());
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        if (static_cast<Index>(merged.size()) > op.n()) {
            // keep the n best-evidenced atoms so the least squares stays solvable
            const CVec dense = x.to_dense();
            auto evidence = [&](Index i) { return std::max(std::abs(proxy[i]), std::abs(dense[i])); };
            std::sort(merged.begin(), merged.end(), [&](Index a, Index b) {
                const Real ea = evidence(a);
                const Real eb = evidence(b);
                if (ea != eb) return ea > eb;
                return a < b;
            });
            merged.resize(static_cast<std::size_t>(op.n()));
            std::sort(merged.begin(), merged.end());
        }

        const CVec coeffs = least_squares_on_support(op, y, merged);
        CVec full = CVec::Zero(op.atom_count());
        for (std::size_t i = 0; i < merged.size(); ++i)
            full[merged[i]] = coeffs[static_cast<Index>(i)];
        SparseVector next = hard_threshold(full, s);

        const Real change = (next.to_dense() - x.to_dense()).norm();
        x = std::move(next);
        residual = y - op.synthesis(x);
        if (change <= opts.tol * std::max(x.norm(), Real(1e-300))) {
            result.converged = residual.norm() <= opts.tol * ynorm;
            break;
        }
    }

    result.x_hat = std::move(x);
    return finish(std::move(result), op, y, guard);
}

RecoveryResult omp(const GaborOperator& op, const CVec& y, Index s, const SolverOptions& opts) {
    if (y.size() != op.n())
        throw Error(ErrorCode::DimensionMismatch, "observation must have length n");
    if (s < 0 || s > op.n())
        throw Error(ErrorCode::InvalidParameter, "sparsity s out of range");

    IterationGuard guard;
    RecoveryResult result;
    result.algorithm = Algorithm::OMP;

    const Real ynorm = y.norm();
    std::vector<Index> support;
    CVec coeffs(0);
    CVec residual = y;

    for (Index round = 1; round <= s; ++round) {
        if (residual.norm() <= opts.tol * ynorm) break;
        result.iterations = round;
        const CVec proxy = op.analysis(residual);
        Index best = 0;
        Real best_mag = -1.0;
        for (Index i = 0; i < proxy.size(); ++i) {
            const Real m = std::abs(proxy[i]);
            if (m > best_mag &&
                std::find(support.begin(), support.end(), i) == support.end()) {
                best_mag = m;
                best = i;
            }
        }
        support.push_back(best);
        std::sort(support.begin(), support.end());
        coeffs = least_squares_on_support(op, y, support);
        CVec approx = CVec::Zero(op.n());
        for (std::size_t i = 0; i < support.size(); ++i)
            approx += coeffs[static_cast<Index>(i)] *
                      op.atom(TFIndex::from_linear(support[i], op.n()));
        residual = y - approx;
    }

    result.x_hat = support.empty() ? SparseVector::zero(op.atom_count())
                                   : sparse_from(support, coeffs, op.atom_count());
    result.converged = residual.norm() <= opts.tol * ynorm;
    return finish(std::move(result), op, y, guard);
}

RecoveryResult basis_pursuit(const GaborOperator& op, const CVec& y,
                             const SolverOptions& opts) {
    if (y.size() != op.n())
        throw Error(ErrorCode::DimensionMismatch, "observation must have length n");

    IterationGuard guard;
    RecoveryResult result;
    result.algorithm = Algorithm::BasisPursuit;

    const Index N = op.atom_count();
    const Real ynorm = y.norm();
    if (ynorm == 0.0) {
        result.x_hat = SparseVector::zero(N);
        result.converged = true;
        return finish(std::move(result), op, y, guard);
    }

    const Index max_iters = opts.max_iters > 0 ? opts.max_iters : kBasisPursuitDefaultIters;
    const CVec correlation = op.analysis(y);
    const Real gamma = opts.bp_threshold > 0.0
                           ? opts.bp_threshold
                           : 0.1 * correlation.cwiseAbs().maxCoeff();

    auto soft = [gamma](const CVec& v) {
        CVec out(v.size());
        for (Index i = 0; i < v.size(); ++i) {
            const Real mag = std::abs(v[i]);
            out[i] = mag > gamma ? v[i] * (1.0 - gamma / mag) : Complex(0, 0);
        }
        return out;
    };
    // soft iterates are mostly zeros once the support settles; the residual
    // is cheaper through the atom-summation path then
    auto residual_norm_of = [&](const CVec& v) {
        Index nnz = 0;
        for (Index i = 0; i < N; ++i)
            if (v[i] != Complex(0, 0)) ++nnz;
        if (nnz * 4 <= op.n()) return (y - op.synthesis(SparseVector::from_dense(v))).norm();
        return (y - op.synthesis(v)).norm();
    };
    // projection onto {x : Psi x = y}; Psi Psi^* = n I for unit-norm windows,
    // so the normal equations reduce to a scale.
    const Real inv_n = 1.0 / static_cast<Real>(op.n());
    auto project = [&](const CVec& v) -> CVec {
        return v - inv_n * op.analysis(op.synthesis(v) - y);
    };

    CVec z = correlation;
    CVec x_soft = soft(z);
    Real prev_l1 = std::numeric_limits<Real>::infinity();

    for (Index t = 1; t <= max_iters; ++t) {
        result.iterations = t;
        const CVec reflected = project(2.0 * x_soft - z);
        z += reflected - x_soft;
        if (!finite(z)) {
            result.diverged = true;
            break;
        }
        x_soft = soft(z);

        const Real res = residual_norm_of(x_soft);
        const Real l1 = x_soft.lpNorm<1>();
        const bool stagnated = std::abs(prev_l1 - l1) <= opts.tol * std::max(l1, Real(1));
        prev_l1 = l1;
        if (res <= opts.tol * ynorm && stagnated) {
            result.converged = true;
            break;
        }
    }

    // densified iterate re-sparsified; entries below 1e-8 * ||x||_inf are noise
    CVec final = x_soft;
    const Real peak = final.cwiseAbs().maxCoeff();
    if (peak > 0.0) {
        const Real floor = 1e-8 * peak;
        for (Index i = 0; i < N; ++i)
            if (std::abs(final[i]) < floor) final[i] = Complex(0, 0);
    }
    result.x_hat = SparseVector::from_dense(final);
    return finish(std::move(result), op, y, guard);
}

RecoveryResult run_solver(Algorithm algo, const GaborOperator& op, const CVec& y, Index s,
                          const SolverOptions& opts) {
    switch (algo) {
        case Algorithm::IHT: return iht(op, y, s, opts);
        case Algorithm::HTP: return htp(op, y, s, opts);
        case Algorithm::CoSaMP: return cosamp(op, y, s, opts);
        case Algorithm::OMP: return omp(op, y, s, opts);
        case Algorithm::BasisPursuit: return basis_pursuit(op, y, opts);
    }
    throw Error(ErrorCode::InvalidParameter, "unknown algorithm");
}

}  // namespace gabor
