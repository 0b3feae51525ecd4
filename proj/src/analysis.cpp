#include <gabor/analysis.hpp>

#include <gabor/parallel.hpp>
#include <gabor/rng.hpp>
#include <gabor/shift_ops.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace gabor {

namespace {

void validate_support(const std::vector<Index>& support, Index atom_count) {
    std::vector<Index> sorted = support;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= atom_count)
            throw Error(ErrorCode::InvalidSupport, "support index out of range");
        if (i > 0 && sorted[i] == sorted[i - 1])
            throw Error(ErrorCode::InvalidSupport, "duplicate support index");
    }
}

CMat gram_matrix(const GaborOperator& op, const std::vector<Index>& support) {
    const Index s = static_cast<Index>(support.size());
    CMat atoms(op.n(), s);
    for (Index i = 0; i < s; ++i)
        atoms.col(i) = op.atom(TFIndex::from_linear(support[static_cast<std::size_t>(i)], op.n()));
    return atoms.adjoint() * atoms;
}

std::pair<Real, Real> extremal_eigs_of_gram(const CMat& gram) {
    Eigen::SelfAdjointEigenSolver<CMat> solver(gram, Eigen::EigenvaluesOnly);
    const RVec eigs = solver.eigenvalues();
    return {eigs.minCoeff(), eigs.maxCoeff()};
}

/// Counts C(N, s), saturating at cap + 1.
std::uint64_t combination_count_capped(Index N, Index s, std::uint64_t cap) {
    if (s > N) return 0;
    unsigned __int128 c = 1;
    for (Index i = 1; i <= s; ++i) {
        c = c * static_cast<unsigned __int128>(N - s + i) / static_cast<unsigned __int128>(i);
        if (c > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(c);
}

struct Welford {
    std::uint64_t count = 0;
    Real mean = 0.0;
    Real m2 = 0.0;

    void add(Real v) {
        ++count;
        const Real d = v - mean;
        mean += d / static_cast<Real>(count);
        m2 += d * (v - mean);
    }
    Real sample_std() const {
        return count > 1 ? std::sqrt(m2 / static_cast<Real>(count - 1)) : 0.0;
    }
};

}  // namespace

std::pair<Real, Real> submatrix_extremal_eigs(const GaborOperator& op,
                                              const std::vector<Index>& support) {
    if (support.empty())
        throw Error(ErrorCode::InvalidSupport, "support must be nonempty");
    validate_support(support, op.atom_count());
    return extremal_eigs_of_gram(gram_matrix(op, support));
}

Real support_delta(const GaborOperator& op, const std::vector<Index>& support) {
    const auto [lo, hi] = submatrix_extremal_eigs(op, support);
    return std::max(hi - 1.0, 1.0 - lo);
}

RipEstimate exact_rip_constant(const GaborOperator& op, Index s, std::uint64_t budget) {
    const Index N = op.atom_count();
    if (s < 1 || s > N)
        throw Error(ErrorCode::InvalidParameter, "sparsity s out of range");
    const std::uint64_t count = combination_count_capped(N, s, budget);
    if (count > budget)
        throw Error(ErrorCode::ResourceLimit,
                    "support enumeration exceeds budget; use the Monte Carlo estimator");

    RipEstimate est;
    est.n = op.n();
    est.s = s;
    est.kind = op.window().kind;
    est.seed = op.window().seed;
    est.mode = RipMode::Exact;

    Welford stats;
    Real max_delta = 0.0;
    std::vector<Index> support(static_cast<std::size_t>(s));
    for (Index i = 0; i < s; ++i) support[static_cast<std::size_t>(i)] = i;
    for (;;) {
        const CMat gram = gram_matrix(op, support);
        const auto [lo, hi] = extremal_eigs_of_gram(gram);
        const Real delta = std::max(hi - 1.0, 1.0 - lo);
        max_delta = std::max(max_delta, delta);
        stats.add(delta);

        // advance the lexicographic odometer
        Index pos = s - 1;
        while (pos >= 0 && support[static_cast<std::size_t>(pos)] == N - s + pos) --pos;
        if (pos < 0) break;
        ++support[static_cast<std::size_t>(pos)];
        for (Index i = pos + 1; i < s; ++i)
            support[static_cast<std::size_t>(i)] = support[static_cast<std::size_t>(i - 1)] + 1;
    }

    est.delta_hat = max_delta;
    est.mean_delta = stats.mean;
    est.std_delta = stats.sample_std();
    est.trials = stats.count;
    est.support_count = stats.count;
    return est;
}

std::vector<Index> rip_trial_support(std::uint64_t seed, std::uint64_t trial, Index atom_count,
                                     Index s) {
    SplitStream stream = SplitStream(seed).substream(trial);
    return stream.sample_without_replacement(atom_count, s);
}

RipEstimate monte_carlo_rip(const GaborOperator& op, Index s, std::uint64_t trials,
                            std::uint64_t seed, int jobs) {
    const Index N = op.atom_count();
    if (s < 1 || s > N)
        throw Error(ErrorCode::InvalidParameter, "sparsity s out of range");
    if (trials < 1)
        throw Error(ErrorCode::InvalidParameter, "at least one trial required");

    RipEstimate est;
    est.n = op.n();
    est.s = s;
    est.kind = op.window().kind;
    est.seed = seed;
    est.mode = RipMode::MonteCarlo;
    est.trials = trials;
    est.per_trial.assign(trials, 0.0);

    parallel_for_index(trials, jobs, [&](std::size_t t) {
        const auto support = rip_trial_support(seed, t, N, s);
        est.per_trial[t] = support_delta(op, support);
    });

    Welford stats;
    Real max_delta = 0.0;
    for (const Real d : est.per_trial) {
        max_delta = std::max(max_delta, d);
        stats.add(d);
    }
    est.delta_hat = max_delta;
    est.mean_delta = stats.mean;
    est.std_delta = stats.sample_std();
    return est;
}

Real coherence_rip_bound(Real mu, Index s) {
    if (mu < 0.0 || s < 1)
        throw Error(ErrorCode::InvalidParameter, "require mu >= 0 and s >= 1");
    return static_cast<Real>(s - 1) * mu;
}

Real welch_bound(Index n, Index N) {
    if (n < 1 || N <= n)
        throw Error(ErrorCode::InvalidParameter, "welch bound requires N > n >= 1");
    return std::sqrt(static_cast<Real>(N - n) /
                     (static_cast<Real>(n) * static_cast<Real>(N - 1)));
}

ChaosMatrix chaos_bilinear(const CVec& x, const CVec& z) {
    if (x.size() != z.size())
        throw Error(ErrorCode::DimensionMismatch, "bilinear arguments must have equal length");
    CMat ux = a_q_apply_all(x);
    CMat uz = (&x == &z) ? ux : a_q_apply_all(z);
    const Index n = ux.rows();

    ChaosMatrix cm;
    cm.n = n;
    cm.source_x = x;
    cm.source_z = z;
    cm.B = CMat::Zero(n, n);
    for (Index qp = 0; qp < n; ++qp)
        for (Index q = 0; q < n; ++q)
            if (q != qp) cm.B(qp, q) = ux.row(qp).dot(uz.row(q));
    return cm;
}

ChaosMatrix chaos_matrix(const CVec& x) { return chaos_bilinear(x, x); }

std::pair<Real, Real> chaos_rip_link(const GaborOperator& op, const CVec& x) {
    if (x.size() != op.atom_count())
        throw Error(ErrorCode::DimensionMismatch, "argument must have length n^2");
    const Real lhs = op.synthesis(x).squaredNorm() - x.squaredNorm();
    const ChaosMatrix cm = chaos_matrix(x);
    const CVec& eps = op.window().epsilon;
    const Complex quad = eps.dot(cm.B * eps);
    const Real rhs = quad.real() / static_cast<Real>(op.n());
    return {lhs, rhs};
}

Real star_norm(const CVec& x) {
    Real acc = 0.0;
    for (Index i = 0; i < x.size(); ++i)
        acc += std::abs(x[i].real()) + std::abs(x[i].imag());
    return acc;
}

namespace {

/// Largest eigenvalue of M^* M by power iteration; M need not be Hermitian.
Real operator_norm_power_iteration(const CMat& m) {
    const Index n = m.cols();
    CVec v(n);
    for (Index i = 0; i < n; ++i)
        v[i] = Complex(1.0 + 1e-3 * static_cast<Real>(i), 0.0);
    Real vnorm = v.norm();
    if (vnorm == 0.0) return 0.0;
    v /= vnorm;

    Real lambda = 0.0;
    for (int iter = 0; iter < 10000; ++iter) {
        CVec w = m.adjoint() * (m * v);
        const Real next = std::max(v.dot(w).real(), 0.0);
        const Real wnorm = w.norm();
        if (wnorm == 0.0) return 0.0;
        v = w / wnorm;
        if (std::abs(next - lambda) <= 1e-8 * std::max(next, Real(1e-300))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(lambda);
}

}  // namespace

std::pair<Real, Real> metric_d1_d2(const CVec& x, const CVec& y) {
    if (x.size() != y.size())
        throw Error(ErrorCode::DimensionMismatch, "metric arguments must have equal length");
    const CMat diff = chaos_matrix(x).B - chaos_matrix(y).B;
    const Real d2 = diff.norm();
    const Real d1 = operator_norm_power_iteration(diff);
    return {d1, d2};
}

namespace {

CVec basis_vector(Index size, Index pos) {
    CVec e = CVec::Zero(size);
    e[pos] = Complex(1, 0);
    return e;
}

CVec shifted_basis(Index n, TFIndex lambda, Index q) {
    return tf_shift(basis_vector(n, q), lambda);
}

}  // namespace

IdentityReport verify_identities(Index n) {
    Dimension dim(n);
    if (n > 64)
        throw Error(ErrorCode::ResourceLimit, "dense identity verification limited to n <= 64");
    const Index N = dim.atom_count();
    IdentityReport report;
    report.n = n;

    SplitStream stream(0x1d3a5u + static_cast<std::uint64_t>(n));

    // A_q e_lambda = pi(lambda) e_q, all lambda and q.
    {
        Real dev = 0.0;
        for (Index idx = 0; idx < N; ++idx) {
            const TFIndex lambda = TFIndex::from_linear(idx, n);
            const CVec e_lambda = basis_vector(N, idx);
            for (Index q = 0; q < n; ++q) {
                const CVec lhs = a_q_apply(q, e_lambda);
                const CVec rhs = shifted_basis(n, lambda, q);
                dev = std::max(dev, (lhs - rhs).cwiseAbs().maxCoeff());
            }
        }
        report.checks.push_back({"aq_maps_basis_to_shift", dev, dev <= 1e-8});
    }

    // sum_q A_q^* A_q = n I, streamed column by column.
    {
        Real dev = 0.0;
        CVec column(N);
        for (Index idx = 0; idx < N; ++idx) {
            column.setZero();
            const TFIndex lambda = TFIndex::from_linear(idx, n);
            for (Index q = 0; q < n; ++q) {
                const CVec aq_col = shifted_basis(n, lambda, q);
                // A_q^* y has entries y_{k+q} omega^{-ell (k+q)} at (k, ell).
                for (Index k = 0; k < n; ++k) {
                    const Index p = (k + q) % n;
                    const Complex y = aq_col[p];
                    if (y == Complex(0, 0)) continue;
                    for (Index ell = 0; ell < n; ++ell)
                        column[ell * n + k] +=
                            y * std::conj(unit_root(n, ell * static_cast<std::int64_t>(p)));
                }
            }
            column[idx] -= Complex(static_cast<Real>(n), 0);
            dev = std::max(dev, column.cwiseAbs().maxCoeff());
        }
        report.checks.push_back({"aq_adjoint_sum_identity", dev, dev <= 1e-8});
    }

    // sum_q A_q P_lambda A_q^* = I for sampled lambda.
    {
        Real dev = 0.0;
        std::vector<Index> samples = {0, N - 1, TFIndex{1, 0}.linear(n), TFIndex{0, 1}.linear(n)};
        while (samples.size() < std::min<std::size_t>(8, static_cast<std::size_t>(N)))
            samples.push_back(static_cast<Index>(stream.next_below(static_cast<std::uint64_t>(N))));
        for (const Index idx : samples) {
            const CVec e_lambda = basis_vector(N, idx);
            CMat acc = CMat::Zero(n, n);
            for (Index q = 0; q < n; ++q) {
                const CVec u = a_q_apply(q, e_lambda);
                acc += u * u.adjoint();
            }
            acc -= CMat::Identity(n, n);
            dev = std::max(dev, acc.cwiseAbs().maxCoeff());
        }
        report.checks.push_back({"aq_projection_sum_identity", dev, dev <= 1e-8});
    }

    // sum_{q,q'} |x^* A_{q'}^* A_q y|^2 <= n ||x||_0 ||x||_2^2 ||y||_2^2.
    {
        Real dev = 0.0;
        for (int rep = 0; rep < 5; ++rep) {
            SplitStream draw = stream.substream(100 + static_cast<std::uint64_t>(rep));
            const Index s = std::min<Index>(3, N);
            const auto support = draw.sample_without_replacement(N, s);
            CVec x = CVec::Zero(N);
            for (const Index pos : support)
                x[pos] = Complex(draw.next_gaussian(), draw.next_gaussian());
            CVec y(N);
            for (Index i = 0; i < N; ++i)
                y[i] = Complex(draw.next_gaussian(), draw.next_gaussian());

            CMat ux(n, n), uy(n, n);
            for (Index q = 0; q < n; ++q) {
                ux.row(q) = a_q_apply(q, x).transpose();
                uy.row(q) = a_q_apply(q, y).transpose();
            }
            Real lhs = 0.0;
            for (Index qp = 0; qp < n; ++qp)
                for (Index q = 0; q < n; ++q) lhs += std::norm(ux.row(qp).dot(uy.row(q)));
            const Real rhs = static_cast<Real>(n) * static_cast<Real>(s) * x.squaredNorm() *
                             y.squaredNorm();
            dev = std::max(dev, std::max(0.0, lhs - rhs));
        }
        report.checks.push_back({"pair_energy_sparsity_bound", dev, dev <= 1e-8});
    }

    // Bilinear unit-atom identities; the zero-diagonal convention makes the
    // matrix vanish when the time shifts agree, so pairs are drawn with
    // k' != k.
    {
        Real dev_unitary = 0.0;
        Real dev_frob = 0.0;
        SplitStream draw = stream.substream(200);
        for (int rep = 0; rep < 10; ++rep) {
            const Index idx1 = static_cast<Index>(draw.next_below(static_cast<std::uint64_t>(N)));
            TFIndex l1 = TFIndex::from_linear(idx1, n);
            TFIndex l2{static_cast<std::int64_t>(draw.next_below(static_cast<std::uint64_t>(n))),
                       static_cast<std::int64_t>(draw.next_below(static_cast<std::uint64_t>(n)))};
            if (l2.k == l1.k) l2.k = (l2.k + 1) % n;

            const ChaosMatrix bm =
                chaos_bilinear(basis_vector(N, l2.linear(n)), basis_vector(N, l1.linear(n)));
            const CMat prod = bm.B.adjoint() * bm.B - CMat::Identity(n, n);
            dev_unitary = std::max(dev_unitary, prod.cwiseAbs().maxCoeff());
            dev_frob = std::max(dev_frob,
                                std::abs(bm.B.squaredNorm() - static_cast<Real>(n)));
        }
        report.checks.push_back({"bilinear_unitary_product", dev_unitary, dev_unitary <= 1e-8});
        report.checks.push_back({"bilinear_frobenius_energy", dev_frob, dev_frob <= 1e-8});
    }

    return report;
}

}  // namespace gabor
