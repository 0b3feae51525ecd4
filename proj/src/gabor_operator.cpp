#include <gabor/gabor_operator.hpp>

#include <gabor/shift_ops.hpp>

#include <algorithm>
#include <cmath>

namespace gabor {

SparseVector::SparseVector(Index size, std::vector<Index> support, CVec values)
    : size_(size), support_(std::move(support)), values_(std::move(values)) {
    if (static_cast<Index>(support_.size()) != values_.size())
        throw Error(ErrorCode::DimensionMismatch, "support/value length mismatch");
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (support_[i] < 0 || support_[i] >= size_)
            throw Error(ErrorCode::InvalidSupport, "support index out of range");
        if (i > 0 && support_[i] <= support_[i - 1])
            throw Error(ErrorCode::InvalidSupport, "support indices must be strictly increasing");
    }
}

SparseVector SparseVector::from_dense(const CVec& x) {
    std::vector<Index> support;
    for (Index i = 0; i < x.size(); ++i)
        if (x[i] != Complex(0, 0)) support.push_back(i);
    CVec values(static_cast<Index>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i) values[static_cast<Index>(i)] = x[support[i]];
    return SparseVector(x.size(), std::move(support), std::move(values));
}

CVec SparseVector::to_dense() const {
    CVec out = CVec::Zero(size_);
    for (std::size_t i = 0; i < support_.size(); ++i)
        out[support_[i]] = values_[static_cast<Index>(i)];
    return out;
}

namespace {

Index infer_n(const CVec& z) {
    const Index N = z.size();
    const Index n = static_cast<Index>(std::llround(std::sqrt(static_cast<Real>(N))));
    if (n < 1 || n * n != N)
        throw Error(ErrorCode::DimensionMismatch, "vector length is not a perfect square");
    return n;
}

}  // namespace

CVec a_q_apply(Index q, const CVec& z) {
    const Index n = infer_n(z);
    if (q < 0 || q >= n) throw Error(ErrorCode::InvalidParameter, "block index q out of range");
    CVec out = CVec::Zero(n);
    for (Index k = 0; k < n; ++k) {
        const Index row = ((k - q) % n + n) % n;
        Complex acc(0, 0);
        for (Index ell = 0; ell < n; ++ell)
            acc += z[ell * n + row] * unit_root(n, static_cast<std::int64_t>(ell) * k);
        out[k] = acc;
    }
    return out;
}

CMat a_q_apply_all(const CVec& z, const DftPlan& plan) {
    const Index n = infer_n(z);
    if (plan.size() != n) throw Error(ErrorCode::DimensionMismatch, "plan size mismatch");
    // W(j, m) = sum_ell z_{(j, ell)} omega^{ell m}; then (A_q z)_k = W((k-q) mod n, k).
    CMat row_transforms(n, n);
    CVec scratch(n);
    for (Index j = 0; j < n; ++j) {
        for (Index ell = 0; ell < n; ++ell) scratch[ell] = z[ell * n + j];
        plan.inverse_unscaled(scratch);
        row_transforms.row(j) = scratch.transpose();
    }
    CMat out(n, n);
    for (Index q = 0; q < n; ++q)
        for (Index k = 0; k < n; ++k) out(q, k) = row_transforms((k - q + n) % n, k);
    return out;
}

CMat a_q_apply_all(const CVec& z) { return a_q_apply_all(z, DftPlan(infer_n(z))); }

GaborOperator::GaborOperator(Window window)
    : window_(std::move(window)), plan_(window_.n) {}

CVec GaborOperator::atom(TFIndex lambda) const { return tf_shift(window_.g, lambda); }

CVec GaborOperator::synthesis(const CVec& x) const {
    const Index n = this->n();
    if (x.size() != atom_count())
        throw Error(ErrorCode::DimensionMismatch, "synthesis input must have length n^2");
    // y_q = sum_k u_k(q) g_{(q-k) mod n}, u_k = unscaled inverse transform of
    // the modulation slice x_{(k, .)}.
    CVec y = CVec::Zero(n);
    CVec u(n);
    for (Index k = 0; k < n; ++k) {
        for (Index ell = 0; ell < n; ++ell) u[ell] = x[ell * n + k];
        plan_.inverse_unscaled(u);
        for (Index q = 0; q < n; ++q) y[q] += u[q] * window_.g[(q - k + n) % n];
    }
    return y;
}

CVec GaborOperator::synthesis(const SparseVector& x) const {
    const Index n = this->n();
    if (x.size() != atom_count())
        throw Error(ErrorCode::DimensionMismatch, "synthesis input must have length n^2");
    CVec y = CVec::Zero(n);
    const auto& support = x.support();
    for (std::size_t i = 0; i < support.size(); ++i) {
        const TFIndex lambda = TFIndex::from_linear(support[i], n);
        const Complex c = x.values()[static_cast<Index>(i)];
        for (Index q = 0; q < n; ++q) {
            const Index src = (q - static_cast<Index>(lambda.k) + n) % n;
            y[q] += c * unit_root(n, lambda.ell * static_cast<std::int64_t>(q)) * window_.g[src];
        }
    }
    return y;
}

CVec GaborOperator::analysis(const CVec& y) const {
    const Index n = this->n();
    if (y.size() != n)
        throw Error(ErrorCode::DimensionMismatch, "analysis input must have length n");
    CVec out(atom_count());
    CVec h(n);
    for (Index k = 0; k < n; ++k) {
        for (Index q = 0; q < n; ++q) h[q] = y[q] * std::conj(window_.g[(q - k + n) % n]);
        plan_.forward(h);
        for (Index ell = 0; ell < n; ++ell) out[ell * n + k] = h[ell];
    }
    return out;
}

Complex GaborOperator::atom_inner_product(TFIndex lambda, TFIndex lambda_prime) const {
    const Index n = this->n();
    const TFIndex a = lambda.reduced(n);
    const TFIndex b = lambda_prime.reduced(n);
    Complex acc(0, 0);
    for (Index q = 0; q < n; ++q) {
        const Complex phase = unit_root(n, (a.ell - b.ell) * static_cast<std::int64_t>(q));
        acc += phase * window_.g[(q - static_cast<Index>(a.k) + n) % n] *
               std::conj(window_.g[(q - static_cast<Index>(b.k) + n) % n]);
    }
    return acc;
}

Real GaborOperator::coherence() const {
    const Index n = this->n();
    // |<pi(k,l)g, pi(k',l')g>| = |amb(k-k', l-l')| with
    // amb(a, b) = sum_q conj(g_q) g_{q-a} omega^{b q}.
    Real mu = 0.0;
    CVec prod(n);
    for (Index a = 0; a < n; ++a) {
        for (Index q = 0; q < n; ++q)
            prod[q] = std::conj(window_.g[q]) * window_.g[(q - a + n) % n];
        plan_.inverse_unscaled(prod);
        const Index b_start = (a == 0) ? 1 : 0;  // skip the (0,0) class
        for (Index b = b_start; b < n; ++b) mu = std::max(mu, std::abs(prod[b]));
    }
    return mu;
}

CMat GaborOperator::dense(Index max_n) const {
    const Index n = this->n();
    if (n > max_n)
        throw Error(ErrorCode::ResourceLimit,
                    "dense materialization guarded at n <= " + std::to_string(max_n) +
                        "; raise the limit to override");
    CMat psi(n, atom_count());
    for (Index idx = 0; idx < atom_count(); ++idx)
        psi.col(idx) = atom(TFIndex::from_linear(idx, n));
    return psi;
}

}  // namespace gabor
