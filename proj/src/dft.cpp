#include <gabor/dft.hpp>

#include <gabor/shift_ops.hpp>

namespace gabor {

namespace {

bool is_pow2(Index n) { return n > 0 && (n & (n - 1)) == 0; }

Index next_pow2(Index n) {
    Index m = 1;
    while (m < n) m <<= 1;
    return m;
}

std::vector<Index> make_bitrev(Index m) {
    std::vector<Index> rev(static_cast<std::size_t>(m), 0);
    for (Index i = 1, j = 0; i < m; ++i) {
        Index bit = m >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        rev[static_cast<std::size_t>(i)] = j;
    }
    return rev;
}

std::vector<Complex> make_twiddle(Index m) {
    // twiddle[j] = exp(-2 pi i j / m), j < m/2
    std::vector<Complex> w(static_cast<std::size_t>(m / 2));
    for (Index j = 0; j < m / 2; ++j)
        w[static_cast<std::size_t>(j)] = std::conj(unit_root(m, j));
    return w;
}

}  // namespace

DftPlan::DftPlan(Index n) : n_(n) {
    if (n < 1) throw Error(ErrorCode::InvalidParameter, "transform length must be positive");
    pow2_ = is_pow2(n);
    if (pow2_) {
        twiddle_ = make_twiddle(n);
        bitrev_ = make_bitrev(n);
        return;
    }

    m_ = next_pow2(2 * n - 1);
    twiddle_ = make_twiddle(m_);
    bitrev_ = make_bitrev(m_);

    // exp(-i pi q^2 / n) has period 2n in q^2; reducing q^2 mod 2n in integer
    // arithmetic keeps the evaluated angles small.
    chirp_.resize(static_cast<std::size_t>(n));
    for (Index q = 0; q < n; ++q) {
        const std::int64_t sq = static_cast<std::int64_t>(q) * q % (2 * n);
        chirp_[static_cast<std::size_t>(q)] = std::conj(unit_root(2 * n, sq));
    }

    std::vector<Complex> kernel(static_cast<std::size_t>(m_), Complex(0, 0));
    kernel[0] = std::conj(chirp_[0]);
    for (Index t = 1; t < n; ++t) {
        const Complex b = std::conj(chirp_[static_cast<std::size_t>(t)]);
        kernel[static_cast<std::size_t>(t)] = b;
        kernel[static_cast<std::size_t>(m_ - t)] = b;
    }
    pow2_forward(kernel.data(), m_, twiddle_, bitrev_);
    chirp_kernel_fft_ = std::move(kernel);
}

void DftPlan::pow2_forward(Complex* data, Index m, const std::vector<Complex>& twiddle,
                           const std::vector<Index>& rev) const {
    for (Index i = 0; i < m; ++i) {
        const Index j = rev[static_cast<std::size_t>(i)];
        if (i < j) std::swap(data[i], data[j]);
    }
    for (Index len = 2; len <= m; len <<= 1) {
        const Index stride = m / len;
        for (Index start = 0; start < m; start += len) {
            for (Index j = 0; j < len / 2; ++j) {
                const Complex w = twiddle[static_cast<std::size_t>(j * stride)];
                Complex& a = data[start + j];
                Complex& b = data[start + j + len / 2];
                const Complex t = w * b;
                b = a - t;
                a = a + t;
            }
        }
    }
}

void DftPlan::forward(CVec& v) const {
    if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "transform length mismatch");
    if (n_ == 1) return;

    if (pow2_) {
        pow2_forward(v.data(), n_, twiddle_, bitrev_);
        return;
    }

    std::vector<Complex> buf(static_cast<std::size_t>(m_), Complex(0, 0));
    for (Index q = 0; q < n_; ++q) buf[static_cast<std::size_t>(q)] = v[q] * chirp_[static_cast<std::size_t>(q)];
    pow2_forward(buf.data(), m_, twiddle_, bitrev_);
    for (Index j = 0; j < m_; ++j)
        buf[static_cast<std::size_t>(j)] *= chirp_kernel_fft_[static_cast<std::size_t>(j)];
    // inverse pad-size transform via conjugation
    for (auto& z : buf) z = std::conj(z);
    pow2_forward(buf.data(), m_, twiddle_, bitrev_);
    const Real scale = 1.0 / static_cast<Real>(m_);
    for (Index l = 0; l < n_; ++l)
        v[l] = std::conj(buf[static_cast<std::size_t>(l)]) * scale * chirp_[static_cast<std::size_t>(l)];
}

void DftPlan::inverse_unscaled(CVec& v) const {
    if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "transform length mismatch");
    v = v.conjugate();
    forward(v);
    v = v.conjugate();
}

CVec reference_forward_dft(const CVec& v) {
    const Index n = v.size();
    CVec out = CVec::Zero(n);
    for (Index l = 0; l < n; ++l)
        for (Index q = 0; q < n; ++q)
            out[l] += v[q] * std::conj(unit_root(n, static_cast<std::int64_t>(l) * q));
    return out;
}

CVec reference_inverse_unscaled_dft(const CVec& v) {
    const Index n = v.size();
    CVec out = CVec::Zero(n);
    for (Index q = 0; q < n; ++q)
        for (Index l = 0; l < n; ++l)
            out[q] += v[l] * unit_root(n, static_cast<std::int64_t>(l) * q);
    return out;
}

}  // namespace gabor
