#pragma once

#include <gabor/types.hpp>

#include <vector>

namespace gabor {

/// Length-n discrete Fourier transform plan, any n >= 1.
///
///   forward:           X_l = sum_q x_q omega^{-l q}
///   inverse_unscaled:  X_q = sum_l x_l omega^{+l q}      (no 1/n factor)
///
/// Powers of two run an iterative radix-2 transform; every other length goes
/// through Bluestein's chirp-z reduction to a padded power-of-two transform.
/// Plans are immutable after construction and safe to share across threads;
/// scratch space is per call.
class DftPlan {
public:
    explicit DftPlan(Index n);

    Index size() const { return n_; }

    void forward(CVec& v) const;
    void inverse_unscaled(CVec& v) const;

    CVec forward_copy(const CVec& v) const {
        CVec out = v;
        forward(out);
        return out;
    }
    CVec inverse_unscaled_copy(const CVec& v) const {
        CVec out = v;
        inverse_unscaled(out);
        return out;
    }

private:
    void pow2_forward(Complex* data, Index m, const std::vector<Complex>& twiddle,
                      const std::vector<Index>& rev) const;

    Index n_ = 0;
    bool pow2_ = false;

    // radix-2 tables for size n_ (when pow2_) or the Bluestein pad size m_.
    std::vector<Complex> twiddle_;
    std::vector<Index> bitrev_;

    // Bluestein state: chirp c_q = exp(-i pi q^2 / n), pad size m_, and the
    // padded forward transform of the conjugate chirp.
    Index m_ = 0;
    std::vector<Complex> chirp_;
    std::vector<Complex> chirp_kernel_fft_;
};

/// O(n^2) reference transforms; the oracle the fast paths are tested against.
CVec reference_forward_dft(const CVec& v);
CVec reference_inverse_unscaled_dft(const CVec& v);

}  // namespace gabor
