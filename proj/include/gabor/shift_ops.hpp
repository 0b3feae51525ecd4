#pragma once

#include <gabor/types.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gabor {

/// exp(2*pi*i * exponent / n). The exponent is reduced mod n in integer
/// arithmetic before calling exp, so large ell*q products do not accumulate
/// phase error beyond one ulp of the reduced angle.
inline Complex unit_root(Index n, std::int64_t exponent) {
    std::int64_t r = exponent % static_cast<std::int64_t>(n);
    if (r < 0) r += n;
    const Real angle = 2.0 * std::numbers::pi * static_cast<Real>(r) / static_cast<Real>(n);
    return Complex(std::cos(angle), std::sin(angle));
}

/// Cyclic translation: out_q = v_{(q - k) mod n}. k may be any integer.
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> translate(
    const Eigen::MatrixBase<Derived>& v, std::int64_t k) {
    const Index n = v.size();
    if (n == 0) throw Error(ErrorCode::DimensionMismatch, "translate: empty vector");
    std::int64_t shift = k % static_cast<std::int64_t>(n);
    if (shift < 0) shift += n;
    Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> out(n);
    for (Index q = 0; q < n; ++q) {
        const Index src = (q - static_cast<Index>(shift) + n) % n;
        out[q] = v[src];
    }
    return out;
}

/// Modulation: out_q = omega^{ell*q} v_q with omega = exp(2*pi*i/n).
template <typename Derived>
CVec modulate(const Eigen::MatrixBase<Derived>& v, std::int64_t ell) {
    const Index n = v.size();
    if (n == 0) throw Error(ErrorCode::DimensionMismatch, "modulate: empty vector");
    CVec out(n);
    for (Index q = 0; q < n; ++q)
        out[q] = unit_root(n, ell * static_cast<std::int64_t>(q)) * Complex(v[q]);
    return out;
}

/// Time-frequency shift pi(lambda) = M^ell T^k applied to v. Unitary.
template <typename Derived>
CVec tf_shift(const Eigen::MatrixBase<Derived>& v, TFIndex lambda) {
    return modulate(translate(v, lambda.k), lambda.ell);
}

/// Phase omega(lambda, lambda') in pi(lambda')^* pi(lambda) =
/// omega(lambda, lambda') pi(lambda - lambda'). Equals omega^{k'(ell - ell')},
/// obtained by commuting the translation past the modulation; the composition
/// tests check it against direct operator application.
inline Complex shift_phase(TFIndex lambda, TFIndex lambda_prime, Index n) {
    return unit_root(n, lambda_prime.k * (lambda.ell - lambda_prime.ell));
}

}  // namespace gabor
