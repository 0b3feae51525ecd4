#include <gabor/window.hpp>

#include <gabor/rng.hpp>
#include <gabor/shift_ops.hpp>

#include <cmath>

namespace gabor {

const char* window_kind_name(WindowKind kind) {
    switch (kind) {
        case WindowKind::Rademacher: return "rademacher";
        case WindowKind::Steinhaus: return "steinhaus";
        case WindowKind::Alltop: return "alltop";
        case WindowKind::Gaussian: return "gaussian";
    }
    return "unknown";
}

WindowKind parse_window_kind(const std::string& name) {
    if (name == "rademacher") return WindowKind::Rademacher;
    if (name == "steinhaus") return WindowKind::Steinhaus;
    if (name == "alltop") return WindowKind::Alltop;
    if (name == "gaussian") return WindowKind::Gaussian;
    throw Error(ErrorCode::InvalidParameter, "unknown window kind: " + name);
}

namespace {

bool is_prime(Index n) {
    if (n < 2) return false;
    for (Index d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

Window make_window(WindowKind kind, Index n, std::uint64_t seed) {
    Dimension dim(n);
    Window w;
    w.n = dim.n();
    w.kind = kind;
    w.seed = seed;
    w.epsilon.resize(n);

    SplitStream stream(seed);
    switch (kind) {
        case WindowKind::Rademacher:
            for (Index q = 0; q < n; ++q)
                w.epsilon[q] = Complex(static_cast<Real>(stream.next_sign()), 0.0);
            break;
        case WindowKind::Steinhaus:
            for (Index q = 0; q < n; ++q) w.epsilon[q] = stream.next_unit();
            break;
        case WindowKind::Alltop:
            if (n < 5 || !is_prime(n))
                throw Error(ErrorCode::InvalidParameter,
                            "alltop window requires a prime length n >= 5");
            for (Index q = 0; q < n; ++q) {
                const std::int64_t cube = static_cast<std::int64_t>(q) * q * q;
                w.epsilon[q] = unit_root(n, cube);
            }
            break;
        case WindowKind::Gaussian:
            for (Index q = 0; q < n; ++q)
                w.epsilon[q] = Complex(stream.next_gaussian(), 0.0);
            break;
    }

    if (kind == WindowKind::Gaussian) {
        const Real norm = w.epsilon.norm();
        if (norm == 0.0)
            throw Error(ErrorCode::InvalidParameter, "degenerate zero gaussian draw");
        w.g = w.epsilon / norm;
    } else {
        w.g = w.epsilon / std::sqrt(static_cast<Real>(n));
    }
    return w;
}

}  // namespace gabor
