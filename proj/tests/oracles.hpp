#pragma once

// Reference computations that share no code with the library: long-double
// Riccati shooting for ψ'/ψ at the origin, and MPFR's own Gamma and Airy.

#include <mpfr.h>

#include <cmath>
#include <functional>

#include "logmatch/numerics.hpp"

namespace oracle {

using ld = long double;
using Fn = std::function<ld(ld)>;

// L' = V − E − L², RK4 from x = ±X inward to 0. At the far end the decaying
// WKB value ∓√(V−E) − V'/(4(V−E)) is used; errors in it die off
// exponentially on the way in.
inline ld shoot(const Fn& V, const Fn& dV, ld E, bool right, ld X, ld h = 1e-4L) {
    const ld s = right ? 1 : -1;
    auto rhs = [&](ld x, ld L) { return V(x) - E - L * L; };
    ld x = s * X;
    ld q = V(x) - E;
    ld L = -s * std::sqrt(q) - dV(x) / (4 * q);
    auto run = [&](ld to) {
        const ld span = std::fabs(x - to);
        const long n = std::max(1L, static_cast<long>(std::ceil(span / h)));
        const ld step = (to - x) / n;
        for (long i = 0; i < n; ++i) {
            ld k1 = rhs(x, L);
            ld k2 = rhs(x + step / 2, L + step / 2 * k1);
            ld k3 = rhs(x + step / 2, L + step / 2 * k2);
            ld k4 = rhs(x + step, L + step * k3);
            L += step / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
            x = (i + 1 == n) ? to : x + step;
        }
    };
    run(0);
    return L;
}

// V jumps at |x| = kink; each piece is integrated with its own formula so
// the jump is never sampled.
struct Piecewise {
    Fn inner, inner_d, outer, outer_d;
    ld kink;
};

inline ld shoot_piecewise(const Piecewise& p, ld E, bool right, ld X, ld h = 1e-4L) {
    const ld s = right ? 1 : -1;
    auto rhs_out = [&](ld x, ld L) { return p.outer(x) - E - L * L; };
    auto rhs_in = [&](ld x, ld L) { return p.inner(x) - E - L * L; };
    ld x = s * X;
    ld q = p.outer(x) - E;
    ld L = -s * std::sqrt(q) - p.outer_d(x) / (4 * q);
    auto run = [&](ld to, auto& rhs) {
        const long n = std::max(1L, static_cast<long>(std::ceil(std::fabs(x - to) / h)));
        const ld step = (to - x) / n;
        for (long i = 0; i < n; ++i) {
            ld k1 = rhs(x, L);
            ld k2 = rhs(x + step / 2, L + step / 2 * k1);
            ld k3 = rhs(x + step / 2, L + step / 2 * k2);
            ld k4 = rhs(x + step, L + step * k3);
            L += step / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
            x = (i + 1 == n) ? to : x + step;
        }
    };
    run(s * p.kink, rhs_out);
    run(0, rhs_in);
    return L;
}

// Root of f on [lo, hi] by plain bisection.
inline ld bisect(const std::function<ld(ld)>& f, ld lo, ld hi, int iterations = 80) {
    ld flo = f(lo);
    for (int i = 0; i < iterations; ++i) {
        ld mid = (lo + hi) / 2;
        ld fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

inline Fn quartic(ld lambda) {
    return [lambda](ld x) { return x * x * x * x + lambda * x * x * x; };
}
inline Fn quartic_d(ld lambda) {
    return [lambda](ld x) { return 4 * x * x * x + 3 * lambda * x * x; };
}

// V = a_L x² / a_R x² on each side: only one side matters per call.
inline Fn parabola(ld a) {
    return [a](ld x) { return a * x * x; };
}
inline Fn parabola_d(ld a) {
    return [a](ld x) { return 2 * a * x; };
}
inline Fn slope(ld a, bool right) {
    return [a, right](ld x) { return right ? a * x : -a * x; };
}
inline Fn slope_d(ld a, bool right) {
    return [a, right](ld) { return right ? a : -a; };
}

inline ld anharmonic_left(ld lambda, ld E) { return shoot(quartic(lambda), quartic_d(lambda), E, false, 6.0L); }
inline ld anharmonic_right(ld lambda, ld E) { return shoot(quartic(lambda), quartic_d(lambda), E, true, 6.0L); }

inline ld well(ld height, ld E, bool right) {
    Piecewise p{[](ld) { return 0.0L; }, [](ld) { return 0.0L; }, [height](ld) { return height; },
                [](ld) { return 0.0L; }, 1.0L};
    return shoot_piecewise(p, E, right, 20.0L);
}

inline ld linear(ld a, ld E, bool right) {
    ld X = 14.0L / std::cbrt(a);
    return shoot(slope(a, right), slope_d(a, right), E, right, X);
}

inline ld quadratic(ld a, ld E, bool right) {
    ld X = 7.0L / std::sqrt(std::sqrt(a));
    return shoot(parabola(a), parabola_d(a), E, right, X);
}

// Γ and Ai straight from MPFR at the precision of the argument.
inline logmatch::Real mpfr_gamma_of(const logmatch::Real& z) {
    logmatch::Real out(z.context());
    mpfr_gamma(out.get_mutable(), z.get(), MPFR_RNDN);
    return out;
}
inline logmatch::Real mpfr_ai_of(const logmatch::Real& z) {
    logmatch::Real out(z.context());
    mpfr_ai(out.get_mutable(), z.get(), MPFR_RNDN);
    return out;
}

}  // namespace oracle
