#pragma once

// Randomized property checks shared by the unit suite and the acceptance
// runner. Each returns one message per failing case; empty means all passed.

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "logmatch/matching.hpp"
#include "logmatch/rpm.hpp"
#include "logmatch/series.hpp"
#include "logmatch/special.hpp"

namespace props {

using namespace logmatch;
using Failures = std::vector<std::string>;

inline Real uniform(std::mt19937_64& rng, double lo, double hi, const PrecisionContext& c) {
    // two doubles' worth of random mantissa
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Real t = Real::from_double(u(rng), c) + Real::from_double(u(rng), c) * Real::pow10(-16, c);
    return Real::from_double(lo, c) + t * Real::from_double(hi - lo, c);
}

inline Series random_series(std::mt19937_64& rng, const std::string& var, int order, const PrecisionContext& c) {
    std::vector<Real> v;
    for (int k = 0; k <= order; ++k) v.push_back(uniform(rng, -1, 1, c));
    if (abs(v[0]) < Real(1, c) / 10L) v[0] += Real(1, c) / 2L;
    return Series(var, v);
}

inline Real largest(const Series& a) {
    Real m = abs(a[0]);
    for (const auto& x : a.coeffs()) m = max(m, abs(x));
    return m;
}

inline void note(Failures& out, int i, const std::string& what) {
    std::ostringstream s;
    s << "case " << i << ": " << what;
    out.push_back(s.str());
}

// (a·b)÷b = a, sqrt(a)² = a, sin² + cos² = 1.
inline Failures series_round_trips(int cases, unsigned seed) {
    Failures out;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < cases; ++i) {
        PrecisionContext c(40 + static_cast<int>(rng() % 40));
        const int order = 1 + static_cast<int>(rng() % 20);
        Real tol = Real::pow10(-(c.digits() - 20), c);
        Series a = random_series(rng, "E", order, c);
        Series b = random_series(rng, "E", order, c);
        Series q = (a * b) / b;
        for (int k = 0; k <= order; ++k) {
            if (abs(q[k] - a[k]) > tol * max(Real(1, c), largest(a))) note(out, i, "division round trip");
        }
        Series pos = a;
        if (pos[0] < 0L) pos = negated(pos);
        Series s = series_sqrt(pos);
        Series back = s * s - pos;
        for (int k = 0; k <= order; ++k) {
            if (abs(back[k]) > tol * largest(pos)) note(out, i, "sqrt round trip");
        }
        Series sn = trig_series(TrigKind::Sin, order, c);
        Series cs = trig_series(TrigKind::Cos, order, c);
        Series one = sn * sn + cs * cs;
        for (int k = 0; k <= order; ++k) {
            Real expected(k == 0 ? 1 : 0, c);
            if (abs(one[k] - expected) > tol) note(out, i, "sin^2 + cos^2");
        }
    }
    return out;
}

// collapse ∘ expand is the identity; an odd term is always caught.
inline Failures parity_collapse(int cases, unsigned seed) {
    Failures out;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < cases; ++i) {
        PrecisionContext c(30 + static_cast<int>(rng() % 50));
        const int order = 1 + static_cast<int>(rng() % 25);
        Series a = random_series(rng, "E", order, c);
        Series u = expand_E_to_u(a);
        Series back = collapse_even_u_to_E(u);
        if (back.variable() != "E" || back.order() != order) {
            note(out, i, "collapse shape");
            continue;
        }
        for (int k = 0; k <= order; ++k) {
            if (back[k] != a[k]) note(out, i, "collapse identity");
        }
        std::vector<Real> odd = u.coeffs();
        const int slot = 2 * static_cast<int>(rng() % static_cast<unsigned>(order)) + 1;
        odd[static_cast<std::size_t>(slot)] = Real(1, c) / 10L;
        try {
            collapse_even_u_to_E(Series("u", odd));
            note(out, i, "odd coefficient not detected");
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Parity) note(out, i, "wrong error kind for odd coefficient");
        }
    }
    return out;
}

// Ai″ − z·Ai = 0 from the coefficient sequence, Γ(z+1) = zΓ(z), and the
// D_ν(0)·D_{−ν−1}(0) product identity.
inline Failures special_identities(int cases, unsigned seed) {
    Failures out;
    std::mt19937_64 rng(seed);
    PrecisionContext c(50);
    const AiryMaclaurin& m = airy_table(c);
    const PrecisionContext& w = m.working;
    for (int i = 0; i < cases; ++i) {
        Real z = uniform(rng, -6, 6, w);
        Real ai(w), ai2(w), power(1, w);
        for (std::size_t n = 0; n < m.ai_coeffs.size(); ++n) {
            ai += m.ai_coeffs[n] * power;
            if (n + 2 < m.ai_coeffs.size()) ai2 += m.ai_coeffs[n + 2] * static_cast<long>((n + 2) * (n + 1)) * power;
            power *= z;
        }
        if (abs(ai2 - z * ai) > Real::pow10(-(c.digits() - 8), c)) note(out, i, "Airy residual at " + format_real(z, 8));

        Real x = uniform(rng, 0.1, 10, c);
        Real g = gamma(x, c);
        if (abs(gamma(x + 1L, c) - x * g) > abs(x * g) * Real::pow10(-(c.digits() - 5), c)) {
            note(out, i, "Gamma recurrence at " + format_real(x, 8));
        }

        Real nu = uniform(rng, -0.9, 0.9, c);
        Real lhs = pcf_at_zero(nu, c) * pcf_at_zero(-nu - 1L, c) * gamma((1L - nu) / 2L, c) * gamma((nu + 2L) / 2L, c);
        Real rhs = Real::pi(c) / sqrt(Real(2, c));
        if (abs(lhs - rhs) > rhs * Real::pow10(-(c.digits() - 8), c)) note(out, i, "D_nu(0) product at " + format_real(nu, 8));
    }
    return out;
}

// Dual gradients of H_D^d against central differences in E and g0.
inline Failures dual_jacobians(int cases, unsigned seed) {
    Failures out;
    std::mt19937_64 rng(seed);
    PrecisionContext c(60);
    const Real h = Real::pow10(-c.digits() / 3, c);
    const Real rel = Real::pow10(-c.digits() / 4, c);
    for (int i = 0; i < cases; ++i) {
        const int D = 1 + static_cast<int>(rng() % 8);
        const int d = static_cast<int>(rng() % 3);
        Real lambda = uniform(rng, -0.5, 0.5, c);
        std::vector<Real> v = potential_taylor(CubicQuartic{lambda}, even_odd_count(D, d));
        Real E = uniform(rng, 0, 2, c);
        Real g0 = uniform(rng, -1, 1, c);
        auto g = riccati_taylor(v, Dual::variable(E, 0), Dual::variable(g0, 1), even_odd_count(D, d));
        Dual H = hankel_det(g, D, d);
        Real dE = (rpm_hankel(v, E + h, g0, D, d) - rpm_hankel(v, E - h, g0, D, d)) / (h * 2L);
        Real dg = (rpm_hankel(v, E, g0 + h, D, d) - rpm_hankel(v, E, g0 - h, D, d)) / (h * 2L);
        Real scale = max(max(abs(dE), abs(dg)), abs(H.value()));
        if (abs(H.d(0) - dE) > rel * scale || abs(H.d(1) - dg) > rel * scale) {
            note(out, i, "D = " + std::to_string(D) + ", d = " + std::to_string(d));
        }
        auto [he, ho] = even_odd_hankel(g, D, d);
        Real e_fd = (even_odd_hankel(riccati_taylor(v, E + h, g0, even_odd_count(D, d)), D, d).first -
                     even_odd_hankel(riccati_taylor(v, E - h, g0, even_odd_count(D, d)), D, d).first) /
                    (h * 2L);
        Real o_fd = (even_odd_hankel(riccati_taylor(v, E, g0 + h, even_odd_count(D, d)), D, d).second -
                     even_odd_hankel(riccati_taylor(v, E, g0 - h, even_odd_count(D, d)), D, d).second) /
                    (h * 2L);
        Real s2 = max(max(abs(e_fd), abs(o_fd)), max(abs(he.value()), abs(ho.value())));
        if (abs(he.d(0) - e_fd) > rel * s2 || abs(ho.d(1) - o_fd) > rel * s2) {
            note(out, i, "even/odd D = " + std::to_string(D) + ", d = " + std::to_string(d));
        }
    }
    return out;
}

// v = (0,0,1) at (E, g0) = (1, 0): every Hankel determinant in range is zero.
inline Failures harmonic_annihilation(int cases, unsigned seed) {
    Failures out;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < cases; ++i) {
        PrecisionContext c(30 + static_cast<int>(rng() % 70));
        const int D = 2 + static_cast<int>(rng() % 12);
        const int d = static_cast<int>(rng() % 4);
        std::vector<Real> v(static_cast<std::size_t>(even_odd_count(D, d)), Real(c));
        v[2] = Real(1, c);
        auto g = riccati_taylor(v, Real(1, c), Real(c), even_odd_count(D, d));
        if (!hankel_det(g, D, d).is_zero()) note(out, i, "H at D = " + std::to_string(D));
        auto [e, o] = even_odd_hankel(g, D - static_cast<int>(rng() % 2), d);
        if (!e.is_zero() || !o.is_zero()) note(out, i, "even/odd pair at D = " + std::to_string(D));
    }
    return out;
}

// L_L(0,E) > L_R(0,E) below the crossing for the four solvable models, and
// L_L = −L_R for a symmetric non-symmetric-well literal.
inline Failures side_ordering(int cases, unsigned seed) {
    Failures out;
    std::mt19937_64 rng(seed);
    PrecisionContext c(40);
    std::vector<PotentialModel> models = {SymmetricFiniteWell{Real(1, c)}, NonSymmetricFiniteWell{Real(2, c), Real(1, c)},
                                          LinearWell{Real(2, c), Real(1, c)}, QuadraticWell{Real(2, c), Real(1, c)}};
    std::vector<Real> E0;
    for (const auto& m : models) E0.push_back(exact_ground_state(m, c));
    for (int i = 0; i < cases; ++i) {
        for (std::size_t k = 0; k < models.size(); ++k) {
            Real E = uniform(rng, 0, 0.999, c) * E0[k];
            Real l = closed_logderiv(models[k], Side::Left, E);
            Real r = closed_logderiv(models[k], Side::Right, E);
            if (!l.is_finite() || !r.is_finite() || !(l > r)) {
                note(out, i, std::string(model_kind(models[k])) + " at E = " + format_real(E, 10));
            }
        }
        Real W = uniform(rng, 0.2, 4, c);
        PotentialModel sym = NonSymmetricFiniteWell{W, W};
        Real E = uniform(rng, 0, 0.999, c) * W;
        if (abs(closed_logderiv(sym, Side::Left, E) + closed_logderiv(sym, Side::Right, E)) > Real::pow10(-35, c)) {
            note(out, i, "mirror symmetry at W = " + format_real(W, 8));
        }
    }
    return out;
}

}  // namespace props
