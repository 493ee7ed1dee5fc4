#pragma once

// Riccati–Padé method: Taylor coefficients of L(x,E) about x = 0 and the
// Hankel determinants whose zeros locate L(0,E) and E_0.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logmatch/numerics.hpp"

namespace logmatch {

// g_0 = g0, (j+1) g_{j+1} = v_j − E·[j=0] − Σ_{k=0..j} g_k g_{j−k}.
// T is Real or Dual; v must supply v_0 .. v_{count−2}.
template <class T>
std::vector<T> riccati_taylor(const std::vector<Real>& v, const T& E, const T& g0, int count) {
    if (count < 1) fail(ErrorKind::Usage, "riccati_taylor needs count >= 1");
    if (static_cast<int>(v.size()) < count - 1) {
        fail(ErrorKind::Input, "potential Taylor data has " + std::to_string(v.size()) + " coefficients, " +
                                   std::to_string(count - 1) + " needed");
    }
    std::vector<T> g;
    g.reserve(static_cast<std::size_t>(count));
    g.push_back(g0);
    for (int j = 0; j + 1 < count; ++j) {
        // Σ g_k g_{j−k}, folded by symmetry
        T s = g[0] * g[static_cast<std::size_t>(j)];
        for (int k = 1; 2 * k < j; ++k) s += g[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(j - k)];
        if (j > 0) s = s * 2L;
        if (j > 0 && j % 2 == 0) s += g[static_cast<std::size_t>(j / 2)] * g[static_cast<std::size_t>(j / 2)];
        T next = -s + v[static_cast<std::size_t>(j)];
        if (j == 0) next = next - E;
        g.push_back(next / static_cast<long>(j + 1));
    }
    return g;
}

namespace detail {

// Determinant by Gaussian elimination with partial pivoting.
template <class T>
T determinant(std::vector<std::vector<T>> a) {
    const std::size_t n = a.size();
    T det = a[0][0] * 0L + 1L;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (abs(value_of(a[r][c])) > abs(value_of(a[p][c]))) p = r;
        }
        if (value_of(a[p][c]).is_zero()) return a[0][0] * 0L;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det = det * a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            T factor = a[r][c] / a[c][c];
            for (std::size_t k = c + 1; k < n; ++k) a[r][k] = a[r][k] - factor * a[c][k];
        }
    }
    return det;
}

template <class T>
T hankel_from(const std::vector<T>& g, int D, int stride, int offset) {
    std::vector<std::vector<T>> m;
    m.reserve(static_cast<std::size_t>(D));
    for (int i = 0; i < D; ++i) {
        std::vector<T> row;
        row.reserve(static_cast<std::size_t>(D));
        for (int j = 0; j < D; ++j) row.push_back(g[static_cast<std::size_t>(stride * (i + j) + offset)]);
        m.push_back(std::move(row));
    }
    return determinant(std::move(m));
}

}  // namespace detail

// Number of g coefficients hankel_det needs: 2D + d.
inline int hankel_count(int D, int d) { return 2 * D + d; }
// Number even_odd_hankel needs: 4D + 2d.
inline int even_odd_count(int D, int d) { return 4 * D + 2 * d; }

// det[g_{i+j+d+1}]_{i,j=0..D−1}
template <class T>
T hankel_det(const std::vector<T>& g, int D, int d) {
    if (D < 1 || d < 0) fail(ErrorKind::Usage, "Hankel determinant needs D >= 1 and d >= 0");
    if (static_cast<int>(g.size()) < hankel_count(D, d)) {
        fail(ErrorKind::Input, "Hankel determinant of dimension " + std::to_string(D) + " needs " +
                                   std::to_string(hankel_count(D, d)) + " coefficients, got " +
                                   std::to_string(g.size()));
    }
    return detail::hankel_from(g, D, 1, d + 1);
}

// (det[g_{2i+2j+2d+2}], det[g_{2i+2j+2d+3}]) for i,j = 0..D−1
template <class T>
std::pair<T, T> even_odd_hankel(const std::vector<T>& g, int D, int d) {
    if (D < 1 || d < 0) fail(ErrorKind::Usage, "Hankel determinant needs D >= 1 and d >= 0");
    if (static_cast<int>(g.size()) < even_odd_count(D, d)) {
        fail(ErrorKind::Input, "even/odd Hankel pair of dimension " + std::to_string(D) + " needs " +
                                   std::to_string(even_odd_count(D, d)) + " coefficients, got " +
                                   std::to_string(g.size()));
    }
    return {detail::hankel_from(g, D, 2, 2 * d + 2), detail::hankel_from(g, D, 2, 2 * d + 3)};
}

// H_D^d as a function of g0 at fixed E.
Real rpm_hankel(const std::vector<Real>& v, const Real& E, const Real& g0, int D, int d);

// Sign-change roots of g0 ↦ H_D^d(E, g0) on a uniform grid over the window.
std::vector<Real> g0_roots(const std::vector<Real>& v, const Real& E, int D, int d, const std::pair<Real, Real>& window,
                           int grid);

enum class SequenceLabel { LeftCandidate, RightCandidate };

struct GZeroSequence {
    std::map<int, Real> entries;  // D → root
    SequenceLabel label;
    const Real& limit() const { return entries.rbegin()->second; }
};

// The two roots at the top of the D ladder that persist best across the
// lower D values (at least 4 members each); the one with the larger final
// value is labelled LeftCandidate. A single sequence is returned twice when
// no second, distinct one exists. With `predicted` (left, right) values each
// label instead takes the candidate nearest its prediction, score included.
std::pair<GZeroSequence, GZeroSequence> track_sequences(
    const std::map<int, std::vector<Real>>& roots_by_D, const Real& E,
    const std::optional<std::pair<Real, Real>>& predicted = std::nullopt);

struct RpmStep {
    int D;
    std::optional<Real> E;
    std::optional<Real> g0;
    int digits;        // precision the step finally ran at
    int iterations;
    std::string note;  // failure annotation, empty on success
};

struct RpmSolveOptions {
    int d = 0;
    int d_min = 2;
    int d_max = 15;
    std::optional<std::pair<Real, Real>> seed;  // (E, g0); default: grid scan at D = 3
    int max_escalations = 3;
};

// Newton on (H^e, H^o) = 0 for each D, warm-started along the ladder. For a
// mirror-symmetric potential (all odd v_j zero) g0 = 0 identically and only
// H^o(E, 0) = 0 is solved.
std::vector<RpmStep> rpm_solve(const std::vector<Real>& v, const RpmSolveOptions& options, const PrecisionContext& ctx);

struct RpmCurveOptions {
    int d = 0;
    int d_min = 2;
    int d_max = 15;
    std::pair<double, double> window{-1.5, 1.5};
    int grid = 400;
};

struct RpmCurvePoint {
    Real E;
    std::optional<Real> left;
    std::optional<Real> right;
    std::string note;
};

// L_L(0,E), L_R(0,E) estimates as the top members of the tracked sequences.
// The first two energies are labelled by size, later ones by continuity.
std::vector<RpmCurvePoint> rpm_curves(const std::vector<Real>& v, const Real& emin, const Real& emax, int steps,
                                      const RpmCurveOptions& options, const PrecisionContext& ctx);

// Crossing of the two curves: 4-point cubic interpolation of L_left − L_right
// around the first sign change, refined by bisection.
Real curves_crossing(const std::vector<RpmCurvePoint>& curve);

}  // namespace logmatch
