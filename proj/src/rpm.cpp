#include "logmatch/rpm.hpp"

#include <algorithm>
#include <cmath>

namespace logmatch {

Real rpm_hankel(const std::vector<Real>& v, const Real& E, const Real& g0, int D, int d) {
    return hankel_det(riccati_taylor(v, E, g0, hankel_count(D, d)), D, d);
}

namespace {

// H_D^d divided by the Hadamard bound of its matrix: same zeros, O(1) scale,
// so sub-roundoff values can be recognised as noise.
Real normalized_hankel(const std::vector<Real>& v, const Real& E, const Real& g0, int D, int d) {
    std::vector<Real> g = riccati_taylor(v, E, g0, hankel_count(D, d));
    Real det = hankel_det(g, D, d);
    Real scale(1, E.context());
    for (int i = 0; i < D; ++i) {
        Real row = E.zero_like();
        for (int j = 0; j < D; ++j) {
            const Real& x = g[static_cast<std::size_t>(i + j + d + 1)];
            row += x * x;
        }
        if (!row.is_zero()) scale *= sqrt(row);
    }
    return det / scale;
}

// Minimises s·h over [a, b] by golden-section search; returns the abscissa.
Real golden_minimum(const std::function<Real(const Real&)>& h, int s, Real a, Real b, int iterations) {
    const PrecisionContext ctx = a.context();
    const Real ratio = (sqrt(Real(5, ctx)) - 1L) / 2L;
    Real c = b - (b - a) * ratio;
    Real e = a + (b - a) * ratio;
    Real hc = h(c) * static_cast<long>(s);
    Real he = h(e) * static_cast<long>(s);
    for (int it = 0; it < iterations; ++it) {
        if (hc < he) {
            b = e;
            e = c;
            he = hc;
            c = b - (b - a) * ratio;
            hc = h(c) * static_cast<long>(s);
        } else {
            a = c;
            c = e;
            hc = he;
            e = a + (b - a) * ratio;
            he = h(e) * static_cast<long>(s);
        }
        if (hc.sign() < 0 || he.sign() < 0) return hc < he ? c : e;  // crossed zero: pair found
    }
    return hc < he ? c : e;
}

}  // namespace

// Grid nodes where |H| (normalised) is below noise count as zero. Besides
// sign changes, each local extremum of |H| that does not change sign is
// probed for a close pair of roots hiding inside one grid cell; a dip that
// reaches within 10^(-digits/4) of zero without crossing is one double root.
std::vector<Real> g0_roots(const std::vector<Real>& v, const Real& E, int D, int d, const std::pair<Real, Real>& window,
                           int grid) {
    if (grid < 2) fail(ErrorKind::Usage, "g0 scan needs at least two grid intervals");
    if (!(window.first < window.second)) fail(ErrorKind::Usage, "g0 window needs lo < hi");
    const PrecisionContext ctx = E.context();
    std::function<Real(const Real&)> H = [&](const Real& g0) { return normalized_hankel(v, E, g0, D, d); };
    const Real tol = Real::pow10(-(ctx.digits() - 10), ctx);
    const Real noise = Real::pow10(-(ctx.digits() - 15), ctx);
    const Real depth = Real::pow10(-ctx.digits() / 4, ctx);

    std::vector<Real> xs, hs;
    std::vector<int> signs;
    for (int i = 0; i <= grid; ++i) {
        Real x = window.first + (window.second - window.first) * static_cast<long>(i) / static_cast<long>(grid);
        Real h = H(x);
        signs.push_back(abs(h) < noise ? 0 : h.sign());
        xs.push_back(std::move(x));
        hs.push_back(std::move(h));
    }

    std::vector<Real> roots;
    for (int i = 0; i < grid; ++i) {
        const int s0 = signs[static_cast<std::size_t>(i)];
        const int s1 = signs[static_cast<std::size_t>(i + 1)];
        const Real& x0 = xs[static_cast<std::size_t>(i)];
        const Real& x1 = xs[static_cast<std::size_t>(i + 1)];
        if (s0 != 0 && s1 != 0 && s0 != s1) {
            roots.push_back(refine_root_1d(H, x0, x1, tol));
            continue;
        }
        if (i + 2 > grid) continue;
        const int s2 = signs[static_cast<std::size_t>(i + 2)];
        const Real& x2 = xs[static_cast<std::size_t>(i + 2)];
        // An isolated node on a zero: simple root across it, or a touching one.
        if (s1 == 0) {
            if (s0 == 0 || s2 == 0) continue;
            if (s0 != s2) {
                roots.push_back(refine_root_1d(H, x0, x2, tol));
            } else {
                roots.push_back(x1);
            }
            continue;
        }
        // |H| dips at node i+1 without a sign change on either side.
        const Real& h1 = hs[static_cast<std::size_t>(i + 1)];
        if (s0 != s1 || s2 != s1) continue;
        const Real& h0 = hs[static_cast<std::size_t>(i)];
        const Real& h2 = hs[static_cast<std::size_t>(i + 2)];
        if (!(abs(h1) < abs(h0) && abs(h1) < abs(h2))) continue;
        Real m = golden_minimum(H, s1, x0, x2, 160);
        Real hm = H(m);
        if (abs(hm) < noise || hm.sign() != s1) {
            if (abs(hm) < noise) {
                roots.push_back(m);
                continue;
            }
            roots.push_back(refine_root_1d(H, x0, m, tol));
            roots.push_back(refine_root_1d(H, m, x2, tol));
            continue;
        }
        // A dip this deep relative to the cell ends is a double root whose
        // pair has split off the real axis by less than the working accuracy.
        if (abs(hm) < min(abs(h0), abs(h2)) * depth) roots.push_back(m);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(), [&](const Real& a, const Real& b) { return abs(a - b) <= tol; }),
                roots.end());
    return roots;
}

namespace {

constexpr int kTrackDepth = 6;  // lower D values consulted per candidate

struct Candidate {
    std::map<int, Real> entries;
    Real score;  // lower-tercile distance to the nearest root at the lower D
};

Candidate follow_down(const std::map<int, std::vector<Real>>& roots_by_D, int D, const Real& root) {
    std::vector<std::pair<int, Real>> nearest;
    for (int k = D - 1; k >= D - kTrackDepth; --k) {
        auto it = roots_by_D.find(k);
        if (it == roots_by_D.end() || it->second.empty()) continue;
        const Real* best = &it->second.front();
        for (const auto& r : it->second) {
            if (abs(r - root) < abs(*best - root)) best = &r;
        }
        nearest.emplace_back(k, *best);
    }
    Candidate c{{{D, root}}, Real(1, root.context()) * 1000000L};
    if (nearest.empty()) return c;
    std::vector<Real> dist;
    for (const auto& [k, r] : nearest) dist.push_back(abs(r - root));
    std::vector<Real> sorted = dist;
    std::sort(sorted.begin(), sorted.end());
    c.score = sorted[sorted.size() / 3];
    for (std::size_t i = 0; i < nearest.size(); ++i) {
        if (dist[i] <= c.score * 10L) c.entries.emplace(nearest[i].first, nearest[i].second);
    }
    return c;
}

}  // namespace

// Candidates are the roots at the top D, plus those one below with no
// counterpart at the top. Each is followed down the
// ladder to the nearest root at every lower D; a physical root stays put
// while spurious ones wander, so the lower tercile of those distances ranks them.
std::pair<GZeroSequence, GZeroSequence> track_sequences(const std::map<int, std::vector<Real>>& roots_by_D,
                                                        const Real& E,
                                                        const std::optional<std::pair<Real, Real>>& predicted) {
    std::vector<Candidate> candidates;
    if (!roots_by_D.empty()) {
        auto top = roots_by_D.rbegin();
        for (const auto& r : top->second) {
            Candidate c = follow_down(roots_by_D, top->first, r);
            if (c.entries.size() >= 4) candidates.push_back(std::move(c));
        }
        // A root missing at the top D may still be present one below.
        if (std::next(top) != roots_by_D.rend()) {
            auto below = std::next(top);
            for (const auto& r : below->second) {
                Candidate c = follow_down(roots_by_D, below->first, r);
                if (c.entries.size() < 4) continue;
                bool covered = false;
                for (const auto& t : top->second) covered = covered || abs(t - r) <= c.score * 10L;
                if (!covered) candidates.push_back(std::move(c));
            }
        }
    }
    if (candidates.empty()) {
        std::string seen;
        for (const auto& [D, roots] : roots_by_D) {
            if (!seen.empty()) seen += ", ";
            seen += "D " + std::to_string(D) + ": " + std::to_string(roots.size());
        }
        fail(ErrorKind::TrackingFailure, "no root persists over 4 values of D at E = " + format_real(E, 12) +
                                             " (roots per D: " + (seen.empty() ? "none" : seen) + ")");
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.score < b.score; });
    if (predicted) {
        auto nearest = [&](const Real& p) {
            const Candidate* best = nullptr;
            Real best_cost(E.context());
            for (const auto& c : candidates) {
                Real cost = abs(c.entries.rbegin()->second - p) + c.score;
                if (!best || cost < best_cost) {
                    best = &c;
                    best_cost = std::move(cost);
                }
            }
            return best;
        };
        const Candidate* left = nearest(predicted->first);
        const Candidate* right = nearest(predicted->second);
        return {GZeroSequence{left->entries, SequenceLabel::LeftCandidate},
                GZeroSequence{right->entries, SequenceLabel::RightCandidate}};
    }
    const Candidate* first = &candidates[0];
    const Candidate* second = first;
    for (const auto& c : candidates) {
        if (abs(c.entries.rbegin()->second - first->entries.rbegin()->second) > first->score * 10L) {
            second = &c;
            break;
        }
    }
    if (second->entries.rbegin()->second > first->entries.rbegin()->second) std::swap(first, second);
    return {GZeroSequence{first->entries, SequenceLabel::LeftCandidate},
            GZeroSequence{second->entries, SequenceLabel::RightCandidate}};
}

namespace {

// Hadamard bound Π_i ‖row_i‖ of the Hankel matrix with entries
// g[stride·(i+j) + offset]; used to make the determinant residuals O(1).
Real hadamard_scale(const std::vector<Dual>& g, int D, int stride, int offset) {
    Real scale(1, g[0].value().context());
    for (int i = 0; i < D; ++i) {
        Real row = g[0].value().zero_like();
        for (int j = 0; j < D; ++j) {
            const Real& x = g[static_cast<std::size_t>(stride * (i + j) + offset)].value();
            row += x * x;
        }
        if (!row.is_zero()) scale *= sqrt(row);
    }
    return scale;
}

std::vector<Real> rounded(const std::vector<Real>& v, const PrecisionContext& ctx) {
    std::vector<Real> out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x, ctx);
    return out;
}

bool is_symmetric(const std::vector<Real>& v) {
    for (std::size_t j = 1; j < v.size(); j += 2) {
        if (!v[j].is_zero()) return false;
    }
    return true;
}

// (H^e, H^o)/Hadamard, or (H^o/Hadamard, g0) when g0 = 0 is forced by symmetry.
DualPair ladder_residual(const std::vector<Real>& v, int D, int d, bool symmetric, const Dual& E, const Dual& g0) {
    auto g = riccati_taylor(v, E, g0, even_odd_count(D, d));
    auto [he, ho] = even_odd_hankel(g, D, d);
    Real so = hadamard_scale(g, D, 2, 2 * d + 3);
    if (symmetric) return {ho / so, g0};
    Real se = hadamard_scale(g, D, 2, 2 * d + 2);
    return {he / se, ho / so};
}

Real condition_estimate(const std::array<std::array<Real, 2>, 2>& J) {
    Real det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
    Real norm = max(abs(J[0][0]) + abs(J[0][1]), abs(J[1][0]) + abs(J[1][1]));
    Real inv_norm = max(abs(J[1][1]) + abs(J[0][1]), abs(J[1][0]) + abs(J[0][0])) / abs(det);
    return norm * inv_norm;
}

struct LadderSolve {
    Root2D root;
    int digits;
};

LadderSolve solve_at(const std::vector<Real>& v_base, int D, int d, bool symmetric, const Real& E0, const Real& g00,
                     int digits, int escalations) {
    std::string last_error;
    for (int attempt = 0; attempt <= escalations; ++attempt, digits += 20) {
        PrecisionContext ctx(digits);
        std::vector<Real> v = rounded(v_base, ctx);
        auto F = [&](const Dual& E, const Dual& g0) { return ladder_residual(v, D, d, symmetric, E, g0); };
        Real tol = Real::pow10(-(digits / 2), ctx);
        try {
            Root2D r = refine_root_2d(F, Real(E0, ctx), Real(g00, ctx), tol, 60);
            Real cond = condition_estimate(r.jacobian);
            if (attempt < escalations && cond > Real::pow10(digits / 2, ctx)) {
                last_error = "Jacobian condition " + format_real(cond, 3) + " at " + std::to_string(digits) + " digits";
                continue;
            }
            return {std::move(r), digits};
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Rank && e.kind() != ErrorKind::NonConvergence && e.kind() != ErrorKind::Domain) {
                throw;
            }
            last_error = e.what();
        }
    }
    fail(ErrorKind::NonConvergence, "D = " + std::to_string(D) + ": " + last_error);
}

std::pair<Real, Real> grid_seed(const std::vector<Real>& v, int d, bool symmetric, const PrecisionContext& ctx) {
    const int D = 3;
    std::optional<std::pair<Real, Real>> best;
    for (int i = 0; i <= 10; ++i) {
        Real E = Real(5, ctx) / 10L + Real(i, ctx) / 10L;
        for (int j = symmetric ? 5 : 0; j <= (symmetric ? 5 : 10); ++j) {
            Real g0 = Real(j - 5, ctx) / 10L;
            try {
                LadderSolve s = solve_at(v, D, d, symmetric, E, g0, ctx.digits(), 0);
                const Real& e = s.root.x;
                const Real& g = s.root.y;
                bool inside = e > Real(1, ctx) / 2L && e < Real(3, ctx) / 2L && abs(g) < Real(1, ctx) / 2L;
                if (inside && (!best || e < best->first)) best = std::make_pair(Real(e, ctx), Real(g, ctx));
            } catch (const Error&) {
            }
        }
    }
    if (!best) fail(ErrorKind::SearchFailure, "no (E, g0) root at D = 3 in (0.5, 1.5) x (-0.5, 0.5)");
    return *best;
}

}  // namespace

std::vector<RpmStep> rpm_solve(const std::vector<Real>& v, const RpmSolveOptions& options, const PrecisionContext& ctx) {
    if (options.d_min < 1 || options.d_max < options.d_min) fail(ErrorKind::Usage, "invalid D range for rpm_solve");
    if (options.d < 0) fail(ErrorKind::Usage, "displacement d must be non-negative");
    const bool symmetric = is_symmetric(v);
    std::pair<Real, Real> start = options.seed ? *options.seed : grid_seed(v, options.d, symmetric, ctx);
    if (symmetric) start.second = Real(ctx);

    std::vector<RpmStep> ladder;
    int digits = ctx.digits();
    for (int D = options.d_min; D <= options.d_max; ++D) {
        try {
            LadderSolve s = solve_at(v, D, options.d, symmetric, start.first, start.second, digits,
                                     options.max_escalations);
            digits = s.digits;
            PrecisionContext out(digits);
            start = {Real(s.root.x, out), Real(s.root.y, out)};
            ladder.push_back({D, s.root.x, s.root.y, digits, s.root.iterations, {}});
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NonConvergence) throw;
            ladder.push_back({D, std::nullopt, std::nullopt, digits, 0, e.what()});
        }
    }
    return ladder;
}

std::vector<RpmCurvePoint> rpm_curves(const std::vector<Real>& v, const Real& emin, const Real& emax, int steps,
                                      const RpmCurveOptions& options, const PrecisionContext& ctx) {
    if (steps < 1) fail(ErrorKind::Usage, "curve needs at least one step");
    if (options.d_max - options.d_min + 1 < 4) fail(ErrorKind::Usage, "root tracking needs at least 4 values of D");
    std::pair<Real, Real> window{Real::from_double(options.window.first, ctx),
                                 Real::from_double(options.window.second, ctx)};
    std::vector<RpmCurvePoint> out;
    for (int i = 0; i <= steps; ++i) {
        Real E(emin + (emax - emin) * static_cast<long>(i) / static_cast<long>(steps), ctx);
        std::map<int, std::vector<Real>> roots;
        for (int D = options.d_min; D <= options.d_max; ++D) {
            roots[D] = g0_roots(v, E, D, options.d, window, options.grid);
        }
        // Past the first two points the labels follow the curves by linear
        // extrapolation, so they survive the crossing.
        std::optional<std::pair<Real, Real>> predicted;
        std::vector<const RpmCurvePoint*> known;
        for (auto it = out.rbegin(); it != out.rend() && known.size() < 2; ++it) {
            if (it->left && it->right) known.push_back(&*it);
        }
        if (known.size() == 2) {
            const RpmCurvePoint& a = *known[1];
            const RpmCurvePoint& b = *known[0];
            Real t = (E - b.E) / (b.E - a.E);
            predicted = std::make_pair(*b.left + (*b.left - *a.left) * t, *b.right + (*b.right - *a.right) * t);
        }
        try {
            auto [left, right] = track_sequences(roots, E, predicted);
            out.push_back({E, left.limit(), right.limit(), {}});
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::TrackingFailure) throw;
            out.push_back({E, std::nullopt, std::nullopt, e.what()});
        }
    }
    return out;
}

Real curves_crossing(const std::vector<RpmCurvePoint>& curve) {
    std::vector<const RpmCurvePoint*> pts;
    for (const auto& p : curve) {
        if (p.left && p.right) pts.push_back(&p);
    }
    auto diff = [](const RpmCurvePoint* p) { return *p->left - *p->right; };
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        Real a = diff(pts[i]);
        Real b = diff(pts[i + 1]);
        if (a.is_zero()) return pts[i]->E;
        if (a.sign() == b.sign()) continue;
        std::size_t lo = i > 0 ? i - 1 : 0;
        std::size_t hi = std::min(pts.size() - 1, lo + 3);
        if (hi - lo < 3 && hi >= 3) lo = hi - 3;
        std::vector<Real> xs, ys;
        for (std::size_t k = lo; k <= hi; ++k) {
            xs.push_back(pts[k]->E);
            ys.push_back(diff(pts[k]));
        }
        auto lagrange = [&](const Real& x) {
            Real sum = x.zero_like();
            for (std::size_t k = 0; k < xs.size(); ++k) {
                Real term = ys[k];
                for (std::size_t m = 0; m < xs.size(); ++m) {
                    if (m != k) term = term * (x - xs[m]) / (xs[k] - xs[m]);
                }
                sum += term;
            }
            return sum;
        };
        const PrecisionContext ctx = a.context();
        return refine_root_1d(lagrange, pts[i]->E, pts[i + 1]->E, Real::pow10(-(ctx.digits() - 10), ctx));
    }
    fail(ErrorKind::NoCrossing, "the two curves do not cross on the sampled range");
}

}  // namespace logmatch
