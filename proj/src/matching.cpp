#include "logmatch/matching.hpp"

#include <algorithm>

#include "logmatch/special.hpp"

namespace logmatch {

const char* to_string(SingularityKind kind) noexcept {
    switch (kind) {
        case SingularityKind::RealPole: return "real-pole";
        case SingularityKind::ComplexPair: return "complex-pair";
        case SingularityKind::BranchPoint: return "branch-point";
    }
    return "unknown";
}

namespace {

constexpr int kScanNodes = 400;

Real grid_node(const Bracket& b, int i, int n) {
    return b.first + (b.second - b.first) * static_cast<long>(i) / static_cast<long>(n);
}

// Leftmost sign change of f on a uniform grid, refined inside its cell.
std::optional<Real> leftmost_root(const std::function<Real(const Real&)>& f, const Bracket& b, int nodes,
                                  const Real& tol, Real* f_lo = nullptr, Real* f_hi = nullptr) {
    Real prev_x = b.first;
    Real prev_f = f(prev_x);
    if (f_lo) *f_lo = prev_f;
    if (prev_f.is_zero()) return prev_x;
    for (int i = 1; i <= nodes; ++i) {
        Real x = grid_node(b, i, nodes);
        Real fx = f(x);
        if (fx.is_zero()) return x;
        if (fx.sign() != prev_f.sign()) return refine_root_1d(f, prev_x, x, tol);
        prev_x = std::move(x);
        prev_f = std::move(fx);
    }
    if (f_hi) *f_hi = prev_f;
    return std::nullopt;
}

Real root_tolerance(const PrecisionContext& ctx) { return Real::pow10(-(ctx.digits() - 10), ctx); }

}  // namespace

Real series_ground_state(const LogDerivSeries& left, const LogDerivSeries& right, int degree, const Bracket& bracket) {
    if (degree < 1 || degree > left.series.order() || degree > right.series.order()) {
        fail(ErrorKind::Usage, "truncation degree " + std::to_string(degree) + " is not carried by series of order " +
                                   std::to_string(std::min(left.series.order(), right.series.order())));
    }
    const PrecisionContext ctx = left.series.context();
    Series diff = truncated(left.series, degree) - truncated(right.series, degree);
    auto f = [&diff](const Real& E) { return eval_truncated(diff, E); };
    Real f_lo(ctx), f_hi(ctx);
    auto root = leftmost_root(f, bracket, kScanNodes, root_tolerance(ctx), &f_lo, &f_hi);
    if (!root) {
        fail(ErrorKind::NoCrossing, "degree-" + std::to_string(degree) + " truncations do not cross on [" +
                                        format_real(bracket.first, 10) + ", " + format_real(bracket.second, 10) +
                                        "]: difference " + format_real(f_lo, 6) + " and " + format_real(f_hi, 6) +
                                        " at the ends");
    }
    return *root;
}

int series_degree(const PotentialModel& m, int n, bool raw_degree) {
    if (n < 1) fail(ErrorKind::Usage, "table order must be positive, got " + std::to_string(n));
    if (raw_degree || std::holds_alternative<LinearWell>(m) || std::holds_alternative<QuadraticWell>(m)) return n;
    if (n % 2 != 0) {
        fail(ErrorKind::Usage, std::string(model_kind(m)) + " tables use even n (powers of √E), got " +
                                   std::to_string(n));
    }
    if (std::holds_alternative<SymmetricFiniteWell>(m)) return n / 2;
    if (n < 4) fail(ErrorKind::Usage, "nonsym-well tables start at n = 4, got " + std::to_string(n));
    return n / 2 - 1;
}

std::vector<ConvergenceRecord> convergence_table(const PotentialModel& m, const std::vector<int>& orders,
                                                 const PrecisionContext& ctx, bool raw_degree,
                                                 std::optional<Bracket> bracket) {
    if (orders.empty()) return {};
    if (!std::is_sorted(orders.begin(), orders.end())) fail(ErrorKind::Usage, "table orders must be ascending");
    int max_degree = 0;
    for (int n : orders) max_degree = std::max(max_degree, series_degree(m, n, raw_degree));

    Bracket window = bracket ? *bracket : default_bracket(m, ctx);
    LogDerivSeries right = expand(m, Side::Right, max_degree, ctx);
    LogDerivSeries left = is_mirror_symmetric(m) ? LogDerivSeries{m, Side::Left, negated(right.series), right.method}
                                                 : expand(m, Side::Left, max_degree, ctx);
    std::vector<ConvergenceRecord> rows;
    for (int n : orders) {
        int degree = series_degree(m, n, raw_degree);
        rows.push_back({n, degree, series_ground_state(left, right, degree, window)});
    }
    return rows;
}

Bracket default_bracket(const PotentialModel& m, const PrecisionContext& ctx) {
    Real limit(ctx);
    if (is_finite_well(m)) {
        limit = min(side_parameter(m, Side::Left), side_parameter(m, Side::Right));
    } else if (std::holds_alternative<LinearWell>(m)) {
        Real l = find_singularity(m, Side::Left, ctx).location.re;
        Real r = find_singularity(m, Side::Right, ctx).location.re;
        limit = min(l, r);
    } else if (std::holds_alternative<QuadraticWell>(m)) {
        limit = sqrt(Real(min(side_parameter(m, Side::Left), side_parameter(m, Side::Right)), ctx)) * 3L;
    } else {
        fail(ErrorKind::Usage, "no default energy bracket for the anharmonic model; pass one explicitly");
    }
    return {Real::pow10(-6, ctx), Real(limit, ctx) * 95L / 100L};
}

Real exact_ground_state(const PotentialModel& m, const PrecisionContext& ctx, std::optional<Bracket> bracket) {
    if (std::holds_alternative<CubicQuartic>(m)) {
        fail(ErrorKind::NoClosedForm, "the anharmonic model has no closed-form logarithmic derivative");
    }
    Bracket window = bracket ? *bracket : default_bracket(m, ctx);
    auto f = [&](const Real& E) {
        Real e(E, ctx);
        return closed_logderiv(m, Side::Left, e) - closed_logderiv(m, Side::Right, e);
    };
    Real f_lo(ctx), f_hi(ctx);
    auto root = leftmost_root(f, window, 100, root_tolerance(ctx), &f_lo, &f_hi);
    if (!root) {
        fail(ErrorKind::NoCrossing, "closed forms do not cross on [" + format_real(window.first, 10) + ", " +
                                        format_real(window.second, 10) + "]");
    }
    return *root;
}

namespace {

template <class T>
Complex<T> well_denominator(const T& re, const T& im, const Real& height) {
    Complex<T> E{re, im};
    Complex<T> k = sqrt(E);
    Complex<T> sinc = value_of(abs(k)).is_zero() ? Complex<T>{re * 0L + 1L, im * 0L} : sin(k) / k;
    Complex<T> gap{-(re - height), -im};  // V − E
    return cos(k) + sqrt(gap) * sinc;
}

SingularityReport linear_singularity(const Real& a, Side side, const PrecisionContext& ctx) {
    Real scale = pow(cbrt(Real(a, ctx)), 2L);  // a^(2/3)
    auto ai = [&](const Real& E) { return airy(-(E / scale), ctx).ai; };
    Bracket window{Real(ctx), scale * 599L / 100L};
    auto root = leftmost_root(ai, window, 240, root_tolerance(ctx));
    if (!root) fail(ErrorKind::SearchFailure, "no Airy zero within the validated argument range");
    return {side, {*root, Real(ctx)}, SingularityKind::RealPole};
}

SingularityReport well_singularity(const Real& h, Side side, const PrecisionContext& ctx) {
    const Real height(h, ctx);
    const Real R = height * 2L;
    const int nx = 41, ny = 21;
    // |den| on the lower half of the box [−R, R] × [−R, −R/40].
    std::vector<std::vector<Real>> mag(nx, std::vector<Real>(ny, Real(ctx)));
    auto node_re = [&](int i) { return -R + R * 2L * static_cast<long>(i) / static_cast<long>(nx - 1); };
    auto node_im = [&](int j) { return -R + (R - R / 40L) * static_cast<long>(j) / static_cast<long>(ny - 1); };
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) mag[i][j] = abs(well_denominator(node_re(i), node_im(j), height));
    }
    std::vector<std::pair<int, int>> seeds;
    for (int i = 1; i + 1 < nx; ++i) {
        for (int j = 1; j + 1 < ny; ++j) {
            bool minimum = true;
            for (int di = -1; di <= 1 && minimum; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    if ((di || dj) && mag[i + di][j + dj] < mag[i][j]) {
                        minimum = false;
                        break;
                    }
                }
            }
            if (minimum) seeds.emplace_back(i, j);
        }
    }

    std::optional<ComplexReal> best;
    const Real tol = root_tolerance(ctx);
    for (auto [i, j] : seeds) {
        try {
            auto F = [&](const Dual& x, const Dual& y) {
                Complex<Dual> d = well_denominator(x, y, height);
                return DualPair{d.re, d.im};
            };
            Root2D r = refine_root_2d(F, node_re(i), node_im(j), tol, 80);
            if (r.y > 0L) r.y = -r.y;  // conjugate representative
            ComplexReal z{r.x, r.y};
            if (!best || abs(z) < abs(*best)) best = z;
        } catch (const Error&) {
            // seed outside any basin
        }
    }
    if (best && abs(*best) < height) return {side, *best, SingularityKind::ComplexPair};
    return {side, {height, Real(ctx)}, SingularityKind::BranchPoint};
}

}  // namespace

SingularityReport find_singularity(const PotentialModel& m, Side side, const PrecisionContext& ctx) {
    if (is_finite_well(m)) return well_singularity(side_parameter(m, side), side, ctx);
    if (std::holds_alternative<LinearWell>(m)) return linear_singularity(side_parameter(m, side), side, ctx);
    fail(ErrorKind::Usage, std::string("singularity search is not available for ") + model_kind(m));
}

std::vector<std::array<Real, 3>> closed_curves(const PotentialModel& m, const Real& emin, const Real& emax, int steps) {
    if (steps < 1) fail(ErrorKind::Usage, "curve needs at least one step");
    if (!(emin < emax)) fail(ErrorKind::Usage, "curve range needs emin < emax");
    std::vector<std::array<Real, 3>> rows;
    Bracket b{emin, emax};
    for (int i = 0; i <= steps; ++i) {
        Real E = grid_node(b, i, steps);
        rows.push_back({E, closed_logderiv(m, Side::Left, E), closed_logderiv(m, Side::Right, E)});
    }
    return rows;
}

}  // namespace logmatch
