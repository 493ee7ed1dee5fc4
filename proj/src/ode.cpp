#include "ode.hpp"

namespace logmatch::detail {

namespace {

void modified_midpoint(const OdeRhs& f, const Real& x, const std::vector<Real>& y, const std::vector<Real>& dydx,
                       const Real& H, int n, std::vector<Real>& out) {
    const std::size_t m = y.size();
    Real h = H / static_cast<long>(n);
    Real h2 = h * 2L;
    std::vector<Real> prev = y;
    std::vector<Real> cur(y);
    for (std::size_t i = 0; i < m; ++i) cur[i] = y[i] + h * dydx[i];
    std::vector<Real> deriv(y);
    Real xs = x + h;
    for (int step = 1; step < n; ++step) {
        f(xs, cur, deriv);
        for (std::size_t i = 0; i < m; ++i) {
            Real next = prev[i] + h2 * deriv[i];
            prev[i] = std::move(cur[i]);
            cur[i] = std::move(next);
        }
        xs += h;
    }
    f(x + H, cur, deriv);
    out.resize(m, y[0]);
    for (std::size_t i = 0; i < m; ++i) out[i] = (cur[i] + prev[i] + h * deriv[i]) / 2L;
}

}  // namespace

std::vector<Real> integrate_gbs(const OdeRhs& f, const Real& x0, const Real& x1, std::vector<Real> y0,
                                const OdeOptions& options, OdeStats* stats) {
    const PrecisionContext ctx = x0.context();
    const std::size_t m = y0.size();
    const int kmax = std::max(options.max_columns, 3);
    const int target = std::max(2, (kmax * 3) / 5);
    const Real span = x1 - x0;
    const Real min_step = abs(span) * Real::pow10(-20, ctx);

    Real x = x0;
    Real H = span / 16L;
    std::vector<Real> y = std::move(y0);
    std::vector<Real> dydx(y);
    // tableau[k][j]: extrapolation column j built from k+1 midpoint runs
    std::vector<std::vector<std::vector<Real>>> tableau(static_cast<std::size_t>(kmax));
    OdeStats local;
    bool forward = span > 0L;

    while (forward ? x < x1 : x > x1) {
        if (local.accepted + local.rejected > options.max_steps) {
            fail(ErrorKind::Stiffness, "ODE step budget exhausted at x = " + format_real(x, 15));
        }
        Real remaining = x1 - x;
        bool last = forward ? H >= remaining : H <= remaining;
        if (last) H = remaining;
        f(x, y, dydx);

        int accepted_at = -1;
        for (int k = 0; k < kmax; ++k) {
            const int nk = 2 * (k + 1);
            auto& row = tableau[static_cast<std::size_t>(k)];
            row.resize(static_cast<std::size_t>(k) + 1);
            modified_midpoint(f, x, y, dydx, H, nk, row[0]);
            for (int j = 1; j <= k; ++j) {
                // T[k][j] = T[k][j-1] + (T[k][j-1] - T[k-1][j-1]) / ((n_k/n_{k-j})^2 - 1)
                const long nj = 2L * (k - j + 1);
                const long num = static_cast<long>(nk) * nk;
                const long den = nj * nj;
                const auto& left = row[static_cast<std::size_t>(j - 1)];
                const auto& above = tableau[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
                std::vector<Real> next;
                next.reserve(m);
                for (std::size_t i = 0; i < m; ++i) next.push_back(left[i] + (left[i] - above[i]) * den / (num - den));
                row[static_cast<std::size_t>(j)] = std::move(next);
            }
            if (k == 0) continue;
            Real err(ctx);
            const auto& best = row[static_cast<std::size_t>(k)];
            const auto& prior = row[static_cast<std::size_t>(k - 1)];
            for (std::size_t i = 0; i < m; ++i) {
                Real scale = max(abs(best[i]), Real(1, ctx));
                Real e = abs(best[i] - prior[i]) / scale;
                if (e > err) err = std::move(e);
            }
            if (err <= options.tolerance) {
                accepted_at = k;
                break;
            }
        }

        if (accepted_at < 0) {
            ++local.rejected;
            H /= 2L;
            if (abs(H) < min_step) fail(ErrorKind::Stiffness, "ODE step size underflow at x = " + format_real(x, 15));
            continue;
        }
        ++local.accepted;
        x = last ? x1 : x + H;
        y = tableau[static_cast<std::size_t>(accepted_at)][static_cast<std::size_t>(accepted_at)];
        if (accepted_at < target - 1) {
            H *= 3L;
            H /= 2L;
        } else if (accepted_at > target) {
            H *= 7L;
            H /= 10L;
        }
    }
    if (stats) *stats = local;
    return y;
}

}  // namespace logmatch::detail
