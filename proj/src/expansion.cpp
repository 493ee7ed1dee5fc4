#include "logmatch/expansion.hpp"

#include <cmath>

#include "logmatch/special.hpp"
#include "ode.hpp"

namespace logmatch {

const char* to_string(ExpansionMethod method) noexcept {
    switch (method) {
        case ExpansionMethod::ClosedAlgebra: return "closed-algebra";
        case ExpansionMethod::AiryRatio: return "airy-ratio";
        case ExpansionMethod::Hierarchy: return "hierarchy";
    }
    return "unknown";
}

namespace {

Series rounded(const Series& s, const PrecisionContext& ctx) {
    std::vector<Real> c;
    c.reserve(s.coeffs().size());
    for (const auto& x : s.coeffs()) c.emplace_back(x, ctx);
    return Series(s.variable(), std::move(c));
}

void require_order(int order) {
    if (order < 1) fail(ErrorKind::Usage, "series order must be at least 1, got " + std::to_string(order));
}

}  // namespace

Series well_series(const Real& height, Side side, int order, const PrecisionContext& ctx) {
    require_order(order);
    if (!(height > 0L)) fail(ErrorKind::Domain, "well height must be positive");
    PrecisionContext w = ctx.padded(10);
    const int M = 2 * order;
    Series sin_u = trig_series(TrigKind::Sin, M + 1, w);
    Series cos_u = trig_series(TrigKind::Cos, M, w);

    std::vector<Real> sinc, u_sin;
    for (int k = 0; k <= M; ++k) {
        sinc.push_back(sin_u[k + 1]);
        u_sin.push_back(k == 0 ? Real(w) : sin_u[k - 1]);
    }
    std::vector<Real> gap(static_cast<std::size_t>(M) + 1, Real(w));
    gap[0] = Real(height, w);
    gap[2] = -1L;
    Series kappa = series_sqrt(Series("u", std::move(gap)));  // √(V − u²)

    // L_R(0) = (u sin u − κ cos u) / (cos u + κ sin(u)/u)
    Series num = Series("u", std::move(u_sin)) - kappa * cos_u;
    Series den = cos_u + kappa * Series("u", std::move(sinc));
    Series right = collapse_even_u_to_E(num / den);
    Series out = rounded(right, ctx);
    return side == Side::Left ? negated(out) : out;
}

Series linear_series(const Real& a, Side side, int order, const PrecisionContext& ctx) {
    require_order(order);
    if (!(a > 0L)) fail(ErrorKind::Domain, "linear slope must be positive");
    PrecisionContext w = ctx.padded(10);
    AiryMaclaurin m = airy_maclaurin(order + 2, w);
    Real aw(a, w);
    Real cube_root = cbrt(aw);
    // ε = s·E with s = −a^(-2/3)
    Real s = -(Real(1, w) / (cube_root * cube_root));
    std::vector<Real> ai, aip;
    Real power(1, w);
    for (int n = 0; n <= order; ++n) {
        ai.emplace_back(m.ai_coeffs[static_cast<std::size_t>(n)] * power, w);
        aip.emplace_back(m.ai_prime_coeffs[static_cast<std::size_t>(n)] * power, w);
        power *= s;
    }
    Series right = scaled(Series("E", std::move(aip)) / Series("E", std::move(ai)), cube_root);
    Series out = rounded(right, ctx);
    return side == Side::Left ? negated(out) : out;
}

Real hierarchy_cutoff(const SmoothPotential& V, Side side, const PrecisionContext& ctx) {
    const double sign = side == Side::Right ? 1.0 : -1.0;
    const double target = ctx.digits() * std::log(10.0);
    const double dx = 1e-3;
    const double x_max = 1e4;
    auto root_v = [&](double x) {
        double v = V.value(Real::from_double(sign * x, ctx)).to_double();
        return v > 0 ? std::sqrt(v) : 0.0;
    };
    double integral = 0;
    double prev = root_v(0);
    for (double x = dx; x < x_max; x += dx) {
        double cur = root_v(x);
        integral += dx * (prev + cur);  // 2 × trapezoid
        prev = cur;
        if (integral > target) return Real::from_double(sign * x, ctx);
    }
    fail(ErrorKind::CutoffTooSmall, "potential does not confine fast enough for a decay cutoff below x = 1e4");
}

Series hierarchy_series(const SmoothPotential& V, Side side, int order, const HierarchyConfig& cfg,
                        const PrecisionContext& ctx) {
    require_order(order);
    if (order > cfg.max_order) {
        fail(ErrorKind::Usage, "hierarchy order " + std::to_string(order) + " exceeds the configured cap " +
                                   std::to_string(cfg.max_order));
    }
    PrecisionContext w = ctx.padded(10);
    Real X = cfg.cutoff_X ? Real(*cfg.cutoff_X, w) : Real(hierarchy_cutoff(V, side, ctx), w);
    if (side == Side::Right ? !(X > 0L) : !(X < 0L)) {
        fail(ErrorKind::CutoffTooSmall, "cutoff " + format_real(X, 10) + " lies on the wrong side of the origin");
    }
    Real tol = cfg.tolerance ? Real(*cfg.tolerance, w) : Real::pow10(-(ctx.digits() - 10), w);

    Real vx = V.value(X);
    if (!(vx > 0L)) {
        fail(ErrorKind::CutoffTooSmall, "V(" + format_real(X, 10) + ") = " + format_real(vx, 10) +
                                            " is not inside a classically forbidden region");
    }
    Real dvx = V.derivative(X);

    // L_0 = ∓√V − V'/(4V), then the hierarchy with derivatives dropped.
    const std::size_t n = static_cast<std::size_t>(order) + 1;
    std::vector<Real> y(n, Real(w));
    y[0] = (side == Side::Right ? -sqrt(vx) : sqrt(vx)) - dvx / (vx * 4L);
    Real twice_l0 = y[0] * 2L;
    if (n > 1) y[1] = -(Real(1, w) / twice_l0);
    for (std::size_t j = 2; j < n; ++j) {
        Real s(w);
        for (std::size_t k = 1; k < j; ++k) s += y[k] * y[j - k];
        y[j] = -(s / twice_l0);
    }

    detail::OdeRhs rhs = [&](const Real& x, const std::vector<Real>& L, std::vector<Real>& dL) {
        dL[0] = V.value(x) - L[0] * L[0];
        for (std::size_t j = 1; j < L.size(); ++j) {
            Real s = L[0] * L[j];
            s *= 2L;
            for (std::size_t k = 1; k < j; ++k) s += L[k] * L[j - k];
            dL[j] = -s;
            if (j == 1) dL[j] -= 1L;
        }
    };
    detail::OdeOptions options{tol, std::min(20, w.digits() / 3 + 4)};
    std::vector<Real> at_origin = detail::integrate_gbs(rhs, X, Real(w), std::move(y), options);

    std::vector<Real> c;
    for (auto& v : at_origin) c.emplace_back(v, ctx);
    return Series("E", std::move(c));
}

LogDerivSeries expand(const PotentialModel& m, Side side, int order, const PrecisionContext& ctx,
                      std::optional<ExpansionMethod> method) {
    if (std::holds_alternative<CubicQuartic>(m)) {
        fail(ErrorKind::Usage, "the anharmonic model has no small-energy series; use the Riccati-Pade solver");
    }
    const Real& p = side_parameter(m, side);
    ExpansionMethod chosen = method.value_or(is_finite_well(m)                      ? ExpansionMethod::ClosedAlgebra
                                             : std::holds_alternative<LinearWell>(m) ? ExpansionMethod::AiryRatio
                                                                                     : ExpansionMethod::Hierarchy);
    auto refuse = [&] {
        fail(ErrorKind::Usage, std::string("method ") + to_string(chosen) + " does not apply to " + model_kind(m));
    };
    switch (chosen) {
        case ExpansionMethod::ClosedAlgebra:
            if (!is_finite_well(m)) refuse();
            return {m, side, well_series(p, side, order, ctx), chosen};
        case ExpansionMethod::AiryRatio:
            if (!std::holds_alternative<LinearWell>(m)) refuse();
            return {m, side, linear_series(p, side, order, ctx), chosen};
        case ExpansionMethod::Hierarchy:
            break;
    }
    if (is_finite_well(m)) refuse();
    PrecisionContext w = ctx.padded(10);
    Real a(p, w);
    SmoothPotential V;
    if (std::holds_alternative<LinearWell>(m)) {
        Real slope = side == Side::Right ? a : -a;
        V.value = [slope](const Real& x) { return slope * x; };
        V.derivative = [slope](const Real&) { return slope; };
    } else {
        V.value = [a](const Real& x) { return a * x * x; };
        V.derivative = [a](const Real& x) { return a * x * 2L; };
    }
    return {m, side, hierarchy_series(V, side, order, HierarchyConfig{}, ctx), chosen};
}

Series f_series(const LogDerivSeries& L) {
    const Series& s = L.series;
    if (s[0].is_zero()) fail(ErrorKind::Normalization, "L_0(0) vanishes; f(E) is undefined");
    std::vector<Real> c;
    c.push_back(s[0].zero_like());
    for (int k = 1; k <= s.order(); ++k) c.push_back(-(s[k] / s[0]));
    return Series("E", std::move(c));
}

}  // namespace logmatch
