#include "logmatch/series.hpp"

#include <algorithm>
#include <sstream>

namespace logmatch {

Series::Series(std::string variable, std::vector<Real> coeffs)
    : variable_(std::move(variable)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) fail(ErrorKind::Usage, "a series needs at least its constant coefficient");
    if (variable_.empty()) fail(ErrorKind::Usage, "a series needs a variable name");
}

Series Series::zero(std::string variable, int order, const PrecisionContext& ctx) {
    if (order < 0) fail(ErrorKind::Usage, "negative series order " + std::to_string(order));
    return Series(std::move(variable), std::vector<Real>(static_cast<std::size_t>(order) + 1, Real(ctx)));
}

Series Series::constant(std::string variable, const Real& value, int order) {
    if (order < 0) fail(ErrorKind::Usage, "negative series order " + std::to_string(order));
    std::vector<Real> c(static_cast<std::size_t>(order) + 1, value.zero_like());
    c[0] = value;
    return Series(std::move(variable), std::move(c));
}

PrecisionContext Series::context() const {
    mpfr_prec_t bits = 0;
    for (const auto& c : coeffs_) bits = std::max(bits, c.bits());
    return PrecisionContext::from_bits(bits);
}

Series truncated(const Series& a, int order) {
    if (order < 0 || order > a.order()) {
        fail(ErrorKind::Usage, "cannot truncate a series of order " + std::to_string(a.order()) + " to order " +
                                   std::to_string(order));
    }
    std::vector<Real> c(a.coeffs().begin(), a.coeffs().begin() + order + 1);
    return Series(a.variable(), std::move(c));
}

Series negated(const Series& a) {
    std::vector<Real> c;
    c.reserve(a.coeffs().size());
    for (const auto& x : a.coeffs()) c.push_back(-x);
    return Series(a.variable(), std::move(c));
}

Series scaled(const Series& a, const Real& factor) {
    std::vector<Real> c;
    c.reserve(a.coeffs().size());
    for (const auto& x : a.coeffs()) c.push_back(x * factor);
    return Series(a.variable(), std::move(c));
}

Series renamed(const Series& a, std::string variable) { return Series(std::move(variable), a.coeffs()); }

Series series_arith(const Series& a, const Series& b, SeriesOp op) {
    if (a.variable() != b.variable()) {
        fail(ErrorKind::Usage, "series variables differ: \"" + a.variable() + "\" vs \"" + b.variable() + "\"");
    }
    if (a.order() != b.order()) {
        fail(ErrorKind::Usage, "series orders differ: " + std::to_string(a.order()) + " vs " +
                                   std::to_string(b.order()) + "; truncate first");
    }
    const auto n = a.coeffs().size();
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    std::vector<Real> c;
    c.reserve(n);
    switch (op) {
        case SeriesOp::Add:
            for (std::size_t k = 0; k < n; ++k) c.push_back(x[k] + y[k]);
            break;
        case SeriesOp::Sub:
            for (std::size_t k = 0; k < n; ++k) c.push_back(x[k] - y[k]);
            break;
        case SeriesOp::Mul:
            for (std::size_t k = 0; k < n; ++k) {
                Real s = x[0] * y[k];
                for (std::size_t i = 1; i <= k; ++i) s += x[i] * y[k - i];
                c.push_back(std::move(s));
            }
            break;
        case SeriesOp::Div:
            if (y[0].is_zero()) fail(ErrorKind::Pole, "series division by a denominator with zero constant term");
            for (std::size_t k = 0; k < n; ++k) {
                Real s = x[k];
                for (std::size_t i = 1; i <= k; ++i) s -= y[i] * c[k - i];
                c.push_back(s / y[0]);
            }
            break;
    }
    return Series(a.variable(), std::move(c));
}

Series series_sqrt(const Series& a) {
    const auto& x = a.coeffs();
    if (!(x[0] > 0L)) {
        fail(ErrorKind::Branch, "series square root needs a positive constant term, got " + format_real(x[0], 12));
    }
    std::vector<Real> c;
    c.reserve(x.size());
    c.push_back(sqrt(x[0]));
    Real twice_lead = c[0] * 2L;
    for (std::size_t k = 1; k < x.size(); ++k) {
        Real s = x[k];
        for (std::size_t i = 1; i < k; ++i) s -= c[i] * c[k - i];
        c.push_back(s / twice_lead);
    }
    return Series(a.variable(), std::move(c));
}

Series trig_series(TrigKind kind, int order, const PrecisionContext& ctx) {
    Series out = Series::zero("u", order, ctx);
    std::vector<Real> c = out.coeffs();
    // term_k = ±1/k!, filled for the parity that the function carries
    Real term(1, ctx);
    for (int k = 0; k <= order; ++k) {
        if (k > 0) term /= static_cast<long>(k);
        bool even = k % 2 == 0;
        if ((kind == TrigKind::Cos) != even) continue;
        int half = kind == TrigKind::Cos ? k / 2 : (k - 1) / 2;
        c[static_cast<std::size_t>(k)] = half % 2 == 0 ? term : -term;
    }
    return Series("u", std::move(c));
}

Series collapse_even_u_to_E(const Series& a, const Real& odd_tol) {
    Real max_even = a[0].zero_like();
    for (int k = 0; k <= a.order(); k += 2) max_even = max(max_even, abs(a[k]));
    int worst = -1;
    Real worst_mag = a[0].zero_like();
    Real limit = odd_tol * max_even;
    for (int k = 1; k <= a.order(); k += 2) {
        Real m = abs(a[k]);
        if (m >= limit && m > worst_mag) {
            worst = k;
            worst_mag = m;
        }
    }
    if (worst >= 0) {
        fail(ErrorKind::Parity, "odd coefficient u^" + std::to_string(worst) + " = " + format_real(a[worst], 12) +
                                    " exceeds the parity tolerance " + format_real(limit, 4));
    }
    std::vector<Real> c;
    for (int k = 0; k <= a.order(); k += 2) c.push_back(a[k]);
    return Series("E", std::move(c));
}

Series collapse_even_u_to_E(const Series& a) {
    const PrecisionContext ctx = a.context();
    return collapse_even_u_to_E(a, Real::pow10(-(ctx.digits() / 2), ctx));
}

Series expand_E_to_u(const Series& a, std::string u_variable) {
    std::vector<Real> c(static_cast<std::size_t>(2 * a.order()) + 1, a[0].zero_like());
    for (int k = 0; k <= a.order(); ++k) c[static_cast<std::size_t>(2 * k)] = a[k];
    return Series(std::move(u_variable), std::move(c));
}

Real eval_truncated(const Series& a, const Real& x) {
    Real acc = a[a.order()];
    for (int k = a.order() - 1; k >= 0; --k) acc = acc * x + a[k];
    return acc;
}

Real estimate_radius(const Series& a, int window) {
    if (window < 1 || a.order() < window + 2) {
        fail(ErrorKind::Usage, "radius estimate needs order >= window + 2 (order " + std::to_string(a.order()) +
                                   ", window " + std::to_string(window) + ")");
    }
    const int n = a.order();
    const Real& tail = a[n];
    const Real& head = a[n - window];
    if (tail.is_zero() || head.is_zero()) {
        fail(ErrorKind::Inconclusive, "vanishing coefficient at the series tail leaves the radius undetermined");
    }
    return pow(abs(head) / abs(tail), Real(1, a.context()) / static_cast<long>(window));
}

std::string series_csv(const Series& a) {
    std::ostringstream out;
    out << "k,coefficient\n";
    for (int k = 0; k <= a.order(); ++k) out << k << ',' << format_full(a[k]) << '\n';
    return out.str();
}

}  // namespace logmatch
