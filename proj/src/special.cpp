#include "logmatch/special.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace logmatch {

namespace {

struct SpougeTable {
    int a;
    PrecisionContext working;
    std::vector<Real> c;  // c[0] = √(2π), c[k] for k = 1..a-1
};

int spouge_order(int digits) {
    // relative error ≤ a^(-1/2) (2π)^(-(a+1/2))
    return static_cast<int>(std::ceil((digits + 5) * std::log(10.0) / std::log(2.0 * M_PI))) + 1;
}

std::shared_ptr<const SpougeTable> spouge_table(int digits) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const SpougeTable>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(digits); it != cache.end()) return it->second;

    const int a = spouge_order(digits);
    // The alternating coefficient sum cancels roughly 0.45 digits per unit of a.
    PrecisionContext w(digits + static_cast<int>(0.45 * a) + 10);
    auto table = std::make_shared<SpougeTable>(SpougeTable{a, w, {}});
    table->c.reserve(static_cast<std::size_t>(a));
    table->c.push_back(sqrt(Real::pi(w) * 2L));
    Real factorial(1, w);  // (k-1)!
    for (int k = 1; k < a; ++k) {
        if (k > 1) factorial *= static_cast<long>(k - 1);
        Real base(static_cast<long>(a - k), w);
        Real ck = pow(base, Real(2 * k - 1, w) / 2L) * exp(base) / factorial;
        if (k % 2 == 0) ck = -ck;
        table->c.push_back(std::move(ck));
    }
    cache.emplace(digits, table);
    return table;
}

bool is_nonpositive_integer(const Real& z) {
    return z <= 0L && mpfr_integer_p(z.get()) != 0;
}

// Γ(z+1) for z > 0 at the table's working precision.
Real spouge_gamma_plus_one(const Real& z, const SpougeTable& t) {
    Real zw(z, t.working);
    Real sum = t.c[0];
    for (int k = 1; k < t.a; ++k) sum += t.c[static_cast<std::size_t>(k)] / (zw + static_cast<long>(k));
    Real shifted = zw + static_cast<long>(t.a);
    Real half(1, t.working);
    half /= 2L;
    return pow(shifted, zw + half) * exp(-shifted) * sum;
}

}  // namespace

Real gamma(const Real& z, const PrecisionContext& ctx) {
    if (!z.is_finite()) fail(ErrorKind::Domain, "gamma of a non-finite argument");
    if (is_nonpositive_integer(z)) fail(ErrorKind::Pole, "gamma pole at z = " + format_real(z, 20));
    auto table = spouge_table(ctx.digits());
    const PrecisionContext& w = table->working;
    Real zw(z, w);
    Real half(1, w);
    half /= 2L;
    if (zw < half) {
        // Γ(z) = π / (sin(πz) Γ(1−z)), with Γ(1−z) = Spouge(1−z)/(1−z)
        Real pi = Real::pi(w);
        Real one_minus = 1L - zw;
        Real g = spouge_gamma_plus_one(one_minus, *table) / one_minus;
        return Real(pi / (sin(pi * zw) * g), ctx);
    }
    return Real(spouge_gamma_plus_one(zw, *table) / zw, ctx);
}

AiryMaclaurin airy_maclaurin(int order, const PrecisionContext& ctx) {
    if (order < 2) fail(ErrorKind::Usage, "Airy Maclaurin order must be at least 2, got " + std::to_string(order));
    PrecisionContext w = ctx.padded(kAiryPadDigits);
    AiryMaclaurin m{order, w, {}, {}};
    m.ai_coeffs.reserve(static_cast<std::size_t>(order) + 1);
    Real three(3, w);
    m.ai_coeffs.push_back(pow(three, Real(-2, w) / 3L) / gamma(Real(2, w) / 3L, w));
    m.ai_coeffs.push_back(-(pow(three, Real(-1, w) / 3L) / gamma(Real(1, w) / 3L, w)));
    m.ai_coeffs.push_back(Real(w));
    for (int n = 1; n + 2 <= order; ++n) {
        // c_{n+2} = c_{n-1} / ((n+2)(n+1))
        m.ai_coeffs.push_back(m.ai_coeffs[static_cast<std::size_t>(n - 1)] / static_cast<long>((n + 2) * (n + 1)));
    }
    m.ai_prime_coeffs.reserve(static_cast<std::size_t>(order));
    for (int n = 0; n < order; ++n) {
        m.ai_prime_coeffs.push_back(m.ai_coeffs[static_cast<std::size_t>(n + 1)] * static_cast<long>(n + 1));
    }
    return m;
}

namespace {

// Smallest order whose dropped terms at |z| = 6 stay far below 10^(-digits).
int airy_order_for(int digits) {
    const double target = -(digits + kAiryPadDigits + 5.0);
    const double lz = std::log10(kAiryMaxArgument);
    // log10 |c_n| for n mod 3 = 0, 1 (c_2 chain vanishes)
    double l0 = std::log10(0.355028053887817), l1 = std::log10(0.258819403792807);
    for (int n = 0;; n += 3) {
        bool small = l0 + n * lz < target && l1 + (n + 1) * lz < target;
        if (small && n > 12) return n + 3;
        l0 -= std::log10(static_cast<double>((n + 3) * (n + 2)));
        l1 -= std::log10(static_cast<double>((n + 4) * (n + 3)));
    }
}

}  // namespace

const AiryMaclaurin& airy_table(const PrecisionContext& ctx) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<AiryMaclaurin>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[ctx.digits()];
    if (!slot) slot = std::make_unique<AiryMaclaurin>(airy_maclaurin(airy_order_for(ctx.digits()), ctx));
    return *slot;
}

AiryValue airy_eval(const AiryMaclaurin& m, const Real& z, const PrecisionContext& ctx) {
    if (!z.is_finite() || abs(z) > Real::from_double(kAiryMaxArgument, ctx)) {
        fail(ErrorKind::Range, "Airy Maclaurin evaluation is validated for |z| <= 6, got z = " + format_real(z, 12));
    }
    const PrecisionContext& w = m.working;
    Real zw(z, w);
    const auto& c = m.ai_coeffs;
    const auto& d = m.ai_prime_coeffs;

    // Tail after the last coefficient: successive triples shrink by
    // q = |z|^3/((N+3)(N+2)), so the remainder is at most the next triple
    // over (1 − q).
    const int N = m.order;
    Real az = abs(zw);
    Real q = az * az * az / static_cast<long>((N + 3) * (N + 2));
    Real half(1, w);
    half /= 2L;
    Real next(w);
    for (int k = 1; k <= 3; ++k) {
        int n = N + k;
        int src = n - 3;
        if (src < 0) continue;
        Real cn = abs(c[static_cast<std::size_t>(src)]) / static_cast<long>(n * (n - 1));
        next += cn * pow(az, static_cast<long>(n)) * static_cast<long>(n + 1);
    }
    Real budget = Real::pow10(-(ctx.digits() - 5), w);
    if (q >= half || next * 2L > budget) {
        fail(ErrorKind::Range, "Airy Maclaurin table of order " + std::to_string(N) +
                                   " cannot certify the tail at z = " + format_real(z, 12));
    }

    Real ai = c[static_cast<std::size_t>(N)];
    for (int n = N - 1; n >= 0; --n) ai = ai * zw + c[static_cast<std::size_t>(n)];
    Real aip = d[static_cast<std::size_t>(N - 1)];
    for (int n = N - 2; n >= 0; --n) aip = aip * zw + d[static_cast<std::size_t>(n)];
    return {Real(ai, ctx), Real(aip, ctx)};
}

AiryValue airy(const Real& z, const PrecisionContext& ctx) { return airy_eval(airy_table(ctx), z, ctx); }

Real pcf_at_zero(const Real& nu, const PrecisionContext& ctx) {
    PrecisionContext w = ctx.padded(5);
    Real nw(nu, w);
    Real arg = (1L - nw) / 2L;
    if (is_nonpositive_integer(arg)) {
        fail(ErrorKind::Pole, "D_nu(0) evaluation hits a Gamma pole at nu = " + format_real(nu, 20));
    }
    Real value = pow(Real(2, w), nw / 2L) * sqrt(Real::pi(w)) / gamma(arg, w);
    return Real(value, ctx);
}

}  // namespace logmatch
