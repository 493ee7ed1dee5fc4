#include "logmatch/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace logmatch {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Usage: return "usage";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Bracket: return "bracket";
        case ErrorKind::Rank: return "rank";
        case ErrorKind::NonConvergence: return "non-convergence";
        case ErrorKind::Pole: return "pole";
        case ErrorKind::Branch: return "branch";
        case ErrorKind::Parity: return "parity";
        case ErrorKind::Normalization: return "normalization";
        case ErrorKind::Input: return "input";
        case ErrorKind::NoClosedForm: return "no-closed-form";
        case ErrorKind::TaylorBlind: return "taylor-blind";
        case ErrorKind::CutoffTooSmall: return "cutoff-too-small";
        case ErrorKind::Stiffness: return "stiffness";
        case ErrorKind::NoCrossing: return "no-crossing";
        case ErrorKind::SearchFailure: return "search-failure";
        case ErrorKind::TrackingFailure: return "tracking-failure";
        case ErrorKind::Range: return "range";
        case ErrorKind::Inconclusive: return "inconclusive";
        case ErrorKind::Io: return "io";
        case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

namespace {

constexpr double kLog2Of10 = 3.32192809488736234787;
constexpr mpfr_prec_t kGuardBits = 8;
constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

mpfr_prec_t max_bits(const Real& a, const Real& b) { return std::max(a.bits(), b.bits()); }

}  // namespace

// --- PrecisionContext --------------------------------------------------------

PrecisionContext::PrecisionContext(int decimal_digits) : digits_(decimal_digits) {
    if (decimal_digits < kMinDigits) {
        fail(ErrorKind::Usage, "precision of " + std::to_string(decimal_digits) +
                                   " decimal digits is below the minimum of " +
                                   std::to_string(kMinDigits));
    }
}

PrecisionContext PrecisionContext::from_bits(mpfr_prec_t bits) {
    auto digits = static_cast<int>(std::floor(static_cast<double>(bits - kGuardBits) / kLog2Of10));
    return PrecisionContext(digits);
}

mpfr_prec_t PrecisionContext::bits() const noexcept {
    return static_cast<mpfr_prec_t>(std::ceil(digits_ * kLog2Of10)) + kGuardBits;
}

// --- Real --------------------------------------------------------------------

Real::Real(BitsTag, mpfr_prec_t bits) { mpfr_init2(value_, bits); }

Real make_real_bits(mpfr_prec_t bits) { return Real(Real::BitsTag{}, bits); }

Real::Real(const PrecisionContext& ctx) {
    mpfr_init2(value_, ctx.bits());
    mpfr_set_zero(value_, 1);
}

Real::Real(long value, const PrecisionContext& ctx) {
    mpfr_init2(value_, ctx.bits());
    mpfr_set_si(value_, value, kRnd);
}

Real::Real(const Real& other, const PrecisionContext& ctx) {
    mpfr_init2(value_, ctx.bits());
    mpfr_set(value_, other.value_, kRnd);
}

Real Real::from_double(double value, const PrecisionContext& ctx) {
    Real r(ctx);
    mpfr_set_d(r.value_, value, kRnd);
    return r;
}

Real Real::pi(const PrecisionContext& ctx) {
    Real r(ctx);
    mpfr_const_pi(r.value_, kRnd);
    return r;
}

Real Real::ln2(const PrecisionContext& ctx) {
    Real r(ctx);
    mpfr_const_log2(r.value_, kRnd);
    return r;
}

Real Real::pow10(long exponent, const PrecisionContext& ctx) {
    Real r(10, ctx);
    mpfr_pow_si(r.value_, r.value_, exponent, kRnd);
    return r;
}

Real::Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRnd);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real::~Real() { mpfr_clear(value_); }

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) {
            mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        }
        mpfr_set(value_, other.value_, kRnd);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

Real& Real::operator=(long value) {
    mpfr_set_si(value_, value, kRnd);
    return *this;
}

Real Real::zero_like() const {
    Real r(BitsTag{}, bits());
    mpfr_set_zero(r.value_, 1);
    return r;
}

// Compound assignment keeps the larger precision, as the binary operators do.
#define LOGMATCH_COMPOUND(op, fn)                                              \
    Real& Real::operator op(const Real& rhs) {                                 \
        if (rhs.bits() > bits()) mpfr_prec_round(value_, rhs.bits(), kRnd);    \
        fn(value_, value_, rhs.value_, kRnd);                                  \
        return *this;                                                          \
    }
LOGMATCH_COMPOUND(+=, mpfr_add)
LOGMATCH_COMPOUND(-=, mpfr_sub)
LOGMATCH_COMPOUND(*=, mpfr_mul)
LOGMATCH_COMPOUND(/=, mpfr_div)
#undef LOGMATCH_COMPOUND

Real& Real::operator+=(long rhs) { mpfr_add_si(value_, value_, rhs, kRnd); return *this; }
Real& Real::operator-=(long rhs) { mpfr_sub_si(value_, value_, rhs, kRnd); return *this; }
Real& Real::operator*=(long rhs) { mpfr_mul_si(value_, value_, rhs, kRnd); return *this; }
Real& Real::operator/=(long rhs) { mpfr_div_si(value_, value_, rhs, kRnd); return *this; }

Real operator-(const Real& a) {
    Real r = make_real_bits(a.bits());
    mpfr_neg(r.get_mutable(), a.get(), kRnd);
    return r;
}

#define LOGMATCH_BINARY(op, fn)                                                \
    Real operator op(const Real& a, const Real& b) {                           \
        Real r = make_real_bits(max_bits(a, b));                               \
        fn(r.get_mutable(), a.get(), b.get(), kRnd);                           \
        return r;                                                              \
    }
LOGMATCH_BINARY(+, mpfr_add)
LOGMATCH_BINARY(-, mpfr_sub)
LOGMATCH_BINARY(*, mpfr_mul)
LOGMATCH_BINARY(/, mpfr_div)
#undef LOGMATCH_BINARY

Real operator+(const Real& a, long b) {
    Real r = make_real_bits(a.bits());
    mpfr_add_si(r.get_mutable(), a.get(), b, kRnd);
    return r;
}
Real operator-(const Real& a, long b) {
    Real r = make_real_bits(a.bits());
    mpfr_sub_si(r.get_mutable(), a.get(), b, kRnd);
    return r;
}
Real operator*(const Real& a, long b) {
    Real r = make_real_bits(a.bits());
    mpfr_mul_si(r.get_mutable(), a.get(), b, kRnd);
    return r;
}
Real operator/(const Real& a, long b) {
    Real r = make_real_bits(a.bits());
    mpfr_div_si(r.get_mutable(), a.get(), b, kRnd);
    return r;
}
Real operator+(long a, const Real& b) { return b + a; }
Real operator-(long a, const Real& b) {
    Real r = make_real_bits(b.bits());
    mpfr_si_sub(r.get_mutable(), a, b.get(), kRnd);
    return r;
}
Real operator*(long a, const Real& b) { return b * a; }
Real operator/(long a, const Real& b) {
    Real r = make_real_bits(b.bits());
    mpfr_si_div(r.get_mutable(), a, b.get(), kRnd);
    return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }
bool operator!=(const Real& a, const Real& b) { return !(a == b); }
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }
bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.get(), b) == 0 && a.is_finite(); }
bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.get(), b) < 0; }
bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.get(), b) > 0; }
bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.get(), b) <= 0; }
bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.get(), b) >= 0; }

#define LOGMATCH_UNARY(name, fn)                                               \
    Real name(const Real& x) {                                                 \
        Real r = make_real_bits(x.bits());                                     \
        fn(r.get_mutable(), x.get(), kRnd);                                    \
        return r;                                                              \
    }
LOGMATCH_UNARY(abs, mpfr_abs)
LOGMATCH_UNARY(sqrt, mpfr_sqrt)
LOGMATCH_UNARY(cbrt, mpfr_cbrt)
LOGMATCH_UNARY(exp, mpfr_exp)
LOGMATCH_UNARY(log, mpfr_log)
LOGMATCH_UNARY(sin, mpfr_sin)
LOGMATCH_UNARY(cos, mpfr_cos)
LOGMATCH_UNARY(sinh, mpfr_sinh)
LOGMATCH_UNARY(cosh, mpfr_cosh)
#undef LOGMATCH_UNARY

Real atan2(const Real& y, const Real& x) {
    Real r = make_real_bits(max_bits(y, x));
    mpfr_atan2(r.get_mutable(), y.get(), x.get(), kRnd);
    return r;
}

Real pow(const Real& base, const Real& exponent) {
    Real r = make_real_bits(max_bits(base, exponent));
    mpfr_pow(r.get_mutable(), base.get(), exponent.get(), kRnd);
    return r;
}

Real pow(const Real& base, long exponent) {
    Real r = make_real_bits(base.bits());
    mpfr_pow_si(r.get_mutable(), base.get(), exponent, kRnd);
    return r;
}

Real hypot(const Real& a, const Real& b) {
    Real r = make_real_bits(max_bits(a, b));
    mpfr_hypot(r.get_mutable(), a.get(), b.get(), kRnd);
    return r;
}

Real copysign(const Real& magnitude, const Real& sign_source) {
    Real r = make_real_bits(magnitude.bits());
    mpfr_copysign(r.get_mutable(), magnitude.get(), sign_source.get(), kRnd);
    return r;
}

const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }
const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }

// --- decimal I/O ---------------------------------------------------------------

Real parse_real(std::string_view text, const PrecisionContext& ctx) {
    auto reject = [&](std::size_t pos, const char* what) -> Real {
        std::ostringstream msg;
        msg << "malformed decimal \"" << text << "\": " << what << " at position " << pos;
        fail(ErrorKind::Parse, msg.str());
    };
    if (text.empty()) return reject(0, "empty input");
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') ++i;
    std::size_t mantissa_digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++mantissa_digits;
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++mantissa_digits;
    }
    if (mantissa_digits == 0) return reject(i, "expected a digit");
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
        std::size_t exponent_digits = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++exponent_digits;
        if (exponent_digits == 0) return reject(i, "expected an exponent digit");
    }
    if (i != text.size()) return reject(i, "unexpected character");

    Real r(ctx);
    std::string buffer(text);
    if (mpfr_set_str(r.get_mutable(), buffer.c_str(), 10, kRnd) != 0) {
        return reject(0, "rejected by the decimal reader");
    }
    return r;
}

namespace {

std::string render(const Real& x, int significant, bool allow_fixed) {
    if (!x.is_finite()) {
        if (mpfr_nan_p(x.get())) return "nan";
        return x.signbit() ? "-inf" : "inf";
    }
    if (x.is_zero()) return "0";
    mpfr_exp_t exponent = 0;
    char* raw = mpfr_get_str(nullptr, &exponent, 10, static_cast<std::size_t>(significant), x.get(), kRnd);
    std::string digits(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!digits.empty() && digits[0] == '-') {
        sign = "-";
        digits.erase(0, 1);
    }
    // value = 0.d1d2... × 10^exponent
    const auto n = static_cast<long>(digits.size());
    const long e = exponent;
    std::string out;
    if (allow_fixed && e > -8 && e <= 25) {
        if (e <= 0) {
            out = "0." + std::string(static_cast<std::size_t>(-e), '0') + digits;
        } else if (e < n) {
            out = digits.substr(0, static_cast<std::size_t>(e)) + "." + digits.substr(static_cast<std::size_t>(e));
        } else {
            out = digits + std::string(static_cast<std::size_t>(e - n), '0');
        }
    } else {
        out = digits.substr(0, 1);
        if (n > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(e - 1);
    }
    return sign + out;
}

}  // namespace

std::string format_real(const Real& x, int significant) {
    if (significant < 1) fail(ErrorKind::Usage, "format_real needs at least one significant digit");
    return render(x, significant, true);
}

std::string format_full(const Real& x) { return render(x, x.digits(), true); }

// --- Dual ------------------------------------------------------------------------

Dual::Dual(const Real& value) : value_(value), grad_{value.zero_like(), value.zero_like()} {}

Dual::Dual(Real value, Real d0, Real d1)
    : value_(std::move(value)), grad_{std::move(d0), std::move(d1)} {}

Dual Dual::variable(const Real& value, int index) {
    Dual x(value);
    x.grad_[static_cast<std::size_t>(index)] = 1;
    return x;
}

Dual& Dual::operator=(long value) {
    value_ = value;
    grad_[0] = 0;
    grad_[1] = 0;
    return *this;
}

Dual& Dual::operator+=(const Dual& rhs) {
    value_ += rhs.value_;
    grad_[0] += rhs.grad_[0];
    grad_[1] += rhs.grad_[1];
    return *this;
}

Dual& Dual::operator-=(const Dual& rhs) {
    value_ -= rhs.value_;
    grad_[0] -= rhs.grad_[0];
    grad_[1] -= rhs.grad_[1];
    return *this;
}

Dual& Dual::operator*=(const Dual& rhs) {
    for (std::size_t i = 0; i < 2; ++i) grad_[i] = grad_[i] * rhs.value_ + value_ * rhs.grad_[i];
    value_ *= rhs.value_;
    return *this;
}

Dual& Dual::operator/=(const Dual& rhs) {
    Real inv = 1L / rhs.value_;
    value_ *= inv;
    for (std::size_t i = 0; i < 2; ++i) grad_[i] = (grad_[i] - value_ * rhs.grad_[i]) * inv;
    return *this;
}

Dual operator-(const Dual& a) { return Dual(-a.value(), -a.d(0), -a.d(1)); }
Dual operator+(const Dual& a, const Dual& b) { Dual r = a; r += b; return r; }
Dual operator-(const Dual& a, const Dual& b) { Dual r = a; r -= b; return r; }
Dual operator*(const Dual& a, const Dual& b) { Dual r = a; r *= b; return r; }
Dual operator/(const Dual& a, const Dual& b) { Dual r = a; r /= b; return r; }
Dual operator+(const Dual& a, const Real& b) { return Dual(a.value() + b, a.d(0), a.d(1)); }
Dual operator-(const Dual& a, const Real& b) { return Dual(a.value() - b, a.d(0), a.d(1)); }
Dual operator*(const Dual& a, const Real& b) { return Dual(a.value() * b, a.d(0) * b, a.d(1) * b); }
Dual operator/(const Dual& a, const Real& b) { return Dual(a.value() / b, a.d(0) / b, a.d(1) / b); }
Dual operator+(const Real& a, const Dual& b) { return b + a; }
Dual operator-(const Real& a, const Dual& b) { return Dual(a - b.value(), -b.d(0), -b.d(1)); }
Dual operator*(const Real& a, const Dual& b) { return b * a; }
Dual operator/(const Real& a, const Dual& b) { return Dual(a) / b; }
Dual operator+(const Dual& a, long b) { return Dual(a.value() + b, a.d(0), a.d(1)); }
Dual operator-(const Dual& a, long b) { return Dual(a.value() - b, a.d(0), a.d(1)); }
Dual operator*(const Dual& a, long b) { return Dual(a.value() * b, a.d(0) * b, a.d(1) * b); }
Dual operator/(const Dual& a, long b) { return Dual(a.value() / b, a.d(0) / b, a.d(1) / b); }
Dual operator-(long a, const Dual& b) { return Dual(a - b.value(), -b.d(0), -b.d(1)); }

namespace {

// f(x) with f'(x) = slope at the value.
Dual chain(const Dual& x, Real value, const Real& slope) {
    return Dual(std::move(value), x.d(0) * slope, x.d(1) * slope);
}

}  // namespace

Dual abs(const Dual& x) { return x.value().signbit() ? -x : x; }

Dual sqrt(const Dual& x) {
    Real v = sqrt(x.value());
    Real slope = 1L / (v * 2L);
    return chain(x, std::move(v), slope);
}

Dual exp(const Dual& x) {
    Real v = exp(x.value());
    return chain(x, v, v);
}

Dual log(const Dual& x) { return chain(x, log(x.value()), 1L / x.value()); }
Dual sin(const Dual& x) { return chain(x, sin(x.value()), cos(x.value())); }
Dual cos(const Dual& x) { return chain(x, cos(x.value()), -sin(x.value())); }
Dual sinh(const Dual& x) { return chain(x, sinh(x.value()), cosh(x.value())); }
Dual cosh(const Dual& x) { return chain(x, cosh(x.value()), sinh(x.value())); }

Dual hypot(const Dual& a, const Dual& b) {
    Real h = hypot(a.value(), b.value());
    if (h.is_zero()) return Dual(h);
    return Dual(h, (a.value() * a.d(0) + b.value() * b.d(0)) / h, (a.value() * a.d(1) + b.value() * b.d(1)) / h);
}

Dual copysign(const Dual& magnitude, const Dual& sign_source) {
    return magnitude.value().signbit() == sign_source.value().signbit() ? magnitude : -magnitude;
}

// --- root refinement -------------------------------------------------------------

namespace {

Real checked_eval(const std::function<Real(const Real&)>& f, const Real& x) {
    Real y = f(x);
    if (!y.is_finite()) {
        fail(ErrorKind::Domain, "non-finite function value at x = " + format_real(x, 20));
    }
    return y;
}

}  // namespace

Root1D refine_root_1d_bracket(const std::function<Real(const Real&)>& f, const Real& lo, const Real& hi,
                              const Real& tol, const RootOptions& options) {
    Real a = lo < hi ? lo : hi;
    Real b = lo < hi ? hi : lo;
    Real fa = checked_eval(f, a);
    Real fb = checked_eval(f, b);
    if (fa.is_zero()) return {a, a, a, 0};
    if (fb.is_zero()) return {b, b, b, 0};
    if (fa.sign() == fb.sign()) {
        fail(ErrorKind::Bracket, "no sign change on [" + format_real(a, 20) + ", " + format_real(b, 20) +
                                     "]: f = " + format_real(fa, 6) + ", " + format_real(fb, 6));
    }

    int iterations = 0;
    int retained = 0;  // -1: a retained twice in a row favours Illinois scaling of fb, +1 likewise for a
    int since_halving = 0;
    Real width_at_checkpoint = b - a;
    const Real half_tol = tol / 2L;
    while (b - a > tol) {
        if (iterations++ >= options.max_iter) {
            fail(ErrorKind::NonConvergence, "bracket refinement exceeded " + std::to_string(options.max_iter) +
                                                " iterations; bracket [" + format_real(a, 20) + ", " +
                                                format_real(b, 20) + "]");
        }
        Real c = (a + b) / 2L;
        bool bisect = !options.accelerate || since_halving >= 3;
        if (!bisect) {
            Real secant = (a * fb - b * fa) / (fb - fa);
            if (secant > a && secant < b) {
                c = std::move(secant);
                // Keep the trial point at least tol/2 from either end so the
                // bracket can collapse onto the root from both sides.
                if (c - a < half_tol) c = a + half_tol;
                if (b - c < half_tol) c = b - half_tol;
            }
        }
        if (c <= a || c >= b) break;  // precision floor: no representable interior point

        Real fc = checked_eval(f, c);
        if (fc.is_zero()) return {c, c, c, iterations};
        if (fc.sign() == fa.sign()) {
            a = std::move(c);
            fa = std::move(fc);
            if (retained == -1) fb /= 2L;
            retained = -1;
        } else {
            b = std::move(c);
            fb = std::move(fc);
            if (retained == +1) fa /= 2L;
            retained = +1;
        }
        Real width = b - a;
        if (width * 2L <= width_at_checkpoint) {
            width_at_checkpoint = width;
            since_halving = 0;
        } else if (++since_halving > 3) {
            width_at_checkpoint = width;
            since_halving = 0;
        }
    }
    Real mid = (a + b) / 2L;
    return {mid, a, b, iterations};
}

Real refine_root_1d(const std::function<Real(const Real&)>& f, const Real& lo, const Real& hi, const Real& tol,
                    const RootOptions& options) {
    return refine_root_1d_bracket(f, lo, hi, tol, options).root;
}

Root2D refine_root_2d(const std::function<DualPair(const Dual&, const Dual&)>& F, const Real& x0, const Real& y0,
                      const Real& tol, int max_iter) {
    Real x = x0;
    Real y = y0;
    const PrecisionContext ctx = x.bits() >= y.bits() ? x.context() : y.context();
    const Real rank_floor = Real::pow10(-(ctx.digits() - 5), ctx);
    std::vector<std::array<Real, 2>> trace;
    bool small_step = false;
    int iterations = 0;
    for (;;) {
        DualPair value = F(Dual::variable(x, 0), Dual::variable(y, 1));
        const Real& f0 = value[0].value();
        const Real& f1 = value[1].value();
        if (!f0.is_finite() || !f1.is_finite()) {
            fail(ErrorKind::Domain, "non-finite residual at (" + format_real(x, 20) + ", " + format_real(y, 20) + ")");
        }
        trace.push_back({abs(f0), abs(f1)});
        Real residual = max(abs(f0), abs(f1));
        std::array<std::array<Real, 2>, 2> jac{{{value[0].d(0), value[0].d(1)}, {value[1].d(0), value[1].d(1)}}};
        if (residual.is_zero() || (small_step && residual < tol)) {
            return {std::move(x), std::move(y), iterations, std::move(residual), std::move(trace), std::move(jac)};
        }
        if (iterations >= max_iter) {
            fail(ErrorKind::NonConvergence, "Newton iteration cap " + std::to_string(max_iter) +
                                                " reached; last iterate (" + format_real(x, 25) + ", " +
                                                format_real(y, 25) + "), residual " + format_real(residual, 6));
        }
        Real det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        Real scale = (abs(jac[0][0]) + abs(jac[0][1])) * (abs(jac[1][0]) + abs(jac[1][1]));
        if (det.is_zero() || abs(det) <= scale * rank_floor) {
            fail(ErrorKind::Rank, "singular Jacobian [[" + format_real(jac[0][0], 8) + ", " + format_real(jac[0][1], 8) +
                                      "], [" + format_real(jac[1][0], 8) + ", " + format_real(jac[1][1], 8) +
                                      "]] at (" + format_real(x, 20) + ", " + format_real(y, 20) + ")");
        }
        Real dx = (f0 * jac[1][1] - f1 * jac[0][1]) / det;
        Real dy = (jac[0][0] * f1 - jac[1][0] * f0) / det;
        x -= dx;
        y -= dy;
        ++iterations;
        Real step = max(abs(dx), abs(dy));
        Real size = max(abs(x), abs(y));
        small_step = step <= tol * (size > 1L ? size : Real(1, ctx));
    }
}

}  // namespace logmatch
