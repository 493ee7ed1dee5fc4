#pragma once

// Extended-precision scalars (Real, Dual, Complex<T>) and the 1D/2D root
// refiners every other module builds on.
//
// Precision is never ambient: each Real carries its own MPFR precision, taken
// from the PrecisionContext it was created under. Binary operations produce a
// result at the larger of the two operand precisions.

#include <mpfr.h>

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "logmatch/error.hpp"

namespace logmatch {

class PrecisionContext {
public:
    static constexpr int kMinDigits = 30;

    explicit PrecisionContext(int decimal_digits);

    static PrecisionContext from_bits(mpfr_prec_t bits);

    int digits() const noexcept { return digits_; }
    mpfr_prec_t bits() const noexcept;

    PrecisionContext padded(int extra_digits) const { return PrecisionContext(digits_ + extra_digits); }

    friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

private:
    int digits_;
};

class Real {
public:
    explicit Real(const PrecisionContext& ctx);
    Real(long value, const PrecisionContext& ctx);
    Real(int value, const PrecisionContext& ctx) : Real(static_cast<long>(value), ctx) {}
    // Rounds `other` to the precision of `ctx`.
    Real(const Real& other, const PrecisionContext& ctx);

    static Real from_double(double value, const PrecisionContext& ctx);
    static Real pi(const PrecisionContext& ctx);
    static Real ln2(const PrecisionContext& ctx);
    // 10^exponent
    static Real pow10(long exponent, const PrecisionContext& ctx);

    Real(const Real& other);
    Real(Real&& other) noexcept;
    ~Real();

    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    // Keeps the current precision.
    Real& operator=(long value);
    Real& operator=(int value) { return *this = static_cast<long>(value); }

    mpfr_srcptr get() const noexcept { return value_; }
    mpfr_ptr get_mutable() noexcept { return value_; }

    mpfr_prec_t bits() const noexcept { return mpfr_get_prec(value_); }
    PrecisionContext context() const { return PrecisionContext::from_bits(bits()); }
    int digits() const { return context().digits(); }

    Real zero_like() const;

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);
    Real& operator+=(long rhs);
    Real& operator-=(long rhs);
    Real& operator*=(long rhs);
    Real& operator/=(long rhs);

    bool is_finite() const noexcept { return mpfr_number_p(value_) != 0; }
    bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
    bool signbit() const noexcept { return mpfr_signbit(value_) != 0; }
    int sign() const noexcept { return mpfr_sgn(value_); }

    double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
    long to_long() const noexcept { return mpfr_get_si(value_, MPFR_RNDN); }

private:
    struct BitsTag {};
    Real(BitsTag, mpfr_prec_t bits);
    friend Real make_real_bits(mpfr_prec_t bits);

    mpfr_t value_;
};

// Uninitialized-value helper for operator implementations.
Real make_real_bits(mpfr_prec_t bits);

Real operator-(const Real& a);
Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);
Real operator+(long a, const Real& b);
Real operator-(long a, const Real& b);
Real operator*(long a, const Real& b);
Real operator/(long a, const Real& b);
inline Real operator+(const Real& a, int b) { return a + static_cast<long>(b); }
inline Real operator-(const Real& a, int b) { return a - static_cast<long>(b); }
inline Real operator*(const Real& a, int b) { return a * static_cast<long>(b); }
inline Real operator/(const Real& a, int b) { return a / static_cast<long>(b); }
inline Real operator+(int a, const Real& b) { return static_cast<long>(a) + b; }
inline Real operator-(int a, const Real& b) { return static_cast<long>(a) - b; }
inline Real operator*(int a, const Real& b) { return static_cast<long>(a) * b; }
inline Real operator/(int a, const Real& b) { return static_cast<long>(a) / b; }

bool operator==(const Real& a, const Real& b);
bool operator!=(const Real& a, const Real& b);
bool operator<(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, long b);
bool operator<(const Real& a, long b);
bool operator>(const Real& a, long b);
bool operator<=(const Real& a, long b);
bool operator>=(const Real& a, long b);
inline bool operator==(const Real& a, int b) { return a == static_cast<long>(b); }
inline bool operator<(const Real& a, int b) { return a < static_cast<long>(b); }
inline bool operator>(const Real& a, int b) { return a > static_cast<long>(b); }
inline bool operator<=(const Real& a, int b) { return a <= static_cast<long>(b); }
inline bool operator>=(const Real& a, int b) { return a >= static_cast<long>(b); }

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
Real hypot(const Real& a, const Real& b);
Real copysign(const Real& magnitude, const Real& sign_source);
const Real& max(const Real& a, const Real& b);
const Real& min(const Real& a, const Real& b);

// Parses a signed decimal with optional fraction and exponent
// ("-0.5925040566", "1e-3"), correctly rounded at the context precision.
// Throws Error{Parse} naming the offending character position.
Real parse_real(std::string_view text, const PrecisionContext& ctx);

// Decimal rendering with `significant` digits, rounded to nearest with ties to
// even. Fixed notation for moderate magnitudes, otherwise d.ddde±x.
std::string format_real(const Real& x, int significant);
// All digits carried by the value's precision.
std::string format_full(const Real& x);

// ---------------------------------------------------------------------------
// Dual numbers with two independent seeds: value plus a gradient (∂/∂s0, ∂/∂s1).

class Dual {
public:
    explicit Dual(const Real& value);
    Dual(Real value, Real d0, Real d1);

    // Seeds derivative slot `index` (0 or 1) with 1.
    static Dual variable(const Real& value, int index);

    const Real& value() const noexcept { return value_; }
    const Real& d(int index) const noexcept { return grad_[index]; }
    const std::array<Real, 2>& gradient() const noexcept { return grad_; }

    Dual& operator=(long value);
    Dual& operator=(int value) { return *this = static_cast<long>(value); }

    Dual& operator+=(const Dual& rhs);
    Dual& operator-=(const Dual& rhs);
    Dual& operator*=(const Dual& rhs);
    Dual& operator/=(const Dual& rhs);

private:
    Real value_;
    std::array<Real, 2> grad_;
};

Dual operator-(const Dual& a);
Dual operator+(const Dual& a, const Dual& b);
Dual operator-(const Dual& a, const Dual& b);
Dual operator*(const Dual& a, const Dual& b);
Dual operator/(const Dual& a, const Dual& b);
Dual operator+(const Dual& a, const Real& b);
Dual operator-(const Dual& a, const Real& b);
Dual operator*(const Dual& a, const Real& b);
Dual operator/(const Dual& a, const Real& b);
Dual operator+(const Real& a, const Dual& b);
Dual operator-(const Real& a, const Dual& b);
Dual operator*(const Real& a, const Dual& b);
Dual operator/(const Real& a, const Dual& b);
Dual operator+(const Dual& a, long b);
Dual operator-(const Dual& a, long b);
Dual operator*(const Dual& a, long b);
Dual operator/(const Dual& a, long b);
Dual operator-(long a, const Dual& b);
inline Dual operator*(long a, const Dual& b) { return b * a; }
inline Dual operator+(long a, const Dual& b) { return b + a; }
inline Dual operator+(const Dual& a, int b) { return a + static_cast<long>(b); }
inline Dual operator-(const Dual& a, int b) { return a - static_cast<long>(b); }
inline Dual operator*(const Dual& a, int b) { return a * static_cast<long>(b); }
inline Dual operator/(const Dual& a, int b) { return a / static_cast<long>(b); }
inline Dual operator-(int a, const Dual& b) { return static_cast<long>(a) - b; }
inline Dual operator*(int a, const Dual& b) { return b * static_cast<long>(a); }
inline Dual operator+(int a, const Dual& b) { return b + static_cast<long>(a); }

// Comparisons look at the value only.
inline bool operator<(const Dual& a, const Dual& b) { return a.value() < b.value(); }
inline bool operator>(const Dual& a, const Dual& b) { return a.value() > b.value(); }

Dual abs(const Dual& x);
Dual sqrt(const Dual& x);
Dual exp(const Dual& x);
Dual log(const Dual& x);
Dual sin(const Dual& x);
Dual cos(const Dual& x);
Dual sinh(const Dual& x);
Dual cosh(const Dual& x);
Dual hypot(const Dual& a, const Dual& b);
Dual copysign(const Dual& magnitude, const Dual& sign_source);

inline const Real& value_of(const Real& x) { return x; }
inline const Real& value_of(const Dual& x) { return x.value(); }

// ---------------------------------------------------------------------------
// Complex numbers over Real or Dual.

template <class T>
struct Complex {
    T re;
    T im;
};

template <class T>
Complex<T> operator+(const Complex<T>& a, const Complex<T>& b) {
    return {a.re + b.re, a.im + b.im};
}
template <class T>
Complex<T> operator-(const Complex<T>& a, const Complex<T>& b) {
    return {a.re - b.re, a.im - b.im};
}
template <class T>
Complex<T> operator-(const Complex<T>& a) {
    return {-a.re, -a.im};
}
template <class T>
Complex<T> operator*(const Complex<T>& a, const Complex<T>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class T>
Complex<T> operator*(const Complex<T>& a, const T& s) {
    return {a.re * s, a.im * s};
}
template <class T>
Complex<T> operator/(const Complex<T>& a, const Complex<T>& b) {
    T den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
template <class T>
Complex<T> conj(const Complex<T>& a) {
    return {a.re, -a.im};
}
template <class T>
T abs(const Complex<T>& a) {
    return hypot(a.re, a.im);
}

// Principal branch: Re ≥ 0, cut along the negative real axis, with the sign of
// a zero imaginary part selecting the side of the cut.
template <class T>
Complex<T> sqrt(const Complex<T>& z) {
    T r = hypot(z.re, z.im);
    if (value_of(r).is_zero()) return {r, r};
    if (!value_of(z.re).signbit()) {
        T t = sqrt((r + z.re) / 2L);
        return {t, z.im / (t * 2L)};
    }
    T t = sqrt((r - z.re) / 2L);
    return {abs(z.im) / (t * 2L), copysign(t, z.im)};
}

template <class T>
Complex<T> exp(const Complex<T>& z) {
    T m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}
template <class T>
Complex<T> sin(const Complex<T>& z) {
    return {sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)};
}
template <class T>
Complex<T> cos(const Complex<T>& z) {
    return {cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im))};
}

using ComplexReal = Complex<Real>;

// ---------------------------------------------------------------------------
// Root refinement.

struct RootOptions {
    bool accelerate = true;  // Illinois-modified secant steps inside the bracket
    int max_iter = 20000;
};

struct Root1D {
    Real root;
    Real lo;
    Real hi;
    int iterations;
};

// Bracket-certified root: the returned bracket always encloses a sign change
// and is at most `tol` wide on return; the root is its midpoint.
Root1D refine_root_1d_bracket(const std::function<Real(const Real&)>& f, const Real& lo, const Real& hi,
                              const Real& tol, const RootOptions& options = {});

Real refine_root_1d(const std::function<Real(const Real&)>& f, const Real& lo, const Real& hi,
                    const Real& tol, const RootOptions& options = {});

using DualPair = std::array<Dual, 2>;

struct Root2D {
    Real x;
    Real y;
    int iterations;
    Real residual;                             // max(|F0|, |F1|) at the returned point
    std::vector<std::array<Real, 2>> trace;    // |F0|, |F1| after each iterate
    std::array<std::array<Real, 2>, 2> jacobian;  // at the returned point
};

// Newton's method with the Jacobian read off Dual gradients (x seeds slot 0,
// y seeds slot 1). Converged when the residual is exactly zero, or when both
// residual components are below `tol` and the step is below tol·max(1, |(x,y)|).
Root2D refine_root_2d(const std::function<DualPair(const Dual&, const Dual&)>& F, const Real& x0,
                      const Real& y0, const Real& tol, int max_iter);

}  // namespace logmatch
