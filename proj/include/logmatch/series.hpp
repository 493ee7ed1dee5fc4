#pragma once

// Truncated power series in a single named variable.

#include <string>
#include <vector>

#include "logmatch/numerics.hpp"

namespace logmatch {

class Series {
public:
    // coeffs[k] multiplies variable^k; the order is coeffs.size() - 1.
    Series(std::string variable, std::vector<Real> coeffs);

    static Series zero(std::string variable, int order, const PrecisionContext& ctx);
    static Series constant(std::string variable, const Real& value, int order);

    const std::string& variable() const noexcept { return variable_; }
    const std::vector<Real>& coeffs() const noexcept { return coeffs_; }
    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const Real& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }

    // Precision of the widest coefficient.
    PrecisionContext context() const;

private:
    std::string variable_;
    std::vector<Real> coeffs_;
};

// Drops terms above `order`; asking for a higher order than is carried is a
// usage error (absent terms are unknown, not zero).
Series truncated(const Series& a, int order);
Series negated(const Series& a);
Series scaled(const Series& a, const Real& factor);
// Same coefficients renamed to another variable.
Series renamed(const Series& a, std::string variable);

enum class SeriesOp { Add, Sub, Mul, Div };

Series series_arith(const Series& a, const Series& b, SeriesOp op);

inline Series operator+(const Series& a, const Series& b) { return series_arith(a, b, SeriesOp::Add); }
inline Series operator-(const Series& a, const Series& b) { return series_arith(a, b, SeriesOp::Sub); }
inline Series operator*(const Series& a, const Series& b) { return series_arith(a, b, SeriesOp::Mul); }
inline Series operator/(const Series& a, const Series& b) { return series_arith(a, b, SeriesOp::Div); }

// Positive branch; the constant term must be > 0.
Series series_sqrt(const Series& a);

enum class TrigKind { Sin, Cos };

// Maclaurin series of sin(u) or cos(u) through u^order.
Series trig_series(TrigKind kind, int order, const PrecisionContext& ctx);

// Reads an even series in u as a series in E = u². Odd coefficients must be
// below odd_tol times the largest even coefficient.
Series collapse_even_u_to_E(const Series& a, const Real& odd_tol);
// odd_tol = 10^(-digits/2)
Series collapse_even_u_to_E(const Series& a);

// Inverse of the collapse: c_k E^k becomes c_k u^(2k).
Series expand_E_to_u(const Series& a, std::string u_variable = "u");

Real eval_truncated(const Series& a, const Real& x);

// Windowed ratio estimate (|c_{n-w}| / |c_n|)^(1/w) at the series' tail.
Real estimate_radius(const Series& a, int window);

// "k,coefficient" header then one row per coefficient at full precision.
std::string series_csv(const Series& a);

}  // namespace logmatch
