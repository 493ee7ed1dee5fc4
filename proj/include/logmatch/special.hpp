#pragma once

#include <utility>
#include <vector>

#include "logmatch/numerics.hpp"

namespace logmatch {

// Γ(z) by Spouge's formula, reflected for z < 1/2. The formula's order is
// chosen so its error bound sits below 10^(-digits-5).
Real gamma(const Real& z, const PrecisionContext& ctx);

// Maclaurin data of Ai: ai_coeffs[n] multiplies z^n, ai_prime_coeffs[n] is
// (n+1)·ai_coeffs[n+1]. Coefficients are held at `working`, which carries
// extra digits to absorb cancellation at negative arguments.
struct AiryMaclaurin {
    int order;
    PrecisionContext working;
    std::vector<Real> ai_coeffs;
    std::vector<Real> ai_prime_coeffs;
};

inline constexpr int kAiryPadDigits = 15;
inline constexpr double kAiryMaxArgument = 6.0;

AiryMaclaurin airy_maclaurin(int order, const PrecisionContext& ctx);

// Order large enough for |z| <= 6 at this precision; cached per precision.
const AiryMaclaurin& airy_table(const PrecisionContext& ctx);

struct AiryValue {
    Real ai;
    Real ai_prime;
};

// Partial sums at z, rounded to ctx. Range error for |z| > 6 or when the
// retained terms cannot certify a tail below 10^(-digits+5).
AiryValue airy_eval(const AiryMaclaurin& m, const Real& z, const PrecisionContext& ctx);
AiryValue airy(const Real& z, const PrecisionContext& ctx);

// D_ν(0) = 2^(ν/2)·√π / Γ((1−ν)/2)
Real pcf_at_zero(const Real& nu, const PrecisionContext& ctx);

}  // namespace logmatch
