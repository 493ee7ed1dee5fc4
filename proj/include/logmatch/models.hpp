#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "logmatch/numerics.hpp"

namespace logmatch {

// Wells have V = 0 for |x| < 1 and jump to the given heights beyond.
struct SymmetricFiniteWell {
    Real v_right;
};
struct NonSymmetricFiniteWell {
    Real v_left;
    Real v_right;
};
// V = -a_L x (x < 0), a_R x (x > 0)
struct LinearWell {
    Real a_left;
    Real a_right;
};
// V = a_L x² (x < 0), a_R x² (x > 0)
struct QuadraticWell {
    Real a_left;
    Real a_right;
};
// V = x⁴ + λx³
struct CubicQuartic {
    Real lambda;
};

using PotentialModel = std::variant<SymmetricFiniteWell, NonSymmetricFiniteWell, LinearWell, QuadraticWell, CubicQuartic>;

enum class Side { Left, Right };

const char* to_string(Side side) noexcept;

// Accepts "sym-well vR=1", "nonsym-well vL=2 vR=1", "linear aL=2 aR=1",
// "quadratic aL=2 aR=1", "anharmonic lambda=0.1". Parameters may come in any
// order; each must appear exactly once.
PotentialModel parse_model(std::string_view literal, const PrecisionContext& ctx);

// Canonical literal, parameters printed with `digits` significant digits.
std::string model_literal(const PotentialModel& m, int digits = 20);

// "sym-well", "nonsym-well", ...
const char* model_kind(const PotentialModel& m) noexcept;

bool is_finite_well(const PotentialModel& m) noexcept;

// Height of the wall on `side` for finite wells, the slope/curvature
// parameter for linear and quadratic wells.
const Real& side_parameter(const PotentialModel& m, Side side);

// Whether the left solution is the mirror image of the right one, so that
// L_L(0,E) = −L_R(0,E).
bool is_mirror_symmetric(const PotentialModel& m);

// At a wall (|x| = 1) the inner value 0 is returned.
Real potential_eval(const PotentialModel& m, const Real& x);

// Logarithmic derivative ψ'/ψ at x = 0 of the solution decaying on `side`.
// Finite wells refuse E above the wall height on that side.
Real closed_logderiv(const PotentialModel& m, Side side, const Real& E);

// v_0 .. v_{count-1}; only the polynomial model has usable Taylor data at 0.
std::vector<Real> potential_taylor(const PotentialModel& m, int count);

}  // namespace logmatch
