#pragma once

// Small-energy series L(0,E) = Σ L_j(0) E^j for each side of a model.

#include <functional>
#include <optional>

#include "logmatch/models.hpp"
#include "logmatch/series.hpp"

namespace logmatch {

enum class ExpansionMethod { ClosedAlgebra, AiryRatio, Hierarchy };

const char* to_string(ExpansionMethod method) noexcept;

struct LogDerivSeries {
    PotentialModel model;
    Side side;
    Series series;  // variable "E"
    ExpansionMethod method;
};

// Finite well of wall height `height` on the requested side, by trig series
// in u = √E and the parity collapse.
Series well_series(const Real& height, Side side, int order, const PrecisionContext& ctx);

// Linear wall of slope `a` on the requested side, by the Airy Maclaurin ratio.
Series linear_series(const Real& a, Side side, int order, const PrecisionContext& ctx);

// Potential on the integration ray: x > 0 for Right, x < 0 for Left.
struct SmoothPotential {
    std::function<Real(const Real&)> value;
    std::function<Real(const Real&)> derivative;
};

struct HierarchyConfig {
    std::optional<Real> cutoff_X;   // default: decay-based cutoff, see hierarchy_cutoff
    std::optional<Real> tolerance;  // default: 10^(-digits+10)
    int max_order = 20;
};

// Smallest X with 2∫_0^X √V > digits·ln 10 on the side's ray (coarse
// double-precision quadrature); the sign of the result follows the side.
Real hierarchy_cutoff(const SmoothPotential& V, Side side, const PrecisionContext& ctx);

// Integrates the E-order hierarchy of L' = V − E − L² inward to x = 0.
Series hierarchy_series(const SmoothPotential& V, Side side, int order, const HierarchyConfig& cfg,
                        const PrecisionContext& ctx);

// Default method per model: ClosedAlgebra for finite wells, AiryRatio for
// linear wells, Hierarchy for quadratic wells. The polynomial model has no
// small-energy series.
LogDerivSeries expand(const PotentialModel& m, Side side, int order, const PrecisionContext& ctx,
                      std::optional<ExpansionMethod> method = std::nullopt);

// f(E) = 1 − L(0,E)/L_0(0)
Series f_series(const LogDerivSeries& L);

}  // namespace logmatch
