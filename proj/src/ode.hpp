#pragma once

// Gragg–Bulirsch–Stoer extrapolation for y' = f(x, y) at extended precision.

#include <functional>
#include <vector>

#include "logmatch/numerics.hpp"

namespace logmatch::detail {

using OdeRhs = std::function<void(const Real& x, const std::vector<Real>& y, std::vector<Real>& dydx)>;

struct OdeOptions {
    Real tolerance;     // per-step error, relative to max(1, |y|)
    int max_columns = 20;
    long max_steps = 200000;
};

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
};

// Integrates from x0 to x1 (either direction), returning y(x1).
std::vector<Real> integrate_gbs(const OdeRhs& f, const Real& x0, const Real& x1, std::vector<Real> y0,
                                const OdeOptions& options, OdeStats* stats = nullptr);

}  // namespace logmatch::detail
