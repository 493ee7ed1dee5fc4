#pragma once

// Ground-state energies from left/right matching at x = 0, convergence
// tables, and the singularities that bound the small-energy series.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "logmatch/expansion.hpp"

namespace logmatch {

using Bracket = std::pair<Real, Real>;

// Smallest positive root of the degree-`degree` truncation of
// L_left − L_right: 400-node sign scan, leftmost sign change, then bracketed
// refinement. For mirror-symmetric models pass the right series and its
// negation.
Real series_ground_state(const LogDerivSeries& left, const LogDerivSeries& right, int degree, const Bracket& bracket);

// The tables index rows by n; the truncation degree it denotes depends on the
// model (see README). With raw_degree the row index is the degree.
int series_degree(const PotentialModel& m, int n, bool raw_degree = false);

struct ConvergenceRecord {
    int order_n;
    int degree;
    Real estimate;
};

std::vector<ConvergenceRecord> convergence_table(const PotentialModel& m, const std::vector<int>& orders,
                                                 const PrecisionContext& ctx, bool raw_degree = false,
                                                 std::optional<Bracket> bracket = std::nullopt);

// (1e-6, 0.95·limit) with limit the lowest wall for finite wells, the first
// Airy zero for linear wells and the first D_ν(0) zero, 3√a, for quadratic
// wells; the minimum over both sides.
Bracket default_bracket(const PotentialModel& m, const PrecisionContext& ctx);

// Root of the closed-form matching condition to 10^(-digits+10).
Real exact_ground_state(const PotentialModel& m, const PrecisionContext& ctx,
                        std::optional<Bracket> bracket = std::nullopt);

enum class SingularityKind { RealPole, ComplexPair, BranchPoint };

const char* to_string(SingularityKind kind) noexcept;

struct SingularityReport {
    Side side;
    ComplexReal location;  // for ComplexPair, the member with Im < 0
    SingularityKind kind;
};

// Finite wells: zeros of cos√E + √(V−E)·sin√E/√E on the principal sheet,
// located by a complex grid scan and 2D Newton, compared against the branch
// point E = V; the nearer one is reported. Linear wells: first zero of
// Ai(−E/a^(2/3)).
SingularityReport find_singularity(const PotentialModel& m, Side side, const PrecisionContext& ctx);

// Closed-form curves (E, L_left, L_right) on a uniform grid of steps+1 nodes.
std::vector<std::array<Real, 3>> closed_curves(const PotentialModel& m, const Real& emin, const Real& emax, int steps);

}  // namespace logmatch
