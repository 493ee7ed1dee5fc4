#include "logmatch/models.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "logmatch/special.hpp"

namespace logmatch {

const char* to_string(Side side) noexcept { return side == Side::Left ? "left" : "right"; }

namespace {

template <class... F>
struct Overloaded : F... {
    using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

[[noreturn]] void bad_literal(std::string_view literal, const std::string& why) {
    fail(ErrorKind::Parse, "model literal \"" + std::string(literal) + "\": " + why);
}

std::vector<std::string> split_words(std::string_view text) {
    std::vector<std::string> words;
    std::istringstream in{std::string(text)};
    for (std::string w; in >> w;) words.push_back(w);
    return words;
}

}  // namespace

PotentialModel parse_model(std::string_view literal, const PrecisionContext& ctx) {
    auto words = split_words(literal);
    if (words.empty()) bad_literal(literal, "empty");

    struct Shape {
        std::vector<std::string> keys;
        bool positive;
    };
    static const std::map<std::string, Shape> shapes = {
        {"sym-well", {{"vR"}, true}},         {"nonsym-well", {{"vL", "vR"}, true}},
        {"linear", {{"aL", "aR"}, true}},     {"quadratic", {{"aL", "aR"}, true}},
        {"anharmonic", {{"lambda"}, false}},
    };
    auto shape = shapes.find(words[0]);
    if (shape == shapes.end()) {
        bad_literal(literal, "unknown model kind \"" + words[0] +
                                 "\" (expected sym-well, nonsym-well, linear, quadratic or anharmonic)");
    }

    std::map<std::string, Real> values;
    for (std::size_t i = 1; i < words.size(); ++i) {
        auto eq = words[i].find('=');
        if (eq == std::string::npos) bad_literal(literal, "expected key=value, got \"" + words[i] + "\"");
        std::string key = words[i].substr(0, eq);
        const auto& keys = shape->second.keys;
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            bad_literal(literal, "unknown parameter \"" + key + "\" for " + words[0]);
        }
        if (values.count(key)) bad_literal(literal, "parameter \"" + key + "\" given twice");
        Real v(ctx);
        try {
            v = parse_real(std::string_view(words[i]).substr(eq + 1), ctx);
        } catch (const Error& e) {
            bad_literal(literal, e.what());
        }
        if (shape->second.positive && !(v > 0L)) bad_literal(literal, "parameter \"" + key + "\" must be positive");
        values.emplace(key, std::move(v));
    }
    for (const auto& key : shape->second.keys) {
        if (!values.count(key)) bad_literal(literal, "missing parameter \"" + key + "\"");
    }

    const std::string& kind = words[0];
    if (kind == "sym-well") return SymmetricFiniteWell{values.at("vR")};
    if (kind == "nonsym-well") return NonSymmetricFiniteWell{values.at("vL"), values.at("vR")};
    if (kind == "linear") return LinearWell{values.at("aL"), values.at("aR")};
    if (kind == "quadratic") return QuadraticWell{values.at("aL"), values.at("aR")};
    return CubicQuartic{values.at("lambda")};
}

std::string model_literal(const PotentialModel& m, int digits) {
    // Trailing zeros of the mantissa are dropped: "vR=1", not "vR=1.000...".
    auto f = [digits](const Real& x) {
        std::string s = format_real(x, digits);
        std::size_t e = s.find('e');
        std::string exponent = e == std::string::npos ? "" : s.substr(e);
        std::string mantissa = s.substr(0, e);
        if (mantissa.find('.') != std::string::npos) {
            mantissa.erase(mantissa.find_last_not_of('0') + 1);
            if (mantissa.back() == '.') mantissa.pop_back();
        }
        return mantissa + exponent;
    };
    return std::visit(
        Overloaded{
            [&](const SymmetricFiniteWell& w) { return "sym-well vR=" + f(w.v_right); },
            [&](const NonSymmetricFiniteWell& w) { return "nonsym-well vL=" + f(w.v_left) + " vR=" + f(w.v_right); },
            [&](const LinearWell& w) { return "linear aL=" + f(w.a_left) + " aR=" + f(w.a_right); },
            [&](const QuadraticWell& w) { return "quadratic aL=" + f(w.a_left) + " aR=" + f(w.a_right); },
            [&](const CubicQuartic& p) { return "anharmonic lambda=" + f(p.lambda); },
        },
        m);
}

const char* model_kind(const PotentialModel& m) noexcept {
    static constexpr const char* names[] = {"sym-well", "nonsym-well", "linear", "quadratic", "anharmonic"};
    return names[m.index()];
}

bool is_finite_well(const PotentialModel& m) noexcept {
    return std::holds_alternative<SymmetricFiniteWell>(m) || std::holds_alternative<NonSymmetricFiniteWell>(m);
}

const Real& side_parameter(const PotentialModel& m, Side side) {
    bool left = side == Side::Left;
    return std::visit(
        Overloaded{
            [](const SymmetricFiniteWell& w) -> const Real& { return w.v_right; },
            [&](const NonSymmetricFiniteWell& w) -> const Real& { return left ? w.v_left : w.v_right; },
            [&](const LinearWell& w) -> const Real& { return left ? w.a_left : w.a_right; },
            [&](const QuadraticWell& w) -> const Real& { return left ? w.a_left : w.a_right; },
            [](const CubicQuartic&) -> const Real& {
                fail(ErrorKind::NoClosedForm, "the anharmonic model has no per-side parameter");
            },
        },
        m);
}

bool is_mirror_symmetric(const PotentialModel& m) {
    if (std::holds_alternative<SymmetricFiniteWell>(m)) return true;
    if (const auto* p = std::get_if<CubicQuartic>(&m)) return p->lambda.is_zero();
    return side_parameter(m, Side::Left) == side_parameter(m, Side::Right);
}

Real potential_eval(const PotentialModel& m, const Real& x) {
    const bool outside = abs(x) > 1L;
    return std::visit(
        Overloaded{
            [&](const SymmetricFiniteWell& w) { return outside ? Real(w.v_right, x.context()) : x.zero_like(); },
            [&](const NonSymmetricFiniteWell& w) {
                if (!outside) return x.zero_like();
                return Real(x.signbit() ? w.v_left : w.v_right, x.context());
            },
            [&](const LinearWell& w) { return x.signbit() ? -(w.a_left * x) : w.a_right * x; },
            [&](const QuadraticWell& w) { return (x.signbit() ? w.a_left : w.a_right) * x * x; },
            [&](const CubicQuartic& p) { return x * x * x * (x + p.lambda); },
        },
        m);
}

namespace {

// ψ'/ψ at 0 for the solution that is cos/sin inside |x| < 1 and decays as
// exp(−κx) beyond x = 1, written with sin(k)/k so that E = 0 is regular.
Real well_right(const Real& height, const Real& E) {
    const PrecisionContext ctx = E.context();
    // E = height itself is kept: κ = 0 there and the form stays finite.
    if (E > height) {
        fail(ErrorKind::Domain, "E = " + format_real(E, 15) + " lies above the wall height " +
                                    format_real(height, 15) + "; only bound states are in scope");
    }
    PrecisionContext w = ctx.padded(5);
    Real e(E, w);
    Real cos_k(w), sinc_k(w), k_sin_k(w);
    if (!e.signbit()) {
        Real k = sqrt(e);
        cos_k = cos(k);
        sinc_k = k.is_zero() ? Real(1, w) : sin(k) / k;
        k_sin_k = k * sin(k);
    } else {
        Real q = sqrt(-e);
        cos_k = cosh(q);
        sinc_k = sinh(q) / q;
        k_sin_k = -(q * sinh(q));
    }
    Real kappa = sqrt(Real(height, w) - e);
    Real den = cos_k + kappa * sinc_k;
    if (abs(den) < Real::pow10(-(ctx.digits() - 5), w)) {
        fail(ErrorKind::Pole, "well closed form has a vanishing denominator at E = " + format_real(E, 20));
    }
    return Real((k_sin_k - kappa * cos_k) / den, ctx);
}

// a^(1/3) Ai'(ε)/Ai(ε) with ε = −E/a^(2/3)
Real linear_right(const Real& a, const Real& E) {
    const PrecisionContext ctx = E.context();
    PrecisionContext w = ctx.padded(5);
    Real aw(a, w);
    Real cube_root = cbrt(aw);
    Real eps = -Real(E, w) / (cube_root * cube_root);
    AiryValue v = airy(eps, w);
    if (abs(v.ai) < Real::pow10(-(ctx.digits() - 5), w)) {
        fail(ErrorKind::Pole, "Ai vanishes at E = " + format_real(E, 20));
    }
    return Real(cube_root * v.ai_prime / v.ai, ctx);
}

// −β D_{ν+1}(0)/D_ν(0), β = √2 a^(1/4), ν = E/(2√a) − 1/2
Real quadratic_right(const Real& a, const Real& E) {
    const PrecisionContext ctx = E.context();
    PrecisionContext w = ctx.padded(5);
    Real aw(a, w);
    Real root_a = sqrt(aw);
    Real beta = sqrt(root_a * 2L);
    Real nu = Real(E, w) / (root_a * 2L) - Real(1, w) / 2L;
    Real den(w);
    try {
        den = pcf_at_zero(nu, w);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Pole) throw;
        fail(ErrorKind::Pole, "D_nu(0) vanishes at E = " + format_real(E, 20));
    }
    Real num(w);
    try {
        num = pcf_at_zero(nu + 1L, w);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Pole) throw;
        return Real(ctx);  // D_{ν+1}(0) = 0
    }
    return Real(-(beta * num / den), ctx);
}

}  // namespace

Real closed_logderiv(const PotentialModel& m, Side side, const Real& E) {
    if (!E.is_finite()) fail(ErrorKind::Domain, "non-finite energy");
    if (std::holds_alternative<CubicQuartic>(m)) {
        fail(ErrorKind::NoClosedForm, "the anharmonic model has no closed-form logarithmic derivative");
    }
    // Mirror x → −x: the left solution for parameter p is minus the right
    // solution for the same parameter.
    const Real& p = side_parameter(m, side);
    Real right = std::visit(
        Overloaded{
            [&](const SymmetricFiniteWell&) { return well_right(p, E); },
            [&](const NonSymmetricFiniteWell&) { return well_right(p, E); },
            [&](const LinearWell&) { return linear_right(p, E); },
            [&](const QuadraticWell&) { return quadratic_right(p, E); },
            [&](const CubicQuartic&) -> Real { fail(ErrorKind::Internal, "unreachable"); },
        },
        m);
    return side == Side::Left ? -right : right;
}

std::vector<Real> potential_taylor(const PotentialModel& m, int count) {
    const auto* p = std::get_if<CubicQuartic>(&m);
    if (!p) {
        fail(ErrorKind::TaylorBlind, std::string(model_kind(m)) +
                                         " is piecewise: its Taylor data at x = 0 cannot see the walls or the kink");
    }
    if (count < 1) fail(ErrorKind::Usage, "potential_taylor needs count >= 1");
    std::vector<Real> v(static_cast<std::size_t>(count), p->lambda.zero_like());
    if (count > 3) v[3] = p->lambda;
    if (count > 4) v[4] = 1L;
    return v;
}

}  // namespace logmatch
