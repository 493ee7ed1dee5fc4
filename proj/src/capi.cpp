#include "logmatch/logmatch.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "logmatch/matching.hpp"
#include "logmatch/rpm.hpp"

using namespace logmatch;

struct lm_model {
    PotentialModel model;
    PrecisionContext ctx;
    std::string literal;
};

struct lm_table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

namespace {

thread_local std::string g_last_error;

lm_status status_of(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Usage: return LM_E_USAGE;
        case ErrorKind::Parse: return LM_E_PARSE;
        case ErrorKind::Domain: return LM_E_DOMAIN;
        case ErrorKind::Bracket: return LM_E_BRACKET;
        case ErrorKind::Rank: return LM_E_RANK;
        case ErrorKind::NonConvergence: return LM_E_NONCONVERGENCE;
        case ErrorKind::Pole: return LM_E_POLE;
        case ErrorKind::Branch: return LM_E_BRANCH;
        case ErrorKind::Parity: return LM_E_PARITY;
        case ErrorKind::Normalization: return LM_E_NORMALIZATION;
        case ErrorKind::Input: return LM_E_INPUT;
        case ErrorKind::NoClosedForm: return LM_E_NO_CLOSED_FORM;
        case ErrorKind::TaylorBlind: return LM_E_TAYLOR_BLIND;
        case ErrorKind::CutoffTooSmall: return LM_E_CUTOFF_TOO_SMALL;
        case ErrorKind::Stiffness: return LM_E_STIFFNESS;
        case ErrorKind::NoCrossing: return LM_E_NO_CROSSING;
        case ErrorKind::SearchFailure: return LM_E_SEARCH_FAILURE;
        case ErrorKind::TrackingFailure: return LM_E_TRACKING_FAILURE;
        case ErrorKind::Range: return LM_E_RANGE;
        case ErrorKind::Inconclusive: return LM_E_INCONCLUSIVE;
        case ErrorKind::Io: return LM_E_IO;
        case ErrorKind::Internal: return LM_E_INTERNAL;
    }
    return LM_E_INTERNAL;
}

template <class F>
lm_status guarded(F&& body) {
    try {
        body();
        return LM_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return LM_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LM_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown exception";
        return LM_E_INTERNAL;
    }
}

void require(bool ok, const char* what) {
    if (!ok) fail(ErrorKind::Usage, what);
}

std::string show(const Real& x, int display_digits) {
    return display_digits > 0 ? format_real(x, display_digits) : format_full(x);
}

std::string show(const std::optional<Real>& x, int display_digits) {
    return x ? show(*x, display_digits) : std::string();
}

void emit(lm_table** out, lm_table&& t) { *out = new lm_table(std::move(t)); }

RpmCurveOptions curve_options(const lm_rpm_options* o) {
    RpmCurveOptions c;
    if (!o) return c;
    c.d = o->d;
    c.d_min = o->d_min;
    c.d_max = o->d_max;
    c.window = {o->window_lo, o->window_hi};
    c.grid = o->grid;
    return c;
}

void copy_out(const std::string& s, char* buf, size_t size) {
    if (s.size() + 1 > size) fail(ErrorKind::Usage, "output buffer of " + std::to_string(size) + " bytes is too small");
    std::memcpy(buf, s.c_str(), s.size() + 1);
}

}  // namespace

extern "C" {

const char* lm_last_error(void) { return g_last_error.c_str(); }

const char* lm_status_name(lm_status status) {
    switch (status) {
        case LM_OK: return "ok";
        case LM_E_USAGE: return to_string(ErrorKind::Usage);
        case LM_E_PARSE: return to_string(ErrorKind::Parse);
        case LM_E_DOMAIN: return to_string(ErrorKind::Domain);
        case LM_E_BRACKET: return to_string(ErrorKind::Bracket);
        case LM_E_RANK: return to_string(ErrorKind::Rank);
        case LM_E_NONCONVERGENCE: return to_string(ErrorKind::NonConvergence);
        case LM_E_POLE: return to_string(ErrorKind::Pole);
        case LM_E_BRANCH: return to_string(ErrorKind::Branch);
        case LM_E_PARITY: return to_string(ErrorKind::Parity);
        case LM_E_NORMALIZATION: return to_string(ErrorKind::Normalization);
        case LM_E_INPUT: return to_string(ErrorKind::Input);
        case LM_E_NO_CLOSED_FORM: return to_string(ErrorKind::NoClosedForm);
        case LM_E_TAYLOR_BLIND: return to_string(ErrorKind::TaylorBlind);
        case LM_E_CUTOFF_TOO_SMALL: return to_string(ErrorKind::CutoffTooSmall);
        case LM_E_STIFFNESS: return to_string(ErrorKind::Stiffness);
        case LM_E_NO_CROSSING: return to_string(ErrorKind::NoCrossing);
        case LM_E_SEARCH_FAILURE: return to_string(ErrorKind::SearchFailure);
        case LM_E_TRACKING_FAILURE: return to_string(ErrorKind::TrackingFailure);
        case LM_E_RANGE: return to_string(ErrorKind::Range);
        case LM_E_INCONCLUSIVE: return to_string(ErrorKind::Inconclusive);
        case LM_E_IO: return to_string(ErrorKind::Io);
        case LM_E_INTERNAL: return to_string(ErrorKind::Internal);
    }
    return "unknown";
}

lm_status lm_model_parse(const char* literal, int digits, lm_model** out) {
    return guarded([&] {
        require(literal && out, "lm_model_parse: null argument");
        PrecisionContext ctx(digits);
        PotentialModel m = parse_model(literal, ctx);
        *out = new lm_model{m, ctx, model_literal(m)};
    });
}

void lm_model_free(lm_model* model) { delete model; }

const char* lm_model_literal(const lm_model* model) { return model ? model->literal.c_str() : ""; }

const char* lm_model_kind(const lm_model* model) { return model ? model_kind(model->model) : ""; }

lm_status lm_format_decimal(const char* text, int digits, int display_digits, char* buf, size_t size) {
    return guarded([&] {
        require(text && buf, "lm_format_decimal: null argument");
        copy_out(show(parse_real(text, PrecisionContext(digits)), display_digits), buf, size);
    });
}

lm_status lm_convergence_table(const lm_model* model, const int* orders, size_t count, int raw_degree,
                               int display_digits, lm_table** out) {
    return guarded([&] {
        require(model && out && (orders || count == 0), "lm_convergence_table: null argument");
        std::vector<int> ns(orders, orders + count);
        auto rows = convergence_table(model->model, ns, model->ctx, raw_degree != 0);
        lm_table t{{"n", "degree", "E0"}, {}};
        for (const auto& r : rows) {
            t.rows.push_back({std::to_string(r.order_n), std::to_string(r.degree), show(r.estimate, display_digits)});
        }
        emit(out, std::move(t));
    });
}

lm_status lm_series_table(const lm_model* model, int order, lm_method method, int display_digits, lm_table** out) {
    return guarded([&] {
        require(model && out, "lm_series_table: null argument");
        std::optional<ExpansionMethod> m;
        switch (method) {
            case LM_METHOD_DEFAULT: break;
            case LM_METHOD_CLOSED: m = ExpansionMethod::ClosedAlgebra; break;
            case LM_METHOD_AIRY: m = ExpansionMethod::AiryRatio; break;
            case LM_METHOD_HIERARCHY: m = ExpansionMethod::Hierarchy; break;
            default: fail(ErrorKind::Usage, "unknown expansion method " + std::to_string(method));
        }
        LogDerivSeries right = expand(model->model, Side::Right, order, model->ctx, m);
        Series left_series = is_mirror_symmetric(model->model)
                                 ? negated(right.series)
                                 : expand(model->model, Side::Left, order, model->ctx, m).series;
        lm_table t{{"k", "L_left_k", "L_right_k"}, {}};
        for (int k = 0; k <= order; ++k) {
            t.rows.push_back({std::to_string(k), show(left_series[k], display_digits),
                              show(right.series[k], display_digits)});
        }
        emit(out, std::move(t));
    });
}

lm_status lm_exact_ground_state(const lm_model* model, int display_digits, lm_table** out) {
    return guarded([&] {
        require(model && out, "lm_exact_ground_state: null argument");
        Real e = exact_ground_state(model->model, model->ctx);
        emit(out, lm_table{{"E0"}, {{show(e, display_digits)}}});
    });
}

lm_status lm_singularity(const lm_model* model, lm_side side, int display_digits, lm_table** out) {
    return guarded([&] {
        require(model && out, "lm_singularity: null argument");
        require(side == LM_SIDE_LEFT || side == LM_SIDE_RIGHT, "lm_singularity: side must be left or right");
        SingularityReport r = find_singularity(model->model, side == LM_SIDE_LEFT ? Side::Left : Side::Right,
                                               model->ctx);
        emit(out, lm_table{{"re", "im", "kind"},
                           {{show(r.location.re, display_digits), show(r.location.im, display_digits),
                             to_string(r.kind)}}});
    });
}

lm_status lm_figure(const lm_model* model, const char* emin, const char* emax, int steps, int display_digits,
                    lm_table** out) {
    return guarded([&] {
        require(model && emin && emax && out, "lm_figure: null argument");
        auto rows = closed_curves(model->model, parse_real(emin, model->ctx), parse_real(emax, model->ctx), steps);
        lm_table t{{"E", "L_left", "L_right"}, {}};
        for (const auto& r : rows) {
            t.rows.push_back({show(r[0], display_digits), show(r[1], display_digits), show(r[2], display_digits)});
        }
        emit(out, std::move(t));
    });
}

void lm_rpm_options_default(lm_rpm_options* options) {
    if (!options) return;
    RpmCurveOptions c;
    *options = lm_rpm_options{c.d, c.d_min, c.d_max, c.window.first, c.window.second, c.grid};
}

lm_status lm_rpm_curves(const lm_model* model, const char* emin, const char* emax, int steps,
                        const lm_rpm_options* options, int display_digits, lm_table** out) {
    return guarded([&] {
        require(model && emin && emax && out, "lm_rpm_curves: null argument");
        RpmCurveOptions o = curve_options(options);
        auto v = potential_taylor(model->model, hankel_count(o.d_max, o.d));
        auto pts = rpm_curves(v, parse_real(emin, model->ctx), parse_real(emax, model->ctx), steps, o, model->ctx);
        lm_table t{{"E", "L_left", "L_right", "note"}, {}};
        for (const auto& p : pts) {
            t.rows.push_back({show(p.E, display_digits), show(p.left, display_digits), show(p.right, display_digits),
                              p.note});
        }
        emit(out, std::move(t));
    });
}

lm_status lm_rpm_solve(const lm_model* model, const lm_rpm_options* options, int display_digits, lm_table** out) {
    return guarded([&] {
        require(model && out, "lm_rpm_solve: null argument");
        RpmSolveOptions o;
        if (options) {
            o.d = options->d;
            o.d_min = options->d_min;
            o.d_max = options->d_max;
        }
        auto v = potential_taylor(model->model, even_odd_count(o.d_max, o.d));
        auto ladder = rpm_solve(v, o, model->ctx);
        lm_table t{{"D", "E", "g0", "digits", "note"}, {}};
        for (const auto& s : ladder) {
            t.rows.push_back({std::to_string(s.D), show(s.E, display_digits), show(s.g0, display_digits),
                              std::to_string(s.digits), s.note});
        }
        emit(out, std::move(t));
    });
}

lm_status lm_rpm_crossing(const lm_table* curves, int digits, int display_digits, char* buf, size_t size) {
    return guarded([&] {
        require(curves && buf, "lm_rpm_crossing: null argument");
        require(curves->header.size() >= 3 && curves->header[0] == "E" && curves->header[1] == "L_left" &&
                    curves->header[2] == "L_right",
                "lm_rpm_crossing: table does not have E,L_left,L_right columns");
        PrecisionContext ctx(digits);
        std::vector<RpmCurvePoint> pts;
        for (const auto& row : curves->rows) {
            RpmCurvePoint p{parse_real(row[0], ctx), std::nullopt, std::nullopt, {}};
            if (!row[1].empty()) p.left = parse_real(row[1], ctx);
            if (!row[2].empty()) p.right = parse_real(row[2], ctx);
            pts.push_back(std::move(p));
        }
        copy_out(show(curves_crossing(pts), display_digits), buf, size);
    });
}

size_t lm_table_rows(const lm_table* table) { return table ? table->rows.size() : 0; }

size_t lm_table_cols(const lm_table* table) { return table ? table->header.size() : 0; }

const char* lm_table_header(const lm_table* table, size_t col) {
    if (!table || col >= table->header.size()) return nullptr;
    return table->header[col].c_str();
}

const char* lm_table_cell(const lm_table* table, size_t row, size_t col) {
    if (!table || row >= table->rows.size() || col >= table->rows[row].size()) return nullptr;
    return table->rows[row][col].c_str();
}

void lm_table_free(lm_table* table) { delete table; }

}  // extern "C"
