// logmatch command-line front end. Talks to the library only through the C
// interface in logmatch.h.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "logmatch/logmatch.h"

namespace {

enum Exit { kOk = 0, kUsage = 2, kNumerical = 3, kIo = 4, kInternal = 5 };

struct Failure {
    int code;
    std::string message;
};

[[noreturn]] void usage(const std::string& msg) { throw Failure{kUsage, msg}; }

int exit_code(lm_status s) {
    switch (s) {
        case LM_OK: return kOk;
        case LM_E_USAGE:
        case LM_E_PARSE: return kUsage;
        case LM_E_IO: return kIo;
        case LM_E_INTERNAL: return kInternal;
        default: return kNumerical;
    }
}

void check(lm_status s) {
    if (s != LM_OK) throw Failure{exit_code(s), std::string(lm_status_name(s)) + ": " + lm_last_error()};
}

struct ModelDeleter {
    void operator()(lm_model* m) const { lm_model_free(m); }
};
struct TableDeleter {
    void operator()(lm_table* t) const { lm_table_free(t); }
};
using ModelPtr = std::unique_ptr<lm_model, ModelDeleter>;
using TablePtr = std::unique_ptr<lm_table, TableDeleter>;

// Every setting, in the order it is echoed. Flags override the config file,
// which overrides the defaults.
const std::vector<std::string> kKeys = {"model",  "precision", "display_digits", "full_digits", "orders", "raw_degree",
                                        "order",  "method",    "side",           "emin",        "emax",   "steps",
                                        "lambda", "d",         "dmin",           "dmax",        "window", "grid",
                                        "out"};

struct Settings {
    std::map<std::string, std::string> flag;  // from argv
    std::map<std::string, std::string> file;  // from --config

    std::optional<std::string> get(const std::string& key) const {
        if (auto it = flag.find(key); it != flag.end()) return it->second;
        if (auto it = file.find(key); it != file.end()) return it->second;
        return std::nullopt;
    }
    std::string get_or(const std::string& key, const std::string& fallback) const {
        return get(key).value_or(fallback);
    }
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Failure{kIo, "cannot read config file " + path};
    std::map<std::string, std::string> out;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) usage(path + ":" + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        for (auto& c : key) c = c == '-' ? '_' : c;
        bool known = false;
        for (const auto& k : kKeys) known = known || k == key;
        if (!known) usage(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (out.count(key)) usage(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        out[key] = value;
    }
    return out;
}

int to_int(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        long v = std::stol(text, &used);
        if (used != text.size() || v < -1000000000L || v > 1000000000L) throw std::invalid_argument(text);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        usage(key + ": malformed integer '" + text + "'");
    }
}

double to_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        usage(key + ": malformed number '" + text + "'");
    }
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    usage(key + ": expected true or false, got '" + text + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

// "a:b:c" (start, stop inclusive, step) or a comma list.
std::vector<int> parse_orders(const std::string& text) {
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        auto p = split(text, ':');
        if (p.size() != 3) usage("orders: expected start:stop:step, got '" + text + "'");
        int a = to_int("orders", p[0]), b = to_int("orders", p[1]), c = to_int("orders", p[2]);
        if (c <= 0 || a > b) usage("orders: need start <= stop and step > 0 in '" + text + "'");
        for (int n = a; n <= b; n += c) out.push_back(n);
    } else {
        for (const auto& p : split(text, ',')) out.push_back(to_int("orders", p));
    }
    return out;
}

// Syntax check only; the library parses at working precision.
std::string decimal(const std::string& key, const std::string& text) {
    to_double(key, text);
    return text;
}

struct Run {
    std::string command;
    std::vector<std::pair<std::string, std::string>> echo;  // effective config
    std::optional<std::string> out;

    void note(const std::string& key, const std::string& value) { echo.emplace_back(key, value); }

    std::string config_line() const {
        std::string line = "# config: command=" + command;
        for (const auto& [k, v] : echo) line += " " + k + "=" + (v.find(' ') != std::string::npos ? "\"" + v + "\"" : v);
        return line;
    }

    void write(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) const {
        std::ostringstream csv;
        csv << config_line() << "\n";
        for (std::size_t i = 0; i < header.size(); ++i) csv << (i ? "," : "") << header[i];
        csv << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << row[i];
            csv << "\n";
        }
        if (out) {
            std::ofstream f(*out, std::ios::binary);
            if (!f) throw Failure{kIo, "cannot open " + *out + " for writing"};
            f << csv.str();
            f.flush();
            if (!f) throw Failure{kIo, "write to " + *out + " failed"};
        } else {
            std::cout << csv.str();
            std::cout.flush();
        }
    }
};

std::vector<std::vector<std::string>> cells(const lm_table* t, const std::vector<std::size_t>& cols) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < lm_table_rows(t); ++r) {
        std::vector<std::string> row;
        for (auto c : cols) row.emplace_back(lm_table_cell(t, r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

struct Common {
    int precision;
    int display;
};

Common common(const Settings& s, Run& run, int default_precision, int default_display) {
    Common c{to_int("precision", s.get_or("precision", std::to_string(default_precision))), 0};
    if (c.precision < 30) usage("precision: at least 30 digits are required, got " + std::to_string(c.precision));
    // A flag of either kind beats a config entry of the other.
    bool full = false;
    if (s.flag.count("full_digits")) {
        full = to_bool("full_digits", s.flag.at("full_digits"));
    } else if (!s.flag.count("display_digits") && s.file.count("full_digits")) {
        full = to_bool("full_digits", s.file.at("full_digits"));
    }
    c.display = to_int("display_digits", s.get_or("display_digits", std::to_string(default_display)));
    if (c.display < 1) usage("display_digits: must be positive");
    run.note("precision", std::to_string(c.precision));
    if (full) {
        c.display = 0;
        run.note("full_digits", "true");
    } else {
        run.note("display_digits", std::to_string(c.display));
    }
    return c;
}

ModelPtr load_model(const Settings& s, Run& run, int precision) {
    auto literal = s.get("model");
    if (!literal || trim(*literal).empty()) usage(run.command + ": a model literal is required");
    lm_model* m = nullptr;
    check(lm_model_parse(literal->c_str(), precision, &m));
    ModelPtr p(m);
    run.note("model", lm_model_literal(m));
    return p;
}

void cmd_table(const Settings& s, Run& run) {
    Common c = common(s, run, 60, 10);
    ModelPtr m = load_model(s, run, c.precision);
    if (std::string(lm_model_kind(m.get())) == "anharmonic") {
        usage("table: the anharmonic model has no small-energy series; use 'rpm solve'");
    }
    auto orders_text = s.get("orders");
    if (!orders_text) usage("table: --orders is required");
    auto orders = parse_orders(*orders_text);
    bool raw = to_bool("raw_degree", s.get_or("raw_degree", "false"));
    run.note("orders", *orders_text);
    run.note("raw_degree", raw ? "true" : "false");
    lm_table* t = nullptr;
    check(lm_convergence_table(m.get(), orders.data(), orders.size(), raw ? 1 : 0, c.display, &t));
    TablePtr table(t);
    std::cerr << run.config_line() << "\n";
    run.write({"n", "E0"}, cells(t, {0, 2}));
}

void cmd_series(const Settings& s, Run& run) {
    Common c = common(s, run, 60, 10);
    if (!s.get("full_digits") && !s.get("display_digits")) c.display = 0;  // full precision unless asked
    ModelPtr m = load_model(s, run, c.precision);
    int order = to_int("order", s.get_or("order", "10"));
    std::string method = s.get_or("method", "default");
    lm_method lm = LM_METHOD_DEFAULT;
    if (method == "closed") lm = LM_METHOD_CLOSED;
    else if (method == "airy") lm = LM_METHOD_AIRY;
    else if (method == "hierarchy") lm = LM_METHOD_HIERARCHY;
    else if (method != "default") usage("method: expected default, closed, airy or hierarchy, got '" + method + "'");
    run.note("order", std::to_string(order));
    run.note("method", method);
    lm_table* t = nullptr;
    check(lm_series_table(m.get(), order, lm, c.display, &t));
    TablePtr table(t);
    std::cerr << run.config_line() << "\n";
    run.write({"k", "L_left_k", "L_right_k"}, cells(t, {0, 1, 2}));
}

void cmd_exact(const Settings& s, Run& run) {
    Common c = common(s, run, 60, 10);
    ModelPtr m = load_model(s, run, c.precision);
    lm_table* t = nullptr;
    check(lm_exact_ground_state(m.get(), c.display, &t));
    TablePtr table(t);
    std::cerr << run.config_line() << "\n";
    run.write({"E0"}, cells(t, {0}));
}

void cmd_singularity(const Settings& s, Run& run) {
    Common c = common(s, run, 60, 10);
    ModelPtr m = load_model(s, run, c.precision);
    std::string side = s.get_or("side", "right");
    if (side != "left" && side != "right") usage("side: expected left or right, got '" + side + "'");
    run.note("side", side);
    lm_table* t = nullptr;
    check(lm_singularity(m.get(), side == "left" ? LM_SIDE_LEFT : LM_SIDE_RIGHT, c.display, &t));
    TablePtr table(t);
    std::cerr << run.config_line() << "\n";
    std::cerr << "kind: " << lm_table_cell(t, 0, 2) << "\n";
    run.write({"re", "im"}, cells(t, {0, 1}));
}

void cmd_figure(const Settings& s, Run& run) {
    Common c = common(s, run, 60, 10);
    ModelPtr m = load_model(s, run, c.precision);
    std::string emin = decimal("emin", s.get_or("emin", "0"));
    std::string emax = decimal("emax", s.get_or("emax", "1"));
    int steps = to_int("steps", s.get_or("steps", "200"));
    run.note("emin", emin);
    run.note("emax", emax);
    run.note("steps", std::to_string(steps));
    lm_table* t = nullptr;
    check(lm_figure(m.get(), emin.c_str(), emax.c_str(), steps, c.display, &t));
    TablePtr table(t);
    std::cerr << run.config_line() << "\n";
    run.write({"E", "L_left", "L_right"}, cells(t, {0, 1, 2}));
}

lm_rpm_options rpm_options(const Settings& s, Run& run, bool curves) {
    lm_rpm_options o;
    lm_rpm_options_default(&o);
    o.d = to_int("d", s.get_or("d", std::to_string(o.d)));
    o.d_min = to_int("dmin", s.get_or("dmin", std::to_string(o.d_min)));
    o.d_max = to_int("dmax", s.get_or("dmax", std::to_string(o.d_max)));
    run.note("d", std::to_string(o.d));
    run.note("dmin", std::to_string(o.d_min));
    run.note("dmax", std::to_string(o.d_max));
    if (curves) {
        if (auto w = s.get("window")) {
            auto p = split(*w, ':');
            if (p.size() != 2) usage("window: expected lo:hi, got '" + *w + "'");
            o.window_lo = to_double("window", p[0]);
            o.window_hi = to_double("window", p[1]);
        }
        o.grid = to_int("grid", s.get_or("grid", std::to_string(o.grid)));
        std::ostringstream w;
        w << o.window_lo << ":" << o.window_hi;
        run.note("window", w.str());
        run.note("grid", std::to_string(o.grid));
    }
    return o;
}

ModelPtr rpm_model(const Settings& s, Run& run, int precision) {
    std::string lambda = decimal("lambda", s.get_or("lambda", "0.1"));
    std::string literal = "anharmonic lambda=" + lambda;
    lm_model* m = nullptr;
    check(lm_model_parse(literal.c_str(), precision, &m));
    run.note("model", lm_model_literal(m));
    return ModelPtr(m);
}

int rpm_precision_default(const Settings& s) {
    int dmax = to_int("dmax", s.get_or("dmax", "15"));
    return dmax > 10 ? 100 : 60;
}

void cmd_rpm_curves(const Settings& s, Run& run) {
    Common c = common(s, run, rpm_precision_default(s), 10);
    ModelPtr m = rpm_model(s, run, c.precision);
    std::string emin = decimal("emin", s.get_or("emin", "0"));
    std::string emax = decimal("emax", s.get_or("emax", "1.2"));
    int steps = to_int("steps", s.get_or("steps", "120"));
    run.note("emin", emin);
    run.note("emax", emax);
    run.note("steps", std::to_string(steps));
    lm_rpm_options o = rpm_options(s, run, true);
    std::cerr << run.config_line() << "\n";
    lm_table* t = nullptr;
    check(lm_rpm_curves(m.get(), emin.c_str(), emax.c_str(), steps, &o, 0, &t));
    TablePtr table(t);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t r = 0; r < lm_table_rows(t); ++r) {
        std::vector<std::string> row;
        for (std::size_t col = 0; col < 3; ++col) {
            std::string v = lm_table_cell(t, r, col);
            if (!v.empty() && c.display > 0) {
                char buf[256];
                check(lm_format_decimal(v.c_str(), c.precision, c.display, buf, sizeof buf));
                v = buf;
            }
            row.push_back(v);
        }
        std::string note = lm_table_cell(t, r, 3);
        if (!note.empty()) std::cerr << "E = " << row[0] << ": " << note << "\n";
        rows.push_back(std::move(row));
    }
    char crossing[512];
    lm_status cs = lm_rpm_crossing(t, c.precision, c.display > 0 ? c.display : 0, crossing, sizeof crossing);
    if (cs == LM_OK) {
        std::cerr << "crossing: E = " << crossing << "\n";
    } else {
        std::cerr << "crossing: none (" << lm_last_error() << ")\n";
    }
    run.write({"E", "L_left", "L_right"}, rows);
}

void cmd_rpm_solve(const Settings& s, Run& run) {
    Common c = common(s, run, rpm_precision_default(s), 20);
    ModelPtr m = rpm_model(s, run, c.precision);
    lm_rpm_options o = rpm_options(s, run, false);
    std::cerr << run.config_line() << "\n";
    lm_table* t = nullptr;
    check(lm_rpm_solve(m.get(), &o, c.display, &t));
    TablePtr table(t);
    for (std::size_t r = 0; r < lm_table_rows(t); ++r) {
        std::string note = lm_table_cell(t, r, 4);
        if (!note.empty()) std::cerr << "D = " << lm_table_cell(t, r, 0) << ": " << note << "\n";
    }
    run.write({"D", "E", "g0"}, cells(t, {0, 1, 2}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ground-state energies by logarithmic-derivative matching and the Riccati-Pade method"};
    app.require_subcommand(1);
    app.fallthrough();

    std::map<std::string, std::string> flags;
    std::string config_path;
    bool full_digits = false, raw_degree = false;
    app.add_option("--config", config_path, "key=value file; flags override it");
    auto str = [&](CLI::App* where, const std::string& name, const std::string& key, const std::string& help) {
        where->add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
    };
    str(&app, "--precision", "precision", "working precision in decimal digits (default 60; 100 for rpm with dmax > 10)");
    str(&app, "--display-digits", "display_digits", "significant digits printed (default 10; 20 for rpm solve)");
    str(&app, "--out", "out", "output CSV path (default stdout)");
    app.add_flag("--full-digits", full_digits, "print every carried digit");

    std::vector<std::string> model_words;
    auto model_cmd = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("model", model_words, "model literal, e.g. sym-well vR=1");
        return sub;
    };

    CLI::App* table = model_cmd("table", "convergence table of series estimates of E0");
    str(table, "--orders", "orders", "row indices n as start:stop:step or a comma list");
    table->add_flag("--raw-degree", raw_degree, "treat n as the series truncation degree");

    CLI::App* series = model_cmd("series", "coefficients of L_left(0,E) and L_right(0,E)");
    str(series, "--order", "order", "highest power of E (default 10)");
    str(series, "--method", "method", "default, closed, airy or hierarchy");

    CLI::App* exact = model_cmd("exact", "ground state from the closed forms");

    CLI::App* singularity = model_cmd("singularity", "nearest singularity of the small-energy series");
    str(singularity, "--side", "side", "left or right (default right)");

    CLI::App* figure = model_cmd("figure", "closed-form L_left(0,E) and L_right(0,E) curves");
    str(figure, "--emin", "emin", "first energy (default 0)");
    str(figure, "--emax", "emax", "last energy (default 1)");
    str(figure, "--steps", "steps", "number of intervals (default 200)");

    CLI::App* rpm = app.add_subcommand("rpm", "Riccati-Pade method for V = x^4 + lambda x^3");
    rpm->require_subcommand(1);
    CLI::App* curves = rpm->add_subcommand("curves", "L_left(0,E), L_right(0,E) from Hankel root sequences");
    CLI::App* solve = rpm->add_subcommand("solve", "(E0, L(0,E0)) ladder from the even/odd determinant pair");
    for (CLI::App* sub : {curves, solve}) {
        str(sub, "--lambda", "lambda", "cubic coefficient (default 0.1)");
        str(sub, "--d", "d", "Hankel displacement (default 0)");
        str(sub, "--dmin", "dmin", "smallest determinant dimension (default 2)");
        str(sub, "--dmax", "dmax", "largest determinant dimension (default 15)");
    }
    str(curves, "--emin", "emin", "first energy (default 0)");
    str(curves, "--emax", "emax", "last energy (default 1.2)");
    str(curves, "--steps", "steps", "number of intervals (default 120)");
    str(curves, "--window", "window", "g0 scan window lo:hi (default -1.5:1.5)");
    str(curves, "--grid", "grid", "g0 scan intervals (default 400)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        Settings s;
        if (!config_path.empty()) s.file = read_config(config_path);
        s.flag = flags;
        if (full_digits) s.flag["full_digits"] = "true";
        if (raw_degree) s.flag["raw_degree"] = "true";
        if (!model_words.empty()) {
            std::string literal;
            for (const auto& w : model_words) literal += (literal.empty() ? "" : " ") + w;
            s.flag["model"] = literal;
        }
        if (s.flag.count("full_digits") && s.flag.count("display_digits")) {
            usage("--full-digits and --display-digits conflict");
        }

        Run run;
        run.out = s.get("out");
        if (table->parsed()) {
            run.command = "table";
            cmd_table(s, run);
        } else if (series->parsed()) {
            run.command = "series";
            cmd_series(s, run);
        } else if (exact->parsed()) {
            run.command = "exact";
            cmd_exact(s, run);
        } else if (singularity->parsed()) {
            run.command = "singularity";
            cmd_singularity(s, run);
        } else if (figure->parsed()) {
            run.command = "figure";
            cmd_figure(s, run);
        } else if (curves->parsed()) {
            run.command = "rpm-curves";
            cmd_rpm_curves(s, run);
        } else if (solve->parsed()) {
            run.command = "rpm-solve";
            cmd_rpm_solve(s, run);
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}
