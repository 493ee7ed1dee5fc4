#pragma once

#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "logmatch/numerics.hpp"

namespace testing {

using logmatch::PrecisionContext;
using logmatch::Real;

inline Real num(const char* text, const PrecisionContext& ctx) { return logmatch::parse_real(text, ctx); }

inline bool close(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

inline double gap(const Real& a, const Real& b) { return abs(a - b).to_double(); }

// Rows of a CSV under tests/data, header dropped.
inline std::vector<std::vector<std::string>> data_rows(const std::string& name) {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/" + name);
    REQUIRE_MESSAGE(in.good(), "missing test data " << name);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

inline std::map<std::string, std::string> references() {
    std::map<std::string, std::string> out;
    for (const auto& r : data_rows("references.csv")) out[r[0]] = r[1];
    return out;
}

}  // namespace testing
