#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "baesim/params.hpp"

namespace baesim {

/// Labeled table of a scalar metric over one or two axes. Rows are stored in
/// deterministic row-major axis order.
struct SweepResult {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string provenance_hash;  // hash of the generating parameters

    void add_row(std::vector<double> r) {
        if (r.size() != columns.size())
            throw ConfigError("SweepResult: row width does not match columns");
        rows.push_back(std::move(r));
    }
};

}  // namespace baesim
