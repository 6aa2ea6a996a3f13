#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace schwarzchain::tools {

using json = nlohmann::ordered_json;

/// One command's tabular result plus the settings that produced it.
struct Dataset {
    std::string command;
    std::vector<std::pair<std::string, json>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void set(std::string key, json value) {
        config.emplace_back(std::move(key), std::move(value));
    }
};

/// Cell rendering shared by both formats where text is needed: floats print
/// with 17 significant digits so values round-trip exactly.
std::string format_cell(const json& v);

void write_csv(std::ostream& os, const Dataset& d);
void write_json(std::ostream& os, const Dataset& d);
Dataset read_json(std::istream& is);

/// Dispatch on format ("csv" or "json") and destination ("" = stdout).
void write_dataset(const std::string& out_path, const std::string& format,
                   const Dataset& d);

} // namespace schwarzchain::tools
