#include "dataset.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>

#include "schwarzchain/errors.hpp"

#ifndef SCHWARZCHAIN_VERSION
#define SCHWARZCHAIN_VERSION "0.0.0"
#endif

namespace schwarzchain::tools {

std::string format_cell(const json& v) {
    if (v.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    return v.dump();
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

void write_csv(std::ostream& os, const Dataset& d) {
    os << "# command = " << d.command << "\n";
    for (const auto& [k, v] : d.config) {
        os << "# " << k << " = " << format_cell(v) << "\n";
    }
    for (std::size_t c = 0; c < d.columns.size(); ++c) {
        os << (c ? "," : "") << csv_escape(d.columns[c]);
    }
    os << "\n";
    for (const auto& row : d.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "") << csv_escape(format_cell(row[c]));
        }
        os << "\n";
    }
}

void write_json(std::ostream& os, const Dataset& d) {
    json j;
    j["command"] = d.command;
    json cfg = json::object();
    for (const auto& [k, v] : d.config) cfg[k] = v;
    j["config"] = cfg;
    j["columns"] = d.columns;
    j["rows"] = d.rows;
    j["provenance"] = json{{"version", SCHWARZCHAIN_VERSION}};
    os << j.dump(2) << "\n";
}

Dataset read_json(std::istream& is) {
    json j = json::parse(is);
    Dataset d;
    d.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("config").items()) d.config.emplace_back(k, v);
    d.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& row : j.at("rows")) {
        d.rows.emplace_back(row.begin(), row.end());
    }
    return d;
}

void write_dataset(const std::string& out_path, const std::string& format,
                   const Dataset& d) {
    const bool csv = format == "csv";
    if (!csv && format != "json") {
        throw invalid_config("unknown output format '" + format + "'");
    }
    if (out_path.empty()) {
        if (csv) {
            write_csv(std::cout, d);
        } else {
            write_json(std::cout, d);
        }
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw invalid_config("cannot open output file '" + out_path + "'");
    if (csv) {
        write_csv(os, d);
    } else {
        write_json(os, d);
    }
}

} // namespace schwarzchain::tools
