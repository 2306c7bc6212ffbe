#include "cvqkd/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "json.hpp"

namespace cvqkd {

namespace {

nlohmann::json cell_to_json(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    const double v = std::get<double>(cell);
    if (!std::isfinite(v)) {
        return nullptr;
    }
    // Parse the 15-digit text back so JSON and CSV carry the same value.
    return std::strtod(format_number(v).c_str(), nullptr);
}

std::string cell_to_text(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    return format_number(std::get<double>(cell));
}

}  // namespace

void OutputRecord::add_param(std::string key, std::string value) {
    params.emplace_back(std::move(key), std::move(value));
}

void OutputRecord::add_param(std::string key, double value) {
    params.emplace_back(std::move(key), format_number(value));
}

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", value);
    return buf;
}

void write_csv(const OutputRecord& record, std::ostream& out) {
    for (std::size_t i = 0; i < record.columns.size(); ++i) {
        out << (i ? "," : "") << record.columns[i];
    }
    out << '\n';
    for (const auto& row : record.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << cell_to_text(row[i]);
        }
        out << '\n';
    }
    out << "# schema_version=" << kSchemaVersion << '\n';
    out << "# command=" << record.command << '\n';
    for (const auto& [key, value] : record.params) {
        out << "# " << key << '=' << value << '\n';
    }
}

void write_json(const OutputRecord& record, std::ostream& out) {
    nlohmann::ordered_json meta;
    meta["schema_version"] = kSchemaVersion;
    meta["command"] = record.command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [key, value] : record.params) {
        params[key] = value;
    }
    meta["params"] = std::move(params);

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : record.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size() && i < record.columns.size(); ++i) {
            obj[record.columns[i]] = cell_to_json(row[i]);
        }
        rows.push_back(std::move(obj));
    }

    nlohmann::ordered_json doc;
    doc["meta"] = std::move(meta);
    doc["columns"] = record.columns;
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

void write_record(const OutputRecord& record, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::json) {
        write_json(record, out);
    } else {
        write_csv(record, out);
    }
}

}  // namespace cvqkd
