#pragma once

// Self-describing tables emitted by the CLI: a column schema, data rows and
// the resolved parameter set that produced them.

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cvqkd {

inline constexpr const char* kSchemaVersion = "1";

using Cell = std::variant<double, std::string>;

struct OutputRecord {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_param(std::string key, std::string value);
    void add_param(std::string key, double value);
};

enum class OutputFormat { csv, json };

/// 15 significant digits; round-trips through the JSON encoding unchanged.
std::string format_number(double value);

/// Header row first, then data rows, then `# key=value` metadata lines.
void write_csv(const OutputRecord& record, std::ostream& out);

/// {"meta": {...}, "columns": [...], "rows": [{column: value, ...}, ...]}
void write_json(const OutputRecord& record, std::ostream& out);

void write_record(const OutputRecord& record, OutputFormat format, std::ostream& out);

}  // namespace cvqkd
