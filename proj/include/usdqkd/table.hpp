#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace usdqkd {

/// One emitted document: named columns, homogeneous row list, ordered
/// metadata. Cells are doubles, integers, strings, or null (monostate).
/// CSV renders metadata as leading '# key: value' comment lines and null as
/// an empty field; JSON wraps everything in a versioned envelope with null
/// cells as JSON null. Doubles are printed with 12 significant digits in
/// both formats, which re-parse to values that print identically.
struct Table {
    using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

    std::string command;  // subcommand that produced the document
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_meta(const std::string& key, const std::string& value);
    void add_meta(const std::string& key, double value);
};

inline constexpr const char* kTableSchema = "usdqkd.table/1";

/// 12 significant digits; shortest form (%.12g). Non-finite values render
/// as "inf"/"-inf"/"nan" (CSV only; JSON replaces them with null).
std::string format_double(double value);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

enum class OutputFormat { Csv, Json };

void write_table(const Table& table, OutputFormat format, std::ostream& out);

}  // namespace usdqkd
