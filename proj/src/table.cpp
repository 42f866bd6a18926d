#include "usdqkd/table.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace usdqkd {

void Table::add_meta(const std::string& key, const std::string& value) {
    meta.emplace_back(key, value);
}

void Table::add_meta(const std::string& key, double value) {
    meta.emplace_back(key, format_double(value));
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

namespace {

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) {
        return raw;
    }
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void append_csv_cell(std::string& out, const Table::Cell& cell) {
    if (std::holds_alternative<std::monostate>(cell)) {
        return;
    }
    if (const double* d = std::get_if<double>(&cell)) {
        out += format_double(*d);
    } else if (const std::int64_t* i = std::get_if<std::int64_t>(&cell)) {
        out += std::to_string(*i);
    } else {
        out += csv_field(std::get<std::string>(cell));
    }
}

std::string json_string(const std::string& raw) {
    std::string out = "\"";
    for (char c : raw) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char esc[8];
                    std::snprintf(esc, sizeof esc, "\\u%04x", c);
                    out += esc;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

void append_json_cell(std::string& out, const Table::Cell& cell) {
    if (std::holds_alternative<std::monostate>(cell)) {
        out += "null";
        return;
    }
    if (const double* d = std::get_if<double>(&cell)) {
        // JSON has no inf/nan literals.
        out += std::isfinite(*d) ? format_double(*d) : "null";
    } else if (const std::int64_t* i = std::get_if<std::int64_t>(&cell)) {
        out += std::to_string(*i);
    } else {
        out += json_string(std::get<std::string>(cell));
    }
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    out += "# schema: ";
    out += kTableSchema;
    out += '\n';
    out += "# command: " + table.command + '\n';
    for (const auto& [key, value] : table.meta) {
        out += "# " + key + ": " + value + '\n';
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) {
            out += ',';
        }
        out += csv_field(table.columns[c]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) {
                out += ',';
            }
            append_csv_cell(out, row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    std::string out = "{\n  \"schema\": ";
    out += json_string(kTableSchema);
    out += ",\n  \"command\": " + json_string(table.command);
    out += ",\n  \"meta\": {";
    for (std::size_t i = 0; i < table.meta.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += json_string(table.meta[i].first) + ": " + json_string(table.meta[i].second);
    }
    out += "},\n  \"columns\": [";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) {
            out += ", ";
        }
        out += json_string(table.columns[c]);
    }
    out += "],\n  \"rows\": [";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        out += r > 0 ? ",\n    [" : "\n    [";
        for (std::size_t c = 0; c < table.rows[r].size(); ++c) {
            if (c > 0) {
                out += ", ";
            }
            append_json_cell(out, table.rows[r][c]);
        }
        out += ']';
    }
    out += table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

void write_table(const Table& table, OutputFormat format, std::ostream& out) {
    out << (format == OutputFormat::Csv ? to_csv(table) : to_json(table));
}

}  // namespace usdqkd
