#include "sipsim/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "sipsim/error.hpp"

namespace sipsim {
namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cell.push_back('"');
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cell.push_back(ch);
            }
        } else if (ch == '"') {
            quoted = true;
            was_quoted = true;
        } else if (ch == ',') {
            cells.push_back(was_quoted ? cell : trim(cell));
            cell.clear();
            was_quoted = false;
        } else {
            cell.push_back(ch);
        }
    }
    cells.push_back(was_quoted ? cell : trim(cell));
    return cells;
}

CsvTable CsvTable::parse(std::string_view text, std::string source) {
    CsvTable table;
    table.source_ = std::move(source);
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        auto cells = split_csv_line(stripped);
        if (table.header_.empty()) {
            table.header_ = std::move(cells);
            continue;
        }
        if (cells.size() != table.header_.size()) {
            throw ParseError(table.source_, line_no,
                             fmt::format("expected {} columns, found {}", table.header_.size(), cells.size()));
        }
        table.rows_.push_back({line_no, std::move(cells)});
    }
    if (table.header_.empty()) throw ParseError(table.source_, line_no, "missing header row");
    return table;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open file {}", path.string()));
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

CsvTable CsvTable::load(const std::filesystem::path& path) { return parse(read_text_file(path), path.string()); }

std::size_t CsvTable::index_of(std::string_view column) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == column) return i;
    }
    throw ParseError(source_, 1, fmt::format("missing column '{}'", column));
}

const std::string& CsvTable::text(const Row& row, std::string_view column) const {
    return row.cells[index_of(column)];
}

double CsvTable::number(const Row& row, std::string_view column) const {
    const auto value = optional_number(row, column);
    if (!value) throw ParseError(source_, row.line, fmt::format("column '{}' is empty", column));
    return *value;
}

bool CsvTable::has_column(std::string_view column) const {
    return std::find(header_.begin(), header_.end(), column) != header_.end();
}

std::optional<double> CsvTable::optional_number(const Row& row, std::string_view column) const {
    if (!has_column(column)) return std::nullopt;
    const std::string& cell = text(row, column);
    if (cell.empty() || cell == "-" || cell == "n/a") return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw ParseError(source_, row.line, fmt::format("column '{}': '{}' is not a number", column, cell));
    }
    return value;
}

long CsvTable::integer(const Row& row, std::string_view column) const {
    const std::string& cell = text(row, column);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw ParseError(source_, row.line, fmt::format("column '{}': '{}' is not an integer", column, cell));
    }
    return value;
}

}  // namespace sipsim
