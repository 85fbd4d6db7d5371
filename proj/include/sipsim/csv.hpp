#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sipsim {

// Reader for the bundled data tables: one header row, comma separated,
// double-quoted fields allowed, `#` starts a comment line.
class CsvTable {
public:
    struct Row {
        int line = 0;
        std::vector<std::string> cells;
    };

    static CsvTable parse(std::string_view text, std::string source);
    static CsvTable load(const std::filesystem::path& path);

    const std::vector<std::string>& header() const noexcept { return header_; }
    const std::vector<Row>& rows() const noexcept { return rows_; }
    const std::string& source() const noexcept { return source_; }

    // Column access by header name; ParseError when absent or malformed.
    const std::string& text(const Row& row, std::string_view column) const;
    double number(const Row& row, std::string_view column) const;
    bool has_column(std::string_view column) const;
    // Empty cells and absent columns give nullopt.
    std::optional<double> optional_number(const Row& row, std::string_view column) const;
    long integer(const Row& row, std::string_view column) const;

private:
    std::size_t index_of(std::string_view column) const;

    std::string source_;
    std::vector<std::string> header_;
    std::vector<Row> rows_;
};

std::vector<std::string> split_csv_line(std::string_view line);

// Whole file as a string; ConfigError naming the path when unreadable.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace sipsim
