#pragma once

#include <gabor/types.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gabor {

/// Six significant digits; the canonical CSV number format.
std::string format_sig6(double v);

/// Shortest representation that round-trips a double; used by JSON output.
std::string format_full(double v);

/// Small column-named table. CSV is the canonical serialization: numbers are
/// printed with six significant digits, so re-running a command reproduces
/// identical bytes; JSON mirrors the rows as flat objects at full precision.
class Table {
public:
    using Cell = std::variant<std::string, double, std::int64_t>;

    Table() = default;
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<Cell> row);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }

    /// Column position, or -1 when the name is absent.
    Index column(const std::string& name) const;

    /// Numeric view of a cell; string cells are parsed as doubles.
    double numeric(std::size_t row, Index col) const;
    std::string text(std::size_t row, Index col) const;

    std::string to_csv() const;
    std::string to_json() const;

    static Table from_csv(std::string_view text);

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

/// Dense-matrix interchange: `row,col,re,im`, row-major, all entries.
Table matrix_to_table(const CMat& m);
CMat table_to_matrix(const Table& table);

}  // namespace gabor
