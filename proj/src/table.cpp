#include <gabor/table.hpp>

#include <json.hpp>

#include <cstdio>
#include <stdexcept>

namespace gabor {

std::string format_sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != header_.size())
        throw Error(ErrorCode::DimensionMismatch, "row width does not match header");
    rows_.push_back(std::move(row));
}

Index Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name) return static_cast<Index>(i);
    return -1;
}

namespace {

std::string cell_to_csv(const Table::Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* d = std::get_if<double>(&cell)) return format_sig6(*d);
    return std::to_string(std::get<std::int64_t>(cell));
}

}  // namespace

double Table::numeric(std::size_t row, Index col) const {
    const Cell& cell = rows_.at(row).at(static_cast<std::size_t>(col));
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
    try {
        return std::stod(std::get<std::string>(cell));
    } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidParameter,
                    "cell is not numeric: " + std::get<std::string>(cell));
    }
}

std::string Table::text(std::size_t row, Index col) const {
    return cell_to_csv(rows_.at(row).at(static_cast<std::size_t>(col)));
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i) out += ',';
        out += header_[i];
    }
    out += '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_to_csv(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string Table::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const Cell& cell = row[i];
            if (const auto* s = std::get_if<std::string>(&cell))
                obj[header_[i]] = *s;
            else if (const auto* d = std::get_if<double>(&cell))
                obj[header_[i]] = *d;
            else
                obj[header_[i]] = std::get<std::int64_t>(cell);
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

Table matrix_to_table(const CMat& m) {
    Table table({"row", "col", "re", "im"});
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c)
            table.add_row({static_cast<std::int64_t>(r), static_cast<std::int64_t>(c),
                           m(r, c).real(), m(r, c).imag()});
    return table;
}

CMat table_to_matrix(const Table& table) {
    const Index row_col = table.column("row");
    const Index col_col = table.column("col");
    const Index re_col = table.column("re");
    const Index im_col = table.column("im");
    if (row_col < 0 || col_col < 0 || re_col < 0 || im_col < 0)
        throw Error(ErrorCode::InvalidParameter, "matrix CSV requires columns row,col,re,im");
    Index rows = 0, cols = 0;
    for (std::size_t r = 0; r < table.rows().size(); ++r) {
        rows = std::max(rows, static_cast<Index>(table.numeric(r, row_col)) + 1);
        cols = std::max(cols, static_cast<Index>(table.numeric(r, col_col)) + 1);
    }
    CMat m = CMat::Zero(rows, cols);
    for (std::size_t r = 0; r < table.rows().size(); ++r)
        m(static_cast<Index>(table.numeric(r, row_col)),
          static_cast<Index>(table.numeric(r, col_col))) =
            Complex(table.numeric(r, re_col), table.numeric(r, im_col));
    return m;
}

Table Table::from_csv(std::string_view text) {
    std::vector<std::vector<std::string>> lines;
    std::vector<std::string> current;
    std::string field;
    for (const char c : text) {
        if (c == '\n') {
            current.push_back(field);
            field.clear();
            lines.push_back(std::move(current));
            current.clear();
        } else if (c == ',') {
            current.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    if (!field.empty() || !current.empty()) {
        current.push_back(field);
        lines.push_back(std::move(current));
    }
    if (lines.empty())
        throw Error(ErrorCode::InvalidParameter, "empty CSV input");

    Table table(lines.front());
    for (std::size_t r = 1; r < lines.size(); ++r) {
        std::vector<Cell> row;
        row.reserve(lines[r].size());
        for (auto& f : lines[r]) row.emplace_back(std::move(f));
        table.add_row(std::move(row));
    }
    return table;
}

}  // namespace gabor
