#pragma once

#include <gabor/table.hpp>

#include <string>

namespace gabor {

/// Missing columns are reported as command-line usage problems (exit 2).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Standalone scatter SVG: axes with ticks, one marker per row, per-series
/// colors and a legend. Layout is a pure function of the table contents.
std::string svg_scatter_string(const Table& table, const std::string& x_col,
                               const std::string& y_col, const std::string& series_col);

void emit_svg_scatter(const Table& table, const std::string& x_col, const std::string& y_col,
                      const std::string& series_col, const std::string& path);

}  // namespace gabor
