#include <gabor/svg.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <vector>

namespace gabor {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 560.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 430.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

struct Range {
    double lo = 0.0;
    double hi = 1.0;

    void fit(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
};

std::string num(double v) { return format_sig6(v); }

}  // namespace

std::string svg_scatter_string(const Table& table, const std::string& x_col,
                               const std::string& y_col, const std::string& series_col) {
    const Index xi = table.column(x_col);
    const Index yi = table.column(y_col);
    const Index si = table.column(series_col);
    if (xi < 0) throw UsageError("unknown column: " + x_col);
    if (yi < 0) throw UsageError("unknown column: " + y_col);
    if (si < 0) throw UsageError("unknown column: " + series_col);

    struct Point {
        double x, y;
        std::size_t series;
    };
    std::vector<Point> points;
    std::vector<std::string> series_names;  // first-appearance order
    for (std::size_t r = 0; r < table.rows().size(); ++r) {
        const std::string name = table.text(r, si);
        std::size_t id = series_names.size();
        for (std::size_t i = 0; i < series_names.size(); ++i)
            if (series_names[i] == name) {
                id = i;
                break;
            }
        if (id == series_names.size()) series_names.push_back(name);
        points.push_back({table.numeric(r, xi), table.numeric(r, yi), id});
    }

    bool have_range = false;
    Range xr, yr;
    for (const auto& p : points) {
        if (!have_range) {
            xr.lo = xr.hi = p.x;
            yr.lo = yr.hi = p.y;
            have_range = true;
        } else {
            xr.fit(p.x);
            yr.fit(p.y);
        }
    }
    auto widen = [](Range& r) {
        if (r.hi == r.lo) {
            r.lo -= 1.0;
            r.hi += 1.0;
        } else {
            const double pad = 0.05 * (r.hi - r.lo);
            r.lo -= pad;
            r.hi += pad;
        }
    };
    widen(xr);
    widen(yr);

    auto map_x = [&](double v) { return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * (kRight - kLeft); };
    auto map_y = [&](double v) { return kBottom - (v - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    svg += "<line class=\"axis\" x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" +
           num(kRight) + "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";
    svg += "<line class=\"axis\" x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
           num(kLeft) + "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";

    for (int t = 0; t <= 4; ++t) {
        const double fx = xr.lo + (xr.hi - xr.lo) * t / 4.0;
        const double px = map_x(fx);
        svg += "<line x1=\"" + num(px) + "\" y1=\"" + num(kBottom) + "\" x2=\"" + num(px) +
               "\" y2=\"" + num(kBottom + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(px) + "\" y=\"" + num(kBottom + 18) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + num(fx) + "</text>\n";

        const double fy = yr.lo + (yr.hi - yr.lo) * t / 4.0;
        const double py = map_y(fy);
        svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(py) + "\" x2=\"" + num(kLeft) +
               "\" y2=\"" + num(py) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(py + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + num(fy) + "</text>\n";
    }

    svg += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"" + num(kHeight - 10) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + x_col + "</text>\n";
    svg += "<text x=\"16\" y=\"" + num((kTop + kBottom) / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           num((kTop + kBottom) / 2) + ")\">" + y_col + "</text>\n";

    for (const auto& p : points) {
        svg += "<circle class=\"marker\" cx=\"" + num(map_x(p.x)) + "\" cy=\"" + num(map_y(p.y)) +
               "\" r=\"4\" fill=\"" + kPalette[p.series % 8] + "\" fill-opacity=\"0.85\"/>\n";
    }

    for (std::size_t i = 0; i < series_names.size(); ++i) {
        const double ly = kTop + 16.0 * static_cast<double>(i);
        svg += "<rect x=\"" + num(kRight + 14) + "\" y=\"" + num(ly) +
               "\" width=\"10\" height=\"10\" fill=\"" + kPalette[i % 8] + "\"/>\n";
        svg += "<text x=\"" + num(kRight + 29) + "\" y=\"" + num(ly + 9) +
               "\" font-size=\"11\">" + series_names[i] + "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

void emit_svg_scatter(const Table& table, const std::string& x_col, const std::string& y_col,
                      const std::string& series_col, const std::string& path) {
    const std::string svg = svg_scatter_string(table, x_col, y_col, series_col);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorCode::InvalidParameter, "cannot open output file: " + path);
    out << svg;
}

}  // namespace gabor
