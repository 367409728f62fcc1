#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "graphlim/rational.hpp"

namespace graphlim {

// ---------------------------------------------------------------------------
// Deterministic tabular reports.
//
// CSV never contains a decimal point: integer columns are plain integers,
// rational columns expand to <name>_num,<name>_den, and approximate (floating)
// columns are emitted as integer nanounits under <name>_nano = round(v*1e9).
// JSON mirrors the same values, rationals as "num/den" strings. Provenance
// (seeds, solver modes, flags — never wall time) precedes the CSV header as
// '#key=value' lines, so identical inputs yield byte-identical files.
// ---------------------------------------------------------------------------

enum class ColumnType { integer, rational, nano, text };

struct Report {
    using Cell = std::variant<long, Rat, double, std::string>;

    int schema = 1;
    std::string command;
    std::map<std::string, std::string> provenance;  // sorted on emission by map order
    std::vector<std::pair<std::string, ColumnType>> columns;
    std::vector<std::vector<Cell>> rows;

    void add_column(const std::string& name, ColumnType type) { columns.emplace_back(name, type); }

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns.size())
            throw std::logic_error("report row width does not match the declared columns");
        for (std::size_t c = 0; c < row.size(); ++c) {
            const auto expected = static_cast<std::size_t>(columns[c].second);
            if (row[c].index() != expected)
                throw std::logic_error("report cell type mismatch in column '" + columns[c].first +
                                       "'");
        }
        rows.push_back(std::move(row));
    }

    std::string to_csv() const {
        std::ostringstream os;
        os << "#schema=" << schema << '\n';
        os << "#command=" << sanitized(command) << '\n';
        for (const auto& [key, value] : provenance)
            os << '#' << sanitized(key) << '=' << sanitized(value) << '\n';
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) os << ',';
            switch (columns[c].second) {
                case ColumnType::integer:
                case ColumnType::text:
                    os << columns[c].first;
                    break;
                case ColumnType::rational:
                    os << columns[c].first << "_num," << columns[c].first << "_den";
                    break;
                case ColumnType::nano:
                    os << columns[c].first << "_nano";
                    break;
            }
        }
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) os << ',';
                switch (columns[c].second) {
                    case ColumnType::integer:
                        os << std::get<long>(row[c]);
                        break;
                    case ColumnType::rational:
                        os << num_string(std::get<Rat>(row[c])) << ','
                           << den_string(std::get<Rat>(row[c]));
                        break;
                    case ColumnType::nano:
                        os << to_nano(std::get<double>(row[c]));
                        break;
                    case ColumnType::text:
                        os << sanitized(std::get<std::string>(row[c]));
                        break;
                }
            }
            os << '\n';
        }
        return os.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["schema"] = schema;
        j["command"] = command;
        nlohmann::json prov = nlohmann::json::object();
        for (const auto& [key, value] : provenance) prov[key] = value;
        j["provenance"] = std::move(prov);
        nlohmann::json out_rows = nlohmann::json::array();
        for (const auto& row : rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t c = 0; c < row.size(); ++c) {
                const auto& name = columns[c].first;
                switch (columns[c].second) {
                    case ColumnType::integer:
                        obj[name] = std::get<long>(row[c]);
                        break;
                    case ColumnType::rational:
                        obj[name] = to_string(std::get<Rat>(row[c]));
                        break;
                    case ColumnType::nano:
                        obj[name + "_nano"] = to_nano(std::get<double>(row[c]));
                        break;
                    case ColumnType::text:
                        obj[name] = std::get<std::string>(row[c]);
                        break;
                }
            }
            out_rows.push_back(std::move(obj));
        }
        j["rows"] = std::move(out_rows);
        return j;
    }

    static long long to_nano(double v) {
        const double scaled = v * 1e9;
        if (!(std::fabs(scaled) < 9.0e18))
            throw std::logic_error("approximate value out of nanounit range");
        return std::llround(scaled);
    }

  private:
    static std::string sanitized(const std::string& s) {
        std::string out;
        out.reserve(s.size());
        for (char ch : s) out.push_back(ch == ',' || ch == '\n' || ch == '\r' ? ' ' : ch);
        return out;
    }
};

// ---------------------------------------------------------------------------
// Minimal SVG line plots: axes, min/max tick labels, one polyline per series.
// ---------------------------------------------------------------------------

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

namespace detail {

inline std::string fmt_g(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

}  // namespace detail

inline std::string render_svg_plot(const std::vector<PlotSeries>& series,
                                   const std::string& x_label, const std::string& y_label) {
    const double width = 640, height = 480, margin = 64;
    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    bool first = true;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (first) {
                x_lo = x_hi = x;
                y_lo = y_hi = y;
                first = false;
            } else {
                x_lo = std::min(x_lo, x);
                x_hi = std::max(x_hi, x);
                y_lo = std::min(y_lo, y);
                y_hi = std::max(y_hi, y);
            }
        }
    if (x_hi <= x_lo) x_hi = x_lo + 1;
    if (y_hi <= y_lo) y_hi = y_lo + 1;
    const auto px = [&](double x) {
        return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin);
    };
    const auto py = [&](double y) {
        return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin);
    };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    // axes
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
       << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
       << height - margin << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << margin << "\" y=\"" << height - margin + 16
       << "\" font-size=\"12\">" << detail::fmt_g(x_lo) << "</text>\n";
    os << "<text x=\"" << width - margin << "\" y=\"" << height - margin + 16
       << "\" font-size=\"12\" text-anchor=\"end\">" << detail::fmt_g(x_hi) << "</text>\n";
    os << "<text x=\"" << margin - 6 << "\" y=\"" << height - margin
       << "\" font-size=\"12\" text-anchor=\"end\">" << detail::fmt_g(y_lo) << "</text>\n";
    os << "<text x=\"" << margin - 6 << "\" y=\"" << margin + 4
       << "\" font-size=\"12\" text-anchor=\"end\">" << detail::fmt_g(y_hi) << "</text>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 16
       << "\" font-size=\"12\" text-anchor=\"middle\">" << x_label << "</text>\n";
    os << "<text x=\"16\" y=\"" << height / 2 << "\" font-size=\"12\" text-anchor=\"middle\""
       << " transform=\"rotate(-90 16 " << height / 2 << ")\">" << y_label << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = palette[s % (sizeof(palette) / sizeof(palette[0]))];
        if (!series[s].points.empty()) {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < series[s].points.size(); ++i) {
                if (i) os << ' ';
                os << detail::fmt_g(px(series[s].points[i].first)) << ','
                   << detail::fmt_g(py(series[s].points[i].second));
            }
            os << "\"/>\n";
        }
        os << "<text x=\"" << width - margin + 4 << "\" y=\"" << margin + 14 * static_cast<double>(s)
           << "\" font-size=\"11\" fill=\"" << color << "\">" << series[s].label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace graphlim
