#include "fxsr/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fxsr/report.hpp"

namespace fxsr::exp {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string tick_label(double v, double span) {
    if (span >= 100.0) return fmt("%.0f", v);
    if (span >= 1.0) return fmt("%.2f", v);
    return fmt("%.4f", v);
}

void check(const std::vector<Series>& series) {
    if (series.empty()) throw std::invalid_argument("plot: no series");
    for (const auto& s : series) {
        if (s.x.empty()) throw std::invalid_argument("plot: series '" + s.name + "' is empty");
        if (s.x.size() != s.y.size()) {
            throw std::invalid_argument("plot: series '" + s.name + "' has mismatched x/y sizes");
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
                throw std::invalid_argument("plot: series '" + s.name + "' has non-finite values");
            }
        }
    }
}

// Step outline through bin centers: each bin becomes a flat segment of its width.
std::vector<std::pair<double, double>> step_points(const Series& s) {
    std::vector<std::pair<double, double>> pts;
    const double half = s.x.size() > 1 ? (s.x[1] - s.x[0]) / 2.0 : 0.5;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
        pts.emplace_back(s.x[i] - half, s.y[i]);
        pts.emplace_back(s.x[i] + half, s.y[i]);
    }
    return pts;
}

std::vector<std::pair<double, double>> points(const Series& s, ChartKind kind) {
    if (kind == ChartKind::Histogram) return step_points(s);
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) pts.emplace_back(s.x[i], s.y[i]);
    return pts;
}

}  // namespace

AxisRange fit_axis(double min, double max) {
    if (!(max > min)) return {min - 0.5, max + 0.5};
    const double pad = 0.05 * (max - min);
    return {min - pad, max + pad};
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string render_chart(const std::vector<Series>& series, const ChartOptions& options) {
    check(series);
    std::vector<std::vector<std::pair<double, double>>> all;
    double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY, y_max = -INFINITY;
    for (const auto& s : series) {
        all.push_back(points(s, options.kind));
        for (const auto& [x, y] : all.back()) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    const AxisRange xr = fit_axis(x_min, x_max);
    const AxisRange yr = fit_axis(y_min, y_max);

    const double w = options.width;
    const double h = options.height;
    const double pw = w - kLeft - kRight;
    const double ph = h - kTop - kBottom;
    const auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    const auto py = [&](double y) { return kTop + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::string svg;
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\" font-family=\"sans-serif\" font-size=\"12\">\n",
                  options.width, options.height, options.width, options.height);
    svg += buf;
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">",
                      kLeft + pw / 2);
        svg += buf + xml_escape(options.title) + "</text>\n";
    }
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"#444\"/>\n",
                  kLeft, kTop, pw, ph);
    svg += buf;

    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double xv = xr.lo + (xr.hi - xr.lo) * i / kTicks;
        const double yv = yr.lo + (yr.hi - yr.lo) * i / kTicks;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>\n"
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%s</text>\n",
                      px(xv), kTop, px(xv), kTop + ph, px(xv), kTop + ph + 16,
                      tick_label(xv, xr.hi - xr.lo).c_str());
        svg += buf;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#ddd\"/>\n"
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%s</text>\n",
                      kLeft, py(yv), kLeft + pw, py(yv), kLeft - 6, py(yv) + 4,
                      tick_label(yv, yr.hi - yr.lo).c_str());
        svg += buf;
    }
    std::snprintf(buf, sizeof buf, "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">",
                  kLeft + pw / 2, h - 12);
    svg += buf + xml_escape(options.x_label) + "</text>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"16\" y=\"%.1f\" text-anchor=\"middle\" transform=\"rotate(-90 16 %.1f)\">",
                  kTop + ph / 2, kTop + ph / 2);
    svg += buf + xml_escape(options.y_label) + "</text>\n";

    for (std::size_t k = 0; k < all.size(); ++k) {
        const char* color = kPalette[k % std::size(kPalette)];
        svg += "<polyline fill=\"none\" stroke-width=\"1.8\" stroke=\"";
        svg += color;
        svg += "\" points=\"";
        for (std::size_t i = 0; i < all[k].size(); ++i) {
            std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", px(all[k][i].first),
                          py(all[k][i].second));
            svg += buf;
        }
        svg += "\"/>\n";

        const double ly = kTop + 14 + 20.0 * static_cast<double>(k);
        const double lx = kLeft + pw + 12;
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" stroke-width=\"2\"/>\n"
                      "<text x=\"%.1f\" y=\"%.1f\">",
                      lx, ly, lx + 22, ly, color, lx + 28, ly + 4);
        svg += buf + xml_escape(series[k].name) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

bool is_histogram_csv(const std::filesystem::path& csv) {
    const auto table = read_csv(csv);
    return table.header == std::vector<std::string>{"bin_lo", "bin_hi", "count"};
}

Series load_series(const std::filesystem::path& csv, const std::string& column) {
    const auto table = read_csv(csv);
    Series s;
    s.name = csv.stem().string();
    if (table.header == std::vector<std::string>{"bin_lo", "bin_hi", "count"}) {
        for (const auto& row : table.rows) {
            s.x.push_back((row[0] + row[1]) / 2.0);
            s.y.push_back(row[2]);
        }
    } else {
        s.x = table.values("epoch");
        s.y = table.values(column);
    }
    if (s.x.empty()) throw CsvError(csv.string() + ": no data rows");
    return s;
}

}  // namespace fxsr::exp
