#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fxsr::exp {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

enum class ChartKind { Line, Histogram };

struct ChartOptions {
    std::string title;
    std::string x_label = "epoch";
    std::string y_label = "test error";
    ChartKind kind = ChartKind::Line;
    int width = 800;
    int height = 480;
};

struct AxisRange {
    double lo;
    double hi;
};

/// [min, max] widened by 5% of the span on each side; a degenerate span
/// becomes [v - 0.5, v + 0.5].
AxisRange fit_axis(double min, double max);

/// One polyline per series plus a legend. Histogram charts draw each series
/// as a step outline over its bin centers. Throws std::invalid_argument on an
/// empty list, an empty series, mismatched x/y sizes or non-finite values.
std::string render_chart(const std::vector<Series>& series, const ChartOptions& options);

/// Loads a series from an epoch CSV (x = epoch, y = `column`) or a histogram
/// CSV (x = bin center, y = count). The series is named after the file stem.
Series load_series(const std::filesystem::path& csv, const std::string& column = "test_error");

/// True when the CSV header is bin_lo,bin_hi,count.
bool is_histogram_csv(const std::filesystem::path& csv);

std::string xml_escape(const std::string& s);

}  // namespace fxsr::exp
