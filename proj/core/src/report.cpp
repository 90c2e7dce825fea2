#include "fxsr/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace fxsr::exp {
namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& text, double& out) {
    if (text.empty()) return false;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw CsvError("no column named '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> CsvTable::values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[c]);
    return out;
}

CsvTable parse_csv(const std::string& text, const std::string& source,
                   const std::vector<std::string>& text_columns) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<bool> is_text;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        auto cells = split_line(line);
        for (auto& c : cells) c = trim(c);
        if (table.header.empty()) {
            table.header = cells;
            for (const auto& h : table.header) {
                if (h.empty()) throw CsvError(source + ": empty column name in header");
                is_text.push_back(std::find(text_columns.begin(), text_columns.end(), h) !=
                                  text_columns.end());
            }
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw CsvError(source + ":" + std::to_string(line_no) + ": expected " +
                           std::to_string(table.header.size()) + " fields, got " +
                           std::to_string(cells.size()));
        }
        std::vector<double> row(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (parse_number(cells[i], row[i])) continue;
            if (!is_text[i]) {
                throw CsvError(source + ":" + std::to_string(line_no) + ": '" + cells[i] +
                               "' in column " + table.header[i] + " is not a number");
            }
            row[i] = std::numeric_limits<double>::quiet_NaN();
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw CsvError(source + ": no header row");
    return table;
}

CsvTable read_csv(const std::filesystem::path& path, const std::vector<std::string>& text_columns) {
    std::ifstream in(path);
    if (!in) throw CsvError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path.string(), text_columns);
}

std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

void write_epoch_csv(std::ostream& out, std::span<const nn::EpochRecord> history) {
    out << "epoch,train_error,test_error,loss,saturations\n";
    char line[160];
    for (const auto& r : history) {
        std::snprintf(line, sizeof line, "%d,%.6f,%.6f,%.8f,%llu\n", r.epoch, r.train_error,
                      r.test_error, r.loss, static_cast<unsigned long long>(r.saturation_events));
        out << line;
    }
}

std::uint64_t Histogram::total() const {
    std::uint64_t t = 0;
    for (const auto c : counts) t += c;
    return t;
}

Histogram make_histogram(std::span<const double> values, std::size_t bins, double lo, double hi) {
    if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
    if (!(hi > lo)) throw std::invalid_argument("histogram range is empty");
    Histogram h{lo, hi, std::vector<std::uint64_t>(bins, 0)};
    const double width = h.bin_width();
    for (const double v : values) {
        if (std::isnan(v)) throw std::invalid_argument("histogram of NaN");
        const double pos = std::floor((v - lo) / width);
        const auto last = static_cast<double>(bins - 1);
        h.counts[static_cast<std::size_t>(std::clamp(pos, 0.0, last))] += 1;
    }
    return h;
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
    out << "bin_lo,bin_hi,count\n";
    char line[128];
    const double width = h.bin_width();
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        std::snprintf(line, sizeof line, "%.4f,%.4f,%llu\n", h.lo + width * static_cast<double>(i),
                      h.lo + width * static_cast<double>(i + 1),
                      static_cast<unsigned long long>(h.counts[i]));
        out << line;
    }
}

void RunManifest::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries_.emplace_back(key, value);
}

void RunManifest::add_output(const std::filesystem::path& path) {
    entries_.emplace_back("output", path.generic_string());
}

std::string RunManifest::str() const {
    std::string s;
    for (const auto& [k, v] : entries_) s += k + "=" + v + "\n";
    return s;
}

std::filesystem::path manifest_path(const std::filesystem::path& result) {
    auto p = result;
    p += ".manifest";
    return p;
}

void RunManifest::write_next_to(const std::filesystem::path& result) const {
    write_text_file(manifest_path(result), str());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace fxsr::exp
