#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fxsr/train.hpp"

namespace fxsr::exp {

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numeric CSV: one header row, every other cell parses as a number.
/// Non-numeric cells are kept as NaN only in columns listed in `text_columns`.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& name) const;  // throws CsvError
    std::vector<double> values(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text, const std::string& source = "csv",
                   const std::vector<std::string>& text_columns = {});
CsvTable read_csv(const std::filesystem::path& path,
                  const std::vector<std::string>& text_columns = {});

/// `epoch,train_error,test_error,loss,saturations`; errors are fractions.
void write_epoch_csv(std::ostream& out, std::span<const nn::EpochRecord> history);

struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<std::uint64_t> counts;

    double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
    std::uint64_t total() const;
};

/// Equal-width bins over [lo, hi]; the value hi falls in the last bin and
/// values outside the range are clamped into the end bins.
Histogram make_histogram(std::span<const double> values, std::size_t bins = 50, double lo = 0.0,
                         double hi = 1.0);
void write_histogram_csv(std::ostream& out, const Histogram& h);

/// Key/value record written next to every result file as `<file>.manifest`.
class RunManifest {
public:
    void set(const std::string& key, const std::string& value);
    void add_output(const std::filesystem::path& path);
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    std::string str() const;
    void write_next_to(const std::filesystem::path& result) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::filesystem::path manifest_path(const std::filesystem::path& result);

/// Fixed "%.*f" formatting, independent of locale and stream state.
std::string format_fixed(double v, int digits = 6);

/// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fxsr::exp
