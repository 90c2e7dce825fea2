#include "fxsr/dotprod.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

#include "fxsr/linalg.hpp"

namespace fxsr::exp {

void DotProdConfig::validate() const {
    if (n == 0 || n_max == 0) throw std::invalid_argument("dotprod: n and n_max must be positive");
    if (modes.empty()) throw std::invalid_argument("dotprod: no rounding modes");
    if (!(y_max > 0.0)) throw std::invalid_argument("dotprod: y_max must be positive");
}

std::vector<ModeStats> run_dotprod(const DotProdConfig& config) {
    config.validate();
    const QFormat& fmt = config.format;
    const double half = fmt.precision() / 2.0;

    RngStream data_rng = RngStream::derive(config.seed, 0);
    std::vector<RngStream> streams;
    std::vector<Rounder> rounders;
    streams.reserve(config.modes.size());
    rounders.reserve(config.modes.size());
    for (const auto mode : config.modes) {
        streams.push_back(RngStream::derive(config.seed, 1 + static_cast<std::uint64_t>(mode)));
        rounders.emplace_back(fmt, mode, streams.back());
    }
    std::vector<ModeStats> results;
    for (const auto mode : config.modes) results.push_back({mode, {}});

    std::vector<double> x(config.n);
    std::vector<double> y(config.n);
    std::vector<std::int64_t> xq(config.n);
    std::vector<std::int64_t> yq(config.n);
    const auto divisor = static_cast<std::int64_t>(config.n);

    for (std::size_t trial = 0; trial < config.n_max; ++trial) {
        for (auto& v : x) v = data_rng.uniform(-half, half);
        for (auto& v : y) v = data_rng.uniform(0.0, config.y_max);
        long double exact = 0.0L;
        for (std::size_t i = 0; i < config.n; ++i) exact += static_cast<long double>(x[i]) * y[i];
        exact /= static_cast<long double>(config.n);

        for (std::size_t k = 0; k < rounders.size(); ++k) {
            Rounder& r = rounders[k];
            for (std::size_t i = 0; i < config.n; ++i) xq[i] = r.round_to_mantissa(x[i]);
            for (std::size_t i = 0; i < config.n; ++i) yq[i] = r.round_to_mantissa(y[i]);
            const FxValue rounded = rounded_dot(xq, fmt, yq, fmt, divisor, r);
            results[k].stats.record(rounded.value(), static_cast<double>(exact));
        }
    }
    for (std::size_t k = 0; k < rounders.size(); ++k) {
        results[k].stats.saturation_count = rounders[k].saturations();
    }
    return results;
}

std::vector<DotProdRun> run_dotprod_sweep(const DotProdConfig& config, std::size_t repeats) {
    if (repeats == 0) throw std::invalid_argument("dotprod: repeats must be positive");
    std::vector<DotProdRun> runs;
    for (std::size_t i = 0; i < repeats; ++i) {
        DotProdConfig c = config;
        c.seed = config.seed + i;
        runs.push_back({c.seed, run_dotprod(c)});
    }
    return runs;
}

void write_dotprod_csv(std::ostream& out, const DotProdConfig& config,
                       const std::vector<DotProdRun>& runs) {
    char line[256];
    out << "seed,mode,n,n_max,abs_bias_sum,zero_count,saturations\n";
    for (const auto& run : runs) {
        for (const auto& m : run.modes) {
            std::snprintf(line, sizeof line, "%llu,%s,%zu,%zu,%.6f,%llu,%llu\n",
                          static_cast<unsigned long long>(run.seed),
                          std::string(mode_name(m.mode)).c_str(), config.n, config.n_max,
                          m.stats.abs_bias_sum, static_cast<unsigned long long>(m.stats.zero_count),
                          static_cast<unsigned long long>(m.stats.saturation_count));
            out << line;
        }
    }
    if (runs.size() < 2) return;
    const double count = static_cast<double>(runs.size());
    for (std::size_t k = 0; k < config.modes.size(); ++k) {
        double bias_sum = 0.0;
        double zeros = 0.0;
        double sats = 0.0;
        for (const auto& run : runs) {
            bias_sum += run.modes[k].stats.abs_bias_sum;
            zeros += static_cast<double>(run.modes[k].stats.zero_count);
            sats += static_cast<double>(run.modes[k].stats.saturation_count);
        }
        std::snprintf(line, sizeof line, "mean,%s,%zu,%zu,%.6f,%.2f,%.2f\n",
                      std::string(mode_name(config.modes[k])).c_str(), config.n, config.n_max,
                      bias_sum / count, zeros / count, sats / count);
        out << line;
    }
}

}  // namespace fxsr::exp
