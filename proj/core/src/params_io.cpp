#include "fxsr/params_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fxsr/report.hpp"

namespace fxsr::exp {
namespace {

using nlohmann::json;

json matrix_json(const FxMatrix& m) {
    return {{"rows", m.rows()}, {"cols", m.cols()},
            {"data", std::vector<std::int64_t>(m.mantissas().begin(), m.mantissas().end())}};
}

json matrix_json(const Eigen::MatrixXd& m) {
    std::vector<double> data;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

FxMatrix fixed_matrix(const json& j, const QFormat& fmt) {
    return FxMatrix::from_mantissas(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>(),
                                    fmt, j.at("data").get<std::vector<std::int64_t>>());
}

Eigen::MatrixXd real_matrix(const json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto data = j.at("data").get<std::vector<double>>();
    if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols)) {
        throw std::invalid_argument("params: matrix data does not match its shape");
    }
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[static_cast<std::size_t>(r * cols + c)];
    }
    return m;
}

}  // namespace

std::string params_to_json(const SavedParams& saved) {
    json j;
    j["seed"] = saved.seed;
    j["digits"] = {saved.digits.first, saved.digits.second};
    if (const auto* fx = std::get_if<nn::NetworkParams>(&saved.params)) {
        j["kind"] = "fixed";
        j["mode"] = std::string(mode_name(saved.mode));
        j["word_bits"] = fx->w1.format().word_bits();
        j["frac_bits"] = fx->w1.format().frac_bits();
        j["w1"] = matrix_json(fx->w1);
        j["b1"] = matrix_json(fx->b1);
        j["w2"] = matrix_json(fx->w2);
        j["b2"] = matrix_json(fx->b2);
    } else {
        const auto& p = std::get<nn::RealParams>(saved.params);
        j["kind"] = "reference";
        j["w1"] = matrix_json(p.w1);
        j["b1"] = matrix_json(p.b1);
        j["w2"] = matrix_json(p.w2);
        j["b2"] = matrix_json(p.b2);
    }
    return j.dump(1) + "\n";
}

SavedParams params_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        SavedParams s;
        s.seed = j.at("seed").get<std::uint64_t>();
        const auto digits = j.at("digits").get<std::vector<int>>();
        if (digits.size() != 2) throw std::invalid_argument("params: digits must have two entries");
        s.digits = {digits[0], digits[1]};
        s.digits.validate();
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "fixed") {
            s.mode = parse_rounding_mode(j.at("mode").get<std::string>());
            const QFormat fmt(j.at("word_bits").get<int>(), j.at("frac_bits").get<int>());
            s.params = nn::NetworkParams{fixed_matrix(j.at("w1"), fmt), fixed_matrix(j.at("b1"), fmt),
                                         fixed_matrix(j.at("w2"), fmt), fixed_matrix(j.at("b2"), fmt)};
        } else if (kind == "reference") {
            s.params = nn::RealParams{real_matrix(j.at("w1")), real_matrix(j.at("b1")),
                                      real_matrix(j.at("w2")), real_matrix(j.at("b2"))};
        } else {
            throw std::invalid_argument("params: unknown kind '" + kind + "'");
        }
        return s;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("params: ") + e.what());
    }
}

void save_params(const std::filesystem::path& path, const SavedParams& saved) {
    write_text_file(path, params_to_json(saved));
}

SavedParams load_params(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return params_from_json(buf.str());
}

}  // namespace fxsr::exp
