#include "json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace qmem {

using nlohmann::json;

namespace {

Mat parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw invalid_input(where + ": matrix must be a nonempty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    Mat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.size() != cols)
            throw invalid_input(where + ": ragged matrix at row " +
                                std::to_string(r));
        for (std::size_t c = 0; c < cols; ++c) {
            const json& e = row[c];
            if (e.is_number()) {
                m(r, c) = Complex(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
                       e[1].is_number()) {
                m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
            } else {
                throw invalid_input(where + ": entry (" + std::to_string(r) +
                                    "," + std::to_string(c) +
                                    ") is not a number or [re, im] pair");
            }
        }
    }
    return m;
}

json matrix_json(const Mat& m) {
    json rows = json::array();
    for (long r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (long c = 0; c < m.cols(); ++c)
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

json parse_text(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw invalid_input(where + ": " + e.what());
    }
}

} // namespace

Mat matrix_from_json_text(const std::string& text) {
    return parse_matrix(parse_text(text, "matrix"), "matrix");
}

std::string matrix_to_json_text(const Mat& m) {
    return matrix_json(m).dump(2);
}

QuantumChannel channel_from_json_text(const std::string& text) {
    json j = parse_text(text, "channel");
    if (!j.is_object())
        throw invalid_input("channel: expected a JSON object");
    if (j.contains("family"))
        return channel_family(j.at("family").get<std::string>());
    if (!j.contains("d_in") || !j.contains("d_out"))
        throw invalid_input("channel: missing d_in/d_out");
    int d_in = j.at("d_in").get<int>();
    int d_out = j.at("d_out").get<int>();
    if (j.contains("kraus")) {
        std::vector<Mat> kraus;
        for (std::size_t k = 0; k < j["kraus"].size(); ++k)
            kraus.push_back(
                parse_matrix(j["kraus"][k], "channel.kraus[" + std::to_string(k) + "]"));
        return channel_from_kraus(d_in, d_out, std::move(kraus));
    }
    if (j.contains("choi"))
        return channel_from_choi(
            ChoiState{d_in, d_out, parse_matrix(j["choi"], "channel.choi")});
    throw invalid_input("channel: needs \"kraus\", \"choi\" or \"family\"");
}

std::string channel_to_json_text(const QuantumChannel& n) {
    json j;
    j["d_in"] = n.d_in;
    j["d_out"] = n.d_out;
    if (!n.kraus.empty()) {
        json arr = json::array();
        for (const Mat& k : n.kraus)
            arr.push_back(matrix_json(k));
        j["kraus"] = std::move(arr);
    } else {
        j["choi"] = matrix_json(n.choi.matrix);
    }
    return j.dump(2);
}

Game game_from_json_text(const std::string& text) {
    json j = parse_text(text, "game");
    if (!j.is_object())
        throw invalid_input("game: expected a JSON object");
    Game g;
    g.label = j.value("label", std::string{});
    for (std::size_t i = 0; i < j.at("inputs").size(); ++i)
        g.inputs.push_back(
            parse_matrix(j["inputs"][i], "game.inputs[" + std::to_string(i) + "]"));
    for (std::size_t i = 0; i < j.at("observables").size(); ++i)
        g.observables.push_back(parse_matrix(
            j["observables"][i], "game.observables[" + std::to_string(i) + "]"));
    const json& a = j.at("alpha");
    g.alpha = Eigen::MatrixXd::Zero(g.inputs.size(), g.observables.size());
    if (!a.is_array() || a.size() != g.inputs.size())
        throw invalid_input("game.alpha: expected one row per input");
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (!a[r].is_array() || a[r].size() != g.observables.size())
            throw invalid_input("game.alpha: row " + std::to_string(r) +
                                " must have one entry per observable");
        for (std::size_t c = 0; c < a[r].size(); ++c)
            g.alpha(r, c) = a[r][c].get<double>();
    }
    g.eb_normalized = j.value("eb_normalized", false);
    g.validate();
    return g;
}

std::string game_to_json_text(const Game& g) {
    json j;
    j["label"] = g.label;
    json inputs = json::array();
    for (const Mat& s : g.inputs)
        inputs.push_back(matrix_json(s));
    j["inputs"] = std::move(inputs);
    json obs = json::array();
    for (const Mat& o : g.observables)
        obs.push_back(matrix_json(o));
    j["observables"] = std::move(obs);
    json alpha = json::array();
    for (long r = 0; r < g.alpha.rows(); ++r) {
        json row = json::array();
        for (long c = 0; c < g.alpha.cols(); ++c)
            row.push_back(g.alpha(r, c));
        alpha.push_back(std::move(row));
    }
    j["alpha"] = std::move(alpha);
    j["eb_normalized"] = g.eb_normalized;
    return j.dump(2);
}

CountsRecord counts_from_json_text(const std::string& text) {
    json j = parse_text(text, "counts");
    if (!j.is_object())
        throw invalid_input("counts: expected a JSON object");
    CountsRecord rec;
    rec.game_label = j.value("game_label", std::string{});
    const json& settings = j.at("settings");
    for (std::size_t k = 0; k < settings.size(); ++k) {
        const json& s = settings[k];
        std::string where = "counts.settings[" + std::to_string(k) + "]";
        if (!s.is_object() || !s.contains("shots") || !s.contains("successes"))
            throw invalid_input(where + ": needs shots and successes");
        CountsSetting cs;
        cs.input = s.value("input", 0);
        cs.observable = s.value("observable", 0);
        cs.shots = s.at("shots").get<std::uint64_t>();
        cs.successes = s.at("successes").get<std::uint64_t>();
        rec.settings.push_back(cs);
    }
    for (const json& c : j.at("coefficients"))
        rec.coefficients.push_back(c.get<double>());
    return rec;
}

std::string load_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw invalid_input("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw invalid_input("cannot write file: " + path);
    out << text;
}

namespace {

template <typename F>
auto with_path(const std::string& path, F&& f) {
    try {
        return f(load_text(path));
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

} // namespace

Mat load_matrix(const std::string& path) {
    return with_path(path, [](const std::string& t) { return matrix_from_json_text(t); });
}

QuantumChannel load_channel(const std::string& path) {
    return with_path(path, [](const std::string& t) { return channel_from_json_text(t); });
}

Game load_game(const std::string& path) {
    return with_path(path, [](const std::string& t) { return game_from_json_text(t); });
}

CountsRecord load_counts(const std::string& path) {
    return with_path(path, [](const std::string& t) { return counts_from_json_text(t); });
}

} // namespace qmem
