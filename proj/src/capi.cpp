#include "qmem/qmem.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include <json.hpp>

#include "counts.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "robustness.hpp"
#include "simulate.hpp"

struct qmem_channel {
    qmem::QuantumChannel impl;
};
struct qmem_game {
    qmem::Game impl;
};
struct qmem_decomposition {
    qmem::QuasiDecomposition impl;
};

namespace {

thread_local std::string g_last_error;

qmem_status fail(qmem_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename F>
qmem_status guarded(F&& f) {
    try {
        f();
        return QMEM_OK;
    } catch (const qmem::Error& e) {
        return fail(static_cast<qmem_status>(static_cast<int>(e.code())), e.what());
    } catch (const std::exception& e) {
        return fail(QMEM_INVALID_INPUT, e.what());
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

qmem::SdpOptions options_with_tol(double sdp_tol) {
    qmem::SdpOptions opts;
    if (sdp_tol > 0.0) {
        opts.tol = sdp_tol;
    } else if (const char* env = std::getenv("QMEM_SDP_TOL")) {
        double v = std::atof(env);
        if (v > 0.0)
            opts.tol = v;
    }
    return opts;
}

qmem::RobustnessResult run_method(const qmem::QuantumChannel& n,
                                  const std::string& method, int k,
                                  double sdp_tol) {
    using qmem::PptVariant;
    if (method == "eig")
        return qmem::eig_lower_bound(n);
    if (method == "moment")
        return qmem::moment_lower_bound(n, k > 0 ? k : 2);
    qmem::SdpOptions opts = options_with_tol(sdp_tol);
    if (method == "sdp")
        return qmem::robustness_ppt(n, PptVariant::standard, opts);
    if (method == "sdp-gen")
        return qmem::robustness_ppt(n, PptVariant::generalized, opts);
    if (method == "ent")
        return qmem::robustness_ppt(n, PptVariant::entanglement, opts);
    if (method == "ent-gen")
        return qmem::robustness_ppt(n, PptVariant::entanglement_generalized, opts);
    throw qmem::invalid_input("unknown robustness method: " + method);
}

nlohmann::json matrix_json(const qmem::Mat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (long r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (long c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

extern "C" {

const char* qmem_last_error(void) { return g_last_error.c_str(); }

void qmem_string_free(char* s) { std::free(s); }

qmem_status qmem_channel_from_json(const char* json_text, qmem_channel** out) {
    return guarded([&] {
        *out = new qmem_channel{qmem::channel_from_json_text(json_text)};
    });
}

qmem_status qmem_channel_load(const char* path, qmem_channel** out) {
    return guarded([&] { *out = new qmem_channel{qmem::load_channel(path)}; });
}

qmem_status qmem_channel_family(const char* family_spec, qmem_channel** out) {
    return guarded([&] { *out = new qmem_channel{qmem::channel_family(family_spec)}; });
}

qmem_status qmem_channel_to_json(const qmem_channel* n, char** json_out) {
    return guarded([&] { *json_out = dup_string(qmem::channel_to_json_text(n->impl)); });
}

void qmem_channel_free(qmem_channel* n) { delete n; }

qmem_status qmem_robustness(const qmem_channel* n, const char* method, int k,
                            double sdp_tol, double* value, int* is_exact) {
    return guarded([&] {
        qmem::RobustnessResult r = run_method(n->impl, method, k, sdp_tol);
        *value = r.value;
        if (is_exact)
            *is_exact = r.is_exact ? 1 : 0;
    });
}

qmem_status qmem_robustness_report(const qmem_channel* n, const char* method,
                                   int k, double sdp_tol, char** json_out) {
    return guarded([&] {
        qmem::RobustnessResult r = run_method(n->impl, method, k, sdp_tol);
        nlohmann::json j;
        j["value"] = r.value;
        j["method"] = qmem::method_name(r);
        j["is_exact"] = r.is_exact;
        j["log_robustness"] = qmem::log_robustness(r);
        if (r.witness)
            j["witness"] = matrix_json(*r.witness);
        *json_out = dup_string(j.dump(2));
    });
}

qmem_status qmem_game_from_json(const char* json_text, qmem_game** out) {
    return guarded([&] { *out = new qmem_game{qmem::game_from_json_text(json_text)}; });
}

qmem_status qmem_game_load(const char* path, qmem_game** out) {
    return guarded([&] { *out = new qmem_game{qmem::load_game(path)}; });
}

qmem_status qmem_game_canned(const char* name, qmem_game** out) {
    return guarded([&] { *out = new qmem_game{qmem::canned_game(name)}; });
}

qmem_status qmem_game_payoff(const qmem_game* g, const qmem_channel* n,
                             double* payoff, double* bound) {
    return guarded([&] {
        qmem::PayoffResult r = qmem::payoff(g->impl, n->impl);
        if (payoff)
            *payoff = r.payoff;
        if (bound)
            *bound = r.robustness_lower_bound;
    });
}

qmem_status qmem_game_payoff_report(const qmem_game* g, const qmem_channel* n,
                                    char** json_out) {
    return guarded([&] {
        qmem::PayoffResult r = qmem::payoff(g->impl, n->impl);
        nlohmann::json j;
        j["payoff"] = r.payoff;
        j["robustness_lower_bound"] = r.robustness_lower_bound;
        j["eb_normalized"] = g->impl.eb_normalized;
        nlohmann::json terms = nlohmann::json::array();
        for (const qmem::PayoffTerm& t : r.per_setting)
            terms.push_back({{"input", t.input},
                             {"observable", t.observable},
                             {"probability", t.probability},
                             {"weighted", t.weighted}});
        j["per_setting"] = std::move(terms);
        *json_out = dup_string(j.dump(2));
    });
}

void qmem_game_free(qmem_game* g) { delete g; }

qmem_status qmem_decompose(const qmem_channel* n, double sdp_tol,
                           qmem_decomposition** out, double* s,
                           double* overhead) {
    return guarded([&] {
        qmem::QuasiDecomposition dec =
            qmem::decompose(n->impl, options_with_tol(sdp_tol));
        if (s)
            *s = dec.s;
        if (overhead)
            *overhead = dec.overhead;
        *out = new qmem_decomposition{std::move(dec)};
    });
}

qmem_status qmem_sample(const qmem_decomposition* dec, const char* state_json,
                        const char* observable_json, uint64_t shots,
                        uint64_t seed, double* estimate, double* std_error) {
    return guarded([&] {
        qmem::Mat rho = qmem::matrix_from_json_text(state_json);
        qmem::Mat obs = qmem::matrix_from_json_text(observable_json);
        qmem::SampleResult r = qmem::sample_estimate(dec->impl, rho, obs, shots, seed);
        *estimate = r.estimate;
        if (std_error)
            *std_error = r.std_error;
    });
}

void qmem_decomposition_free(qmem_decomposition* dec) { delete dec; }

qmem_status qmem_synthesize(const qmem_channel* n, double sdp_tol,
                            char** json_out) {
    return guarded([&] {
        qmem::SuperChannel sc =
            qmem::synthesis_superchannel(n->impl, options_with_tol(sdp_tol));
        nlohmann::json j;
        j["probe_dimension"] = sc.probe_dimension;
        j["target_choi"] = matrix_json(sc.target.matrix);
        j["filler_choi"] = matrix_json(sc.filler.matrix);
        *json_out = dup_string(j.dump(2));
    });
}

qmem_status qmem_dd_trajectory(double rate, double t_max, int steps,
                               char** csv_out) {
    return guarded([&] {
        qmem::BathModel model = qmem::default_bath_model();
        qmem::PulseSequence pulses =
            rate > 0.0 ? qmem::x_pulses(rate) : qmem::no_pulses();
        qmem::Trajectory traj = qmem::trajectory(model, pulses, t_max, steps);
        *csv_out = dup_string(
            qmem::trajectory_csv(traj, rate > 0.0 ? "dd" : "free"));
    });
}

double qmem_default_dd_rate(void) { return qmem::default_dd_rate(); }

qmem_status qmem_sweep(const char* family, double from, double to, int steps,
                       const char* methods, double sdp_tol, char** csv_out) {
    return guarded([&] {
        if (steps < 1)
            throw qmem::invalid_input("sweep: steps must be >= 1");
        std::vector<double> grid;
        for (int k = 0; k < steps; ++k)
            grid.push_back(steps == 1 ? from
                                      : from + (to - from) * k / (steps - 1));
        std::vector<qmem::RobustnessMethod> ms;
        std::stringstream list(methods);
        std::string name;
        while (std::getline(list, name, ',')) {
            if (name == "eig")
                ms.push_back(qmem::RobustnessMethod::eig);
            else if (name == "moment")
                ms.push_back(qmem::RobustnessMethod::moment);
            else if (name == "sdp")
                ms.push_back(qmem::RobustnessMethod::sdp_ppt);
            else if (name == "sdp-gen")
                ms.push_back(qmem::RobustnessMethod::sdp_ppt_generalized);
            else if (name == "ent")
                ms.push_back(qmem::RobustnessMethod::sdp_entanglement);
            else if (name == "ent-gen")
                ms.push_back(qmem::RobustnessMethod::sdp_entanglement_generalized);
            else
                throw qmem::invalid_input("unknown sweep method: " + name);
        }
        if (ms.empty())
            throw qmem::invalid_input("sweep: no methods given");
        std::vector<qmem::SweepRow> rows =
            qmem::sweep(family, grid, ms, options_with_tol(sdp_tol));
        *csv_out = dup_string(qmem::sweep_csv(rows));
    });
}

qmem_status qmem_ingest_counts_json(const char* json_text, double* score,
                                    double* std_dev, double* bound) {
    return guarded([&] {
        qmem::IngestResult r =
            qmem::ingest_counts(qmem::counts_from_json_text(json_text));
        *score = r.score;
        if (std_dev)
            *std_dev = r.std_dev;
        if (bound)
            *bound = r.robustness_lower_bound;
    });
}

qmem_status qmem_ingest_counts_file(const char* path, double* score,
                                    double* std_dev, double* bound) {
    return guarded([&] {
        qmem::IngestResult r = qmem::ingest_counts(qmem::load_counts(path));
        *score = r.score;
        if (std_dev)
            *std_dev = r.std_dev;
        if (bound)
            *bound = r.robustness_lower_bound;
    });
}

} // extern "C"
