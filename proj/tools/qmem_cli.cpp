// qmem: robustness of quantum memories from the command line.
// Thin shell over the C API in qmem/qmem.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qmem/qmem.h"

namespace {

int report(qmem_status st) {
    if (st != QMEM_OK)
        std::cerr << "error: " << qmem_last_error() << "\n";
    return static_cast<int>(st);
}

std::string take(char* owned) {
    std::string s = owned ? owned : "";
    qmem_string_free(owned);
    return s;
}

bool write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << path << "\n";
        return false;
    }
    out << text;
    return true;
}

std::string read_file(const std::string& path, bool& ok) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ok = false;
        return {};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    ok = true;
    return buf.str();
}

struct ChannelHandle {
    qmem_channel* ptr = nullptr;
    ~ChannelHandle() { qmem_channel_free(ptr); }
};

// Accept either a channel JSON file or a family spec like "dephasing(0.75)".
qmem_status open_channel(const std::string& arg, qmem_channel** out) {
    if (std::ifstream(arg, std::ios::binary))
        return qmem_channel_load(arg.c_str(), out);
    return qmem_channel_family(arg.c_str(), out);
}
struct GameHandle {
    qmem_game* ptr = nullptr;
    ~GameHandle() { qmem_game_free(ptr); }
};
struct DecompositionHandle {
    qmem_decomposition* ptr = nullptr;
    ~DecompositionHandle() { qmem_decomposition_free(ptr); }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robustness of quantum memories: SDP bounds, nonlocal games, "
                 "quasi-probability simulation, decoupling dynamics"};
    app.require_subcommand(1);

    // robustness
    std::string r_channel, r_method = "eig";
    int r_k = 2;
    auto* rob = app.add_subcommand("robustness", "Robustness of a channel");
    rob->add_option("--channel", r_channel, "channel JSON file")->required();
    rob->add_option("--method", r_method, "eig|moment|sdp|sdp-gen|ent|ent-gen");
    rob->add_option("--k", r_k, "moment order (moment method)");

    // game
    std::string g_game, g_channel;
    auto* game = app.add_subcommand("game", "Evaluate a game payoff on a channel");
    game->add_option("--game", g_game,
                     "game JSON file, or canned name (depolarizing, erasure, "
                     "damping(p))")
        ->required();
    game->add_option("--channel", g_channel, "channel JSON file")->required();

    // sweep
    std::string s_family, s_methods = "eig", s_out = "-";
    double s_from = 0.0, s_to = 1.0;
    int s_steps = 11;
    auto* swp = app.add_subcommand("sweep", "Robustness over a parameter grid");
    swp->add_option("--family", s_family, "channel family name")->required();
    swp->add_option("--from", s_from, "grid start");
    swp->add_option("--to", s_to, "grid end");
    swp->add_option("--steps", s_steps, "number of grid points");
    swp->add_option("--methods", s_methods, "comma-separated method list");
    swp->add_option("--out", s_out, "output CSV path (- for stdout)");

    // decompose
    std::string d_channel;
    auto* dec = app.add_subcommand("decompose",
                                   "Quasi-probability decomposition of a channel");
    dec->add_option("--channel", d_channel, "channel JSON file")->required();

    // sample
    std::string m_channel, m_state, m_observable;
    std::uint64_t m_shots = 100000, m_seed = 0;
    auto* smp = app.add_subcommand(
        "sample", "Classically estimate Tr[O N(rho)] by sign sampling");
    smp->add_option("--channel", m_channel, "channel JSON file")->required();
    smp->add_option("--state", m_state, "input state JSON matrix")->required();
    smp->add_option("--observable", m_observable, "observable JSON matrix")
        ->required();
    smp->add_option("--shots", m_shots, "number of shots");
    smp->add_option("--seed", m_seed, "RNG seed");

    // synthesize
    std::string y_channel;
    auto* syn = app.add_subcommand(
        "synthesize", "Super-channel synthesizing the target from an identity");
    syn->add_option("--channel", y_channel, "channel JSON file")->required();

    // dd
    double dd_rate = qmem_default_dd_rate(), dd_tmax = 3.14159265358979323846;
    int dd_steps = 200;
    bool dd_free = false;
    std::string dd_out = "-";
    auto* dd = app.add_subcommand(
        "dd", "Memory-bath trajectory with X-pulse dynamical decoupling");
    dd->add_option("--rate", dd_rate, "pulses per unit time");
    dd->add_option("--t-max", dd_tmax, "final time");
    dd->add_option("--steps", dd_steps, "grid points");
    dd->add_flag("--no-pulses", dd_free, "free evolution (no decoupling)");
    dd->add_option("--out", dd_out, "output CSV path (- for stdout)");

    // ingest
    std::string i_counts;
    auto* ing = app.add_subcommand("ingest",
                                   "Score experimental counts for a game");
    ing->add_option("--counts", i_counts, "counts JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (rob->parsed()) {
        ChannelHandle n;
        if (qmem_status st = open_channel(r_channel, &n.ptr))
            return report(st);
        char* json = nullptr;
        if (qmem_status st =
                qmem_robustness_report(n.ptr, r_method.c_str(), r_k, 0.0, &json))
            return report(st);
        std::cout << take(json) << "\n";
        return 0;
    }

    if (game->parsed()) {
        ChannelHandle n;
        if (qmem_status st = open_channel(g_channel, &n.ptr))
            return report(st);
        GameHandle g;
        bool ok = false;
        std::string text = read_file(g_game, ok);
        qmem_status st = ok ? qmem_game_from_json(text.c_str(), &g.ptr)
                            : qmem_game_canned(g_game.c_str(), &g.ptr);
        if (st)
            return report(st);
        char* json = nullptr;
        if ((st = qmem_game_payoff_report(g.ptr, n.ptr, &json)))
            return report(st);
        std::cout << take(json) << "\n";
        return 0;
    }

    if (swp->parsed()) {
        char* csv = nullptr;
        if (qmem_status st = qmem_sweep(s_family.c_str(), s_from, s_to, s_steps,
                                        s_methods.c_str(), 0.0, &csv))
            return report(st);
        return write_out(s_out, take(csv)) ? 0 : 2;
    }

    if (dec->parsed()) {
        ChannelHandle n;
        if (qmem_status st = open_channel(d_channel, &n.ptr))
            return report(st);
        DecompositionHandle d;
        double s = 0.0, overhead = 0.0;
        if (qmem_status st = qmem_decompose(n.ptr, 0.0, &d.ptr, &s, &overhead))
            return report(st);
        std::printf("{\n  \"s\": %.12g,\n  \"one_norm\": %.12g,\n"
                    "  \"overhead\": %.12g\n}\n",
                    s, 1.0 + 2.0 * s, overhead);
        return 0;
    }

    if (smp->parsed()) {
        ChannelHandle n;
        if (qmem_status st = open_channel(m_channel, &n.ptr))
            return report(st);
        DecompositionHandle d;
        double s = 0.0, overhead = 0.0;
        if (qmem_status st = qmem_decompose(n.ptr, 0.0, &d.ptr, &s, &overhead))
            return report(st);
        bool ok_s = false, ok_o = false;
        std::string state = read_file(m_state, ok_s);
        std::string obs = read_file(m_observable, ok_o);
        if (!ok_s || !ok_o) {
            std::cerr << "error: cannot read "
                      << (ok_s ? m_observable : m_state) << "\n";
            return 2;
        }
        double est = 0.0, err = 0.0;
        if (qmem_status st = qmem_sample(d.ptr, state.c_str(), obs.c_str(),
                                         m_shots, m_seed, &est, &err))
            return report(st);
        std::printf("{\n  \"estimate\": %.12g,\n  \"std_error\": %.12g,\n"
                    "  \"shots\": %llu,\n  \"overhead\": %.12g\n}\n",
                    est, err, static_cast<unsigned long long>(m_shots), overhead);
        return 0;
    }

    if (syn->parsed()) {
        ChannelHandle n;
        if (qmem_status st = open_channel(y_channel, &n.ptr))
            return report(st);
        char* json = nullptr;
        if (qmem_status st = qmem_synthesize(n.ptr, 0.0, &json))
            return report(st);
        std::cout << take(json) << "\n";
        return 0;
    }

    if (dd->parsed()) {
        char* csv = nullptr;
        if (qmem_status st = qmem_dd_trajectory(dd_free ? -1.0 : dd_rate,
                                                dd_tmax, dd_steps, &csv))
            return report(st);
        return write_out(dd_out, take(csv)) ? 0 : 2;
    }

    if (ing->parsed()) {
        double score = 0.0, std_dev = 0.0, bound = 0.0;
        if (qmem_status st = qmem_ingest_counts_file(i_counts.c_str(), &score,
                                                     &std_dev, &bound))
            return report(st);
        std::printf("{\n  \"score\": %.12g,\n  \"std\": %.12g,\n"
                    "  \"robustness_lower_bound\": %.12g\n}\n",
                    score, std_dev, bound);
        return 0;
    }

    return 0;
}
