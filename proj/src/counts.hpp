#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "robustness.hpp"

namespace qmem {

struct CountsSetting {
    int input = 0;
    int observable = 0;
    std::uint64_t shots = 0;
    std::uint64_t successes = 0;
};

struct CountsRecord {
    std::string game_label;
    std::vector<CountsSetting> settings;
    std::vector<double> coefficients; // aligned with settings
};

struct IngestResult {
    double score = 0.0;
    double std_dev = 0.0;
    double robustness_lower_bound = 0.0;
};

// score = sum c_k p_k with p_k = successes/shots; binomial error propagation
// std = sqrt(sum c_k^2 p_k (1-p_k) / shots_k).
IngestResult ingest_counts(const CountsRecord& record);

struct SweepRow {
    double p = 0.0;
    RobustnessMethod method = RobustnessMethod::eig;
    double value = 0.0;
    bool is_exact = false;
    double wall_seconds = 0.0;
};

// One row per (p, method), ordered by (p, method position in the list).
// Points are evaluated concurrently.
std::vector<SweepRow> sweep(const std::string& family,
                            const std::vector<double>& p_grid,
                            const std::vector<RobustnessMethod>& methods,
                            const SdpOptions& options = {});

std::string sweep_csv(const std::vector<SweepRow>& rows);

} // namespace qmem
