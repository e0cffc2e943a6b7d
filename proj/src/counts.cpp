#include "counts.hpp"

#include <chrono>
#include <cmath>
#include <future>
#include <sstream>

#include "errors.hpp"

namespace qmem {

IngestResult ingest_counts(const CountsRecord& record) {
    if (record.settings.size() != record.coefficients.size())
        throw invalid_input("ingest_counts: coefficient vector length " +
                            std::to_string(record.coefficients.size()) +
                            " does not match " +
                            std::to_string(record.settings.size()) + " settings");
    IngestResult res;
    double var = 0.0;
    for (std::size_t k = 0; k < record.settings.size(); ++k) {
        const CountsSetting& s = record.settings[k];
        if (s.shots < 1)
            throw invalid_input("ingest_counts: setting " + std::to_string(k) +
                                " has zero shots");
        if (s.successes > s.shots)
            throw invalid_input("ingest_counts: setting " + std::to_string(k) +
                                " has successes > shots");
        double p = static_cast<double>(s.successes) / static_cast<double>(s.shots);
        double c = record.coefficients[k];
        res.score += c * p;
        var += c * c * p * (1.0 - p) / static_cast<double>(s.shots);
    }
    res.std_dev = std::sqrt(var);
    res.robustness_lower_bound = res.score - 1.0;
    return res;
}

namespace {

SweepRow evaluate_point(const std::string& family, double p,
                        RobustnessMethod method, const SdpOptions& options) {
    std::ostringstream spec;
    spec.precision(17);
    spec << family << '(' << p << ')';
    QuantumChannel n = channel_family(spec.str());
    auto start = std::chrono::steady_clock::now();
    RobustnessResult r;
    switch (method) {
    case RobustnessMethod::eig:
        r = eig_lower_bound(n);
        break;
    case RobustnessMethod::moment:
        r = moment_lower_bound(n, 2);
        break;
    case RobustnessMethod::sdp_ppt:
        r = robustness_ppt(n, PptVariant::standard, options);
        break;
    case RobustnessMethod::sdp_ppt_generalized:
        r = robustness_ppt(n, PptVariant::generalized, options);
        break;
    case RobustnessMethod::sdp_entanglement:
        r = robustness_ppt(n, PptVariant::entanglement, options);
        break;
    case RobustnessMethod::sdp_entanglement_generalized:
        r = robustness_ppt(n, PptVariant::entanglement_generalized, options);
        break;
    default:
        throw invalid_input("sweep: unsupported method");
    }
    auto stop = std::chrono::steady_clock::now();
    SweepRow row;
    row.p = p;
    row.method = method;
    row.value = r.value;
    row.is_exact = r.is_exact;
    row.wall_seconds = std::chrono::duration<double>(stop - start).count();
    return row;
}

} // namespace

std::vector<SweepRow> sweep(const std::string& family,
                            const std::vector<double>& p_grid,
                            const std::vector<RobustnessMethod>& methods,
                            const SdpOptions& options) {
    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(p_grid.size() * methods.size());
    for (double p : p_grid)
        for (RobustnessMethod m : methods)
            jobs.push_back(std::async(std::launch::async, evaluate_point, family,
                                      p, m, options));
    std::vector<SweepRow> rows;
    rows.reserve(jobs.size());
    for (auto& job : jobs)
        rows.push_back(job.get());
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out.precision(12);
    out << "p,method,value,is_exact,wall_seconds\n";
    for (const SweepRow& row : rows) {
        RobustnessResult tag;
        tag.method = row.method;
        tag.moment_order = 2;
        out << row.p << ',' << method_name(tag) << ',' << row.value << ','
            << (row.is_exact ? 1 : 0) << ',' << row.wall_seconds << '\n';
    }
    return out.str();
}

} // namespace qmem
