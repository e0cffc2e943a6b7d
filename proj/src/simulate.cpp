#include "simulate.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "errors.hpp"

namespace qmem {

QuasiDecomposition decompose(const QuantumChannel& n, const SdpOptions& options) {
    RobustnessResult r = robustness_ppt(n, PptVariant::standard, options);
    if (!r.m_choi || !r.m_prime_choi)
        throw solver_failure("decompose: SDP returned no decomposition");
    QuasiDecomposition dec;
    dec.s = r.value;
    dec.m_plus = channel_from_choi(*r.m_prime_choi);
    dec.m_minus = channel_from_choi(*r.m_choi);
    dec.one_norm = 1.0 + 2.0 * dec.s;
    dec.overhead = dec.one_norm * dec.one_norm;
    dec.classical_form = n.d_in * n.d_out <= 6;
    return dec;
}

SampleResult sample_estimate(const QuasiDecomposition& dec, const Mat& rho,
                             const Mat& observable, std::uint64_t shots,
                             std::uint64_t seed) {
    if (shots < 1)
        throw invalid_input("sample_estimate: shots must be >= 1");
    if (rho.rows() != dec.m_plus.d_in || observable.rows() != dec.m_plus.d_out)
        throw invalid_input("sample_estimate: dimension mismatch");
    EigResult obs = herm_eig(observable);
    const int d = static_cast<int>(obs.eigenvalues.size());
    if (std::abs(obs.eigenvalues(0)) > 1.0 + 1e-9 ||
        std::abs(obs.eigenvalues(d - 1)) > 1.0 + 1e-9)
        throw invalid_input("sample_estimate: observable norm exceeds 1");

    // The estimator takes finitely many values: sign * one_norm * lambda_k.
    // Precompute the joint (component, outcome) distribution once; each shot
    // is then a single draw from it.
    const double w_plus = (1.0 + dec.s) / dec.one_norm;
    const double w_minus = dec.s / dec.one_norm;
    std::vector<double> weights;
    std::vector<double> values;
    auto add_component = [&](const QuantumChannel& comp, double w, double sign) {
        if (w <= 0.0)
            return;
        Mat out = apply_channel(comp, rho);
        for (int k = 0; k < d; ++k) {
            double p = (obs.eigenvectors.col(k).adjoint() * out *
                        obs.eigenvectors.col(k))(0, 0).real();
            weights.push_back(w * std::max(0.0, p));
            values.push_back(sign * dec.one_norm * obs.eigenvalues(k));
        }
    };
    add_component(dec.m_plus, w_plus, 1.0);
    add_component(dec.m_minus, w_minus, -1.0);

    Rng rng(split_seed(seed, 0x73616d70)); // "samp"
    std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
    double sum = 0.0, sumsq = 0.0;
    for (std::uint64_t t = 0; t < shots; ++t) {
        double v = values[draw(rng)];
        sum += v;
        sumsq += v * v;
    }
    SampleResult res;
    res.shots = shots;
    res.overhead = dec.overhead;
    res.estimate = sum / static_cast<double>(shots);
    if (shots > 1) {
        double var = (sumsq - sum * res.estimate) / static_cast<double>(shots - 1);
        res.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(shots));
    }
    return res;
}

SuperChannel synthesis_superchannel(const QuantumChannel& n_target,
                                    const SdpOptions& options) {
    QuasiDecomposition dec = decompose(n_target, options);
    SuperChannel sc;
    sc.probe_dimension = 1 + static_cast<int>(std::ceil(std::max(0.0, dec.s) - 1e-9));
    sc.target = n_target.choi;
    sc.filler = dec.m_minus.choi;
    return sc;
}

ChoiState apply_superchannel(const SuperChannel& sc, const ChoiState& probe) {
    const int dc = sc.probe_dimension;
    if (probe.d_a != dc || probe.d_b != dc)
        throw invalid_input("apply_superchannel: probe must act on the d_c probe space");
    probe.validate();
    Mat psi = max_entangled(dc);
    double q = hs_inner(psi, probe.matrix);
    q = std::min(1.0, std::max(0.0, q));
    Mat out = q * sc.target.matrix + (1.0 - q) * sc.filler.matrix;
    return ChoiState{sc.target.d_a, sc.target.d_b, symmetrize(out)};
}

} // namespace qmem
