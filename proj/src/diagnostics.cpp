#include "dam/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "dam/dynamics.hpp"

namespace dam {

TheoryQuantities theory(const ModelParams& params, std::optional<double> gamma,
                        std::optional<double> beta) {
    const double n = params.order;
    const double scale = params.scale();
    TheoryQuantities q;
    q.loading = static_cast<double>(params.num_patterns) / scale;
    q.contraction = 1.0 / n - 2.0 * (n - 1.0) * q.loading;
    q.alpha_rate = q.contraction;
    q.rho_star_alpha = q.contraction / 2.0;
    q.cap_lower = scale / (4.0 * n * n * (n - 1.0) * (n - 1.0));
    q.cap_upper = 2.0 * scale / n;
    q.mimura_alpha3 = n * q.loading;
    if (gamma) q.rho_star_gamma = (*gamma - n * (n - 1.0) * q.loading) / 2.0;
    if (gamma && beta) q.rho_star_beta = (*gamma - (n - 1.0) * *beta) / 2.0;
    return q;
}

namespace {

// Patterns packed to one bit per entry (+1 -> 1); pairwise inner products
// become XOR + popcount over the words.
std::vector<std::uint64_t> pack_patterns(const PatternSet& patterns, long long words) {
    const long long p = patterns.num_patterns();
    const long long n = patterns.num_neurons();
    std::vector<std::uint64_t> packed(p * words, 0);
    for (long long mu = 0; mu < p; ++mu) {
        const std::int8_t* row = patterns.row(mu).data();
        std::uint64_t* out = packed.data() + mu * words;
        for (long long i = 0; i < n; ++i)
            if (row[i] > 0) out[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    return packed;
}

}  // namespace

double beta_patterns(const PatternSet& patterns) {
    const long long p = patterns.num_patterns();
    const long long n = patterns.num_neurons();
    if (p < 2) return 0.0;

    const long long words = (n + 63) / 64;
    const auto packed = pack_patterns(patterns, words);

    long long max_abs = 0;
    for (long long mu = 0; mu < p; ++mu) {
        const std::uint64_t* a = packed.data() + mu * words;
        for (long long nu = mu + 1; nu < p; ++nu) {
            const std::uint64_t* b = packed.data() + nu * words;
            long long mismatches = 0;
            for (long long w = 0; w < words; ++w)
                mismatches += std::popcount(a[w] ^ b[w]);
            const long long dot = n - 2 * mismatches;
            max_abs = std::max(max_abs, dot < 0 ? -dot : dot);
        }
    }
    return static_cast<double>(max_abs) / static_cast<double>(n);
}

namespace {

// Flips k distinct uniformly chosen coordinates (partial Fisher-Yates).
void flip_random_coords(NetworkState& state, const PatternSet& patterns, long long k,
                        Xoshiro256ss& rng) {
    const long long n = patterns.num_neurons();
    std::vector<std::int32_t> idx(n);
    for (long long i = 0; i < n; ++i) idx[i] = static_cast<std::int32_t>(i);
    for (long long j = 0; j < k; ++j) {
        const long long pick = j + static_cast<long long>(rng.next_below(n - j));
        std::swap(idx[j], idx[pick]);
        flip_neuron(state, patterns, idx[j]);
    }
}

struct SampleStats {
    double max_overlap = 0.0;
    double max_interference = 0.0;
};

SampleStats measure_state(const NetworkState& state, const PatternSet& patterns,
                          long long target) {
    const ModelParams& params = patterns.params();
    const long long p = params.num_patterns;
    const long long n = params.num_neurons;
    SampleStats stats;
    std::vector<double> acc(n, 0.0);
    for (long long mu = 0; mu < p; ++mu) {
        if (mu == target) continue;
        const double m = static_cast<double>(state.overlaps[mu]) / static_cast<double>(n);
        stats.max_overlap = std::max(stats.max_overlap, std::fabs(m));
        const double w = std::pow(m, params.order - 1);
        const std::int8_t* row = patterns.row(mu).data();
        for (long long i = 0; i < n; ++i) acc[i] += row[i] * w;
    }
    for (long long i = 0; i < n; ++i)
        stats.max_interference = std::max(stats.max_interference, std::fabs(acc[i]));
    return stats;
}

}  // namespace

SeparationEstimate estimate_separation(const PatternSet& patterns, long long target, double gamma,
                                       long long sample_count, Xoshiro256ss& rng) {
    if (sample_count <= 0) throw std::invalid_argument("estimate_separation: sample_count = 0");
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("estimate_separation: gamma must be in (0,1)");

    const ModelParams& params = patterns.params();
    const long long n = params.num_neurons;
    const long long flips = static_cast<long long>(std::floor(n * (1.0 - gamma) / 2.0));

    SeparationEstimate est;
    est.gamma = gamma;
    est.beta_patterns = beta_patterns(patterns);

    auto absorb = [&](const NetworkState& state) {
        const SampleStats stats = measure_state(state, patterns, target);
        est.beta_state_hat = std::max(est.beta_state_hat, stats.max_overlap);
        est.lambda_hat = std::max(est.lambda_hat, stats.max_interference);
        ++est.samples_used;
    };

    // Uniform basin-boundary samples.
    for (long long s = 0; s < sample_count; ++s) {
        NetworkState state = NetworkState::at_pattern(patterns, target);
        flip_random_coords(state, patterns, flips, rng);
        absorb(state);
    }

    // States along real retrieval trajectories from the boundary.
    const int trajectories = 3;
    const int max_traj_sweeps = 10;
    for (int t = 0; t < trajectories; ++t) {
        NetworkState state = NetworkState::at_pattern(patterns, target);
        flip_random_coords(state, patterns, flips, rng);
        for (int sweep = 0; sweep < max_traj_sweeps; ++sweep) {
            if (async_sweep(state, patterns, rng) == 0) break;
            absorb(state);
        }
    }

    const double signal = std::pow(gamma, params.order - 1);
    est.dominant = est.lambda_hat < signal;
    est.phi_margin = 0.5 * params.order * (signal - est.lambda_hat);
    return est;
}

ContractionStats contraction_probe(const PatternSet& patterns, long long target, double gamma,
                                   int trials, Xoshiro256ss& rng) {
    const ModelParams& params = patterns.params();
    const long long n = params.num_neurons;
    const double alpha = theory(params).contraction;
    const long long flips = std::llround(n * (1.0 - gamma) / 2.0);

    ContractionStats stats;
    double gain_sum = 0.0;
    double predicted_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        NetworkState state = NetworkState::at_pattern(patterns, target);
        flip_random_coords(state, patterns, flips, rng);
        for (long long u = 0; u < n; ++u) {
            const double m_before =
                static_cast<double>(state.overlaps[target]) / static_cast<double>(n);
            const long long i = static_cast<long long>(rng.next_below(n));
            const std::int8_t response = best_response(state, patterns, i);
            if (response != state.spins[i]) flip_neuron(state, patterns, i);
            const double m_after =
                static_cast<double>(state.overlaps[target]) / static_cast<double>(n);
            gain_sum += m_after - m_before;
            predicted_sum += alpha / static_cast<double>(n) * (1.0 - m_before);
            ++stats.updates;
        }
    }
    if (stats.updates > 0) {
        stats.mean_gain = gain_sum / static_cast<double>(stats.updates);
        stats.predicted_gain = predicted_sum / static_cast<double>(stats.updates);
        if (stats.predicted_gain != 0.0) stats.ratio = stats.mean_gain / stats.predicted_gain;
    }
    return stats;
}

}  // namespace dam
