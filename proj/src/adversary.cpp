#include "dam/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dam {

NetworkState corrupt_random(const PatternSet& patterns, long long target, double fraction,
                            Xoshiro256ss& rng) {
    if (fraction < 0.0 || fraction > 1.0)
        throw std::invalid_argument("corrupt_random: fraction must be in [0,1]");
    const long long n = patterns.num_neurons();
    const long long k = std::llround(fraction * static_cast<double>(n));

    NetworkState state = NetworkState::at_pattern(patterns, target);
    std::vector<std::int32_t> idx(n);
    for (long long i = 0; i < n; ++i) idx[i] = static_cast<std::int32_t>(i);
    for (long long j = 0; j < k; ++j) {
        const long long pick = j + static_cast<long long>(rng.next_below(n - j));
        std::swap(idx[j], idx[pick]);
        flip_neuron(state, patterns, idx[j]);
    }
    return state;
}

namespace {

std::vector<std::int32_t> correct_neurons(const NetworkState& state, const PatternSet& patterns,
                                          long long target) {
    const std::int8_t* row = patterns.row(target).data();
    std::vector<std::int32_t> correct;
    const long long n = patterns.num_neurons();
    correct.reserve(n);
    for (long long i = 0; i < n; ++i)
        if (state.spins[i] == row[i]) correct.push_back(static_cast<std::int32_t>(i));
    return correct;
}

}  // namespace

long long adversary_strong(NetworkState& state, const PatternSet& patterns, long long target,
                           long long budget) {
    if (budget <= 0) return 0;
    const std::int8_t* row = patterns.row(target).data();
    auto correct = correct_neurons(state, patterns, target);

    // Alignment Phi_i * xi_i^target, evaluated once against the
    // pre-corruption state; ascending exact sort, index tie-break.
    std::vector<std::pair<i128, std::int32_t>> alignment;
    alignment.reserve(correct.size());
    for (std::int32_t i : correct) {
        const i128 num = marginal_field(state, patterns, i).numerator;
        alignment.emplace_back(row[i] > 0 ? num : -num, i);
    }
    std::sort(alignment.begin(), alignment.end(),
              [](const auto& a, const auto& b) {
                  return a.first != b.first ? a.first < b.first : a.second < b.second;
              });

    const long long k = std::min<long long>(budget, static_cast<long long>(alignment.size()));
    for (long long j = 0; j < k; ++j) flip_neuron(state, patterns, alignment[j].second);
    return k;
}

long long adversary_weak(NetworkState& state, const PatternSet& patterns, long long target,
                         long long budget, Xoshiro256ss& rng) {
    if (budget <= 0) return 0;
    const std::int8_t* row = patterns.row(target).data();
    auto correct = correct_neurons(state, patterns, target);

    std::vector<std::int32_t> opposing, rest;
    for (std::int32_t i : correct) {
        const i128 num = marginal_field(state, patterns, i).numerator;
        const i128 align = row[i] > 0 ? num : -num;
        (align < 0 ? opposing : rest).push_back(i);
    }

    auto sample_and_flip = [&](std::vector<std::int32_t>& pool, long long want) {
        const long long k = std::min<long long>(want, static_cast<long long>(pool.size()));
        for (long long j = 0; j < k; ++j) {
            const long long pick =
                j + static_cast<long long>(rng.next_below(pool.size() - j));
            std::swap(pool[j], pool[pick]);
            flip_neuron(state, patterns, pool[j]);
        }
        return k;
    };

    long long flipped = sample_and_flip(opposing, budget);
    flipped += sample_and_flip(rest, budget - flipped);
    return flipped;
}

TrialOutcome robustness_protocol(const PatternSet& patterns, long long target,
                                 const AdversaryConfig& adv, const SweepConfig& sweep_cfg,
                                 Xoshiro256ss& rng) {
    if (adv.rho < 0.0 || adv.rho > 1.0)
        throw std::invalid_argument("robustness_protocol: rho must be in [0,1]");
    if (adv.rounds < 1) throw std::invalid_argument("robustness_protocol: rounds must be >= 1");

    const long long n = patterns.num_neurons();
    NetworkState state = corrupt_random(patterns, target, (1.0 - adv.gamma0) / 2.0, rng);
    const long long budget = std::llround(adv.rho * static_cast<double>(n));

    TrialOutcome out;
    for (int round = 0; round < adv.rounds; ++round) {
        switch (adv.model) {
            case AdversaryModel::strong:
                out.flips_total += adversary_strong(state, patterns, target, budget);
                break;
            case AdversaryModel::weak:
                out.flips_total += adversary_weak(state, patterns, target, budget, rng);
                break;
            case AdversaryModel::none:
                break;
        }
        out.flips_total += async_sweep(state, patterns, rng);
        out.sweeps_used = round + 1;
    }
    out.converged = matching_fraction(state, patterns, target) >= sweep_cfg.omega;
    out.final_overlap = overlap(state, patterns, target);
    return out;
}

}  // namespace dam
