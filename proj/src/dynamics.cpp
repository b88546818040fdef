#include "dam/dynamics.hpp"

#include <numeric>
#include <stdexcept>

namespace dam {

std::vector<std::int32_t> random_permutation(long long n, Xoshiro256ss& rng) {
    std::vector<std::int32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (long long j = n - 1; j > 0; --j)
        std::swap(perm[j], perm[rng.next_below(static_cast<std::uint64_t>(j + 1))]);
    return perm;
}

int async_sweep(NetworkState& state, const PatternSet& patterns, Xoshiro256ss& rng) {
    const auto perm = random_permutation(patterns.num_neurons(), rng);
    int flips = 0;
    for (std::int32_t i : perm) {
        if (best_response(state, patterns, i) != state.spins[i]) {
            flip_neuron(state, patterns, i);
            ++flips;
        }
    }
    return flips;
}

int sync_sweep(NetworkState& state, const PatternSet& patterns) {
    const long long n = patterns.num_neurons();
    std::vector<std::int8_t> next(n);
    for (long long i = 0; i < n; ++i) next[i] = best_response(state, patterns, i);
    int flips = 0;
    for (long long i = 0; i < n; ++i)
        if (next[i] != state.spins[i]) ++flips;
    state.spins = std::move(next);
    rebuild_overlaps(state, patterns);
    return flips;
}

double matching_fraction(const NetworkState& state, const PatternSet& patterns, long long target) {
    const double n = static_cast<double>(patterns.num_neurons());
    return (n + static_cast<double>(state.overlaps[target])) / (2.0 * n);
}

TrialOutcome retrieve(const PatternSet& patterns, NetworkState& state, const SweepConfig& config,
                      Xoshiro256ss& rng) {
    if (config.target < 0 || config.target >= patterns.num_patterns())
        throw std::out_of_range("retrieve: target pattern index out of range");

    TrialOutcome out;
    if (config.record_potential)
        out.potential_trace.push_back(potential(state, patterns.params()).numerator);

    auto matched = [&] { return matching_fraction(state, patterns, config.target) >= config.omega; };

    if (matched()) {
        out.converged = true;
        out.sweeps_used = 0;
        out.final_overlap = overlap(state, patterns, config.target);
        return out;
    }

    const bool synchronous = config.mode == UpdateMode::synchronous;
    std::vector<std::int8_t> prev, prev2;  // 2-cycle detection under sync updates
    for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
        if (synchronous) {
            prev2 = std::move(prev);
            prev = state.spins;
        }
        const int flips =
            synchronous ? sync_sweep(state, patterns) : async_sweep(state, patterns, rng);
        out.flips_total += flips;
        out.sweeps_used = sweep;
        if (config.record_potential)
            out.potential_trace.push_back(potential(state, patterns.params()).numerator);
        if (matched()) {
            out.converged = true;
            break;
        }
        // A zero-flip sweep is a fixed point; the state is frozen forever.
        if (flips == 0) break;
        // An exact period-2 orbit cannot reach the target either: both of
        // its states were already checked against omega.
        if (synchronous && !prev2.empty() && state.spins == prev2) break;
    }
    out.final_overlap = overlap(state, patterns, config.target);
    return out;
}

std::vector<std::vector<std::int8_t>> enumerate_fixed_points(const PatternSet& patterns) {
    const long long n = patterns.num_neurons();
    if (n > 16) throw std::invalid_argument("enumerate_fixed_points requires N <= 16");

    std::vector<std::vector<std::int8_t>> found;
    std::vector<std::int8_t> spins(n);
    const std::uint32_t total = 1u << n;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        for (long long i = 0; i < n; ++i)
            spins[i] = (mask >> i) & 1u ? 1 : -1;
        NetworkState state = NetworkState::from_spins(patterns, spins);
        if (is_fixed_point(state, patterns)) found.push_back(spins);
    }
    return found;
}

}  // namespace dam
