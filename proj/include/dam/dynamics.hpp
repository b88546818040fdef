#pragma once

// Retrieval dynamics: asynchronous random-permutation sweeps, synchronous
// parallel steps, the sweep-until-converged loop, and the small-instance
// exhaustive fixed-point oracle.

#include <cstdint>
#include <vector>

#include "dam/model.hpp"
#include "dam/rng.hpp"

namespace dam {

enum class UpdateMode { asynchronous, synchronous };

struct SweepConfig {
    UpdateMode mode = UpdateMode::asynchronous;
    int max_sweeps = 60;
    double omega = 0.95;    // required fraction of neurons matching the target
    long long target = 0;   // pattern index nu
    bool record_potential = false;
};

struct TrialOutcome {
    bool converged = false;
    int sweeps_used = 0;
    double final_overlap = 0.0;
    long long flips_total = 0;
    std::vector<i128> potential_trace;  // per-sweep numerators when recorded
};

// Fresh Fisher-Yates permutation of 0..n-1 drawn from rng.
std::vector<std::int32_t> random_permutation(long long n, Xoshiro256ss& rng);

// One asynchronous sweep: visits every neuron once in a fresh random
// permutation, applying the best response at each. Returns flips performed.
int async_sweep(NetworkState& state, const PatternSet& patterns, Xoshiro256ss& rng);

// One synchronous step: all marginal fields evaluated against the frozen
// pre-sweep state, all resulting spins applied at once, cache rebuilt once.
// Ties keep the old spin. Returns flips performed.
int sync_sweep(NetworkState& state, const PatternSet& patterns);

// Matching fraction (1 + m_target)/2 of the state against pattern `target`.
double matching_fraction(const NetworkState& state, const PatternSet& patterns, long long target);

// Runs sweeps until the matching fraction reaches config.omega (checked
// before the first sweep and after each completed one) or max_sweeps is hit.
// Stalls (zero-flip sweep, or an exact 2-cycle under synchronous updates)
// terminate early since the trajectory can never reach the target after one.
TrialOutcome retrieve(const PatternSet& patterns, NetworkState& state, const SweepConfig& config,
                      Xoshiro256ss& rng);

// Exhaustive scan of all 2^N states; requires N <= 16.
std::vector<std::vector<std::int8_t>> enumerate_fixed_points(const PatternSet& patterns);

}  // namespace dam
