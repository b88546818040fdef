#pragma once

// Initial-corruption sampling and the per-round adversaries with the
// alternating corrupt-then-sweep protocol.

#include "dam/dynamics.hpp"
#include "dam/model.hpp"
#include "dam/rng.hpp"

namespace dam {

enum class AdversaryModel { strong, weak, none };

struct AdversaryConfig {
    AdversaryModel model = AdversaryModel::none;
    double rho = 0.0;      // corruption fraction per round
    int rounds = 10;
    double gamma0 = 0.6;   // initial overlap
};

// Flips k = round(fraction*N) distinct uniformly chosen coordinates of the
// target pattern; the result has overlap 1 - 2k/N with it.
NetworkState corrupt_random(const PatternSet& patterns, long long target, double fraction,
                            Xoshiro256ss& rng);

// Among currently-correct neurons, flips the `budget` whose alignment
// Phi_i * xi_i^target is smallest (exact integer sort, ties broken by lower
// index). Fields are evaluated once against the pre-corruption state.
// Returns the number flipped (all correct neurons if fewer than budget).
long long adversary_strong(NetworkState& state, const PatternSet& patterns, long long target,
                           long long budget);

// Flips uniformly among correct neurons whose field opposes the target
// (Phi_i * xi_i^target < 0); any remaining budget is filled uniformly from
// the other correct neurons. Returns the number flipped.
long long adversary_weak(NetworkState& state, const PatternSet& patterns, long long target,
                         long long budget, Xoshiro256ss& rng);

// Starts from overlap gamma0 (round(N(1-gamma0)/2) random flips), then runs
// `rounds` iterations of [adversary with budget round(rho*N), one async
// sweep]. Success = final matching fraction >= sweep_cfg.omega.
TrialOutcome robustness_protocol(const PatternSet& patterns, long long target,
                                 const AdversaryConfig& adv, const SweepConfig& sweep_cfg,
                                 Xoshiro256ss& rng);

}  // namespace dam
