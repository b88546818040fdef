#pragma once

// Closed-form theory quantities (contraction rate, adversarial tolerance,
// capacity constants, loading conversions) and sampling-based estimates of
// the separation and componentwise-interference conditions.

#include <optional>

#include "dam/model.hpp"
#include "dam/rng.hpp"

namespace dam {

struct TheoryQuantities {
    double loading = 0.0;         // p / N^(n-1)
    double contraction = 0.0;     // 1/n - 2(n-1) * loading
    double alpha_rate = 0.0;      // same quantity, experiment-facing name
    double rho_star_alpha = 0.0;  // contraction / 2
    double cap_lower = 0.0;       // N^(n-1) / (4 n^2 (n-1)^2)
    double cap_upper = 0.0;       // 2 N^(n-1) / n
    double mimura_alpha3 = 0.0;   // n p / N^(n-1)
    std::optional<double> rho_star_gamma;  // (gamma - n(n-1)*loading)/2
    std::optional<double> rho_star_beta;   // (gamma - (n-1)*beta)/2
};

TheoryQuantities theory(const ModelParams& params, std::optional<double> gamma = {},
                        std::optional<double> beta = {});

// Max |<pattern_mu, pattern_nu>|/N over mu != nu, exact inner products.
// Defined as 0 when fewer than two patterns are stored.
double beta_patterns(const PatternSet& patterns);

struct SeparationEstimate {
    double beta_patterns = 0.0;   // exact pairwise pattern overlap bound
    double beta_state_hat = 0.0;  // sampled max non-target state overlap
    double lambda_hat = 0.0;      // sampled componentwise interference bound
    double gamma = 0.0;
    bool dominant = false;        // lambda_hat < gamma^(n-1)
    double phi_margin = 0.0;      // (n/2)(gamma^(n-1) - lambda_hat), the reported
                                  // per-coordinate field margin inside the basin
    long long samples_used = 0;
};

// Samples basin-boundary states (target pattern with floor(N(1-gamma)/2)
// random coordinates flipped) plus states along real retrieval trajectories,
// and records the worst non-target overlap and componentwise interference
// seen. Estimates only; exact verification over the basin is exponential.
SeparationEstimate estimate_separation(const PatternSet& patterns, long long target, double gamma,
                                       long long sample_count, Xoshiro256ss& rng);

struct ContractionStats {
    double mean_gain = 0.0;       // empirical E[delta m] per single update
    double predicted_gain = 0.0;  // mean of (alpha/N)(1 - m) over the same updates
    double ratio = 0.0;           // mean_gain / predicted_gain (0 when undefined)
    long long updates = 0;
};

// Starts trials at overlap gamma and measures the per-update overlap gain
// under uniform single-neuron best responses, against the theoretical
// (alpha/N)(1-m) rate. Reported, never asserted.
ContractionStats contraction_probe(const PatternSet& patterns, long long target, double gamma,
                                   int trials, Xoshiro256ss& rng);

}  // namespace dam
