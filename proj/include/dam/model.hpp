#pragma once

// Exact-arithmetic dense associative memory core.
//
// The energy of a state x over p stored +-1 patterns with interaction
// order n is E(x) = -(1/N^(n-1)) * sum_mu <pattern_mu, x>^n. Everything
// here works on exact integer numerators over the implicit denominator
// N^(n-1); floating point appears only when a value is reported.

#include <cstdint>
#include <span>
#include <vector>

#include "dam/int128.hpp"

namespace dam {

struct ModelParams {
    int order;                // interaction order n, 2..8
    long long num_neurons;    // N
    long long num_patterns;   // p

    // C(n, 2k+1) for k = 0.., used by the marginal-field expansion.
    std::vector<long long> odd_binomials;

    // True when p*(N+1)^n / 2 fits int64; enables the fast n=3 kernel.
    bool accum_fits_i64 = false;

    // Validates ranges and rejects any (n, N, p) whose accumulator bound
    // p*(N+1)^n exceeds the signed 128-bit range.
    ModelParams(int order, long long num_neurons, long long num_patterns);

    // N^(n-1) as a double, the denominator for reported values.
    double scale() const;
};

// Exact signed numerator over the implicit denominator N^(n-1).
struct ExactScaled {
    i128 numerator{0};

    double value(const ModelParams& params) const;
};

class PatternSet {
public:
    // Takes p*N entries, row-major, each exactly -1 or +1.
    PatternSet(ModelParams params, std::vector<std::int8_t> row_major);

    const ModelParams& params() const { return params_; }
    long long num_neurons() const { return params_.num_neurons; }
    long long num_patterns() const { return params_.num_patterns; }

    std::int8_t at(long long mu, long long i) const {
        return rows_[mu * params_.num_neurons + i];
    }
    std::span<const std::int8_t> row(long long mu) const {
        return {rows_.data() + mu * params_.num_neurons,
                static_cast<std::size_t>(params_.num_neurons)};
    }
    // Column i across all patterns, contiguous. The flip and field kernels
    // scan one column per call, so a transposed mirror keeps them O(p)
    // over sequential memory.
    std::span<const std::int8_t> column(long long i) const {
        return {cols_.data() + i * params_.num_patterns,
                static_cast<std::size_t>(params_.num_patterns)};
    }
    const std::vector<std::int8_t>& raw_rows() const { return rows_; }

private:
    ModelParams params_;
    std::vector<std::int8_t> rows_;  // p x N, row-major (canonical)
    std::vector<std::int8_t> cols_;  // N x p mirror
};

// Spin vector plus the exact unnormalized overlap cache M[mu] = <pattern_mu, x>.
struct NetworkState {
    std::vector<std::int8_t> spins;     // length N, entries +-1
    std::vector<std::int64_t> overlaps; // length p, kept coherent by flip_neuron

    static NetworkState from_spins(const PatternSet& patterns, std::vector<std::int8_t> spins);
    static NetworkState at_pattern(const PatternSet& patterns, long long mu);
};

// Normalized overlap M[mu]/N with the stored pattern mu.
double overlap(const NetworkState& state, const PatternSet& patterns, long long mu);

// Exact potential numerator sum_mu M[mu]^n; F = numerator / N^(n-1), E = -F.
ExactScaled potential(const NetworkState& state, const ModelParams& params);

double energy(const NetworkState& state, const ModelParams& params);

// Discrete marginal field: half the potential difference between the two
// completions of coordinate i. Depends only on the other N-1 spins.
// Numerator = sum_mu xi_i^mu * sum_k C(n,2k+1) * S_mu^(n-1-2k) with
// S_mu = M[mu] - xi_i^mu * x_i.
ExactScaled marginal_field(const NetworkState& state, const PatternSet& patterns, long long i);

// Formal derivative field n * sum_mu xi_i^mu * M[mu]^(n-1) over N^(n-1).
// Diagnostic only; updates always use marginal_field.
ExactScaled formal_field(const NetworkState& state, const PatternSet& patterns, long long i);

// sign of the marginal field, or the current spin when the field is exactly
// zero (tie: no change).
std::int8_t best_response(const NetworkState& state, const PatternSet& patterns, long long i);

// Negates spin i and updates every cached overlap in O(p).
void flip_neuron(NetworkState& state, const PatternSet& patterns, long long i);

// Recomputes the overlap cache from scratch; the coherence oracle.
void rebuild_overlaps(NetworkState& state, const PatternSet& patterns);

// True iff no single-neuron best response strictly flips any spin,
// i.e. x_i * Phi_i >= 0 for all i.
bool is_fixed_point(const NetworkState& state, const PatternSet& patterns);

}  // namespace dam
