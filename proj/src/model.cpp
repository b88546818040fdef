#include "dam/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dam {

namespace {

long long binomial(int n, int k) {
    long long result = 1;
    for (int j = 1; j <= k; ++j) result = result * (n - j + 1) / j;
    return result;
}

void check_pattern_index(const ModelParams& params, long long mu) {
    if (mu < 0 || mu >= params.num_patterns)
        throw std::out_of_range("pattern index " + std::to_string(mu) + " out of range");
}

void check_neuron_index(const ModelParams& params, long long i) {
    if (i < 0 || i >= params.num_neurons)
        throw std::out_of_range("neuron index " + std::to_string(i) + " out of range");
}

}  // namespace

ModelParams::ModelParams(int order_, long long num_neurons_, long long num_patterns_)
    : order(order_), num_neurons(num_neurons_), num_patterns(num_patterns_) {
    if (order < 2 || order > 8)
        throw std::invalid_argument("interaction order must be in [2, 8]");
    if (num_neurons < 1) throw std::invalid_argument("neuron count must be >= 1");
    if (num_patterns < 1) throw std::invalid_argument("pattern count must be >= 1");

    // Everything accumulated here (potential numerators, marginal fields,
    // their deltas) is bounded by p*(N+1)^n in magnitude.
    i128 bound = 0;
    try {
        bound = checked_mul_i128(num_patterns, checked_pow_i128(num_neurons + 1, order));
    } catch (const std::overflow_error&) {
        throw std::invalid_argument("p*(N+1)^n exceeds the 128-bit accumulator");
    }
    accum_fits_i64 = bound / 2 <= static_cast<i128>(std::numeric_limits<std::int64_t>::max() / 2);

    for (int k = 0; 2 * k + 1 <= order; ++k)
        odd_binomials.push_back(binomial(order, 2 * k + 1));
}

double ModelParams::scale() const {
    return std::pow(static_cast<double>(num_neurons), order - 1);
}

double ExactScaled::value(const ModelParams& params) const {
    return static_cast<double>(numerator) / params.scale();
}

PatternSet::PatternSet(ModelParams params, std::vector<std::int8_t> row_major)
    : params_(std::move(params)), rows_(std::move(row_major)) {
    const long long n = params_.num_neurons;
    const long long p = params_.num_patterns;
    if (static_cast<long long>(rows_.size()) != p * n)
        throw std::invalid_argument("pattern data size does not match p x N");
    for (std::int8_t v : rows_)
        if (v != 1 && v != -1) throw std::invalid_argument("pattern entry outside {-1,+1}");

    cols_.resize(rows_.size());
    for (long long mu = 0; mu < p; ++mu)
        for (long long i = 0; i < n; ++i) cols_[i * p + mu] = rows_[mu * n + i];
}

NetworkState NetworkState::from_spins(const PatternSet& patterns, std::vector<std::int8_t> spins) {
    if (static_cast<long long>(spins.size()) != patterns.num_neurons())
        throw std::invalid_argument("spin vector length does not match N");
    for (std::int8_t v : spins)
        if (v != 1 && v != -1) throw std::invalid_argument("spin outside {-1,+1}");
    NetworkState state;
    state.spins = std::move(spins);
    rebuild_overlaps(state, patterns);
    return state;
}

NetworkState NetworkState::at_pattern(const PatternSet& patterns, long long mu) {
    check_pattern_index(patterns.params(), mu);
    auto row = patterns.row(mu);
    return from_spins(patterns, std::vector<std::int8_t>(row.begin(), row.end()));
}

double overlap(const NetworkState& state, const PatternSet& patterns, long long mu) {
    check_pattern_index(patterns.params(), mu);
    return static_cast<double>(state.overlaps[mu]) /
           static_cast<double>(patterns.num_neurons());
}

ExactScaled potential(const NetworkState& state, const ModelParams& params) {
    i128 total = 0;
    for (long long mu = 0; mu < params.num_patterns; ++mu) {
        i128 term = state.overlaps[mu];
        for (int j = 1; j < params.order; ++j) term *= state.overlaps[mu];
        total += term;
    }
    return {total};
}

double energy(const NetworkState& state, const ModelParams& params) {
    return -potential(state, params).value(params);
}

ExactScaled marginal_field(const NetworkState& state, const PatternSet& patterns, long long i) {
    const ModelParams& params = patterns.params();
    check_neuron_index(params, i);
    const long long p = params.num_patterns;
    const std::int8_t* col = patterns.column(i).data();
    const std::int64_t* m = state.overlaps.data();
    const std::int64_t spin = state.spins[i];

    if (params.order == 3 && params.accum_fits_i64) {
        // Hot path: Phi_i = sum_mu xi * (3 S^2 + 1), S = M[mu] - xi * x_i.
        std::int64_t acc = 0;
        for (long long mu = 0; mu < p; ++mu) {
            const std::int64_t xi = col[mu];
            const std::int64_t s = m[mu] - xi * spin;
            acc += xi * (3 * s * s + 1);
        }
        return {acc};
    }

    const auto& coeff = params.odd_binomials;
    const bool even_order = params.order % 2 == 0;
    i128 acc = 0;
    for (long long mu = 0; mu < p; ++mu) {
        const std::int64_t xi = col[mu];
        const i128 s = m[mu] - xi * spin;
        const i128 s2 = s * s;
        i128 val = coeff[0];
        for (std::size_t k = 1; k < coeff.size(); ++k) val = val * s2 + coeff[k];
        if (even_order) val *= s;
        acc += xi > 0 ? val : -val;
    }
    return {acc};
}

ExactScaled formal_field(const NetworkState& state, const PatternSet& patterns, long long i) {
    const ModelParams& params = patterns.params();
    check_neuron_index(params, i);
    const std::int8_t* col = patterns.column(i).data();
    i128 acc = 0;
    for (long long mu = 0; mu < params.num_patterns; ++mu) {
        i128 term = 1;
        for (int j = 1; j < params.order; ++j) term *= state.overlaps[mu];
        acc += col[mu] > 0 ? term : -term;
    }
    return {acc * params.order};
}

std::int8_t best_response(const NetworkState& state, const PatternSet& patterns, long long i) {
    const i128 num = marginal_field(state, patterns, i).numerator;
    if (num > 0) return 1;
    if (num < 0) return -1;
    return state.spins[i];  // tie: no change
}

void flip_neuron(NetworkState& state, const PatternSet& patterns, long long i) {
    check_neuron_index(patterns.params(), i);
    const std::int64_t delta = -2 * state.spins[i];
    state.spins[i] = static_cast<std::int8_t>(-state.spins[i]);
    const std::int8_t* col = patterns.column(i).data();
    std::int64_t* m = state.overlaps.data();
    const long long p = patterns.num_patterns();
    for (long long mu = 0; mu < p; ++mu) m[mu] += col[mu] * delta;
}

void rebuild_overlaps(NetworkState& state, const PatternSet& patterns) {
    const long long p = patterns.num_patterns();
    const long long n = patterns.num_neurons();
    state.overlaps.assign(p, 0);
    for (long long mu = 0; mu < p; ++mu) {
        const std::int8_t* row = patterns.row(mu).data();
        std::int64_t sum = 0;
        for (long long i = 0; i < n; ++i) sum += row[i] * state.spins[i];
        state.overlaps[mu] = sum;
    }
}

bool is_fixed_point(const NetworkState& state, const PatternSet& patterns) {
    const long long n = patterns.num_neurons();
    for (long long i = 0; i < n; ++i) {
        const i128 num = marginal_field(state, patterns, i).numerator;
        if (num > 0 && state.spins[i] < 0) return false;
        if (num < 0 && state.spins[i] > 0) return false;
    }
    return true;
}

}  // namespace dam
