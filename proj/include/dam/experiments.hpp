#pragma once

// Grid runners for the convergence, basin, adversarial, capacity,
// update-rule and pattern-structure studies, plus the statistics they
// share: percentile bootstrap, 50%-threshold interpolation, log-log
// power-law fits, and the capacity binary search.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dam/adversary.hpp"
#include "dam/diagnostics.hpp"
#include "dam/dynamics.hpp"
#include "dam/ensembles.hpp"

namespace dam {

enum class ExperimentKind {
    convergence,
    basin,
    adversarial,
    capacity,
    update_compare,
    pattern_compare,
    realdata,
};

std::string kind_tag(ExperimentKind kind);

// One grid coordinate. Kinds read the fields they care about.
struct GridPoint {
    long long index = 0;  // position in the deterministic grid order
    long long num_neurons = 0;
    long long num_patterns = 0;
    double alpha = 0.0;       // loading p/N^(n-1)
    double corruption = 0.0;  // initial corruption fraction
    double rho = 0.0;         // adversarial per-round corruption fraction
    double gamma0 = 0.0;      // adversarial initial overlap
    AdversaryModel adversary = AdversaryModel::none;
    UpdateMode mode = UpdateMode::asynchronous;
    EnsembleKind pattern_kind = EnsembleKind::random_iid;
    double alpha3 = 0.0;  // Mimura loading (update_compare)
    double m0 = 0.0;      // initial overlap (update_compare)
    std::string source;   // pattern file (realdata)
};

struct ExperimentRecord {
    GridPoint point;
    int trials = 0;
    double success_rate = 0.0;
    std::optional<double> mean_sweeps;   // successful trials only
    double ci_low = 0.0;                 // bootstrap 95% of mean sweeps
    double ci_high = 0.0;                // (convergence) or success rate (others)
    double beta_measured = 0.0;
    TheoryQuantities theory;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::convergence;
    int order = 3;
    double omega = 0.95;
    int max_sweeps = 60;
    int trials = 60;
    std::uint64_t master_seed = 42;
    int resamples = 2000;
    int threads = 1;

    std::vector<long long> sizes;           // N axis
    std::vector<double> alphas;             // loading axis
    std::vector<double> corruptions;        // initial corruption axis
    std::vector<double> rhos;               // adversarial axis
    std::vector<AdversaryModel> adversaries;
    std::vector<double> alpha3s;            // Mimura loading axis
    std::vector<double> m0s;                // initial overlap axis
    std::vector<EnsembleKind> pattern_kinds;
    std::vector<long long> pattern_counts;  // explicit p values

    int rounds = 10;
    double gamma0 = 0.6;
    double copy_prob = 0.25;
    double copy_fraction = 1.0 / 3.0;
    std::string source_path;  // realdata pattern file
};

// Deterministic grid enumeration; record order never depends on threading.
std::vector<GridPoint> enumerate_grid(const ExperimentConfig& cfg);

// One trial: derives its seed from (master, kind tag, point index, trial
// index), builds or slices the pattern set, picks target = trial mod p,
// corrupts, and runs the dynamics. Fully deterministic given its inputs.
// `fixed_patterns` short-circuits generation (realdata slices).
TrialOutcome run_trial(const ExperimentConfig& cfg, const GridPoint& point, long long trial_index,
                       const PatternSet* fixed_patterns = nullptr);

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

struct CapacityConfig {
    int order = 3;
    int trials = 40;
    double corruption = 0.15;
    double success_threshold = 0.95;
    int max_sweeps = 60;
    double omega = 0.95;
    std::uint64_t master_seed = 42;
    int threads = 1;
};

struct PowerLawFit {
    double prefactor = 0.0;  // c in  y ~ c * x^exponent
    double exponent = 0.0;
    double r_squared = 0.0;
};

struct CapacityPoint {
    long long num_neurons = 0;
    long long p_max = 0;
    double alpha_eff = 0.0;  // p_max / N^(n-1)
};

struct CapacityResult {
    std::vector<CapacityPoint> points;
    std::optional<PowerLawFit> fit;  // present with >= 2 usable points
};

// Binary search for the largest p at which at least success_threshold of
// cfg.trials trials converge from cfg.corruption within max_sweeps. Bracket
// is [1, ceil(2 N^(n-1) / n)]; the search stops at width max(1, lo/64) and
// a downward verification with fresh probe seeds confirms the result.
// Returns 0 when even p = 1 fails.
long long capacity_search(long long num_neurons, const CapacityConfig& cfg);

CapacityResult capacity_experiment(const std::vector<long long>& sizes, const CapacityConfig& cfg);

// Percentile bootstrap of the sample mean: nearest-rank quantiles of
// `resamples` resampled means. Throws on empty input.
std::pair<double, double> bootstrap_ci(const std::vector<double>& samples, double level,
                                       int resamples, Xoshiro256ss& rng);

struct ThresholdEstimate {
    double value = 0.0;  // rounded to the reporting grid
    double raw = 0.0;    // interpolated crossing
    bool crossed = false;
};

// 50% crossing of a (rho, success) curve sorted by rho: linear interpolation
// between the last point >= 0.5 and the next one. No crossing reports the
// boundary value with crossed = false.
ThresholdEstimate estimate_threshold(const std::vector<std::pair<double, double>>& curve,
                                     double grid_step = 0.01);

// OLS on (log x, log y); exponent = slope, prefactor = exp(intercept),
// r_squared of the log-log regression. Requires >= 2 strictly positive points.
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points);

// Fan-out of fn(0..count-1) over up to `threads` workers. Caller indexes
// results by trial, so the outcome is schedule-independent.
void parallel_for_indexed(long long count, int threads, const std::function<void(long long)>& fn);

}  // namespace dam
