// Acceptance suite: exact-identity properties, brute-force oracle agreement,
// and the desk-scale statistical reproductions. Prints one pass/fail line
// per criterion; exit code 0 only if every requested criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dam/adversary.hpp"
#include "dam/diagnostics.hpp"
#include "dam/dynamics.hpp"
#include "dam/ensembles.hpp"
#include "dam/experiments.hpp"
#include "dam/records.hpp"

namespace {

struct Result {
    bool pass = true;
    std::string detail;
};

int g_threads = 2;

std::vector<std::int8_t> random_spins(long long n, dam::Xoshiro256ss& rng) {
    std::vector<std::int8_t> spins(n);
    for (auto& s : spins) s = static_cast<std::int8_t>(rng.next_spin());
    return spins;
}

// ---------------------------------------------------------------------------
// 1. Exact-identity suite: descent gain, exact-potential property, cache
//    coherence, field locality, async monotonicity, Nash terminals.
//    >= 10^4 randomized cases at N <= 64, p <= 32, n in {2,3,4}.
Result criterion1() {
    using namespace dam;
    Result res;
    Xoshiro256ss rng(20260809);
    long long cases = 0;
    long long descent_flips = 0;

    for (int model = 0; model < 150 && res.pass; ++model) {
        const int order = 2 + model % 3;
        const long long n = 2 + static_cast<long long>(rng.next_below(63));
        const long long p = 1 + static_cast<long long>(rng.next_below(32));
        const ModelParams params(order, n, p);
        const PatternSet patterns = generate_random(params, rng);
        NetworkState state = NetworkState::from_spins(patterns, random_spins(n, rng));

        for (int inner = 0; inner < 70; ++inner) {
            const long long i = static_cast<long long>(rng.next_below(n));
            const i128 phi = marginal_field(state, patterns, i).numerator;

            flip_neuron(state, patterns, i);
            if (marginal_field(state, patterns, i).numerator != phi) {
                res.pass = false;
                res.detail = "field locality violated";
                break;
            }
            flip_neuron(state, patterns, i);

            const i128 before = potential(state, params).numerator;
            const std::int64_t old_spin = state.spins[i];
            flip_neuron(state, patterns, i);
            const i128 delta = potential(state, params).numerator - before;
            if (delta != i128{-2 * old_spin} * phi) {
                res.pass = false;
                res.detail = "exact potential property violated";
                break;
            }
            flip_neuron(state, patterns, i);

            if (phi != 0 && state.spins[i] != (phi > 0 ? 1 : -1)) {
                flip_neuron(state, patterns, i);
                if (potential(state, params).numerator - before != 2 * i128_abs(phi)) {
                    res.pass = false;
                    res.detail = "descent gain != 2|phi|";
                    break;
                }
                ++descent_flips;
            } else if (inner % 3 == 0) {
                flip_neuron(state, patterns, static_cast<long long>(rng.next_below(n)));
            }
            ++cases;
        }

        NetworkState rebuilt = state;
        rebuild_overlaps(rebuilt, patterns);
        if (rebuilt.overlaps != state.overlaps) {
            res.pass = false;
            res.detail = "cache diverged from recompute";
        }
        for (long long mu = 0; mu < p && res.pass; ++mu)
            if ((state.overlaps[mu] - n) % 2 != 0) {
                res.pass = false;
                res.detail = "overlap parity violated";
            }
    }

    // Async monotonicity and Nash terminals.
    int async_runs = 0;
    for (int model = 0; model < 45 && res.pass; ++model) {
        const int order = 2 + model % 3;
        const long long n = 8 + static_cast<long long>(rng.next_below(57));
        const long long p = 1 + static_cast<long long>(rng.next_below(32));
        const ModelParams params(order, n, p);
        const PatternSet patterns = generate_random(params, rng);
        NetworkState state = NetworkState::from_spins(patterns, random_spins(n, rng));

        i128 last = potential(state, params).numerator;
        int sweeps = 0;
        for (;;) {
            const int flips = async_sweep(state, patterns, rng);
            const i128 now = potential(state, params).numerator;
            if (now < last || (flips > 0 && now == last)) {
                res.pass = false;
                res.detail = "async potential not monotone";
                break;
            }
            last = now;
            if (flips == 0) break;
            if (++sweeps > 600) {
                res.pass = false;
                res.detail = "async dynamics failed to stall";
                break;
            }
        }
        if (res.pass && !is_fixed_point(state, patterns)) {
            res.pass = false;
            res.detail = "async terminal is not a Nash point";
        }
        ++async_runs;
    }

    if (res.pass) {
        std::ostringstream out;
        out << cases << " randomized cases, " << descent_flips << " descent flips, "
            << async_runs << " async runs";
        res.detail = out.str();
        if (cases < 10000) {
            res.pass = false;
            res.detail += " (case budget not met)";
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// 2. Brute-force oracle equivalence at n=3, N <= 12, p <= 3.
Result criterion2() {
    using namespace dam;
    Result res;
    Xoshiro256ss rng(4242);

    // Unique fixed point at p=1 for every small odd-order instance.
    for (long long n = 4; n <= 12 && res.pass; ++n) {
        const PatternSet patterns = generate_random(ModelParams(3, n, 1), rng);
        const auto points = enumerate_fixed_points(patterns);
        const std::vector<std::int8_t> expected(patterns.row(0).begin(), patterns.row(0).end());
        if (points.size() != 1 || points.front() != expected) {
            res.pass = false;
            res.detail = "p=1 fixed point set is not exactly {xi} at N=" + std::to_string(n);
        }
    }

    // Every async terminal lies in the enumerated set.
    long long terminals = 0;
    const std::pair<long long, long long> instances[] = {{8, 1}, {9, 3}, {10, 2},
                                                         {11, 1}, {12, 3}};
    for (const auto& [n, p] : instances) {
        if (!res.pass) break;
        const PatternSet patterns = generate_random(ModelParams(3, n, p), rng);
        const auto points = enumerate_fixed_points(patterns);
        std::set<std::vector<std::int8_t>> fixed(points.begin(), points.end());

        // omega = 1 means retrieve() only stops early at an exact match;
        // a stalled run therefore ended on a zero-flip sweep, and that
        // state must appear in the exhaustive enumeration.
        for (int start = 0; start < 40 && res.pass; ++start) {
            NetworkState state = NetworkState::from_spins(patterns, random_spins(n, rng));
            SweepConfig config;
            config.target = 0;
            config.omega = 1.0;
            config.max_sweeps = 80;
            const TrialOutcome outcome = retrieve(patterns, state, config, rng);
            if (!outcome.converged && outcome.sweeps_used < config.max_sweeps) {
                ++terminals;
                if (fixed.count(state.spins) == 0) {
                    res.pass = false;
                    res.detail = "stalled terminal missing from enumeration";
                }
            }
        }
    }
    if (res.pass)
        res.detail = std::to_string(terminals) + " terminal states matched the enumeration";
    return res;
}

// ---------------------------------------------------------------------------
// 3. Convergence reproduction: alpha=0.03, 15% corruption, 60 trials.
Result criterion3() {
    using namespace dam;
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::convergence;
    cfg.trials = 60;
    cfg.threads = g_threads;
    cfg.alphas = {0.03};
    cfg.corruptions = {0.15};
    cfg.sizes = {200, 300, 400, 500};

    Result res;
    std::ostringstream detail;
    for (const auto& rec : run_experiment(cfg)) {
        const double mean = rec.mean_sweeps.value_or(999.0);
        detail << "N=" << rec.point.num_neurons << " rate=" << format_g6(rec.success_rate)
               << " sweeps=" << format_g6(mean) << "; ";
        if (rec.success_rate < 0.98 || mean > 2.0) res.pass = false;
    }
    res.detail = detail.str();
    return res;
}

// ---------------------------------------------------------------------------
// 4. Basin boundary: 50% crossing at 40% +- 2pp (alpha=0.005) and
//    35% +- 2pp (alpha=0.02), rates averaged over N in {200,400,600}.
Result criterion4() {
    using namespace dam;
    Result res;
    std::ostringstream detail;

    const std::pair<double, double> targets[] = {{0.005, 0.40}, {0.02, 0.35}};
    for (const auto& [alpha, expected] : targets) {
        ExperimentConfig cfg;
        cfg.kind = ExperimentKind::basin;
        cfg.trials = 60;
        cfg.threads = g_threads;
        cfg.alphas = {alpha};
        cfg.sizes = {200, 400, 600};
        for (int c = static_cast<int>(expected * 100) - 5;
             c <= static_cast<int>(expected * 100) + 5; ++c)
            cfg.corruptions.push_back(c / 100.0);

        const auto records = run_experiment(cfg);
        std::vector<std::pair<double, double>> curve;
        for (double corruption : cfg.corruptions) {
            double rate_sum = 0.0;
            int count = 0;
            for (const auto& rec : records)
                if (rec.point.corruption == corruption) {
                    rate_sum += rec.success_rate;
                    ++count;
                }
            curve.emplace_back(corruption, rate_sum / count);  // equal-weight N average
        }
        const auto est = estimate_threshold(curve, 0.01);
        detail << "alpha=" << format_g6(alpha) << " crossing=" << format_g6(est.value)
               << (est.crossed ? "" : " (no crossing)") << "; ";
        if (!est.crossed || std::fabs(est.value - expected) > 0.02 + 1e-9) res.pass = false;
    }
    res.detail = detail.str();
    return res;
}

// ---------------------------------------------------------------------------
// 5. Adversarial threshold: N=500, p=1250, gamma=0.6, 80 trials per rho;
//    rho_hat in [0.13, 0.19] for both adversaries, bracketed by the two
//    theoretical tolerances.
Result criterion5() {
    using namespace dam;
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::adversarial;
    cfg.trials = 80;
    cfg.threads = g_threads;
    cfg.sizes = {500};
    cfg.pattern_counts = {1250};
    cfg.adversaries = {AdversaryModel::strong, AdversaryModel::weak};
    cfg.gamma0 = 0.6;
    for (int c = 10; c <= 22; ++c) cfg.rhos.push_back(c / 100.0);

    const auto records = run_experiment(cfg);
    Result res;
    std::ostringstream detail;
    for (AdversaryModel model : cfg.adversaries) {
        std::vector<std::pair<double, double>> curve;
        double rho_star_beta = 0.0, rho_star_gamma = 0.0;
        for (const auto& rec : records)
            if (rec.point.adversary == model) {
                curve.emplace_back(rec.point.rho, rec.success_rate);
                rho_star_beta = rec.theory.rho_star_beta.value_or(0.0);
                rho_star_gamma = rec.theory.rho_star_gamma.value_or(0.0);
            }
        const auto est = estimate_threshold(curve, 0.01);
        detail << (model == AdversaryModel::strong ? "strong" : "weak") << ": rho_hat="
               << format_g6(est.value) << " bracket=(" << format_g6(rho_star_beta) << ", "
               << format_g6(rho_star_gamma) << "); ";
        if (!est.crossed || est.value < 0.13 || est.value > 0.19) res.pass = false;
        if (!(rho_star_beta < est.value && est.value < rho_star_gamma)) res.pass = false;
    }
    res.detail = detail.str();
    return res;
}

// ---------------------------------------------------------------------------
// 6. Capacity scaling at N in {100,150,200,300}: exponent in [2.0, 2.4],
//    R^2 >= 0.99, p_max(100) within 20% of 450.
Result criterion6() {
    using namespace dam;
    CapacityConfig cfg;
    cfg.threads = g_threads;
    const auto result = capacity_experiment({100, 150, 200, 300}, cfg);

    Result res;
    std::ostringstream detail;
    for (const auto& point : result.points)
        detail << "N=" << point.num_neurons << " p_max=" << point.p_max << "; ";
    if (!result.fit) {
        res.pass = false;
        res.detail = detail.str() + "no fit";
        return res;
    }
    detail << "delta=" << format_g6(result.fit->exponent)
           << " R2=" << format_g6(result.fit->r_squared);
    const long long p100 = result.points.front().p_max;
    if (result.fit->exponent < 2.0 || result.fit->exponent > 2.4) res.pass = false;
    if (result.fit->r_squared < 0.99) res.pass = false;
    if (std::llabs(p100 - 450) > 90) res.pass = false;
    res.detail = detail.str();
    return res;
}

// ---------------------------------------------------------------------------
// 7. Update-rule comparison at alpha3=0.15, m0=0.5: async beats parallel by
//    >= 0.2 in success rate and converges in fewer sweeps.
Result criterion7() {
    using namespace dam;
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::update_compare;
    cfg.trials = 50;
    cfg.threads = g_threads;
    cfg.sizes = {500};
    cfg.alpha3s = {0.15};
    cfg.m0s = {0.5};

    const auto records = run_experiment(cfg);
    Result res;
    double async_rate = 0.0, parallel_rate = 0.0;
    double async_sweeps = 1e9, parallel_sweeps = -1e9;
    for (const auto& rec : records) {
        if (rec.point.mode == UpdateMode::asynchronous) {
            async_rate = rec.success_rate;
            async_sweeps = rec.mean_sweeps.value_or(1e9);
        } else {
            parallel_rate = rec.success_rate;
            parallel_sweeps = rec.mean_sweeps.value_or(-1e9);
        }
    }
    std::ostringstream detail;
    detail << "async=" << format_g6(async_rate) << " (" << format_g6(async_sweeps)
           << " sweeps) parallel=" << format_g6(parallel_rate) << " ("
           << format_g6(parallel_sweeps) << " sweeps)";
    if (async_rate - parallel_rate < 0.2) res.pass = false;
    if (!(async_sweeps < parallel_sweeps)) res.pass = false;
    res.detail = detail.str();
    return res;
}

// ---------------------------------------------------------------------------
// 8. Pattern-structure gap: random patterns hold >= 0.95 for all
//    alpha <= 0.05 while correlated ones collapse to <= 0.1 by alpha = 0.01.
Result criterion8() {
    using namespace dam;
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::pattern_compare;
    cfg.trials = 50;
    cfg.threads = g_threads;
    cfg.sizes = {500};
    cfg.alphas = {0.002, 0.004, 0.006, 0.008, 0.01, 0.015, 0.02, 0.03, 0.05};
    cfg.corruptions = {0.20};

    const auto records = run_experiment(cfg);
    Result res;
    double correlated_at_001 = 1.0;
    double random_min = 1.0;
    for (const auto& rec : records) {
        if (rec.point.pattern_kind == EnsembleKind::random_iid)
            random_min = std::min(random_min, rec.success_rate);
        else if (rec.point.alpha == 0.01)
            correlated_at_001 = rec.success_rate;
    }
    std::ostringstream detail;
    detail << "random min rate=" << format_g6(random_min)
           << " correlated rate at alpha=0.01: " << format_g6(correlated_at_001);
    if (random_min < 0.95) res.pass = false;
    if (correlated_at_001 > 0.1) res.pass = false;
    res.detail = detail.str();
    return res;
}

// ---------------------------------------------------------------------------
// 9. Determinism: identical seed and config give byte-identical CSV no
//    matter the thread count.
Result criterion9() {
    using namespace dam;
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::adversarial;
    cfg.trials = 8;
    cfg.sizes = {120};
    cfg.pattern_counts = {80};
    cfg.adversaries = {AdversaryModel::strong, AdversaryModel::weak};
    cfg.rhos = {0.0, 0.05, 0.10};
    cfg.master_seed = 7;

    auto render_with_threads = [&](int threads) {
        cfg.threads = threads;
        return render(tabulate(cfg.kind, run_experiment(cfg)), OutputFormat::csv);
    };
    const std::string serial = render_with_threads(1);
    const std::string threaded = render_with_threads(4);
    const std::string repeat = render_with_threads(4);

    Result res;
    res.pass = serial == threaded && threaded == repeat;
    res.detail = res.pass ? std::to_string(serial.size()) + " bytes identical across 1/4/4 threads"
                          : "outputs differ across thread counts";
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> criteria;
    g_threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    for (int a = 1; a < argc; ++a) {
        if (std::strcmp(argv[a], "--criterion") == 0 && a + 1 < argc)
            criteria.push_back(std::atoi(argv[++a]));
        else if (std::strcmp(argv[a], "--threads") == 0 && a + 1 < argc)
            g_threads = std::atoi(argv[++a]);
    }
    if (criteria.empty()) criteria = {1, 2, 3, 4, 5, 6, 7, 8, 9};

    const std::map<int, std::pair<const char*, Result (*)()>> table = {
        {1, {"exact identities", criterion1}},
        {2, {"brute-force oracle equivalence", criterion2}},
        {3, {"convergence reproduction", criterion3}},
        {4, {"basin boundary", criterion4}},
        {5, {"adversarial threshold", criterion5}},
        {6, {"capacity scaling", criterion6}},
        {7, {"update-rule comparison", criterion7}},
        {8, {"pattern-structure gap", criterion8}},
        {9, {"determinism", criterion9}},
    };

    bool all_pass = true;
    for (int k : criteria) {
        const auto it = table.find(k);
        if (it == table.end()) {
            std::cerr << "unknown criterion " << k << "\n";
            return 1;
        }
        const auto start = std::chrono::steady_clock::now();
        const Result res = it->second.second();
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (res.pass ? "[PASS]" : "[FAIL]") << " criterion " << k << " ("
                  << it->second.first << "): " << res.detail << " [" << dam::format_g6(seconds)
                  << "s]" << std::endl;
        all_pass = all_pass && res.pass;
    }
    return all_pass ? 0 : 1;
}
