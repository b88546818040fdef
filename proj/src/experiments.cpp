#include "dam/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace dam {

std::string kind_tag(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::convergence: return "convergence";
        case ExperimentKind::basin: return "basin";
        case ExperimentKind::adversarial: return "adversarial";
        case ExperimentKind::capacity: return "capacity";
        case ExperimentKind::update_compare: return "update_compare";
        case ExperimentKind::pattern_compare: return "pattern_compare";
        case ExperimentKind::realdata: return "realdata";
    }
    return "unknown";
}

namespace {

double scale_for(int order, long long num_neurons) {
    return std::pow(static_cast<double>(num_neurons), order - 1);
}

void require(bool cond, const char* message) {
    if (!cond) throw std::invalid_argument(message);
}

PatternSet slice_patterns(const PatternSet& source, long long count, int order) {
    require(count >= 1 && count <= source.num_patterns(),
            "pattern slice count exceeds the loaded set");
    const long long n = source.num_neurons();
    const auto& raw = source.raw_rows();
    std::vector<std::int8_t> data(raw.begin(), raw.begin() + count * n);
    return PatternSet(ModelParams(order, n, count), std::move(data));
}

PatternSet build_patterns(const ExperimentConfig& cfg, const GridPoint& point,
                          Xoshiro256ss& rng) {
    const ModelParams params(cfg.order, point.num_neurons, point.num_patterns);
    switch (point.pattern_kind) {
        case EnsembleKind::random_iid:
            return generate_random(params, rng);
        case EnsembleKind::correlated:
            return generate_correlated(params, rng, cfg.copy_prob, cfg.copy_fraction);
        case EnsembleKind::file:
            return slice_patterns(load_patterns(point.source, cfg.order), point.num_patterns,
                                  cfg.order);
    }
    throw std::invalid_argument("unknown ensemble kind");
}

bool kind_reports_beta(ExperimentKind kind) {
    return kind == ExperimentKind::convergence || kind == ExperimentKind::adversarial ||
           kind == ExperimentKind::pattern_compare || kind == ExperimentKind::realdata;
}

}  // namespace

std::vector<GridPoint> enumerate_grid(const ExperimentConfig& cfg) {
    std::vector<GridPoint> points;
    auto push = [&](GridPoint point) {
        point.index = static_cast<long long>(points.size());
        points.push_back(std::move(point));
    };

    switch (cfg.kind) {
        case ExperimentKind::convergence:
        case ExperimentKind::basin:
            require(!cfg.alphas.empty() && !cfg.corruptions.empty() && !cfg.sizes.empty(),
                    "convergence/basin grids need alpha, corruption and N axes");
            for (double alpha : cfg.alphas)
                for (double corruption : cfg.corruptions)
                    for (long long n : cfg.sizes) {
                        GridPoint pt;
                        pt.num_neurons = n;
                        pt.num_patterns = std::llround(alpha * scale_for(cfg.order, n));
                        pt.alpha = alpha;
                        pt.corruption = corruption;
                        push(pt);
                    }
            break;

        case ExperimentKind::adversarial: {
            require(!cfg.sizes.empty() && !cfg.adversaries.empty() && !cfg.rhos.empty(),
                    "adversarial grids need N, adversary and rho axes");
            require(!cfg.pattern_counts.empty() || !cfg.alphas.empty(),
                    "adversarial grids need p or alpha values");
            for (long long n : cfg.sizes) {
                std::vector<long long> ps = cfg.pattern_counts;
                if (ps.empty())
                    for (double alpha : cfg.alphas)
                        ps.push_back(std::llround(alpha * scale_for(cfg.order, n)));
                for (long long p : ps)
                    for (AdversaryModel model : cfg.adversaries)
                        for (double rho : cfg.rhos) {
                            GridPoint pt;
                            pt.num_neurons = n;
                            pt.num_patterns = p;
                            pt.alpha = static_cast<double>(p) / scale_for(cfg.order, n);
                            pt.adversary = model;
                            pt.rho = rho;
                            pt.gamma0 = cfg.gamma0;
                            push(pt);
                        }
            }
            break;
        }

        case ExperimentKind::update_compare:
            require(!cfg.sizes.empty() && !cfg.alpha3s.empty() && !cfg.m0s.empty(),
                    "update_compare grids need N, alpha3 and m0 axes");
            for (long long n : cfg.sizes)
                for (double alpha3 : cfg.alpha3s)
                    for (double m0 : cfg.m0s)
                        for (UpdateMode mode :
                             {UpdateMode::asynchronous, UpdateMode::synchronous}) {
                            GridPoint pt;
                            pt.num_neurons = n;
                            pt.num_patterns = static_cast<long long>(
                                std::floor(alpha3 * scale_for(cfg.order, n) / cfg.order));
                            pt.alpha3 = alpha3;
                            pt.m0 = m0;
                            pt.corruption = (1.0 - m0) / 2.0;
                            pt.mode = mode;
                            push(pt);
                        }
            break;

        case ExperimentKind::pattern_compare:
            require(!cfg.sizes.empty() && !cfg.alphas.empty(),
                    "pattern_compare grids need N and alpha axes");
            for (long long n : cfg.sizes)
                for (EnsembleKind kind : cfg.pattern_kinds.empty()
                                             ? std::vector<EnsembleKind>{EnsembleKind::random_iid,
                                                                         EnsembleKind::correlated}
                                             : cfg.pattern_kinds)
                    for (double alpha : cfg.alphas) {
                        GridPoint pt;
                        pt.num_neurons = n;
                        pt.num_patterns = std::llround(alpha * scale_for(cfg.order, n));
                        pt.alpha = alpha;
                        pt.pattern_kind = kind;
                        pt.corruption = cfg.corruptions.empty() ? 0.2 : cfg.corruptions.front();
                        push(pt);
                    }
            break;

        case ExperimentKind::realdata:
            require(!cfg.pattern_counts.empty() && !cfg.corruptions.empty(),
                    "realdata grids need p and corruption axes");
            require(!cfg.source_path.empty(), "realdata grids need a source pattern file");
            for (long long p : cfg.pattern_counts)
                for (double corruption : cfg.corruptions) {
                    GridPoint pt;
                    pt.num_patterns = p;  // num_neurons filled once the file is read
                    pt.corruption = corruption;
                    pt.pattern_kind = EnsembleKind::file;
                    pt.source = cfg.source_path;
                    push(pt);
                }
            break;

        case ExperimentKind::capacity:
            throw std::invalid_argument("capacity runs through capacity_experiment");
    }
    return points;
}

TrialOutcome run_trial(const ExperimentConfig& cfg, const GridPoint& point, long long trial_index,
                       const PatternSet* fixed_patterns) {
    Xoshiro256ss rng(
        derive_seed(cfg.master_seed, kind_tag(cfg.kind), point.index, trial_index));

    std::optional<PatternSet> local;
    const PatternSet* patterns = fixed_patterns;
    if (patterns == nullptr) {
        local.emplace(build_patterns(cfg, point, rng));
        patterns = &*local;
    }

    const long long target = trial_index % patterns->num_patterns();
    SweepConfig sweep;
    sweep.mode = point.mode;
    sweep.max_sweeps = cfg.max_sweeps;
    sweep.omega = cfg.omega;
    sweep.target = target;

    if (cfg.kind == ExperimentKind::adversarial) {
        AdversaryConfig adv;
        adv.model = point.adversary;
        adv.rho = point.rho;
        adv.rounds = cfg.rounds;
        adv.gamma0 = cfg.gamma0;
        return robustness_protocol(*patterns, target, adv, sweep, rng);
    }
    NetworkState state = corrupt_random(*patterns, target, point.corruption, rng);
    return retrieve(*patterns, state, sweep, rng);
}

namespace {

ExperimentRecord aggregate_point(const ExperimentConfig& cfg, const GridPoint& point,
                                 const std::vector<TrialOutcome>& outcomes,
                                 const PatternSet* fixed_patterns) {
    ExperimentRecord rec;
    rec.point = point;
    rec.trials = static_cast<int>(outcomes.size());

    std::vector<double> sweep_samples;
    std::vector<double> indicators;
    indicators.reserve(outcomes.size());
    for (const TrialOutcome& out : outcomes) {
        indicators.push_back(out.converged ? 1.0 : 0.0);
        if (out.converged) sweep_samples.push_back(static_cast<double>(out.sweeps_used));
    }
    const double successes = std::accumulate(indicators.begin(), indicators.end(), 0.0);
    rec.success_rate = successes / static_cast<double>(outcomes.size());
    if (!sweep_samples.empty())
        rec.mean_sweeps = std::accumulate(sweep_samples.begin(), sweep_samples.end(), 0.0) /
                          static_cast<double>(sweep_samples.size());

    // Convergence tables CI the sweep count; the rest CI the success rate.
    const std::vector<double>& ci_samples =
        cfg.kind == ExperimentKind::convergence ? sweep_samples : indicators;
    if (!ci_samples.empty()) {
        Xoshiro256ss boot(derive_seed(cfg.master_seed, kind_tag(cfg.kind) + "#bootstrap",
                                      point.index, 0));
        std::tie(rec.ci_low, rec.ci_high) = bootstrap_ci(ci_samples, 0.95, cfg.resamples, boot);
    }

    if (kind_reports_beta(cfg.kind)) {
        if (fixed_patterns != nullptr) {
            rec.beta_measured = beta_patterns(*fixed_patterns);
        } else {
            // Fresh set per trial; report beta of trial 0's set.
            Xoshiro256ss rng0(
                derive_seed(cfg.master_seed, kind_tag(cfg.kind), point.index, 0));
            rec.beta_measured = beta_patterns(build_patterns(cfg, point, rng0));
        }
    }

    const ModelParams params(cfg.order, point.num_neurons, point.num_patterns);
    std::optional<double> gamma, beta;
    if (cfg.kind == ExperimentKind::adversarial) {
        gamma = cfg.gamma0;
        beta = rec.beta_measured;
    }
    rec.theory = theory(params, gamma, beta);
    return rec;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
    require(cfg.trials >= 1, "trials must be >= 1");
    std::vector<GridPoint> points = enumerate_grid(cfg);

    std::optional<PatternSet> source;
    if (cfg.kind == ExperimentKind::realdata) {
        source.emplace(load_patterns(cfg.source_path, cfg.order));
        for (GridPoint& point : points) point.num_neurons = source->num_neurons();
    }

    std::vector<ExperimentRecord> records;
    records.reserve(points.size());
    for (const GridPoint& point : points) {
        std::optional<PatternSet> sliced;
        const PatternSet* fixed = nullptr;
        if (source) {
            sliced.emplace(slice_patterns(*source, point.num_patterns, cfg.order));
            fixed = &*sliced;
        }
        std::vector<TrialOutcome> outcomes(cfg.trials);
        parallel_for_indexed(cfg.trials, cfg.threads,
                             [&](long long t) { outcomes[t] = run_trial(cfg, point, t, fixed); });
        records.push_back(aggregate_point(cfg, point, outcomes, fixed));
    }
    return records;
}

namespace {

// One capacity probe: a fresh pattern set shared by all trials of the
// probe, pass iff at least ceil(threshold * trials) converge. Trials are
// evaluated in blocks so a hopeless probe exits once the failure budget is
// spent; the verdict never depends on scheduling.
bool capacity_probe(long long num_neurons, long long p, const CapacityConfig& cfg,
                    const std::string& tag, long long probe_index) {
    const int required =
        static_cast<int>(std::ceil(cfg.success_threshold * static_cast<double>(cfg.trials)));
    const int fail_budget = cfg.trials - required;
    const ModelParams params(cfg.order, num_neurons, p);

    Xoshiro256ss set_rng(derive_seed(cfg.master_seed, tag + "#set", probe_index, 0));
    const PatternSet patterns = generate_random(params, set_rng);

    std::vector<char> ok(cfg.trials, 0);
    int done = 0;
    int fails = 0;
    const int block = std::max(4, cfg.threads * 2);
    while (done < cfg.trials && fails <= fail_budget) {
        const int count = std::min(block, cfg.trials - done);
        parallel_for_indexed(count, cfg.threads, [&](long long j) {
            const long long trial = done + j;
            Xoshiro256ss rng(derive_seed(cfg.master_seed, tag, probe_index, trial));
            const long long target = trial % p;
            NetworkState state = corrupt_random(patterns, target, cfg.corruption, rng);
            SweepConfig sweep;
            sweep.max_sweeps = cfg.max_sweeps;
            sweep.omega = cfg.omega;
            sweep.target = target;
            ok[trial] = retrieve(patterns, state, sweep, rng).converged ? 1 : 0;
        });
        for (int j = 0; j < count; ++j)
            if (!ok[done + j]) ++fails;
        done += count;
    }
    return fails <= fail_budget;
}

}  // namespace

long long capacity_search(long long num_neurons, const CapacityConfig& cfg) {
    const std::string tag = "capacity/N=" + std::to_string(num_neurons);
    long long probe_counter = 0;
    auto probe = [&](long long p) {
        return capacity_probe(num_neurons, p, cfg, tag, probe_counter++);
    };

    if (!probe(1)) return 0;
    long long hi = static_cast<long long>(
        std::ceil(2.0 * scale_for(cfg.order, num_neurons) / cfg.order));
    if (hi <= 1) return 1;
    if (probe(hi)) return hi;  // theory says this bracket end cannot hold

    long long lo = 1;
    while (hi - lo > std::max<long long>(1, lo / 64)) {
        const long long mid = lo + (hi - lo) / 2;
        if (probe(mid))
            lo = mid;
        else
            hi = mid;
    }

    // Sampling noise can leave lo above the true threshold; re-test with
    // fresh probe seeds and step down until it holds.
    long long candidate = lo;
    while (candidate >= 1 && !probe(candidate))
        candidate -= std::max<long long>(1, candidate / 64);
    return std::max<long long>(candidate, 0);
}

CapacityResult capacity_experiment(const std::vector<long long>& sizes,
                                   const CapacityConfig& cfg) {
    CapacityResult result;
    std::vector<std::pair<double, double>> fit_points;
    for (long long n : sizes) {
        CapacityPoint point;
        point.num_neurons = n;
        point.p_max = capacity_search(n, cfg);
        point.alpha_eff = static_cast<double>(point.p_max) / scale_for(cfg.order, n);
        if (point.p_max >= 1)
            fit_points.emplace_back(static_cast<double>(n), static_cast<double>(point.p_max));
        result.points.push_back(point);
    }
    if (fit_points.size() >= 2) result.fit = fit_power_law(fit_points);
    return result;
}

std::pair<double, double> bootstrap_ci(const std::vector<double>& samples, double level,
                                       int resamples, Xoshiro256ss& rng) {
    if (samples.empty()) throw std::invalid_argument("bootstrap_ci: empty samples");
    if (resamples < 1) throw std::invalid_argument("bootstrap_ci: resamples must be >= 1");
    const std::size_t n = samples.size();

    std::vector<double> means(resamples);
    for (int r = 0; r < resamples; ++r) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += samples[rng.next_below(n)];
        means[r] = sum / static_cast<double>(n);
    }
    std::sort(means.begin(), means.end());

    auto nearest_rank = [&](double q) {
        long long idx = static_cast<long long>(std::ceil(q * resamples)) - 1;
        idx = std::clamp<long long>(idx, 0, resamples - 1);
        return means[idx];
    };
    const double tail = (1.0 - level) / 2.0;
    return {nearest_rank(tail), nearest_rank(1.0 - tail)};
}

ThresholdEstimate estimate_threshold(const std::vector<std::pair<double, double>>& curve,
                                     double grid_step) {
    if (curve.empty()) throw std::invalid_argument("estimate_threshold: empty curve");
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (curve[i].first <= curve[i - 1].first)
            throw std::invalid_argument("estimate_threshold: curve must be sorted by rho");

    long long last_above = -1;
    for (std::size_t i = 0; i < curve.size(); ++i)
        if (curve[i].second >= 0.5) last_above = static_cast<long long>(i);

    ThresholdEstimate est;
    if (last_above < 0) {
        est.raw = est.value = curve.front().first;
        return est;
    }
    if (last_above == static_cast<long long>(curve.size()) - 1) {
        est.raw = est.value = curve.back().first;
        return est;
    }
    const auto [rho1, s1] = curve[last_above];
    const auto [rho2, s2] = curve[last_above + 1];
    est.raw = rho1 + (s1 - 0.5) / (s1 - s2) * (rho2 - rho1);
    est.value = grid_step > 0.0
                    ? static_cast<double>(std::llround(est.raw / grid_step)) * grid_step
                    : est.raw;
    est.crossed = true;
    return est;
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 2) throw std::invalid_argument("fit_power_law: need >= 2 points");
    std::vector<double> xs, ys;
    for (const auto& [x, y] : points) {
        if (x <= 0.0 || y <= 0.0)
            throw std::invalid_argument("fit_power_law: points must be positive");
        xs.push_back(std::log(x));
        ys.push_back(std::log(y));
    }
    const double n = static_cast<double>(points.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_power_law: degenerate x values");

    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double predicted = (my - fit.exponent * mx) + fit.exponent * xs[i];
        ss_res += (ys[i] - predicted) * (ys[i] - predicted);
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }
    fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return fit;
}

void parallel_for_indexed(long long count, int threads, const std::function<void(long long)>& fn) {
    if (count <= 0) return;
    const long long workers = std::min<long long>(std::max(threads, 1), count);
    if (workers == 1) {
        for (long long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long long> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (long long w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const long long idx = next.fetch_add(1);
                if (idx >= count) return;
                try {
                    fn(idx);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dam
