// Command-line front end: pattern generation, single retrievals, diagnostics
// reports, and the experiment grid runners with CSV/markdown output.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "dam/adversary.hpp"
#include "dam/diagnostics.hpp"
#include "dam/dynamics.hpp"
#include "dam/ensembles.hpp"
#include "dam/experiments.hpp"
#include "dam/records.hpp"

namespace {

struct Options {
    std::uint64_t seed = 42;
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    int order = 3;
    double omega = 0.95;
    int max_sweeps = 60;
    int trials = 60;
    int resamples = 2000;
    std::string out;
    std::string format = "csv";
    std::string config_path;

    // generate / retrieve / verify
    std::string kind = "random";
    long long num_neurons = 500;
    long long num_patterns = 0;
    std::string patterns_path;
    std::string file_format = "binary";
    long long target = 0;
    double corruption = 0.15;
    std::string mode = "async";
    double gamma = 0.6;
    long long samples = 200;
    int probe_trials = 0;
    double copy_prob = 0.25;
    double copy_fraction = 1.0 / 3.0;

    // experiment axes
    std::vector<long long> size_axis;
    std::vector<double> alpha_axis;
    std::vector<double> corruption_axis;
    std::vector<long long> p_axis;
    std::vector<double> alpha3_axis;
    std::vector<double> m0_axis;
    std::string adversary = "both";
    double rho_min = 0.0;
    double rho_max = 0.35;
    double rho_step = 0.01;
    int rounds = 10;
    double capacity_threshold = 0.95;
};

std::map<std::string, std::string> read_config(const std::string& path) {
    std::map<std::string, std::string> values;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto first = s.find_first_not_of(" \t\r");
            const auto last = s.find_last_not_of(" \t\r");
            return first == std::string::npos ? std::string{} : s.substr(first, last - first + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) values[key] = value;
    }
    return values;
}

// Precedence: flag > config file > DAM_SEED env (seed only) > built-in default.
void merge_defaults(CLI::App* sub, Options& opt) {
    std::map<std::string, std::string> config;
    if (!opt.config_path.empty()) config = read_config(opt.config_path);

    auto flag_given = [&](const char* flag) {
        const CLI::Option* option = sub->get_option_no_throw(flag);
        return option != nullptr && option->count() > 0;
    };
    auto from_config = [&](const char* flag, const char* key, auto setter) {
        if (flag_given(flag)) return false;
        const auto it = config.find(key);
        if (it == config.end()) return false;
        setter(it->second);
        return true;
    };

    const bool seed_set = from_config("--seed", "seed", [&](const std::string& v) {
        opt.seed = std::strtoull(v.c_str(), nullptr, 10);
    });
    if (!seed_set && !flag_given("--seed")) {
        if (const char* env = std::getenv("DAM_SEED"))
            opt.seed = std::strtoull(env, nullptr, 10);
    }
    from_config("--threads", "threads", [&](const std::string& v) { opt.threads = std::stoi(v); });
    from_config("--omega", "omega", [&](const std::string& v) { opt.omega = std::stod(v); });
    from_config("--max-sweeps", "max_sweeps",
                [&](const std::string& v) { opt.max_sweeps = std::stoi(v); });
    from_config("--trials", "trials", [&](const std::string& v) { opt.trials = std::stoi(v); });
    from_config("--resamples", "resamples",
                [&](const std::string& v) { opt.resamples = std::stoi(v); });
    from_config("-n", "n", [&](const std::string& v) { opt.order = std::stoi(v); });
}

void add_common(CLI::App* sub, Options& opt) {
    sub->add_option("--seed", opt.seed, "master random seed");
    sub->add_option("--threads", opt.threads, "worker threads for trial fan-out");
    sub->add_option("-n,--order", opt.order, "interaction order")->check(CLI::Range(2, 8));
    sub->add_option("--config", opt.config_path, "flat key=value config file");
}

void add_experiment_common(CLI::App* sub, Options& opt) {
    add_common(sub, opt);
    sub->add_option("--omega", opt.omega, "convergence threshold");
    sub->add_option("--max-sweeps", opt.max_sweeps, "sweep budget per trial");
    sub->add_option("--trials", opt.trials, "trials per grid point");
    sub->add_option("--resamples", opt.resamples, "bootstrap resamples");
    sub->add_option("--out", opt.out, "output path (default: stdout)");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "markdown"}));
}

dam::OutputFormat output_format(const Options& opt) {
    return opt.format == "markdown" ? dam::OutputFormat::markdown : dam::OutputFormat::csv;
}

void emit(const std::string& text, const Options& opt) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + opt.out);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    std::cerr << "wrote " << text.size() << " bytes to " << opt.out << "\n";
}

dam::ExperimentConfig base_config(const Options& opt, dam::ExperimentKind kind) {
    dam::ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.order = opt.order;
    cfg.omega = opt.omega;
    cfg.max_sweeps = opt.max_sweeps;
    cfg.trials = opt.trials;
    cfg.master_seed = opt.seed;
    cfg.resamples = opt.resamples;
    cfg.threads = opt.threads;
    return cfg;
}

void run_records_experiment(const Options& opt, const dam::ExperimentConfig& cfg) {
    const auto records = dam::run_experiment(cfg);
    emit(dam::render(dam::tabulate(cfg.kind, records), output_format(opt)), opt);

    if (cfg.kind == dam::ExperimentKind::adversarial) {
        // Per-curve 50% thresholds, grouped as the grid was enumerated.
        std::vector<std::pair<double, double>> curve;
        auto flush = [&](const dam::ExperimentRecord& head) {
            if (curve.size() < 2) return;
            const auto est = dam::estimate_threshold(curve, cfg.rhos.size() > 1
                                                                ? cfg.rhos[1] - cfg.rhos[0]
                                                                : 0.01);
            std::cerr << "threshold N=" << head.point.num_neurons
                      << " p=" << head.point.num_patterns << " adversary="
                      << (head.point.adversary == dam::AdversaryModel::strong ? "strong" : "weak")
                      << " rho_hat=" << dam::format_g6(est.value)
                      << (est.crossed ? "" : " (no crossing)") << "\n";
        };
        for (std::size_t i = 0; i < records.size(); ++i) {
            curve.emplace_back(records[i].point.rho, records[i].success_rate);
            const bool last_of_curve = i + 1 == records.size() ||
                                       records[i + 1].point.rho <= records[i].point.rho;
            if (last_of_curve) {
                flush(records[i]);
                curve.clear();
            }
        }
    }
}

std::vector<double> rho_grid(const Options& opt) {
    std::vector<double> rhos;
    for (int k = 0;; ++k) {
        const double rho = opt.rho_min + k * opt.rho_step;
        if (rho > opt.rho_max + 1e-12) break;
        rhos.push_back(rho);
    }
    return rhos;
}

int run_selftest(const Options& opt) {
    int failures = 0;
    auto check = [&](bool ok, const std::string& name) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };

    dam::Xoshiro256ss rng(opt.seed);

    // Descent identity on random instances: a best-response flip raises the
    // exact potential numerator by exactly 2|Phi|.
    {
        bool ok = true;
        for (int rep = 0; rep < 400 && ok; ++rep) {
            const int order = 2 + static_cast<int>(rng.next_below(3));
            const long long n = 2 + static_cast<long long>(rng.next_below(40));
            const long long p = 1 + static_cast<long long>(rng.next_below(12));
            const dam::ModelParams params(order, n, p);
            const dam::PatternSet patterns = dam::generate_random(params, rng);
            std::vector<std::int8_t> spins(n);
            for (auto& s : spins) s = static_cast<std::int8_t>(rng.next_spin());
            dam::NetworkState state = dam::NetworkState::from_spins(patterns, spins);
            const long long i = static_cast<long long>(rng.next_below(n));
            const dam::i128 phi = dam::marginal_field(state, patterns, i).numerator;
            const dam::i128 before = dam::potential(state, params).numerator;
            if (phi != 0 && state.spins[i] != (phi > 0 ? 1 : -1)) {
                dam::flip_neuron(state, patterns, i);
                const dam::i128 after = dam::potential(state, params).numerator;
                ok = after - before == 2 * dam::i128_abs(phi);
            }
        }
        check(ok, "descent identity (exact)");
    }

    // Flip involution and cache coherence.
    {
        const dam::ModelParams params(3, 24, 6);
        const dam::PatternSet patterns = dam::generate_random(params, rng);
        dam::NetworkState state = dam::NetworkState::at_pattern(patterns, 0);
        dam::NetworkState reference = state;
        for (int rep = 0; rep < 200; ++rep) {
            const long long i = static_cast<long long>(rng.next_below(24));
            dam::flip_neuron(state, patterns, i);
            dam::flip_neuron(state, patterns, i);
        }
        bool ok = state.spins == reference.spins && state.overlaps == reference.overlaps;
        for (int rep = 0; rep < 50; ++rep)
            dam::flip_neuron(state, patterns, static_cast<long long>(rng.next_below(24)));
        dam::NetworkState rebuilt = state;
        dam::rebuild_overlaps(rebuilt, patterns);
        ok = ok && rebuilt.overlaps == state.overlaps;
        check(ok, "flip involution and cache coherence");
    }

    // Exhaustive fixed-point oracle: odd order stores exactly the pattern.
    {
        bool ok = true;
        for (long long n = 4; n <= 10 && ok; n += 2) {
            const dam::ModelParams params(3, n, 1);
            const dam::PatternSet patterns = dam::generate_random(params, rng);
            const auto points = dam::enumerate_fixed_points(patterns);
            ok = points.size() == 1 &&
                 points.front() == std::vector<std::int8_t>(patterns.row(0).begin(),
                                                            patterns.row(0).end());
        }
        check(ok, "unique fixed point at p=1, odd order");
    }

    // Retrieval smoke test.
    {
        const dam::ModelParams params(3, 120, 36);
        const dam::PatternSet patterns = dam::generate_random(params, rng);
        dam::NetworkState state = dam::corrupt_random(patterns, 0, 0.15, rng);
        dam::SweepConfig sweep;
        sweep.target = 0;
        const auto outcome = dam::retrieve(patterns, state, sweep, rng);
        check(outcome.converged && outcome.sweeps_used <= 5, "retrieval from 15% corruption");
    }

    std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 2;
}

dam::UpdateMode parse_mode(const std::string& mode) {
    return mode == "sync" || mode == "parallel" ? dam::UpdateMode::synchronous
                                                : dam::UpdateMode::asynchronous;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dense associative memory retrieval dynamics and experiment harness"};
    app.require_subcommand(1);
    Options opt;

    auto* generate = app.add_subcommand("generate", "write a pattern file");
    add_common(generate, opt);
    generate->add_option("--kind", opt.kind, "pattern ensemble")
        ->check(CLI::IsMember({"random", "correlated"}));
    generate->add_option("--N", opt.num_neurons, "neuron count")->required();
    generate->add_option("--p", opt.num_patterns, "pattern count")->required();
    generate->add_option("--copy-prob", opt.copy_prob, "per-coordinate copy probability");
    generate->add_option("--copy-fraction", opt.copy_fraction, "fraction of correlated patterns");
    generate->add_option("--out", opt.out, "output pattern file")->required();
    generate->add_option("--file-format", opt.file_format, "pattern file format")
        ->check(CLI::IsMember({"binary", "text"}));

    auto* retrieve_cmd = app.add_subcommand("retrieve", "single retrieval from a pattern file");
    add_common(retrieve_cmd, opt);
    retrieve_cmd->add_option("--patterns", opt.patterns_path, "pattern file")->required();
    retrieve_cmd->add_option("--target", opt.target, "target pattern index (0-based)");
    retrieve_cmd->add_option("--corruption", opt.corruption, "initial corruption fraction");
    retrieve_cmd->add_option("--mode", opt.mode, "update rule")
        ->check(CLI::IsMember({"async", "sync"}));
    retrieve_cmd->add_option("--omega", opt.omega, "convergence threshold");
    retrieve_cmd->add_option("--max-sweeps", opt.max_sweeps, "sweep budget");

    auto* verify = app.add_subcommand("verify", "diagnostics report for a pattern file");
    add_common(verify, opt);
    verify->add_option("--patterns", opt.patterns_path, "pattern file")->required();
    verify->add_option("--gamma", opt.gamma, "basin parameter");
    verify->add_option("--target", opt.target, "target pattern index (0-based)");
    verify->add_option("--samples", opt.samples, "basin-boundary samples");
    verify->add_option("--probe-trials", opt.probe_trials,
                       "contraction probe trials (0 disables)");

    auto* conv = app.add_subcommand("exp-convergence", "convergence study");
    add_experiment_common(conv, opt);
    conv->add_option("--alpha", opt.alpha_axis, "loading values")->delimiter(',');
    conv->add_option("--N", opt.size_axis, "system sizes")->delimiter(',');
    conv->add_option("--corruption", opt.corruption_axis, "corruption levels")->delimiter(',');

    auto* basin = app.add_subcommand("exp-basin", "basin of attraction map");
    add_experiment_common(basin, opt);
    basin->add_option("--alpha", opt.alpha_axis, "loading values")->delimiter(',');
    basin->add_option("--N", opt.size_axis, "system sizes")->delimiter(',');
    basin->add_option("--corruption", opt.corruption_axis, "corruption levels")->delimiter(',');

    auto* adv = app.add_subcommand("exp-adversarial", "adversarial robustness curves");
    add_experiment_common(adv, opt);
    adv->add_option("--N", opt.size_axis, "system sizes")->delimiter(',');
    adv->add_option("--p", opt.p_axis, "pattern counts")->delimiter(',');
    adv->add_option("--alpha", opt.alpha_axis, "loading values (alternative to --p)")
        ->delimiter(',');
    adv->add_option("--gamma", opt.gamma, "initial overlap");
    adv->add_option("--rho-min", opt.rho_min, "smallest per-round corruption");
    adv->add_option("--rho-max", opt.rho_max, "largest per-round corruption");
    adv->add_option("--rho-step", opt.rho_step, "rho grid step");
    adv->add_option("--rounds", opt.rounds, "adversary rounds");
    adv->add_option("--adversary", opt.adversary, "adversary model")
        ->check(CLI::IsMember({"strong", "weak", "both", "none"}));

    auto* capacity = app.add_subcommand("exp-capacity", "capacity scaling by binary search");
    add_experiment_common(capacity, opt);
    capacity->add_option("--N", opt.size_axis, "system sizes")->delimiter(',');
    capacity->add_option("--corruption", opt.corruption, "initial corruption fraction");
    capacity->add_option("--threshold", opt.capacity_threshold, "required success rate");

    auto* update = app.add_subcommand("exp-update-compare", "async vs parallel updates");
    add_experiment_common(update, opt);
    update->add_option("--N", opt.size_axis, "system sizes")->delimiter(',');
    update->add_option("--alpha3", opt.alpha3_axis, "Mimura loading values")->delimiter(',');
    update->add_option("--m0", opt.m0_axis, "initial overlaps")->delimiter(',');

    auto* pattern = app.add_subcommand("exp-pattern-compare", "random vs correlated patterns");
    add_experiment_common(pattern, opt);
    pattern->add_option("--N", opt.size_axis, "system sizes")->delimiter(',');
    pattern->add_option("--alpha", opt.alpha_axis, "loading values")->delimiter(',');
    pattern->add_option("--corruption", opt.corruption, "initial corruption fraction");
    pattern->add_option("--copy-prob", opt.copy_prob, "per-coordinate copy probability");
    pattern->add_option("--copy-fraction", opt.copy_fraction, "fraction of correlated patterns");

    auto* realdata = app.add_subcommand("exp-realdata", "retrieval on a binarized pattern file");
    add_experiment_common(realdata, opt);
    realdata->add_option("--patterns", opt.patterns_path, "pattern file")->required();
    realdata->add_option("--p", opt.p_axis, "pattern counts to load")->delimiter(',');
    realdata->add_option("--corruption", opt.corruption_axis, "corruption levels")->delimiter(',');

    auto* selftest = app.add_subcommand("selftest", "run the built-in oracle suite");
    add_common(selftest, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        merge_defaults(sub, opt);

        if (sub == generate) {
            const dam::ModelParams params(opt.order, opt.num_neurons, opt.num_patterns);
            dam::Xoshiro256ss rng(opt.seed);
            const dam::PatternSet set =
                opt.kind == "correlated"
                    ? dam::generate_correlated(params, rng, opt.copy_prob, opt.copy_fraction)
                    : dam::generate_random(params, rng);
            dam::save_patterns(set, opt.out,
                               opt.file_format == "text" ? dam::PatternFileFormat::text
                                                         : dam::PatternFileFormat::binary);
            std::cerr << "wrote " << opt.num_patterns << " patterns of dimension "
                      << opt.num_neurons << " to " << opt.out << "\n";
        } else if (sub == retrieve_cmd) {
            const dam::PatternSet set = dam::load_patterns(opt.patterns_path, opt.order);
            dam::Xoshiro256ss rng(opt.seed);
            dam::NetworkState state =
                dam::corrupt_random(set, opt.target, opt.corruption, rng);
            dam::SweepConfig sweep;
            sweep.mode = parse_mode(opt.mode);
            sweep.max_sweeps = opt.max_sweeps;
            sweep.omega = opt.omega;
            sweep.target = opt.target;
            const auto outcome = dam::retrieve(set, state, sweep, rng);
            std::cout << "converged " << (outcome.converged ? "true" : "false") << "\n"
                      << "sweeps " << outcome.sweeps_used << "\n"
                      << "final_overlap " << dam::format_g6(outcome.final_overlap) << "\n"
                      << "flips " << outcome.flips_total << "\n";
        } else if (sub == verify) {
            const dam::PatternSet set = dam::load_patterns(opt.patterns_path, opt.order);
            if (set.num_patterns() < 2)
                std::cerr << "warning: beta is defined as 0 for fewer than two patterns\n";
            dam::Xoshiro256ss rng(opt.seed);
            const auto est =
                dam::estimate_separation(set, opt.target, opt.gamma, opt.samples, rng);
            const auto q = dam::theory(set.params(), opt.gamma, est.beta_patterns);
            std::cout << "N " << set.num_neurons() << "\n"
                      << "p " << set.num_patterns() << "\n"
                      << "loading " << dam::format_g6(q.loading) << "\n"
                      << "mimura_alpha3 " << dam::format_g6(q.mimura_alpha3) << "\n"
                      << "beta_patterns " << dam::format_g6(est.beta_patterns) << "\n"
                      << "beta_state_hat " << dam::format_g6(est.beta_state_hat) << "\n"
                      << "lambda_hat " << dam::format_g6(est.lambda_hat) << "\n"
                      << "dominant " << (est.dominant ? "true" : "false") << "\n"
                      << "samples_used " << est.samples_used << "\n"
                      << "alpha_rate " << dam::format_g6(q.contraction) << "\n"
                      << "rho_star_alpha " << dam::format_g6(q.rho_star_alpha) << "\n"
                      << "rho_star_gamma " << dam::format_g6(*q.rho_star_gamma) << "\n"
                      << "rho_star_beta " << dam::format_g6(*q.rho_star_beta) << "\n"
                      << "cap_lower " << dam::format_g6(q.cap_lower) << "\n"
                      << "cap_upper " << dam::format_g6(q.cap_upper) << "\n";
            if (opt.probe_trials > 0) {
                const auto probe = dam::contraction_probe(set, opt.target, opt.gamma,
                                                          opt.probe_trials, rng);
                std::cout << "probe_mean_gain " << dam::format_g6(probe.mean_gain) << "\n"
                          << "probe_predicted " << dam::format_g6(probe.predicted_gain) << "\n"
                          << "probe_ratio " << dam::format_g6(probe.ratio) << "\n";
            }
        } else if (sub == conv || sub == basin) {
            auto cfg = base_config(opt, sub == conv ? dam::ExperimentKind::convergence
                                                    : dam::ExperimentKind::basin);
            cfg.alphas = opt.alpha_axis.empty()
                             ? (sub == conv ? std::vector<double>{0.03}
                                            : std::vector<double>{0.005, 0.01, 0.02})
                             : opt.alpha_axis;
            cfg.sizes = opt.size_axis.empty()
                            ? (sub == conv ? std::vector<long long>{200, 300, 400, 500}
                                           : std::vector<long long>{200, 400, 600})
                            : opt.size_axis;
            if (!opt.corruption_axis.empty()) {
                cfg.corruptions = opt.corruption_axis;
            } else if (sub == conv) {
                cfg.corruptions = {0.15};
            } else {
                for (int c = 33; c <= 50; ++c) cfg.corruptions.push_back(c / 100.0);
            }
            run_records_experiment(opt, cfg);
        } else if (sub == adv) {
            auto cfg = base_config(opt, dam::ExperimentKind::adversarial);
            if (sub->count("--trials") == 0) cfg.trials = 80;
            cfg.sizes = opt.size_axis.empty() ? std::vector<long long>{500} : opt.size_axis;
            cfg.pattern_counts = opt.p_axis.empty() && opt.alpha_axis.empty()
                                     ? std::vector<long long>{1250}
                                     : opt.p_axis;
            cfg.alphas = opt.alpha_axis;
            cfg.rhos = rho_grid(opt);
            cfg.rounds = opt.rounds;
            cfg.gamma0 = opt.gamma;
            if (opt.adversary == "both")
                cfg.adversaries = {dam::AdversaryModel::strong, dam::AdversaryModel::weak};
            else if (opt.adversary == "strong")
                cfg.adversaries = {dam::AdversaryModel::strong};
            else if (opt.adversary == "weak")
                cfg.adversaries = {dam::AdversaryModel::weak};
            else
                cfg.adversaries = {dam::AdversaryModel::none};
            run_records_experiment(opt, cfg);
        } else if (sub == capacity) {
            dam::CapacityConfig cfg;
            cfg.order = opt.order;
            cfg.trials = sub->count("--trials") ? opt.trials : 40;
            cfg.corruption = opt.corruption;
            cfg.success_threshold = opt.capacity_threshold;
            cfg.max_sweeps = opt.max_sweeps;
            cfg.omega = opt.omega;
            cfg.master_seed = opt.seed;
            cfg.threads = opt.threads;
            const auto sizes = opt.size_axis.empty()
                                   ? std::vector<long long>{100, 150, 200, 300}
                                   : opt.size_axis;
            const auto result = dam::capacity_experiment(sizes, cfg);
            emit(dam::render(dam::tabulate_capacity(result), output_format(opt)), opt);
            if (result.fit)
                std::cerr << "fit p_max ~ " << dam::format_g6(result.fit->prefactor) << " * N^"
                          << dam::format_g6(result.fit->exponent)
                          << " (R^2 = " << dam::format_g6(result.fit->r_squared) << ")\n";
        } else if (sub == update) {
            auto cfg = base_config(opt, dam::ExperimentKind::update_compare);
            if (sub->count("--trials") == 0) cfg.trials = 50;
            cfg.sizes = opt.size_axis.empty() ? std::vector<long long>{500} : opt.size_axis;
            cfg.alpha3s = opt.alpha3_axis.empty()
                              ? std::vector<double>{0.10, 0.15, 0.20, 0.25, 0.30}
                              : opt.alpha3_axis;
            cfg.m0s = opt.m0_axis.empty() ? std::vector<double>{0.3, 0.5, 0.7} : opt.m0_axis;
            run_records_experiment(opt, cfg);
        } else if (sub == pattern) {
            auto cfg = base_config(opt, dam::ExperimentKind::pattern_compare);
            if (sub->count("--trials") == 0) cfg.trials = 50;
            cfg.sizes = opt.size_axis.empty() ? std::vector<long long>{500} : opt.size_axis;
            cfg.alphas = opt.alpha_axis.empty()
                             ? std::vector<double>{0.002, 0.004, 0.006, 0.008, 0.01,
                                                   0.015, 0.02,  0.03,  0.05}
                             : opt.alpha_axis;
            cfg.corruptions = {opt.corruption};
            cfg.copy_prob = opt.copy_prob;
            cfg.copy_fraction = opt.copy_fraction;
            run_records_experiment(opt, cfg);
        } else if (sub == realdata) {
            auto cfg = base_config(opt, dam::ExperimentKind::realdata);
            if (sub->count("--trials") == 0) cfg.trials = 40;
            cfg.source_path = opt.patterns_path;
            cfg.pattern_counts = opt.p_axis.empty() ? std::vector<long long>{10} : opt.p_axis;
            cfg.corruptions = opt.corruption_axis.empty()
                                  ? std::vector<double>{0.10, 0.20, 0.30, 0.35, 0.40, 0.45}
                                  : opt.corruption_axis;
            run_records_experiment(opt, cfg);
        } else if (sub == selftest) {
            return run_selftest(opt);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
