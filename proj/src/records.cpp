#include "dam/records.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dam {

std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

namespace {

std::string adversary_name(AdversaryModel model) {
    switch (model) {
        case AdversaryModel::strong: return "strong";
        case AdversaryModel::weak: return "weak";
        case AdversaryModel::none: return "none";
    }
    return "unknown";
}

std::string mode_name(UpdateMode mode) {
    return mode == UpdateMode::asynchronous ? "async" : "parallel";
}

std::string kind_name(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::random_iid: return "random";
        case EnsembleKind::correlated: return "correlated";
        case EnsembleKind::file: return "file";
    }
    return "unknown";
}

std::string int_str(long long v) { return std::to_string(v); }

std::string mean_sweeps_cell(const ExperimentRecord& rec) {
    return rec.mean_sweeps ? format_g6(*rec.mean_sweeps) : "--";
}

}  // namespace

Table tabulate(ExperimentKind kind, const std::vector<ExperimentRecord>& records) {
    Table table;
    switch (kind) {
        case ExperimentKind::convergence:
            table.header = {"alpha",   "N",        "p",           "corruption",
                            "beta",    "trials",   "success_rate", "mean_sweeps",
                            "ci_low",  "ci_high"};
            for (const auto& r : records)
                table.rows.push_back({format_g6(r.point.alpha), int_str(r.point.num_neurons),
                                      int_str(r.point.num_patterns),
                                      format_g6(r.point.corruption), format_g6(r.beta_measured),
                                      int_str(r.trials), format_g6(r.success_rate),
                                      mean_sweeps_cell(r), format_g6(r.ci_low),
                                      format_g6(r.ci_high)});
            break;
        case ExperimentKind::basin:
            table.header = {"alpha",        "corruption", "N",      "p",
                            "trials",       "success_rate", "ci_low", "ci_high"};
            for (const auto& r : records)
                table.rows.push_back({format_g6(r.point.alpha), format_g6(r.point.corruption),
                                      int_str(r.point.num_neurons), int_str(r.point.num_patterns),
                                      int_str(r.trials), format_g6(r.success_rate),
                                      format_g6(r.ci_low), format_g6(r.ci_high)});
            break;
        case ExperimentKind::adversarial:
            table.header = {"N",      "p",      "beta",   "gamma",        "adversary", "rho",
                            "trials", "success_rate", "ci_low", "ci_high"};
            for (const auto& r : records)
                table.rows.push_back(
                    {int_str(r.point.num_neurons), int_str(r.point.num_patterns),
                     format_g6(r.beta_measured), format_g6(r.point.gamma0),
                     adversary_name(r.point.adversary), format_g6(r.point.rho), int_str(r.trials),
                     format_g6(r.success_rate), format_g6(r.ci_low), format_g6(r.ci_high)});
            break;
        case ExperimentKind::update_compare:
            table.header = {"alpha3",  "m0",     "p",           "rule",        "trials",
                            "success_rate", "mean_sweeps", "ci_low", "ci_high"};
            for (const auto& r : records)
                table.rows.push_back({format_g6(r.point.alpha3), format_g6(r.point.m0),
                                      int_str(r.point.num_patterns), mode_name(r.point.mode),
                                      int_str(r.trials), format_g6(r.success_rate),
                                      mean_sweeps_cell(r), format_g6(r.ci_low),
                                      format_g6(r.ci_high)});
            break;
        case ExperimentKind::pattern_compare:
            table.header = {"kind",   "alpha",  "p",      "beta",
                            "trials", "success_rate", "ci_low", "ci_high"};
            for (const auto& r : records)
                table.rows.push_back({kind_name(r.point.pattern_kind), format_g6(r.point.alpha),
                                      int_str(r.point.num_patterns), format_g6(r.beta_measured),
                                      int_str(r.trials), format_g6(r.success_rate),
                                      format_g6(r.ci_low), format_g6(r.ci_high)});
            break;
        case ExperimentKind::realdata:
            table.header = {"source", "N",      "p",      "beta",   "corruption",
                            "trials", "success_rate", "ci_low", "ci_high"};
            for (const auto& r : records)
                table.rows.push_back({r.point.source, int_str(r.point.num_neurons),
                                      int_str(r.point.num_patterns), format_g6(r.beta_measured),
                                      format_g6(r.point.corruption), int_str(r.trials),
                                      format_g6(r.success_rate), format_g6(r.ci_low),
                                      format_g6(r.ci_high)});
            break;
        case ExperimentKind::capacity:
            throw std::invalid_argument("capacity results use tabulate_capacity");
    }
    return table;
}

Table tabulate_capacity(const CapacityResult& result) {
    Table table;
    table.header = {"N", "p_max", "alpha_eff"};
    for (const CapacityPoint& point : result.points)
        table.rows.push_back({int_str(point.num_neurons), int_str(point.p_max),
                              format_g6(point.alpha_eff)});
    return table;
}

std::string render(const Table& table, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::csv) {
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            if (c) out << ',';
            out << table.header[c];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out << ',';
                out << row[c];
            }
            out << '\n';
        }
    } else {
        out << '|';
        for (const auto& h : table.header) out << ' ' << h << " |";
        out << "\n|";
        for (std::size_t c = 0; c < table.header.size(); ++c) out << "---|";
        out << '\n';
        for (const auto& row : table.rows) {
            out << '|';
            for (const auto& cell : row) out << ' ' << cell << " |";
            out << '\n';
        }
    }
    return out.str();
}

std::size_t write_records(const std::vector<ExperimentRecord>& records, ExperimentKind kind,
                          OutputFormat format, const std::filesystem::path& path) {
    const std::string text = render(tabulate(kind, records), format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
    return text.size();
}

}  // namespace dam
