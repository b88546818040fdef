#pragma once

// CSV and markdown writers for experiment records. Formatting is pinned
// (6 significant digits, LF line endings) so identical runs produce
// byte-identical output.

#include <filesystem>
#include <string>
#include <vector>

#include "dam/experiments.hpp"

namespace dam {

enum class OutputFormat { csv, markdown };

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string format_g6(double v);

Table tabulate(ExperimentKind kind, const std::vector<ExperimentRecord>& records);
Table tabulate_capacity(const CapacityResult& result);

std::string render(const Table& table, OutputFormat format);

// Renders and writes; returns bytes written.
std::size_t write_records(const std::vector<ExperimentRecord>& records, ExperimentKind kind,
                          OutputFormat format, const std::filesystem::path& path);

}  // namespace dam
