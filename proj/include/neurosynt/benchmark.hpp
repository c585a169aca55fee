#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "neurosynt/portfolio.hpp"

namespace neurosynt::orch {

/// One CSV row: one tool's answer on one sample.
struct BenchmarkRow {
  std::string sample_id;
  std::string tool;
  std::string status;
  std::optional<bool> realizable;
  double wall_time_s = 0;
  std::string mc_status;  // empty when the orchestrator did not check
  std::optional<double> mc_time_s;
  std::optional<std::size_t> num_latches;
  std::optional<std::size_t> num_ands;
  std::optional<std::uint32_t> max_var;
};

inline constexpr const char* kBenchmarkHeader =
    "sample_id,tool,status,realizable,wall_time_s,mc_status,mc_time_s,num_latches,num_ands,max_var";

std::vector<BenchmarkRow> benchmark_rows(const std::string& sample_id, const PortfolioResult& r);
/// Rows for a sample that could not be run (e.g. an unparsable spec), one per tool.
std::vector<BenchmarkRow> failure_rows(const std::string& sample_id, const Portfolio& p);
std::string to_csv(const BenchmarkRow& row);

/// `*.json` files of a directory in name order, or the paths listed one per
/// line in an index file (relative to the index).
std::vector<std::filesystem::path> list_samples(const std::filesystem::path& dataset);

struct BenchmarkOptions {
  std::size_t jobs = 1;
  Seconds timeout{120};
};

/// Runs every sample through the portfolio (WaitAll regardless of the
/// configured mode) and writes the CSV; rows appear in sample order.
/// Per-sample failures become rows; returns all rows.
std::vector<BenchmarkRow> run_benchmark(const Portfolio& p, const std::vector<std::filesystem::path>& samples,
                                        std::ostream& csv, const BenchmarkOptions& opts = {});

}  // namespace neurosynt::orch
