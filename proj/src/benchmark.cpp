#include "neurosynt/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "neurosynt/aiger.hpp"
#include "neurosynt/spec_io.hpp"

namespace neurosynt::orch {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << s;
  return os.str();
}

}  // namespace

std::vector<BenchmarkRow> benchmark_rows(const std::string& sample_id, const PortfolioResult& r) {
  std::vector<BenchmarkRow> rows;
  for (const auto& t : r.all_results) {
    BenchmarkRow row;
    row.sample_id = sample_id;
    row.tool = t.tool;
    row.status = std::string(to_string(t.solution.status));
    row.realizable = t.solution.realizable;
    row.wall_time_s = t.wall_time.count();
    if (t.verification) {
      row.mc_status = std::string(mc::to_string(t.verification->status));
      row.mc_time_s = t.verification->time.count();
    }
    if (t.solution.circuit) {
      try {
        auto s = aiger::stats(aiger::parse_aag(*t.solution.circuit));
        row.num_latches = s.num_latches;
        row.num_ands = s.num_ands;
        row.max_var = s.max_var;
      } catch (const aiger::AigerError&) {
        // Unparsable circuits leave the size columns empty.
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<BenchmarkRow> failure_rows(const std::string& sample_id, const Portfolio& p) {
  std::vector<BenchmarkRow> rows;
  for (const auto& s : p.solvers) {
    BenchmarkRow row;
    row.sample_id = sample_id;
    row.tool = s->name();
    row.status = "error";
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string to_csv(const BenchmarkRow& r) {
  auto opt = [](const auto& v) { return v ? std::to_string(*v) : std::string(); };
  std::string out = csv_field(r.sample_id) + "," + csv_field(r.tool) + "," + r.status + ",";
  out += r.realizable ? (*r.realizable ? "true" : "false") : "";
  out += "," + seconds(r.wall_time_s) + "," + r.mc_status + ",";
  out += r.mc_time_s ? seconds(*r.mc_time_s) : "";
  out += "," + opt(r.num_latches) + "," + opt(r.num_ands) + "," + opt(r.max_var);
  return out;
}

std::vector<std::filesystem::path> list_samples(const std::filesystem::path& dataset) {
  namespace fs = std::filesystem;
  std::vector<fs::path> out;
  if (fs::is_directory(dataset)) {
    for (const auto& e : fs::directory_iterator(dataset))
      if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
  }
  std::ifstream in(dataset);
  if (!in) throw std::runtime_error("cannot open dataset " + dataset.string());
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    fs::path p(line);
    out.push_back(p.is_absolute() ? p : dataset.parent_path() / p);
  }
  return out;
}

std::vector<BenchmarkRow> run_benchmark(const Portfolio& p, const std::vector<std::filesystem::path>& samples,
                                        std::ostream& csv, const BenchmarkOptions& opts) {
  Portfolio all = p;
  all.mode = Mode::WaitAll;
  std::vector<std::vector<BenchmarkRow>> per_sample(samples.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < samples.size(); i = next++) {
      const std::string id = samples[i].stem().string();
      try {
        wire::SynProblem problem;
        problem.decomp_specification = load_spec_file(samples[i]);
        problem.parameters["problem_id"] = id;
        per_sample[i] = benchmark_rows(id, run_portfolio(all, problem, Deadline::after(opts.timeout)));
      } catch (const std::exception&) {
        per_sample[i] = failure_rows(id, all);
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < std::max<std::size_t>(1, opts.jobs); ++k) pool.emplace_back(worker);
  }
  std::vector<BenchmarkRow> rows;
  csv << kBenchmarkHeader << "\n";
  for (auto& group : per_sample)
    for (auto& r : group) {
      csv << to_csv(r) << "\n";
      rows.push_back(std::move(r));
    }
  return rows;
}

}  // namespace neurosynt::orch
