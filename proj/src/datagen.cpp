#include "neurosynt/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

#include "neurosynt/aiger.hpp"
#include "neurosynt/bounded_synth.hpp"
#include "neurosynt/model_checker.hpp"
#include "neurosynt/spec_io.hpp"

namespace neurosynt::datagen {

namespace {

using ltl::Formula;

std::vector<std::string> universe(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(prefix + std::to_string(k));
  return out;
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::vector<std::string> spec_atoms(const ltl::DecompSpec& s) {
  std::vector<std::string> out = s.inputs;
  out.insert(out.end(), s.outputs.begin(), s.outputs.end());
  return out;
}

// Declares the atoms of `f` that are new to `spec`, keeping universe order.
void declare(ltl::DecompSpec& spec, const Formula& f, const AssembleOptions& opts) {
  auto add = [](std::vector<std::string>& ports, const std::vector<std::string>& all, const std::string& a) {
    if (contains(ports, a) || !contains(all, a)) return;
    ports.push_back(a);
    std::sort(ports.begin(), ports.end(), [&](const auto& x, const auto& y) {
      return std::find(all.begin(), all.end(), x) < std::find(all.begin(), all.end(), y);
    });
  };
  const auto ins = universe("i_", opts.max_inputs), outs = universe("o_", opts.max_outputs);
  for (const auto& a : ltl::atoms(f)) {
    add(spec.inputs, ins, a);
    add(spec.outputs, outs, a);
  }
}

const Pattern& draw(const std::vector<Pattern>& pool, std::mt19937_64& rng) {
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

bool verdict(const SynSolution& s) { return s.status == SynStatus::Realizable; }

// Renumbers placeholders of both roles in first-occurrence order.
Pattern canonical(const Formula& f, PatternKind kind) {
  std::map<std::string, std::string> rename;
  std::size_t ni = 0, no = 0;
  for (const auto& a : ltl::atoms(f)) {
    if (a.rfind("p_in_", 0) == 0) rename[a] = input_placeholder(ni++);
    else rename[a] = output_placeholder(no++);
  }
  // Two-step rename so that p_in_1 -> p_in_0 cannot clash with an existing p_in_0.
  std::map<std::string, std::string> tmp, fin;
  for (const auto& [from, to] : rename) {
    tmp[from] = "tmp_" + to;
    fin["tmp_" + to] = to;
  }
  return {kind, ltl::rename_atoms(ltl::rename_atoms(f, tmp), fin), ni, no};
}

}  // namespace

std::string input_placeholder(std::size_t k) { return "p_in_" + std::to_string(k); }
std::string output_placeholder(std::size_t k) { return "p_out_" + std::to_string(k); }

Pattern make_pattern(const Formula& f, const ltl::DecompSpec& spec, PatternKind kind) {
  std::map<std::string, std::string> rename;
  Pattern p;
  p.kind = kind;
  for (const auto& a : ltl::atoms(f)) {
    if (contains(spec.inputs, a)) rename[a] = input_placeholder(p.num_inputs++);
    else if (contains(spec.outputs, a)) rename[a] = output_placeholder(p.num_outputs++);
    else throw ltl::SpecError("undeclared atom " + a);
  }
  p.formula = ltl::rename_atoms(f, rename);
  return p;
}

PatternLibrary mine_patterns(const std::vector<ltl::DecompSpec>& corpus) {
  PatternLibrary lib;
  std::set<std::string> seen;
  auto take = [&](const Formula& f, const ltl::DecompSpec& spec, PatternKind kind) {
    ++lib.report.seen;
    std::size_t ni = 0, no = 0;
    for (const auto& a : ltl::atoms(f)) (contains(spec.inputs, a) ? ni : no)++;
    if (ni > kMaxRoleAtoms || no > kMaxRoleAtoms) {
      ++lib.report.too_many_atoms;
      return;
    }
    if (ltl::ast_size(f) > kMaxPropertySize) {
      ++lib.report.too_large;
      return;
    }
    auto p = make_pattern(f, spec, kind);
    const std::string key = (kind == PatternKind::Assumption ? "A " : "G ") + ltl::to_string(p.formula);
    if (!seen.insert(key).second) {
      ++lib.report.duplicates;
      return;
    }
    (kind == PatternKind::Assumption ? lib.assumptions : lib.guarantees).push_back(std::move(p));
  };
  for (const auto& spec : corpus) {
    for (const auto& f : spec.assumptions) take(f, spec, PatternKind::Assumption);
    for (const auto& f : spec.guarantees) take(f, spec, PatternKind::Guarantee);
  }
  return lib;
}

std::string pick_atom(std::mt19937_64& rng, const std::vector<std::string>& candidates,
                      const std::vector<std::string>& present) {
  std::vector<double> w;
  for (const auto& c : candidates) w.push_back(contains(present, c) ? kAtomBias : 1.0);
  std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
  return candidates.at(pick(rng));
}

Formula instantiate(const Pattern& p, std::mt19937_64& rng, const ltl::DecompSpec& partial,
                    const AssembleOptions& opts) {
  if (p.num_inputs > opts.max_inputs || p.num_outputs > opts.max_outputs)
    throw GenerationExhausted("pattern needs more atoms than the universe has");
  const auto present = spec_atoms(partial);
  std::map<std::string, std::string> rename;
  auto fill = [&](std::size_t n, std::vector<std::string> pool, std::string (*name)(std::size_t)) {
    for (std::size_t k = 0; k < n; ++k) {
      auto a = pick_atom(rng, pool, present);
      pool.erase(std::find(pool.begin(), pool.end(), a));
      rename[name(k)] = a;
    }
  };
  fill(p.num_inputs, universe("i_", opts.max_inputs), input_placeholder);
  fill(p.num_outputs, universe("o_", opts.max_outputs), output_placeholder);
  return ltl::rename_atoms(p.formula, rename);
}

Oracle bounded_synth_oracle(Seconds timeout, std::size_t max_states) {
  return [timeout, max_states](const ltl::DecompSpec& spec) { return synth::synthesize(spec, max_states, timeout); };
}

Oracle solver_oracle(std::shared_ptr<orch::SolverClient> solver, Seconds timeout) {
  wire::SetupResponse r;
  try {
    r = solver->setup(Deadline::after(timeout));
  } catch (const std::exception& e) {
    throw OracleUnavailable(solver->name() + ": " + e.what());
  }
  if (!r.success) throw OracleUnavailable(solver->name() + ": " + r.error.value_or("setup failed"));
  return [solver, timeout](const ltl::DecompSpec& spec) {
    wire::SynProblem p;
    p.decomp_specification = spec;
    p.parameters["timeout"] = std::to_string(timeout.count());
    return solver->solve(p, Deadline::after(timeout)).solution;
  };
}

DatasetSample assemble(const PatternLibrary& lib, std::uint64_t seed, const Oracle& oracle, bool target_realizable,
                       const AssembleOptions& opts, AssembleTrace* trace) {
  AssembleTrace local;
  AssembleTrace& t = trace ? *trace : local;
  t = {};
  std::mt19937_64 rng(seed);
  ltl::DecompSpec spec;
  spec.semantics = opts.semantics;
  std::optional<DatasetSample> last_real, last_unreal;

  // Oracle verdict for a candidate; nullopt ends the run.
  auto ask = [&](const ltl::DecompSpec& s) -> std::optional<DatasetSample> {
    ++t.oracle_calls;
    SynSolution sol;
    try {
      sol = oracle(s);
    } catch (const OracleUnavailable&) {
      throw;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (sol.status != SynStatus::Realizable && sol.status != SynStatus::Unrealizable) return std::nullopt;
    if (!sol.circuit) return std::nullopt;
    if (opts.verify) {
      try {
        auto m = mc::check(aiger::parse_aag(*sol.circuit), s, verdict(sol), Seconds(60));
        if (m.status != mc::McStatus::Satisfied) return std::nullopt;
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
    return DatasetSample{s, *sol.circuit, verdict(sol)};
  };

  auto finish = [&](StopReason why) {
    t.reason = why;
    auto& pick = target_realizable ? last_real : last_unreal;
    if (!pick) throw GenerationExhausted(std::string("no ") + (target_realizable ? "realizable" : "unrealizable") +
                                         " specification before stopping");
    return *pick;
  };

  // Patterns that fit the atom universe.
  auto fitting = [&](const std::vector<Pattern>& pool) {
    std::vector<Pattern> out;
    for (const auto& p : pool)
      if (p.num_inputs <= opts.max_inputs && p.num_outputs <= opts.max_outputs) out.push_back(p);
    return out;
  };
  const auto guarantees = fitting(lib.guarantees), assumptions = fitting(lib.assumptions);
  if (guarantees.empty()) return finish(StopReason::NoPatterns);
  for (;;) {
    // Guarantees until unrealizable.
    std::size_t repeats = 0;
    for (;;) {
      if (spec.guarantees.size() >= kMaxGuarantees) return finish(StopReason::MaxGuarantees);
      if (repeats >= kAssumptionAttempts) return finish(StopReason::NoSuitableAssumption);
      ++t.guarantee_draws;
      auto g = instantiate(draw(guarantees, rng), rng, spec, opts);
      if (std::find(spec.guarantees.begin(), spec.guarantees.end(), g) != spec.guarantees.end()) {
        ++repeats;
        continue;
      }
      auto next = spec;
      next.guarantees.push_back(g);
      declare(next, g, opts);
      auto r = ask(next);
      if (!r) return finish(StopReason::OracleGaveUp);
      spec = std::move(next);
      if (r->realizable) {
        last_real = std::move(r);
      } else {
        last_unreal = std::move(r);
        break;
      }
    }
    // Assumptions until realizable again.
    std::size_t attempts = 0;
    for (;;) {
      if (spec.assumptions.size() >= kMaxAssumptions) return finish(StopReason::MaxAssumptions);
      if (attempts >= kAssumptionAttempts || assumptions.empty())
        return finish(StopReason::NoSuitableAssumption);
      ++attempts;
      auto a = instantiate(draw(assumptions, rng), rng, spec, opts);
      if (std::find(spec.assumptions.begin(), spec.assumptions.end(), a) != spec.assumptions.end()) continue;
      auto next = spec;
      next.assumptions.push_back(a);
      declare(next, a, opts);
      auto r = ask(next);
      if (!r) return finish(StopReason::OracleGaveUp);
      if (r->realizable) {
        spec = std::move(next);
        last_real = std::move(r);
        break;
      }
    }
  }
}

Pattern augment(const PatternLibrary& lib, std::uint64_t seed, PatternKind kind) {
  const auto& pool = kind == PatternKind::Assumption ? lib.assumptions : lib.guarantees;
  if (pool.empty()) throw GenerationExhausted("no patterns to augment");
  std::mt19937_64 rng(seed);
  Pattern cur = draw(pool, rng);
  while (ltl::ast_size(cur.formula) < kMaxPropertySize) {
    const Pattern& next = draw(pool, rng);
    if (ltl::ast_size(cur.formula) + ltl::ast_size(next.formula) + 1 > kMaxPropertySize) break;
    // Placeholders of the new conjunct: existing ones (biased) or fresh.
    std::map<std::string, std::string> rename;
    auto fill = [&](std::size_t n, std::size_t have, std::string (*name)(std::size_t)) {
      std::vector<std::string> pool_names;
      for (std::size_t k = 0; k < have + n; ++k) pool_names.push_back(name(k));
      std::vector<std::string> present(pool_names.begin(), pool_names.begin() + static_cast<long>(have));
      for (std::size_t k = 0; k < n; ++k) {
        auto a = pick_atom(rng, pool_names, present);
        pool_names.erase(std::find(pool_names.begin(), pool_names.end(), a));
        rename[name(k)] = "q" + a;
      }
    };
    fill(next.num_inputs, cur.num_inputs, input_placeholder);
    fill(next.num_outputs, cur.num_outputs, output_placeholder);
    auto renamed = ltl::rename_atoms(next.formula, rename);
    std::map<std::string, std::string> unq;
    for (const auto& [from, to] : rename) unq[to] = to.substr(1);
    cur = canonical(ltl::And(cur.formula, ltl::rename_atoms(renamed, unq)), kind);
  }
  return cur;
}

PatternLibrary augment_library(const PatternLibrary& lib, std::uint64_t seed, std::size_t count) {
  PatternLibrary out;
  std::set<std::string> seen;
  auto add = [&](std::vector<Pattern>& into, const Pattern& p) {
    if (seen.insert((p.kind == PatternKind::Assumption ? "A " : "G ") + ltl::to_string(p.formula)).second)
      into.push_back(p);
  };
  for (std::size_t k = 0; k < count && !lib.guarantees.empty(); ++k)
    add(out.guarantees, augment(lib, seed + 2 * k, PatternKind::Guarantee));
  for (std::size_t k = 0; k < count / 4 && !lib.assumptions.empty(); ++k)
    add(out.assumptions, augment(lib, seed + 2 * k + 1, PatternKind::Assumption));
  return out;
}

std::vector<DatasetSample> filter_circuits(const std::vector<DatasetSample>& samples) {
  std::vector<std::pair<const DatasetSample*, std::size_t>> kept;
  for (const auto& s : samples) {
    auto st = aiger::stats(aiger::parse_aag(s.circuit));
    if (st.max_var <= kMaxCircuitVar) kept.emplace_back(&s, st.num_ands);
  }
  const auto cap = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(kBucketShare * kept.size())));
  std::map<std::size_t, std::size_t> bucket;
  std::vector<DatasetSample> out;
  for (const auto& [s, ands] : kept)
    if (bucket[ands] < cap) {
      ++bucket[ands];
      out.push_back(*s);
    }
  return out;
}

DatasetStats dataset_stats(const std::vector<DatasetSample>& samples) {
  DatasetStats st;
  double props = 0, size = 0;
  for (const auto& s : samples) {
    ++st.samples;
    if (s.realizable) ++st.realizable;
    ++st.num_aps[s.spec.inputs.size() + s.spec.outputs.size()];
    auto c = aiger::stats(aiger::parse_aag(s.circuit));
    ++st.max_var[c.max_var];
    ++st.num_latches[c.num_latches];
    std::size_t n = 0, total = 0;
    for (const auto* part : {&s.spec.assumptions, &s.spec.guarantees})
      for (const auto& f : *part) {
        ++n;
        total += ltl::ast_size(f);
      }
    props += static_cast<double>(n);
    size += static_cast<double>(total);
    ++st.mean_property_size[n ? static_cast<std::size_t>(std::lround(double(total) / double(n))) : 0];
  }
  if (st.samples) st.mean_properties = props / double(st.samples);
  if (props > 0) st.mean_size = size / props;
  return st;
}

void write_stats_csv(const DatasetStats& s, std::ostream& out) {
  out << "metric,value,count\n";
  out << "samples,," << s.samples << "\n";
  out << "realizable,," << s.realizable << "\n";
  out << "unrealizable,," << (s.samples - s.realizable) << "\n";
  auto hist = [&](const char* name, const auto& h) {
    for (const auto& [v, n] : h) out << name << "," << v << "," << n << "\n";
  };
  hist("num_aps", s.num_aps);
  hist("max_var", s.max_var);
  hist("num_latches", s.num_latches);
  hist("mean_property_size", s.mean_property_size);
}

void write_stats_text(const DatasetStats& s, std::ostream& out) {
  out << "samples: " << s.samples << " (" << s.realizable << " realizable, " << (s.samples - s.realizable)
      << " unrealizable)\n";
  out << std::fixed << std::setprecision(2) << "properties per spec: " << s.mean_properties
      << "\nproperty size: " << s.mean_size << "\n";
  auto hist = [&](const char* name, const auto& h) {
    out << name << ":";
    for (const auto& [v, n] : h) out << " " << v << "x" << n;
    out << "\n";
  };
  hist("atomic propositions", s.num_aps);
  hist("max variable index", s.max_var);
  hist("latches", s.num_latches);
}

std::vector<DatasetSample> generate(const PatternLibrary& lib, std::uint64_t seed, const Oracle& oracle,
                                    const GenerateOptions& opts) {
  std::vector<DatasetSample> out;
  std::uint64_t s = seed;
  std::size_t failures = 0;
  while (out.size() < opts.count) {
    const bool target = out.size() % 2 == 0;
    try {
      out.push_back(assemble(lib, s++, oracle, target, opts.assemble));
      failures = 0;
    } catch (const GenerationExhausted&) {
      if (++failures >= opts.max_failures)
        throw GenerationExhausted("no " + std::string(target ? "realizable" : "unrealizable") + " sample after " +
                                  std::to_string(failures) + " seeds");
    }
  }
  return out;
}

std::vector<ltl::DecompSpec> load_corpus(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<ltl::DecompSpec> out;
  for (const auto& f : files) out.push_back(load_spec_file(f));
  return out;
}

void write_jsonl(const std::vector<DatasetSample>& samples, std::ostream& out) {
  for (const auto& s : samples) {
    nlohmann::json j{{"spec", spec_to_json(s.spec)}, {"circuit", s.circuit}, {"realizable", s.realizable}};
    out << j.dump() << "\n";
  }
}

std::vector<DatasetSample> read_jsonl(std::istream& in) {
  std::vector<DatasetSample> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line);
    out.push_back({spec_from_json(j.at("spec")), j.at("circuit").get<std::string>(), j.at("realizable").get<bool>()});
  }
  return out;
}

}  // namespace neurosynt::datagen
