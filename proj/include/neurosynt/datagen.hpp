#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "neurosynt/ltl.hpp"
#include "neurosynt/portfolio.hpp"
#include "neurosynt/solution.hpp"

namespace neurosynt::datagen {

enum class PatternKind { Assumption, Guarantee };

/// Formula over placeholders `p_in_k` (spec inputs) and `p_out_k` (spec
/// outputs), numbered per role in first-occurrence order.
struct Pattern {
  PatternKind kind = PatternKind::Guarantee;
  ltl::Formula formula;
  std::size_t num_inputs = 0;
  std::size_t num_outputs = 0;

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

std::string input_placeholder(std::size_t k);
std::string output_placeholder(std::size_t k);

struct MiningReport {
  std::size_t seen = 0;
  std::size_t too_many_atoms = 0;
  std::size_t too_large = 0;
  std::size_t duplicates = 0;
};

struct PatternLibrary {
  std::vector<Pattern> assumptions;
  std::vector<Pattern> guarantees;
  MiningReport report;

  bool empty() const { return assumptions.empty() && guarantees.empty(); }
};

inline constexpr std::size_t kMaxRoleAtoms = 15;
inline constexpr std::size_t kMaxPropertySize = 30;
inline constexpr std::size_t kMaxGuarantees = 10;
inline constexpr std::size_t kMaxAssumptions = 3;
inline constexpr std::size_t kAssumptionAttempts = 7;
inline constexpr double kAtomBias = 4.0;

/// Rewrites one property of `spec` into a pattern.
Pattern make_pattern(const ltl::Formula& f, const ltl::DecompSpec& spec, PatternKind kind);

/// Patterns of every assumption and guarantee, skipping formulas with more
/// than 15 distinct inputs or outputs or an AST larger than 30, and dropping
/// structural duplicates.
PatternLibrary mine_patterns(const std::vector<ltl::DecompSpec>& corpus);

/// Picks one of `candidates`; each already present in `present` weighs
/// kAtomBias, every other weighs 1. `candidates` must be non-empty.
std::string pick_atom(std::mt19937_64& rng, const std::vector<std::string>& candidates,
                      const std::vector<std::string>& present);

/// Labels a specification. Realizable/unrealizable answers must carry the
/// witness circuit.
using Oracle = std::function<SynSolution(const ltl::DecompSpec&)>;

Oracle bounded_synth_oracle(Seconds timeout = Seconds(5), std::size_t max_states = 3);
/// Any solver client, e.g. a wire-protocol service. Set up on creation;
/// throws OracleUnavailable when that fails.
Oracle solver_oracle(std::shared_ptr<orch::SolverClient> solver, Seconds timeout = Seconds(5));

class OracleUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class GenerationExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DatasetSample {
  ltl::DecompSpec spec;
  std::string circuit;
  bool realizable = true;

  friend bool operator==(const DatasetSample&, const DatasetSample&) = default;
};

struct AssembleOptions {
  /// Atom universe: inputs i_0.., outputs o_0..
  std::size_t max_inputs = 5;
  std::size_t max_outputs = 5;
  ltl::Semantics semantics = ltl::Semantics::Mealy;
  /// Re-check every oracle verdict with the model checker; a failed check
  /// ends the run like an oracle timeout.
  bool verify = true;
};

/// Why the alternation stopped.
enum class StopReason { MaxGuarantees, MaxAssumptions, OracleGaveUp, NoSuitableAssumption, NoPatterns };

struct AssembleTrace {
  StopReason reason = StopReason::NoPatterns;
  std::size_t oracle_calls = 0;
  std::size_t guarantee_draws = 0;
};

/// Alternates between adding guarantees until the spec turns unrealizable
/// and adding assumptions until it turns realizable again, then returns the
/// last realizable or the last unrealizable spec seen, with its witness.
/// Stops after 10 guarantees, 3 assumptions, an oracle failure or timeout,
/// or 7 assumption draws in a row that do not restore realizability. A
/// guarantee draw repeating a present property counts towards the same 7.
/// Throws GenerationExhausted when no spec with the target label was seen.
DatasetSample assemble(const PatternLibrary& lib, std::uint64_t seed, const Oracle& oracle, bool target_realizable,
                       const AssembleOptions& opts = {}, AssembleTrace* trace = nullptr);

/// Instantiates a pattern over the atom universe with the bias rule; each
/// placeholder gets a distinct atom.
ltl::Formula instantiate(const Pattern& p, std::mt19937_64& rng, const ltl::DecompSpec& partial,
                         const AssembleOptions& opts);

/// Conjoins randomly drawn patterns of `kind` into one pattern: stops at AST
/// size 30 or when the next conjunct would push it past 30. Placeholders of
/// each new conjunct reuse existing ones under the bias rule.
Pattern augment(const PatternLibrary& lib, std::uint64_t seed, PatternKind kind);
/// Library of `count` fused guarantees and `count / 4` fused assumptions.
PatternLibrary augment_library(const PatternLibrary& lib, std::uint64_t seed, std::size_t count);

inline constexpr std::uint32_t kMaxCircuitVar = 60;
inline constexpr double kBucketShare = 0.2;

/// Drops circuits with max_var > 60, then admits samples in stream order
/// while their AND-count bucket holds fewer than max(1, floor(0.2 * n))
/// samples, n being the number of survivors of the first step.
std::vector<DatasetSample> filter_circuits(const std::vector<DatasetSample>& samples);

struct DatasetStats {
  std::size_t samples = 0;
  std::size_t realizable = 0;
  std::map<std::size_t, std::size_t> num_aps;
  std::map<std::uint32_t, std::size_t> max_var;
  std::map<std::size_t, std::size_t> num_latches;
  /// Mean property AST size per sample, rounded to the nearest integer.
  std::map<std::size_t, std::size_t> mean_property_size;
  double mean_properties = 0;
  double mean_size = 0;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

DatasetStats dataset_stats(const std::vector<DatasetSample>& samples);
/// `metric,value,count` rows.
void write_stats_csv(const DatasetStats& s, std::ostream& out);
void write_stats_text(const DatasetStats& s, std::ostream& out);

struct GenerateOptions {
  std::size_t count = 100;
  AssembleOptions assemble;
  /// Give up on a target after this many consecutive seeds without a sample.
  std::size_t max_failures = 50;
};

/// Alternates realizable and unrealizable targets for an even split; seeds
/// are consecutive from `seed`.
std::vector<DatasetSample> generate(const PatternLibrary& lib, std::uint64_t seed, const Oracle& oracle,
                                    const GenerateOptions& opts);

std::vector<ltl::DecompSpec> load_corpus(const std::filesystem::path& dir);
void write_jsonl(const std::vector<DatasetSample>& samples, std::ostream& out);
std::vector<DatasetSample> read_jsonl(std::istream& in);

}  // namespace neurosynt::datagen
