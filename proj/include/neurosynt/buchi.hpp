#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "neurosynt/deadline.hpp"
#include "neurosynt/ltl.hpp"

namespace neurosynt::mc {

/// Conjunction of literals over the automaton alphabet (bit k = atom k).
struct Cube {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;

  bool matches(std::uint64_t letter) const { return (letter & pos) == pos && (letter & neg) == 0; }
  friend bool operator==(const Cube&, const Cube&) = default;
  friend auto operator<=>(const Cube&, const Cube&) = default;
};

/// Transition-labelled Büchi automaton. A run starts by taking one of the
/// `initial` edges on the first letter; it is accepting when it visits
/// `accepting` states infinitely often.
struct BuchiAutomaton {
  struct Edge {
    Cube guard;
    int to;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  std::vector<std::string> alphabet;
  std::vector<Edge> initial;
  std::vector<std::vector<Edge>> edges;
  std::vector<bool> accepting;

  std::size_t num_states() const { return edges.size(); }
  /// Outgoing edges of `state`; state -1 denotes the pre-initial position.
  std::span<const Edge> successors(int state) const {
    return state < 0 ? std::span<const Edge>(initial) : std::span<const Edge>(edges[state]);
  }

  /// Whether the lasso word (letters over `alphabet`) is accepted.
  bool accepts(const ltl::LetterLasso& word) const;
};

/// Tableau construction: the formula is put into negation normal form,
/// expanded on the fly into a generalized Büchi automaton (one acceptance set
/// per Until), degeneralized with a counter, and reduced by merging states
/// with identical acceptance and outgoing edges. `alphabet` defaults to the
/// formula's atoms and must contain all of them (at most 64). Throws
/// TranslationTimeout when `deadline` passes mid-construction.
BuchiAutomaton ltl_to_buchi(const ltl::Formula& f, std::vector<std::string> alphabet = {},
                            const Deadline& deadline = {});

class TranslationTimeout : public std::runtime_error {
 public:
  TranslationTimeout() : std::runtime_error("budget exhausted during automaton construction") {}
};

}  // namespace neurosynt::mc
