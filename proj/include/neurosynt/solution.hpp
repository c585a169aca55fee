#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "neurosynt/deadline.hpp"

namespace neurosynt {

enum class SynStatus { Realizable, Unrealizable, Error, Timeout, Nonsuccess };

std::string_view to_string(SynStatus s);
/// Inverse of to_string; throws std::invalid_argument on unknown names.
SynStatus parse_syn_status(std::string_view s);

/// Answer of a synthesis tool. `circuit` is AIGER text: a system
/// implementation when realizable, an environment counter-strategy otherwise.
struct SynSolution {
  SynStatus status = SynStatus::Error;
  std::optional<std::string> circuit;
  std::optional<bool> realizable;
  std::string detailed_status;
  std::string tool;
  std::optional<Seconds> time;

  friend bool operator==(const SynSolution&, const SynSolution&) = default;
};

}  // namespace neurosynt
