#pragma once

#include <algorithm>
#include <chrono>
#include <stop_token>

namespace neurosynt {

using Clock = std::chrono::steady_clock;
using Seconds = std::chrono::duration<double>;

/// Time budget plus an optional cooperative cancellation signal.
class Deadline {
 public:
  Deadline() : at_(Clock::time_point::max()) {}
  explicit Deadline(Clock::time_point at, std::stop_token stop = {}) : at_(at), stop_(std::move(stop)) {}

  static Deadline never(std::stop_token stop = {}) { return Deadline(Clock::time_point::max(), std::move(stop)); }
  static Deadline after(Seconds budget, std::stop_token stop = {}) {
    if (budget.count() <= 0) return Deadline(Clock::time_point::min(), std::move(stop));
    // Saturate instead of overflowing on huge budgets.
    if (budget > std::chrono::hours(24 * 365)) return never(std::move(stop));
    return Deadline(Clock::now() + std::chrono::duration_cast<Clock::duration>(budget), std::move(stop));
  }

  bool cancelled() const { return stop_.stop_requested(); }
  bool expired() const { return cancelled() || Clock::now() >= at_; }
  bool unbounded() const { return at_ == Clock::time_point::max(); }
  Clock::time_point at() const { return at_; }
  const std::stop_token& stop_token() const { return stop_; }

  /// Remaining budget, clamped at zero. Huge for unbounded deadlines.
  Seconds remaining() const {
    if (unbounded()) return Seconds(1e9);
    auto now = Clock::now();
    return now >= at_ ? Seconds(0) : std::chrono::duration_cast<Seconds>(at_ - now);
  }

  /// The earlier of the two deadlines, keeping this one's stop token.
  Deadline min(Clock::time_point other) const { return Deadline(std::min(at_, other), stop_); }

 private:
  Clock::time_point at_;
  std::stop_token stop_;
};

}  // namespace neurosynt
