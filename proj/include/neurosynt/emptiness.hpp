#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "neurosynt/deadline.hpp"
#include "neurosynt/ltl.hpp"

namespace neurosynt::mc {

struct Successor {
  int to;
  std::uint64_t letter;
};

/// Result of an accepting-lasso search over an implicitly given graph.
struct LassoSearch {
  std::optional<ltl::LetterLasso> lasso;
  bool timed_out = false;
};

/// Nested depth-first search for a reachable accepting cycle. `Graph` exposes
///   int initial();
///   void expand(int v, std::vector<Successor>& out);   // fixed order
///   bool accepting(int v);
/// Vertex ids are dense and handed out by the graph. Successor lists are
/// requested once per vertex. The initial vertex is a pre-initial position:
/// letters on edges are the word, starting with the edge leaving it.
template <class Graph>
LassoSearch find_accepting_lasso(Graph& g, const Deadline& deadline) {
  LassoSearch result;
  if (deadline.expired()) {
    result.timed_out = true;
    return result;
  }
  std::vector<std::vector<Successor>> cache;
  std::vector<char> expanded, outer, on_stack, inner;
  auto grow = [&](int v) {
    if (static_cast<std::size_t>(v) >= cache.size()) {
      std::size_t n = static_cast<std::size_t>(v) + 1;
      cache.resize(n);
      expanded.resize(n, 0);
      outer.resize(n, 0);
      on_stack.resize(n, 0);
      inner.resize(n, 0);
    }
  };
  auto succ = [&](int v) -> const std::vector<Successor>& {
    grow(v);
    if (!expanded[v]) {
      std::vector<Successor> out;
      g.expand(v, out);
      for (const auto& s : out) grow(s.to);
      cache[v] = std::move(out);
      expanded[v] = 1;
    }
    return cache[v];
  };

  struct Frame {
    int v;
    std::size_t next = 0;
    std::uint64_t letter = 0;  // letter on the edge into v
  };
  std::vector<Frame> stack;
  std::size_t work = 0;
  auto tick = [&] {
    if ((++work & 1023U) == 0 && deadline.expired()) {
      result.timed_out = true;
      return false;
    }
    return true;
  };

  const int init = g.initial();
  grow(init);
  outer[init] = on_stack[init] = 1;
  stack.push_back({init});

  while (!stack.empty()) {
    if (!tick()) return result;
    Frame& top = stack.back();
    const auto& out = succ(top.v);
    if (top.next < out.size()) {
      Successor s = out[top.next++];
      if (!outer[s.to]) {
        outer[s.to] = on_stack[s.to] = 1;
        stack.push_back({s.to, 0, s.letter});
      }
      continue;
    }
    const int seed = top.v;
    if (g.accepting(seed)) {
      // Inner search for any vertex on the outer stack.
      struct InnerFrame {
        int v;
        std::size_t next = 0;
        std::uint64_t letter = 0;
      };
      std::vector<InnerFrame> path{{seed}};
      int target = -1;
      std::uint64_t closing = 0;
      while (!path.empty() && target < 0) {
        if (!tick()) return result;
        InnerFrame& f = path.back();
        const auto& next = succ(f.v);
        if (f.next >= next.size()) {
          path.pop_back();
          continue;
        }
        Successor s = next[f.next++];
        if (on_stack[s.to]) {
          target = s.to;
          closing = s.letter;
        } else if (!inner[s.to]) {
          inner[s.to] = 1;
          path.push_back({s.to, 0, s.letter});
        }
      }
      if (target >= 0) {
        ltl::LetterLasso lasso;
        std::size_t j = 0;
        while (stack[j].v != target) ++j;
        for (std::size_t k = 1; k <= j; ++k) lasso.prefix.push_back(stack[k].letter);
        for (std::size_t k = j + 1; k < stack.size(); ++k) lasso.cycle.push_back(stack[k].letter);
        for (std::size_t k = 1; k < path.size(); ++k) lasso.cycle.push_back(path[k].letter);
        lasso.cycle.push_back(closing);
        result.lasso = std::move(lasso);
        return result;
      }
    }
    on_stack[seed] = 0;
    stack.pop_back();
  }
  return result;
}

}  // namespace neurosynt::mc
