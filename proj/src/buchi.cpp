#include "neurosynt/buchi.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <bitset>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace neurosynt::mc {

namespace {

using ltl::Formula;
using ltl::Op;

// NNF subformulas interned bottom-up, so operands always have smaller ids.
struct Sub {
  Op op;
  int a = -1;
  int b = -1;
  int atom = -1;
};

class Closure {
 public:
  explicit Closure(const std::vector<std::string>& alphabet) {
    for (std::size_t k = 0; k < alphabet.size(); ++k) atom_bit_.emplace(alphabet[k], static_cast<int>(k));
  }

  int intern(const Formula& f) {
    Sub s{f.op()};
    if (f.op() == Op::Atom) {
      auto it = atom_bit_.find(f.name());
      if (it == atom_bit_.end()) throw std::invalid_argument("atom '" + f.name() + "' missing from alphabet");
      s.atom = it->second;
    } else if (ltl::is_unary(f.op())) {
      s.a = intern(f.lhs());
    } else if (ltl::is_binary(f.op())) {
      s.a = intern(f.lhs());
      s.b = intern(f.rhs());
    }
    auto key = std::make_tuple(static_cast<int>(s.op), s.a, s.b, s.atom);
    auto [it, fresh] = ids_.emplace(key, static_cast<int>(subs_.size()));
    if (fresh) subs_.push_back(s);
    return it->second;
  }

  const Sub& operator[](int id) const { return subs_[id]; }
  std::size_t size() const { return subs_.size(); }

  bool is_literal(int id) const {
    const Sub& s = subs_[id];
    return s.op == Op::True || s.op == Op::False || s.op == Op::Atom || s.op == Op::Not;
  }

  // Id of the complementary literal if it was interned, else -1.
  int complement(int id) const {
    const Sub& s = subs_[id];
    std::tuple<int, int, int, int> key;
    if (s.op == Op::Atom) key = {static_cast<int>(Op::Not), id, -1, -1};
    else if (s.op == Op::Not) key = {static_cast<int>(Op::Atom), -1, -1, subs_[s.a].atom};
    else return -1;
    auto it = ids_.find(key);
    return it == ids_.end() ? -1 : it->second;
  }

 private:
  std::unordered_map<std::string, int> atom_bit_;
  std::map<std::tuple<int, int, int, int>, int> ids_;
  std::vector<Sub> subs_;
};

using IdSet = std::set<int>;

struct TableauNode {
  std::vector<int> incoming;  // -1 is the pre-initial node
  IdSet fresh;                // formulas still to process ("New")
  IdSet old;
  IdSet next;
};

struct GeneralizedAutomaton {
  std::vector<IdSet> old;
  std::vector<std::vector<int>> incoming;
};

GeneralizedAutomaton expand(const Closure& cl, int root, const Deadline& deadline) {
  GeneralizedAutomaton out;
  std::map<std::pair<IdSet, IdSet>, int> index;
  std::vector<TableauNode> work;
  work.push_back({{-1}, {root}, {}, {}});

  std::size_t steps = 0;
  while (!work.empty()) {
    if ((++steps & 255U) == 0 && deadline.expired()) throw TranslationTimeout();
    TableauNode node = std::move(work.back());
    work.pop_back();

    if (node.fresh.empty()) {
      auto key = std::make_pair(node.old, node.next);
      auto it = index.find(key);
      if (it != index.end()) {
        auto& inc = out.incoming[it->second];
        for (int p : node.incoming)
          if (std::find(inc.begin(), inc.end(), p) == inc.end()) inc.push_back(p);
        continue;
      }
      int id = static_cast<int>(out.old.size());
      index.emplace(std::move(key), id);
      out.old.push_back(node.old);
      out.incoming.push_back(node.incoming);
      work.push_back({{id}, node.next, {}, {}});
      continue;
    }

    int eta = *node.fresh.begin();
    node.fresh.erase(node.fresh.begin());
    if (node.old.count(eta)) {
      work.push_back(std::move(node));
      continue;
    }
    const Sub& s = cl[eta];
    auto add_fresh = [&](TableauNode& n, int f) {
      if (!n.old.count(f)) n.fresh.insert(f);
    };

    if (cl.is_literal(eta)) {
      if (s.op == Op::False) continue;
      int comp = cl.complement(eta);
      if (comp >= 0 && node.old.count(comp)) continue;
      node.old.insert(eta);
      work.push_back(std::move(node));
      continue;
    }
    switch (s.op) {
      case Op::And:
        node.old.insert(eta);
        add_fresh(node, s.a);
        add_fresh(node, s.b);
        work.push_back(std::move(node));
        break;
      case Op::Next:
        node.old.insert(eta);
        node.next.insert(s.a);
        work.push_back(std::move(node));
        break;
      case Op::Or:
      case Op::Until:
      case Op::Release: {
        TableauNode first = node, second = std::move(node);
        first.old.insert(eta);
        second.old.insert(eta);
        if (s.op == Op::Or) {
          add_fresh(first, s.a);
          add_fresh(second, s.b);
        } else if (s.op == Op::Until) {
          add_fresh(first, s.a);
          first.next.insert(eta);
          add_fresh(second, s.b);
        } else {
          add_fresh(first, s.b);
          first.next.insert(eta);
          add_fresh(second, s.a);
          add_fresh(second, s.b);
        }
        // Pushed so that `first` is expanded first.
        work.push_back(std::move(second));
        work.push_back(std::move(first));
        break;
      }
      default:
        throw std::logic_error("formula is not in negation normal form");
    }
  }
  return out;
}

// Tarjan's SCC, iterative. Returns component id per vertex.
std::vector<int> strongly_connected(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int counter = 0, ncomp = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto [v, i] = call.back();
      if (i < adj[v].size()) {
        call.back().second++;
        int w = adj[v][i];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[v]);
      if (low[v] == index[v]) {
        for (;;) {
          int w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
          if (w == v) break;
        }
        ++ncomp;
      }
    }
  }
  return comp;
}

// Drops states from which no accepting cycle is reachable, then merges states
// with equal acceptance and equal outgoing edges until nothing changes, and
// renumbers in breadth-first order from the initial edges.
BuchiAutomaton reduce(BuchiAutomaton a) {
  const int n = static_cast<int>(a.num_states());
  std::vector<std::vector<int>> adj(n);
  for (int q = 0; q < n; ++q)
    for (const auto& e : a.edges[q]) adj[q].push_back(e.to);
  auto comp = strongly_connected(adj);
  int ncomp = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<char> good_comp(ncomp, 0);
  for (int q = 0; q < n; ++q) {
    if (!a.accepting[q]) continue;
    for (int w : adj[q])
      if (comp[w] == comp[q]) good_comp[comp[q]] = 1;
  }
  // Live = can reach a good component (backward closure).
  std::vector<std::vector<int>> radj(n);
  for (int q = 0; q < n; ++q)
    for (int w : adj[q]) radj[w].push_back(q);
  std::vector<char> live(n, 0);
  std::deque<int> queue;
  for (int q = 0; q < n; ++q)
    if (good_comp[comp[q]]) live[q] = 1, queue.push_back(q);
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int p : radj[q])
      if (!live[p]) live[p] = 1, queue.push_back(p);
  }

  std::vector<int> rep(n);
  for (int q = 0; q < n; ++q) rep[q] = q;
  for (;;) {
    std::map<std::pair<bool, std::vector<BuchiAutomaton::Edge>>, int> sig_class;
    std::vector<int> next_rep(n, -1);
    for (int q = 0; q < n; ++q) {
      if (!live[q]) continue;
      std::vector<BuchiAutomaton::Edge> out;
      for (const auto& e : a.edges[q])
        if (live[e.to]) out.push_back({e.guard, rep[e.to]});
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      auto [it, fresh] = sig_class.emplace(std::make_pair(static_cast<bool>(a.accepting[q]), std::move(out)), q);
      next_rep[q] = it->second;
    }
    bool changed = false;
    for (int q = 0; q < n; ++q)
      if (live[q] && next_rep[q] != rep[q]) changed = true;
    for (int q = 0; q < n; ++q)
      if (live[q]) rep[q] = next_rep[q];
    if (!changed) break;
  }

  BuchiAutomaton out;
  out.alphabet = a.alphabet;
  std::vector<int> renum(n, -1);
  std::deque<int> order;
  auto visit = [&](int q) {
    int r = rep[q];
    if (renum[r] < 0) {
      renum[r] = static_cast<int>(out.edges.size());
      out.edges.emplace_back();
      out.accepting.push_back(a.accepting[r]);
      order.push_back(r);
    }
    return renum[r];
  };
  auto remap = [&](const std::vector<BuchiAutomaton::Edge>& edges) {
    std::vector<BuchiAutomaton::Edge> res;
    for (const auto& e : edges)
      if (live[e.to]) {
        BuchiAutomaton::Edge m{e.guard, visit(e.to)};
        if (std::find(res.begin(), res.end(), m) == res.end()) res.push_back(m);
      }
    return res;
  };
  out.initial = remap(a.initial);
  while (!order.empty()) {
    int r = order.front();
    order.pop_front();
    auto edges = remap(a.edges[r]);
    out.edges[renum[r]] = std::move(edges);
  }
  return out;
}

// Bitset search over the product with a lasso of at most N vertices: some
// reachable accepting vertex reaches itself again.
template <std::size_t N>
bool small_lasso_accepts(const BuchiAutomaton& a, const ltl::LetterLasso& word) {
  using Set = std::bitset<N>;
  const int n = static_cast<int>(word.prefix.size() + word.cycle.size());
  const int loop = static_cast<int>(word.prefix.size());
  auto letter = [&](int i) { return i < loop ? word.prefix[i] : word.cycle[i - loop]; };
  auto succ = [&](int i) { return i + 1 < n ? i + 1 : loop; };
  const int size = static_cast<int>(a.num_states()) * n;
  std::array<Set, N> post{};
  for (int q = 0; q < static_cast<int>(a.num_states()); ++q)
    for (int i = 0; i < n; ++i)
      for (const auto& e : a.edges[q])
        if (e.guard.matches(letter(i))) post[q * n + i].set(e.to * n + succ(i));
  auto closure = [&](Set frontier) {
    Set seen = frontier;
    while (frontier.any()) {
      Set next;
      for (int v = 0; v < size; ++v)
        if (frontier[v]) next |= post[v];
      frontier = next & ~seen;
      seen |= next;
    }
    return seen;
  };
  Set start;
  for (const auto& e : a.initial)
    if (e.guard.matches(letter(0))) start.set(e.to * n + succ(0));
  const Set reach = closure(start);
  for (int v = 0; v < size; ++v)
    if (reach[v] && a.accepting[v / n] && post[v].any() && closure(post[v])[v]) return true;
  return false;
}

// The same search with one machine word per vertex set.
bool tiny_lasso_accepts(const BuchiAutomaton& a, const ltl::LetterLasso& word) {
  const int n = static_cast<int>(word.prefix.size() + word.cycle.size());
  const int loop = static_cast<int>(word.prefix.size());
  auto letter = [&](int i) { return i < loop ? word.prefix[i] : word.cycle[i - loop]; };
  auto succ = [&](int i) { return i + 1 < n ? i + 1 : loop; };
  std::uint64_t post[64];
  std::uint64_t acc = 0;
  for (int q = 0; q < static_cast<int>(a.num_states()); ++q)
    for (int i = 0; i < n; ++i) {
      std::uint64_t m = 0;
      for (const auto& e : a.edges[q])
        if (e.guard.matches(letter(i))) m |= std::uint64_t{1} << (e.to * n + succ(i));
      post[q * n + i] = m;
      if (a.accepting[q]) acc |= std::uint64_t{1} << (q * n + i);
    }
  auto closure = [&](std::uint64_t frontier) {
    std::uint64_t seen = frontier;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t b = frontier; b; b &= b - 1) next |= post[std::countr_zero(b)];
      frontier = next & ~seen;
      seen |= next;
    }
    return seen;
  };
  std::uint64_t start = 0;
  for (const auto& e : a.initial)
    if (e.guard.matches(letter(0))) start |= std::uint64_t{1} << (e.to * n + succ(0));
  for (std::uint64_t b = closure(start) & acc; b; b &= b - 1) {
    const int v = std::countr_zero(b);
    if ((closure(post[v]) >> v) & 1U) return true;
  }
  return false;
}

}  // namespace

BuchiAutomaton ltl_to_buchi(const ltl::Formula& f, std::vector<std::string> alphabet, const Deadline& deadline) {
  if (alphabet.empty()) alphabet = ltl::atoms(f);
  if (alphabet.size() > 64) throw std::invalid_argument("automata support at most 64 atoms");
  Closure cl(alphabet);
  const int root = cl.intern(ltl::to_nnf(f));
  GeneralizedAutomaton gen = expand(cl, root, deadline);
  const int nodes = static_cast<int>(gen.old.size());

  std::vector<Cube> label(nodes);
  for (int q = 0; q < nodes; ++q)
    for (int id : gen.old[q]) {
      const Sub& s = cl[id];
      if (s.op == Op::Atom) label[q].pos |= std::uint64_t{1} << s.atom;
      if (s.op == Op::Not) label[q].neg |= std::uint64_t{1} << cl[s.a].atom;
    }
  std::vector<std::vector<int>> succ(nodes);
  std::vector<int> init;
  for (int q = 0; q < nodes; ++q)
    for (int p : gen.incoming[q]) (p < 0 ? init : succ[p]).push_back(q);

  std::vector<int> untils;
  for (std::size_t id = 0; id < cl.size(); ++id)
    if (cl[static_cast<int>(id)].op == Op::Until) untils.push_back(static_cast<int>(id));
  const int k = static_cast<int>(untils.size());
  auto in_set = [&](int q, int j) {
    const Sub& u = cl[untils[j]];
    return !gen.old[q].count(untils[j]) || gen.old[q].count(u.b);
  };

  // Degeneralize: state (q, i) waits for acceptance set i.
  BuchiAutomaton raw;
  raw.alphabet = alphabet;
  const int levels = std::max(k, 1);
  std::map<std::pair<int, int>, int> ids;
  std::deque<std::pair<int, int>> queue;
  auto state = [&](int q, int i) {
    auto [it, fresh] = ids.emplace(std::make_pair(q, i), static_cast<int>(raw.edges.size()));
    if (fresh) {
      raw.edges.emplace_back();
      raw.accepting.push_back(k == 0 || (i == 0 && in_set(q, 0)));
      queue.push_back({q, i});
    }
    return it->second;
  };
  for (int q : init) raw.initial.push_back({label[q], state(q, 0)});
  std::size_t steps = 0;
  while (!queue.empty()) {
    if ((++steps & 255U) == 0 && deadline.expired()) throw TranslationTimeout();
    auto [q, i] = queue.front();
    queue.pop_front();
    int from = ids.at({q, i});
    int j = (k > 0 && in_set(q, i)) ? (i + 1) % levels : i;
    for (int t : succ[q]) {
      int to = state(t, j);
      raw.edges[from].push_back({label[t], to});
    }
  }
  return reduce(std::move(raw));
}

bool BuchiAutomaton::accepts(const ltl::LetterLasso& word) const {
  if (word.cycle.empty()) throw std::invalid_argument("lasso cycle must be non-empty");
  const int n = static_cast<int>(word.prefix.size() + word.cycle.size());
  const int loop = static_cast<int>(word.prefix.size());
  auto letter = [&](int i) { return i < loop ? word.prefix[i] : word.cycle[i - loop]; };
  auto succ = [&](int i) { return i + 1 < n ? i + 1 : loop; };
  const int states = static_cast<int>(num_states());
  // Product vertex q * n + i: in state q, about to read letter i.
  auto vid = [&](int q, int i) { return q * n + i; };

  if (states * n <= 64) return tiny_lasso_accepts(*this, word);
  if (states * n <= 512) return small_lasso_accepts<512>(*this, word);
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(states) * n);
  for (int q = 0; q < states; ++q)
    for (int i = 0; i < n; ++i)
      for (const auto& e : edges[q])
        if (e.guard.matches(letter(i))) adj[vid(q, i)].push_back(vid(e.to, succ(i)));
  std::vector<char> reach(adj.size(), 0);
  std::deque<int> queue;
  for (const auto& e : initial)
    if (e.guard.matches(letter(0))) {
      int v = vid(e.to, succ(0));
      if (!reach[v]) reach[v] = 1, queue.push_back(v);
    }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v])
      if (!reach[w]) reach[w] = 1, queue.push_back(w);
  }
  auto comp = strongly_connected(adj);
  for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
    if (!reach[v] || !accepting[v / n]) continue;
    for (int w : adj[v])
      if (comp[w] == comp[v]) return true;
  }
  return false;
}

}  // namespace neurosynt::mc
