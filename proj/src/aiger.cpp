#include "neurosynt/aiger.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace neurosynt::aiger {

std::optional<std::string> Circuit::symbol(char kind, std::size_t index) const {
  for (const auto& s : symbols)
    if (s.kind == kind && s.index == index) return s.name;
  return std::nullopt;
}

namespace {

std::optional<std::vector<std::string>> names_of(const Circuit& c, char kind, std::size_t count) {
  std::vector<std::string> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    auto name = c.symbol(kind, k);
    if (!name) return std::nullopt;
    out.push_back(*name);
  }
  return out;
}

}  // namespace

std::optional<std::vector<std::string>> Circuit::input_names() const { return names_of(*this, 'i', inputs.size()); }
std::optional<std::vector<std::string>> Circuit::output_names() const { return names_of(*this, 'o', outputs.size()); }

// ---------------------------------------------------------------------------

namespace {

using Kind = AigerError::Kind;

[[noreturn]] void fail(Kind kind, std::size_t line, const std::string& msg) {
  throw AigerError(kind, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::uint32_t number(std::string_view tok, std::size_t line) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    fail(Kind::Malformed, line, "expected an unsigned integer, found '" + std::string(tok) + "'");
  return v;
}

}  // namespace

void validate(const Circuit& c) {
  const std::size_t defined_count = c.inputs.size() + c.latches.size() + c.ands.size();
  if (c.max_var < defined_count)
    throw AigerError(Kind::HeaderMismatch, "maximal variable index " + std::to_string(c.max_var) +
                                               " is smaller than I + L + A = " + std::to_string(defined_count));
  std::vector<char> defined(c.max_var + 1, 0);
  auto check_range = [&](Literal lit) {
    if (var_of(lit) > c.max_var)
      throw AigerError(Kind::VariableOutOfRange,
                       "literal " + std::to_string(lit) + " exceeds maximal variable index " + std::to_string(c.max_var));
  };
  auto define = [&](Literal lit, const char* what) {
    check_range(lit);
    if (is_negated(lit))
      throw AigerError(Kind::OddDefinitionLiteral, std::string(what) + " literal " + std::to_string(lit) + " is odd");
    if (lit == 0) throw AigerError(Kind::Malformed, std::string(what) + " cannot define the constant literal 0");
    if (defined[var_of(lit)]++)
      throw AigerError(Kind::DuplicateVariable, "variable " + std::to_string(var_of(lit)) + " is defined twice");
  };
  for (Literal lit : c.inputs) define(lit, "input");
  for (const auto& l : c.latches) define(l.lit, "latch");
  for (const auto& a : c.ands) define(a.lhs, "AND");

  auto check_use = [&](Literal lit) {
    check_range(lit);
    if (var_of(lit) != 0 && !defined[var_of(lit)])
      throw AigerError(Kind::UndefinedLiteral, "literal " + std::to_string(lit) + " refers to an undefined variable");
  };
  for (const auto& l : c.latches) check_use(l.next);
  for (Literal lit : c.outputs) check_use(lit);
  for (const auto& a : c.ands) {
    check_use(a.rhs0);
    check_use(a.rhs1);
  }
  for (const auto& s : c.symbols) {
    std::size_t bound = s.kind == 'i' ? c.inputs.size() : s.kind == 'l' ? c.latches.size() : c.outputs.size();
    if ((s.kind != 'i' && s.kind != 'l' && s.kind != 'o') || s.index >= bound)
      throw AigerError(Kind::Malformed, std::string("symbol ") + s.kind + std::to_string(s.index) + " is out of range");
  }
  Simulator check_order(c);  // throws on cycles
}

Circuit parse_aag(std::string_view text) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      start = end + 1;
    }
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
  }
  if (lines.empty()) fail(Kind::Malformed, 1, "empty input");

  auto header = split_ws(lines[0]);
  if (header.empty() || header[0] != "aag") fail(Kind::Malformed, 1, "expected header 'aag M I L O A'");
  if (header.size() != 6) fail(Kind::HeaderMismatch, 1, "header must have exactly five counts");
  Circuit c;
  c.max_var = number(header[1], 1);
  const std::uint32_t ni = number(header[2], 1), nl = number(header[3], 1), no = number(header[4], 1),
                      na = number(header[5], 1);
  const std::size_t body = std::size_t{ni} + nl + no + na;
  if (lines.size() < 1 + body)
    fail(Kind::HeaderMismatch, lines.size(),
         "header declares " + std::to_string(body) + " definition lines but only " + std::to_string(lines.size() - 1) +
             " lines follow");

  std::size_t ln = 1;
  auto fields = [&](std::size_t expected, const char* what) {
    auto toks = split_ws(lines[ln]);
    if (toks.size() != expected) {
      if (std::string_view(what) == "latch" && toks.size() == 3)
        fail(Kind::UnsupportedReset, ln + 1, "latch reset values are not supported");
      fail(Kind::Malformed, ln + 1,
           std::string(what) + " line must have " + std::to_string(expected) + " field(s)");
    }
    std::vector<std::uint32_t> v;
    for (auto t : toks) v.push_back(number(t, ln + 1));
    ++ln;
    return v;
  };
  for (std::uint32_t k = 0; k < ni; ++k) c.inputs.push_back(fields(1, "input")[0]);
  for (std::uint32_t k = 0; k < nl; ++k) {
    auto v = fields(2, "latch");
    c.latches.push_back({v[0], v[1]});
  }
  for (std::uint32_t k = 0; k < no; ++k) c.outputs.push_back(fields(1, "output")[0]);
  for (std::uint32_t k = 0; k < na; ++k) {
    auto v = fields(3, "AND");
    c.ands.push_back({v[0], v[1], v[2]});
  }

  for (; ln < lines.size(); ++ln) {
    std::string_view line = lines[ln];
    if (line == "c") {
      for (++ln; ln < lines.size(); ++ln) c.comments.emplace_back(lines[ln]);
      break;
    }
    if (line.size() < 2 || (line[0] != 'i' && line[0] != 'l' && line[0] != 'o'))
      fail(Kind::Malformed, ln + 1, "unexpected line '" + std::string(line) + "'");
    std::size_t sp = line.find(' ');
    if (sp == std::string_view::npos || sp == 1 || sp + 1 >= line.size())
      fail(Kind::Malformed, ln + 1, "symbol line must look like '<i|l|o><index> <name>'");
    Symbol s{line[0], number(line.substr(1, sp - 1), ln + 1), std::string(line.substr(sp + 1))};
    c.symbols.push_back(std::move(s));
  }

  validate(c);
  return c;
}

std::string serialize_aag(const Circuit& c) {
  std::ostringstream out;
  out << "aag " << c.max_var << ' ' << c.inputs.size() << ' ' << c.latches.size() << ' ' << c.outputs.size() << ' '
      << c.ands.size() << '\n';
  for (Literal lit : c.inputs) out << lit << '\n';
  for (const auto& l : c.latches) out << l.lit << ' ' << l.next << '\n';
  for (Literal lit : c.outputs) out << lit << '\n';
  for (const auto& a : c.ands) out << a.lhs << ' ' << a.rhs0 << ' ' << a.rhs1 << '\n';
  for (const auto& s : c.symbols) out << s.kind << s.index << ' ' << s.name << '\n';
  if (!c.comments.empty()) {
    out << "c\n";
    for (const auto& line : c.comments) out << line << '\n';
  }
  return out.str();
}

Stats stats(const Circuit& c) {
  return Stats{c.latches.size(), c.ands.size(), c.max_var, c.inputs.size(), c.outputs.size()};
}

// ---------------------------------------------------------------------------

Simulator::Simulator(const Circuit& c) : circuit_(c) {
  // Kahn-style ordering: an AND is ready once both operands are inputs,
  // latches, constants, or already ordered ANDs.
  std::vector<long> and_of(c.max_var + 1, -1);
  for (std::size_t k = 0; k < c.ands.size(); ++k)
    if (var_of(c.ands[k].lhs) <= c.max_var) and_of[var_of(c.ands[k].lhs)] = static_cast<long>(k);
  std::vector<char> state(c.ands.size(), 0);  // 0 new, 1 on stack, 2 done
  order_.reserve(c.ands.size());
  for (std::size_t root = 0; root < c.ands.size(); ++root) {
    if (state[root]) continue;
    std::vector<std::pair<std::size_t, int>> stack{{root, 0}};
    state[root] = 1;
    while (!stack.empty()) {
      auto& [k, child] = stack.back();
      if (child < 2) {
        Literal operand = child == 0 ? c.ands[k].rhs0 : c.ands[k].rhs1;
        ++child;
        std::uint32_t v = var_of(operand);
        long dep = v <= c.max_var ? and_of[v] : -1;
        if (dep < 0) continue;
        if (state[dep] == 1)
          throw AigerError(AigerError::Kind::CyclicDefinition,
                           "AND gate " + std::to_string(c.ands[dep].lhs) + " depends on itself");
        if (state[dep] == 0) {
          state[dep] = 1;
          stack.push_back({static_cast<std::size_t>(dep), 0});
        }
        continue;
      }
      state[k] = 2;
      order_.push_back(k);
      stack.pop_back();
    }
  }
}

bool Simulator::packable() const {
  return circuit_.latches.size() <= 64 && circuit_.inputs.size() <= 64 && circuit_.outputs.size() <= 64;
}

namespace {

inline bool value(const std::vector<char>& vals, Literal lit) { return vals[var_of(lit)] ^ is_negated(lit); }

}  // namespace

StepResult Simulator::step(const CircuitState& state, const std::vector<bool>& inputs) const {
  const Circuit& c = circuit_;
  if (inputs.size() != c.inputs.size()) throw std::invalid_argument("input vector has the wrong width");
  if (state.size() != c.latches.size()) throw std::invalid_argument("state vector has the wrong width");
  std::vector<char> vals(c.max_var + 1, 0);
  for (std::size_t k = 0; k < c.inputs.size(); ++k) vals[var_of(c.inputs[k])] = inputs[k];
  for (std::size_t k = 0; k < c.latches.size(); ++k) vals[var_of(c.latches[k].lit)] = state[k];
  for (std::size_t k : order_) {
    const auto& a = c.ands[k];
    vals[var_of(a.lhs)] = value(vals, a.rhs0) && value(vals, a.rhs1);
  }
  StepResult r;
  r.outputs.reserve(c.outputs.size());
  for (Literal lit : c.outputs) r.outputs.push_back(value(vals, lit));
  r.next.reserve(c.latches.size());
  for (const auto& l : c.latches) r.next.push_back(value(vals, l.next));
  return r;
}

std::pair<std::uint64_t, std::uint64_t> Simulator::step_bits(std::uint64_t latches, std::uint64_t inputs) const {
  const Circuit& c = circuit_;
  thread_local std::vector<char> vals;
  vals.assign(c.max_var + 1, 0);
  for (std::size_t k = 0; k < c.inputs.size(); ++k) vals[var_of(c.inputs[k])] = (inputs >> k) & 1U;
  for (std::size_t k = 0; k < c.latches.size(); ++k) vals[var_of(c.latches[k].lit)] = (latches >> k) & 1U;
  for (std::size_t k : order_) {
    const auto& a = c.ands[k];
    vals[var_of(a.lhs)] = value(vals, a.rhs0) && value(vals, a.rhs1);
  }
  std::uint64_t out = 0, next = 0;
  for (std::size_t k = 0; k < c.outputs.size(); ++k)
    if (value(vals, c.outputs[k])) out |= std::uint64_t{1} << k;
  for (std::size_t k = 0; k < c.latches.size(); ++k)
    if (value(vals, c.latches[k].next)) next |= std::uint64_t{1} << k;
  return {out, next};
}

StepResult step(const Circuit& c, const CircuitState& state, const std::vector<bool>& inputs) {
  return Simulator(c).step(state, inputs);
}

}  // namespace neurosynt::aiger
