#include "neurosynt/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace neurosynt::ltl {

struct Formula::Node {
  Op op = Op::True;
  std::string name;
  Formula lhs{std::shared_ptr<const Node>()};
  Formula rhs{std::shared_ptr<const Node>()};
};

const std::shared_ptr<const Formula::Node>& Formula::constant_node(bool value) {
  static const std::shared_ptr<const Node> t = [] {
    auto n = std::make_shared<Node>();
    n->op = Op::True;
    return n;
  }();
  static const std::shared_ptr<const Node> f = [] {
    auto n = std::make_shared<Node>();
    n->op = Op::False;
    return n;
  }();
  return value ? t : f;
}

bool is_unary(Op op) {
  switch (op) {
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
      return true;
    default:
      return false;
  }
}

bool is_binary(Op op) {
  switch (op) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Equiv:
    case Op::Until:
    case Op::Release:
      return true;
    default:
      return false;
  }
}

std::string_view token(Op op) {
  switch (op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return "";
    case Op::Not: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Equiv: return "<->";
    case Op::Next: return "X";
    case Op::Until: return "U";
    case Op::Release: return "R";
    case Op::Eventually: return "F";
    case Op::Globally: return "G";
  }
  return "";
}

Formula::Formula() : node_(constant_node(true)) {}

Formula Formula::constant(bool value) { return Formula(constant_node(value)); }

Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) throw std::invalid_argument("invalid atom name '" + name + "'");
  auto n = std::make_shared<Node>();
  n->op = Op::Atom;
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::unary(Op op, Formula operand) {
  if (!is_unary(op)) throw std::invalid_argument("not a unary operator");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(operand);
  return Formula(std::move(n));
}

Formula Formula::binary(Op op, Formula lhs, Formula rhs) {
  if (!is_binary(op)) throw std::invalid_argument("not a binary operator");
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Formula(std::move(n));
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::lhs() const { return node_->lhs; }
const Formula& Formula::rhs() const { return node_->rhs; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  if (a.op() == Op::Atom) return a.name() == b.name();
  if (is_unary(a.op())) return a.lhs() == b.lhs();
  if (is_binary(a.op())) return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  return true;
}

bool structural_less(const Formula& a, const Formula& b) {
  if (a.id() == b.id()) return false;
  if (a.op() != b.op()) return a.op() < b.op();
  if (a.op() == Op::Atom) return a.name() < b.name();
  if (is_unary(a.op())) return structural_less(a.lhs(), b.lhs());
  if (is_binary(a.op())) {
    if (a.lhs() != b.lhs()) return structural_less(a.lhs(), b.lhs());
    return structural_less(a.rhs(), b.rhs());
  }
  return false;
}

Formula True() { return Formula::constant(true); }
Formula False() { return Formula::constant(false); }
Formula Atom(std::string name) { return Formula::atom(std::move(name)); }
Formula Not(Formula f) { return Formula::unary(Op::Not, std::move(f)); }
Formula And(Formula a, Formula b) { return Formula::binary(Op::And, std::move(a), std::move(b)); }
Formula Or(Formula a, Formula b) { return Formula::binary(Op::Or, std::move(a), std::move(b)); }
Formula Implies(Formula a, Formula b) { return Formula::binary(Op::Implies, std::move(a), std::move(b)); }
Formula Equiv(Formula a, Formula b) { return Formula::binary(Op::Equiv, std::move(a), std::move(b)); }
Formula Next(Formula f) { return Formula::unary(Op::Next, std::move(f)); }
Formula Until(Formula a, Formula b) { return Formula::binary(Op::Until, std::move(a), std::move(b)); }
Formula Release(Formula a, Formula b) { return Formula::binary(Op::Release, std::move(a), std::move(b)); }
Formula Eventually(Formula f) { return Formula::unary(Op::Eventually, std::move(f)); }
Formula Globally(Formula f) { return Formula::unary(Op::Globally, std::move(f)); }

Formula conjunction(std::span<const Formula> parts) {
  if (parts.empty()) return True();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = And(acc, parts[i]);
  return acc;
}

ParseError::ParseError(Kind kind, std::size_t offset, const std::string& what)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), kind_(kind), offset_(offset) {}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, True, False, Not, Next, Eventually, Globally, Until, Release, And, Or, Implies, Equiv, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(c) || c == '_') {
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      auto word = text.substr(start, i - start);
      Tok kind = Tok::Ident;
      if (word == "true") kind = Tok::True;
      else if (word == "false") kind = Tok::False;
      else if (word == "X") kind = Tok::Next;
      else if (word == "F") kind = Tok::Eventually;
      else if (word == "G") kind = Tok::Globally;
      else if (word == "U") kind = Tok::Until;
      else if (word == "R") kind = Tok::Release;
      out.push_back({kind, word, start});
      continue;
    }
    auto rest = text.substr(i);
    if (rest.starts_with("<->")) {
      out.push_back({Tok::Equiv, rest.substr(0, 3), start});
      i += 3;
    } else if (rest.starts_with("->")) {
      out.push_back({Tok::Implies, rest.substr(0, 2), start});
      i += 2;
    } else {
      Tok kind;
      switch (c) {
        case '!': kind = Tok::Not; break;
        case '&': kind = Tok::And; break;
        case '|': kind = Tok::Or; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        default:
          throw ParseError(ParseError::Kind::UnknownToken, start, "unknown token '" + std::string(1, text[i]) + "'");
      }
      out.push_back({kind, rest.substr(0, 1), start});
      ++i;
    }
  }
  out.push_back({Tok::End, {}, text.size()});
  return out;
}

Op unary_op(Tok t) {
  switch (t) {
    case Tok::Not: return Op::Not;
    case Tok::Next: return Op::Next;
    case Tok::Eventually: return Op::Eventually;
    default: return Op::Globally;
  }
}

bool is_unary_tok(Tok t) { return t == Tok::Not || t == Tok::Next || t == Tok::Eventually || t == Tok::Globally; }

Op binary_op(Tok t) {
  switch (t) {
    case Tok::And: return Op::And;
    case Tok::Or: return Op::Or;
    case Tok::Implies: return Op::Implies;
    case Tok::Equiv: return Op::Equiv;
    case Tok::Until: return Op::Until;
    default: return Op::Release;
  }
}

bool is_binary_tok(Tok t) {
  return t == Tok::And || t == Tok::Or || t == Tok::Implies || t == Tok::Equiv || t == Tok::Until || t == Tok::Release;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula infix() {
    Formula f = equiv();
    expect_end();
    return f;
  }

  Formula prefix() {
    Formula f = polish();
    expect_end();
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, t.offset, msg);
  }

  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? std::string("end of input") : "'" + std::string(t.text) + "'";
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail(peek(), "unexpected " + describe(peek()));
  }

  Formula equiv() {
    Formula lhs = implies();
    while (peek().kind == Tok::Equiv) {
      take();
      lhs = Equiv(lhs, implies());
    }
    return lhs;
  }

  Formula implies() {
    Formula lhs = disj();
    if (peek().kind == Tok::Implies) {
      take();
      return Implies(lhs, implies());
    }
    return lhs;
  }

  Formula disj() {
    Formula lhs = conj();
    while (peek().kind == Tok::Or) {
      take();
      lhs = Or(lhs, conj());
    }
    return lhs;
  }

  Formula conj() {
    Formula lhs = temporal();
    while (peek().kind == Tok::And) {
      take();
      lhs = And(lhs, temporal());
    }
    return lhs;
  }

  Formula temporal() {
    Formula lhs = unary();
    if (peek().kind == Tok::Until || peek().kind == Tok::Release) {
      Op op = binary_op(take().kind);
      return Formula::binary(op, lhs, temporal());
    }
    return lhs;
  }

  Formula unary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Not:
      case Tok::Next:
      case Tok::Eventually:
      case Tok::Globally:
        return Formula::unary(unary_op(t.kind), unary());
      case Tok::Ident:
        return Formula::atom(std::string(t.text));
      case Tok::True:
        return True();
      case Tok::False:
        return False();
      case Tok::LParen: {
        Formula inner = equiv();
        if (peek().kind != Tok::RParen) fail(peek(), "expected ')' but found " + describe(peek()));
        take();
        return inner;
      }
      default:
        fail(t, "expected a formula but found " + describe(t));
    }
  }

  Formula polish() {
    const Token& t = take();
    if (is_unary_tok(t.kind)) return Formula::unary(unary_op(t.kind), polish());
    if (is_binary_tok(t.kind)) {
      Op op = binary_op(t.kind);
      Formula lhs = polish();
      return Formula::binary(op, lhs, polish());
    }
    switch (t.kind) {
      case Tok::Ident: return Formula::atom(std::string(t.text));
      case Tok::True: return True();
      case Tok::False: return False();
      default: fail(t, "expected a formula but found " + describe(t));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void write_infix(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      out += '(';
      out += token(f.op());
      out += ')';
      return;
    case Op::Atom:
      out += '(';
      out += f.name();
      out += ')';
      return;
    default:
      break;
  }
  out += '(';
  if (is_unary(f.op())) {
    out += token(f.op());
    out += ' ';
    write_infix(f.lhs(), out);
  } else {
    write_infix(f.lhs(), out);
    out += ' ';
    out += token(f.op());
    out += ' ';
    write_infix(f.rhs(), out);
  }
  out += ')';
}

void write_prefix(const Formula& f, std::string& out) {
  if (!out.empty()) out += ' ';
  if (f.op() == Op::Atom) {
    out += f.name();
    return;
  }
  out += token(f.op());
  if (is_unary(f.op())) {
    write_prefix(f.lhs(), out);
  } else if (is_binary(f.op())) {
    write_prefix(f.lhs(), out);
    write_prefix(f.rhs(), out);
  }
}

}  // namespace

Formula parse(std::string_view text, Notation notation) {
  auto toks = lex(text);
  if (toks.size() == 1) throw ParseError(ParseError::Kind::Syntax, 0, "empty formula");
  Parser p(std::move(toks));
  return notation == Notation::Infix ? p.infix() : p.prefix();
}

std::string to_string(const Formula& f, Notation notation) {
  std::string out;
  if (notation == Notation::Infix) write_infix(f, out);
  else write_prefix(f, out);
  return out;
}

std::size_t ast_size(const Formula& f) {
  if (is_unary(f.op())) return 1 + ast_size(f.lhs());
  if (is_binary(f.op())) return 1 + ast_size(f.lhs()) + ast_size(f.rhs());
  return 1;
}

std::size_t depth(const Formula& f) {
  if (is_unary(f.op())) return 1 + depth(f.lhs());
  if (is_binary(f.op())) return 1 + std::max(depth(f.lhs()), depth(f.rhs()));
  return 1;
}

std::vector<std::string> atoms(const Formula& f) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.op() == Op::Atom) {
      if (seen.insert(g.name()).second) out.push_back(g.name());
      return;
    }
    if (is_unary(g.op())) walk(g.lhs());
    if (is_binary(g.op())) {
      walk(g.lhs());
      walk(g.rhs());
    }
  };
  walk(f);
  return out;
}

namespace {

Formula nnf(const Formula& f, bool neg) {
  switch (f.op()) {
    case Op::True: return Formula::constant(!neg);
    case Op::False: return Formula::constant(neg);
    case Op::Atom: return neg ? Not(f) : f;
    case Op::Not: return nnf(f.lhs(), !neg);
    case Op::And:
      return neg ? Or(nnf(f.lhs(), true), nnf(f.rhs(), true)) : And(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Or:
      return neg ? And(nnf(f.lhs(), true), nnf(f.rhs(), true)) : Or(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Implies:
      return neg ? And(nnf(f.lhs(), false), nnf(f.rhs(), true)) : Or(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case Op::Equiv: {
      Formula a = nnf(f.lhs(), false), na = nnf(f.lhs(), true);
      Formula b = nnf(f.rhs(), false), nb = nnf(f.rhs(), true);
      return neg ? Or(And(a, nb), And(na, b)) : Or(And(a, b), And(na, nb));
    }
    case Op::Next: return Next(nnf(f.lhs(), neg));
    case Op::Until:
      return neg ? Release(nnf(f.lhs(), true), nnf(f.rhs(), true)) : Until(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Release:
      return neg ? Until(nnf(f.lhs(), true), nnf(f.rhs(), true)) : Release(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Eventually:
      return neg ? Release(False(), nnf(f.lhs(), true)) : Until(True(), nnf(f.lhs(), false));
    case Op::Globally:
      return neg ? Until(True(), nnf(f.lhs(), true)) : Release(False(), nnf(f.lhs(), false));
  }
  return f;
}

}  // namespace

Formula to_nnf(const Formula& f) { return nnf(f, false); }

// ---------------------------------------------------------------------------
// Lasso evaluation

CompiledFormula::CompiledFormula(const Formula& f, std::span<const std::string> atom_order) {
  std::unordered_map<std::string, int> index;
  for (std::size_t k = 0; k < atom_order.size(); ++k) index.emplace(atom_order[k], static_cast<int>(k));
  std::function<int(const Formula&)> emit = [&](const Formula& g) -> int {
    Instr ins{g.op()};
    if (g.op() == Op::Atom) {
      auto it = index.find(g.name());
      ins.a = it == index.end() ? -1 : it->second;
    } else if (is_unary(g.op())) {
      ins.a = emit(g.lhs());
    } else if (is_binary(g.op())) {
      ins.a = emit(g.lhs());
      ins.b = emit(g.rhs());
    }
    code_.push_back(ins);
    return static_cast<int>(code_.size()) - 1;
  };
  emit(f);
}

namespace {

// Positions 0..n-1 of a lasso, where the successor of n-1 is `loop`.
struct SmallLasso {
  int n;
  int loop;
  std::uint64_t all;

  std::uint64_t next(std::uint64_t v) const {
    std::uint64_t shifted = v >> 1;
    if ((v >> loop) & 1U) shifted |= std::uint64_t{1} << (n - 1);
    return shifted;
  }
};

}  // namespace

bool CompiledFormula::eval(const LetterLasso& trace) const {
  if (trace.cycle.empty()) throw std::invalid_argument("lasso cycle must be non-empty");
  const int n = static_cast<int>(trace.prefix.size() + trace.cycle.size());
  const int loop = static_cast<int>(trace.prefix.size());
  auto letter = [&](int i) { return i < loop ? trace.prefix[i] : trace.cycle[i - loop]; };

  if (n <= 64) {
    SmallLasso L{n, loop, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
    std::vector<std::uint64_t> val(code_.size());
    for (std::size_t k = 0; k < code_.size(); ++k) {
      const Instr& ins = code_[k];
      std::uint64_t v = 0;
      switch (ins.op) {
        case Op::True: v = L.all; break;
        case Op::False: v = 0; break;
        case Op::Atom:
          if (ins.a >= 0)
            for (int i = 0; i < n; ++i) v |= ((letter(i) >> ins.a) & 1U) << i;
          break;
        case Op::Not: v = ~val[ins.a] & L.all; break;
        case Op::And: v = val[ins.a] & val[ins.b]; break;
        case Op::Or: v = val[ins.a] | val[ins.b]; break;
        case Op::Implies: v = (~val[ins.a] | val[ins.b]) & L.all; break;
        case Op::Equiv: v = ~(val[ins.a] ^ val[ins.b]) & L.all; break;
        case Op::Next: v = L.next(val[ins.a]); break;
        case Op::Until:
        case Op::Eventually: {
          std::uint64_t hold = ins.op == Op::Until ? val[ins.a] : L.all;
          std::uint64_t goal = ins.op == Op::Until ? val[ins.b] : val[ins.a];
          v = goal;
          for (;;) {
            std::uint64_t nv = goal | (hold & L.next(v));
            if (nv == v) break;
            v = nv;
          }
          break;
        }
        case Op::Release:
        case Op::Globally: {
          std::uint64_t free = ins.op == Op::Release ? val[ins.a] : 0;
          std::uint64_t must = ins.op == Op::Release ? val[ins.b] : val[ins.a];
          v = L.all;
          for (;;) {
            std::uint64_t nv = must & (free | L.next(v));
            if (nv == v) break;
            v = nv;
          }
          break;
        }
      }
      val[k] = v;
    }
    return val.back() & 1U;
  }

  // Long lassos: one byte per position.
  auto succ = [&](int i) { return i + 1 < n ? i + 1 : loop; };
  std::vector<std::vector<char>> val(code_.size());
  for (std::size_t k = 0; k < code_.size(); ++k) {
    const Instr& ins = code_[k];
    std::vector<char> v(n, 0);
    switch (ins.op) {
      case Op::True: std::fill(v.begin(), v.end(), 1); break;
      case Op::False: break;
      case Op::Atom:
        if (ins.a >= 0)
          for (int i = 0; i < n; ++i) v[i] = static_cast<char>((letter(i) >> ins.a) & 1U);
        break;
      case Op::Not: for (int i = 0; i < n; ++i) v[i] = !val[ins.a][i]; break;
      case Op::And: for (int i = 0; i < n; ++i) v[i] = val[ins.a][i] && val[ins.b][i]; break;
      case Op::Or: for (int i = 0; i < n; ++i) v[i] = val[ins.a][i] || val[ins.b][i]; break;
      case Op::Implies: for (int i = 0; i < n; ++i) v[i] = !val[ins.a][i] || val[ins.b][i]; break;
      case Op::Equiv: for (int i = 0; i < n; ++i) v[i] = val[ins.a][i] == val[ins.b][i]; break;
      case Op::Next: for (int i = 0; i < n; ++i) v[i] = val[ins.a][succ(i)]; break;
      case Op::Until:
      case Op::Eventually: {
        const auto& goal = ins.op == Op::Until ? val[ins.b] : val[ins.a];
        v = goal;
        for (bool changed = true; changed;) {
          changed = false;
          for (int i = n - 1; i >= 0; --i) {
            bool hold = ins.op == Op::Until ? val[ins.a][i] : true;
            char nv = goal[i] || (hold && v[succ(i)]);
            if (nv != v[i]) v[i] = nv, changed = true;
          }
        }
        break;
      }
      case Op::Release:
      case Op::Globally: {
        const auto& must = ins.op == Op::Release ? val[ins.b] : val[ins.a];
        std::fill(v.begin(), v.end(), 1);
        for (bool changed = true; changed;) {
          changed = false;
          for (int i = n - 1; i >= 0; --i) {
            bool free = ins.op == Op::Release ? val[ins.a][i] : false;
            char nv = must[i] && (free || v[succ(i)]);
            if (nv != v[i]) v[i] = nv, changed = true;
          }
        }
        break;
      }
    }
    val[k] = std::move(v);
  }
  return val.back()[0];
}

bool eval_lasso(const Formula& f, const LetterLasso& trace, std::span<const std::string> atom_order) {
  return CompiledFormula(f, atom_order).eval(trace);
}

bool eval_lasso(const Formula& f, const LassoTrace& trace) {
  std::vector<std::string> order = atoms(f);
  if (order.size() > 64) throw std::invalid_argument("lasso evaluation supports at most 64 atoms");
  auto encode = [&](const Assignment& a) {
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
      if (a.count(order[k])) bits |= std::uint64_t{1} << k;
    return bits;
  };
  LetterLasso letters;
  for (const auto& a : trace.prefix) letters.prefix.push_back(encode(a));
  for (const auto& a : trace.cycle) letters.cycle.push_back(encode(a));
  return eval_lasso(f, letters, order);
}

// ---------------------------------------------------------------------------
// Specifications

void DecompSpec::validate() const {
  std::unordered_set<std::string> ins, outs;
  for (const auto& name : inputs) {
    if (!is_identifier(name)) throw SpecError("invalid input name '" + name + "'");
    if (!ins.insert(name).second) throw SpecError("duplicate input '" + name + "'");
  }
  for (const auto& name : outputs) {
    if (!is_identifier(name)) throw SpecError("invalid output name '" + name + "'");
    if (!outs.insert(name).second) throw SpecError("duplicate output '" + name + "'");
    if (ins.count(name)) throw SpecError("'" + name + "' is declared as both input and output");
  }
  auto check = [&](const std::vector<Formula>& fs, const char* kind) {
    for (std::size_t k = 0; k < fs.size(); ++k)
      for (const auto& a : atoms(fs[k]))
        if (!ins.count(a) && !outs.count(a))
          throw SpecError(std::string(kind) + " " + std::to_string(k) + " mentions undeclared atom '" + a + "'");
  };
  check(assumptions, "assumption");
  check(guarantees, "guarantee");
}

Formula spec_to_formula(const DecompSpec& spec) {
  Formula g = conjunction(spec.guarantees);
  if (spec.assumptions.empty()) return g;
  return Implies(conjunction(spec.assumptions), g);
}

std::string_view to_string(Semantics s) { return s == Semantics::Mealy ? "mealy" : "moore"; }

Semantics parse_semantics(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "mealy") return Semantics::Mealy;
  if (lower == "moore") return Semantics::Moore;
  throw SpecError("unknown semantics '" + std::string(s) + "'");
}

}  // namespace neurosynt::ltl
