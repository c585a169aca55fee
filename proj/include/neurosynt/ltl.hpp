#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace neurosynt::ltl {

enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Equiv,
  Next,
  Until,
  Release,
  Eventually,
  Globally,
};

enum class Notation { Infix, Prefix };

bool is_unary(Op op);
bool is_binary(Op op);
/// Operator token as it appears in both notations (`"!"`, `"U"`, `"->"`, ...).
std::string_view token(Op op);

/// Immutable, structurally shared LTL formula. Copies are cheap.
class Formula {
 public:
  /// The constant `true`.
  Formula();

  static Formula constant(bool value);
  static Formula atom(std::string name);
  static Formula unary(Op op, Formula operand);
  static Formula binary(Op op, Formula lhs, Formula rhs);

  Op op() const;
  /// Atom name; empty for every other node.
  const std::string& name() const;
  /// Operand of a unary node, left operand of a binary node.
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_atom() const { return op() == Op::Atom; }
  bool is_constant() const { return op() == Op::True || op() == Op::False; }

  /// Identity of the shared node, usable as a memo key while the formula is alive.
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static const std::shared_ptr<const Node>& constant_node(bool value);
  std::shared_ptr<const Node> node_;
};

/// Strict weak order on structure (operator, then name, then children).
bool structural_less(const Formula& a, const Formula& b);

// Builders.
Formula True();
Formula False();
Formula Atom(std::string name);
Formula Not(Formula f);
Formula And(Formula a, Formula b);
Formula Or(Formula a, Formula b);
Formula Implies(Formula a, Formula b);
Formula Equiv(Formula a, Formula b);
Formula Next(Formula f);
Formula Until(Formula a, Formula b);
Formula Release(Formula a, Formula b);
Formula Eventually(Formula f);
Formula Globally(Formula f);

/// Left-nested conjunction; `true` for an empty list.
Formula conjunction(std::span<const Formula> parts);

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownToken };
  ParseError(Kind kind, std::size_t offset, const std::string& what);
  Kind kind() const { return kind_; }
  /// Byte offset into the parsed text.
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

bool is_identifier(std::string_view s);

/// Infix: unary operators bind tightest, then U/R (right-assoc), `&`, `|`,
/// `->` (right-assoc), `<->`. Prefix: Polish notation over the same tokens.
Formula parse(std::string_view text, Notation notation = Notation::Infix);

/// Infix output is fully parenthesized, atoms included: `(G ((r_0) -> (F (g_0))))`.
/// Prefix output is space separated: `G -> r_0 F g_0`.
std::string to_string(const Formula& f, Notation notation = Notation::Infix);

std::size_t ast_size(const Formula& f);
std::size_t depth(const Formula& f);

/// Distinct atom names in left-to-right preorder of first occurrence.
std::vector<std::string> atoms(const Formula& f);

/// Negation normal form over true/false/atoms/!atom/&/|/X/U/R. Derived
/// operators are expanded (`F f = true U f`, `G f = false R f`).
Formula to_nnf(const Formula& f);

/// Renames atoms; names missing from the map are kept.
template <class Map>
Formula rename_atoms(const Formula& f, const Map& renaming);

// ---------------------------------------------------------------------------
// Trace semantics.

using Assignment = std::set<std::string>;

/// The ultimately periodic word prefix . cycle^omega.
struct LassoTrace {
  std::vector<Assignment> prefix;
  std::vector<Assignment> cycle;

  friend bool operator==(const LassoTrace&, const LassoTrace&) = default;
};

/// Lasso over letters encoded as bitmasks; bit k is set when atom k holds.
struct LetterLasso {
  std::vector<std::uint64_t> prefix;
  std::vector<std::uint64_t> cycle;
};

/// Exact satisfaction of `f` on the lasso. Throws std::invalid_argument on an empty cycle.
bool eval_lasso(const Formula& f, const LassoTrace& trace);

/// Bitmask variant. `atom_order[k]` names bit k; atoms of `f` missing from
/// `atom_order` are treated as always false.
bool eval_lasso(const Formula& f, const LetterLasso& trace, std::span<const std::string> atom_order);

/// Formula pre-compiled for repeated evaluation over bitmask lassos.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, std::span<const std::string> atom_order);
  bool eval(const LetterLasso& trace) const;

 private:
  struct Instr {
    Op op;
    std::int32_t a = -1;  // operand slot or atom bit
    std::int32_t b = -1;
  };
  std::vector<Instr> code_;
};

// ---------------------------------------------------------------------------
// Decomposed assume-guarantee specifications.

enum class Semantics { Mealy, Moore };

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecompSpec {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Formula> assumptions;
  std::vector<Formula> guarantees;
  Semantics semantics = Semantics::Mealy;

  /// Throws SpecError when inputs and outputs overlap, a name is not an
  /// identifier, or a formula mentions an undeclared atom.
  void validate() const;

  friend bool operator==(const DecompSpec&, const DecompSpec&) = default;
};

/// `(&assumptions) -> (&guarantees)`; without assumptions just the guarantee conjunction.
Formula spec_to_formula(const DecompSpec& spec);

std::string_view to_string(Semantics s);
Semantics parse_semantics(std::string_view s);

// ---------------------------------------------------------------------------

template <class Map>
Formula rename_atoms(const Formula& f, const Map& renaming) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Atom: {
      auto it = renaming.find(f.name());
      return it == renaming.end() ? f : Formula::atom(it->second);
    }
    default:
      break;
  }
  if (is_unary(f.op())) return Formula::unary(f.op(), rename_atoms(f.lhs(), renaming));
  return Formula::binary(f.op(), rename_atoms(f.lhs(), renaming), rename_atoms(f.rhs(), renaming));
}

}  // namespace neurosynt::ltl
