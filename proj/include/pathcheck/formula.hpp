#pragma once

#include <pathcheck/error.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace pathcheck {

/// Reserved propositions whose valuation is constant on every path.
inline constexpr std::string_view kTrueAtom = "_true";
inline constexpr std::string_view kFalseAtom = "_false";

enum class Op : std::uint8_t {
  Atom,
  Not,
  And,
  Or,
  NextStrong,      // X
  NextWeak,        // wX
  YesterdayStrong, // Y
  YesterdayWeak,   // wY
  Until,
  Release,
  Since,
  Trigger,
  BoundedUntil,
  BoundedRelease,
  BoundedSince,
  BoundedTrigger,
};

using Bound = std::uint64_t;

constexpr bool is_unary(Op op) noexcept {
  return op == Op::Not || op == Op::NextStrong || op == Op::NextWeak ||
         op == Op::YesterdayStrong || op == Op::YesterdayWeak;
}

/// X, wX, Y, wY: the operators whose circuits are pure index shifts.
constexpr bool is_shift(Op op) noexcept { return is_unary(op) && op != Op::Not; }

constexpr bool is_bounded(Op op) noexcept {
  return op == Op::BoundedUntil || op == Op::BoundedRelease ||
         op == Op::BoundedSince || op == Op::BoundedTrigger;
}

constexpr bool is_binary(Op op) noexcept {
  return op != Op::Atom && !is_unary(op);
}

/// Bounded operators map to their unbounded counterpart; others map to themselves.
constexpr Op unbounded_of(Op op) noexcept {
  switch (op) {
  case Op::BoundedUntil: return Op::Until;
  case Op::BoundedRelease: return Op::Release;
  case Op::BoundedSince: return Op::Since;
  case Op::BoundedTrigger: return Op::Trigger;
  default: return op;
  }
}

constexpr Op bounded_of(Op op) noexcept {
  switch (op) {
  case Op::Until: return Op::BoundedUntil;
  case Op::Release: return Op::BoundedRelease;
  case Op::Since: return Op::BoundedSince;
  case Op::Trigger: return Op::BoundedTrigger;
  default: return op;
  }
}

/// Operator obtained by pushing a negation through `op`.
constexpr Op dual(Op op) noexcept {
  switch (op) {
  case Op::And: return Op::Or;
  case Op::Or: return Op::And;
  case Op::NextStrong: return Op::NextWeak;
  case Op::NextWeak: return Op::NextStrong;
  case Op::YesterdayStrong: return Op::YesterdayWeak;
  case Op::YesterdayWeak: return Op::YesterdayStrong;
  case Op::Until: return Op::Release;
  case Op::Release: return Op::Until;
  case Op::Since: return Op::Trigger;
  case Op::Trigger: return Op::Since;
  case Op::BoundedUntil: return Op::BoundedRelease;
  case Op::BoundedRelease: return Op::BoundedUntil;
  case Op::BoundedSince: return Op::BoundedTrigger;
  case Op::BoundedTrigger: return Op::BoundedSince;
  default: return op;
  }
}

/*!
  Immutable BLTL+Past syntax tree.

  A Formula is a cheap handle to a shared node; copies share structure and
  are safe to read from any thread. Unary operators keep their operand in
  `left()`.
*/
class Formula {
  struct Node {
    Op op;
    Bound bound = 0;
    std::string name;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

public:
  Formula() = default;

  static Formula atom(std::string name) {
    auto n = std::make_shared<Node>();
    n->op = Op::Atom;
    n->name = std::move(name);
    return Formula(std::move(n));
  }

  static Formula truth() { return atom(std::string(kTrueAtom)); }
  static Formula falsity() { return atom(std::string(kFalseAtom)); }

  static Formula unary(Op op, const Formula &child) {
    if (!is_unary(op))
      throw StructureError("operator is not unary");
    auto n = std::make_shared<Node>();
    n->op = op;
    n->left = child.node_;
    return Formula(std::move(n));
  }

  static Formula binary(Op op, const Formula &l, const Formula &r, Bound b = 0) {
    if (!is_binary(op))
      throw StructureError("operator is not binary");
    auto n = std::make_shared<Node>();
    n->op = op;
    n->bound = is_bounded(op) ? b : 0;
    n->left = l.node_;
    n->right = r.node_;
    return Formula(std::move(n));
  }

  bool empty() const noexcept { return !node_; }
  Op op() const noexcept { return node_->op; }
  Bound bound() const noexcept { return node_->bound; }
  const std::string &name() const noexcept { return node_->name; }
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }
  /// Operand of a unary operator.
  Formula child() const { return Formula(node_->left); }

  bool is_atom() const noexcept { return node_->op == Op::Atom; }
  /// An atom or a negated atom.
  bool is_literal() const noexcept {
    return is_atom() || (node_->op == Op::Not && node_->left->op == Op::Atom);
  }

  /// Node address; identifies an occurrence, not a formula.
  const void *identity() const noexcept { return node_.get(); }

  friend bool operator==(const Formula &a, const Formula &b) {
    return equal(a.node_.get(), b.node_.get());
  }

private:
  static bool equal(const Node *a, const Node *b) {
    if (a == b)
      return true;
    if (!a || !b || a->op != b->op || a->bound != b->bound || a->name != b->name)
      return false;
    return equal(a->left.get(), b->left.get()) &&
           equal(a->right.get(), b->right.get());
  }

  std::shared_ptr<const Node> node_;
};

// Convenience constructors.
inline Formula atom(std::string name) { return Formula::atom(std::move(name)); }
inline Formula negation(const Formula &f) { return Formula::unary(Op::Not, f); }
inline Formula conj(const Formula &l, const Formula &r) {
  return Formula::binary(Op::And, l, r);
}
inline Formula disj(const Formula &l, const Formula &r) {
  return Formula::binary(Op::Or, l, r);
}

/// Size with unary accounting for bounds: a bounded operator counts 1 + b.
inline std::uint64_t size(const Formula &f) {
  std::uint64_t n = 1;
  if (is_bounded(f.op()))
    n += f.bound();
  if (f.op() == Op::Atom)
    return n;
  n += size(f.left());
  if (is_binary(f.op()))
    n += size(f.right());
  return n;
}

/// Plain tree node count (bounds count as nothing).
inline std::size_t node_count(const Formula &f) {
  if (f.op() == Op::Atom)
    return 1;
  if (is_unary(f.op()))
    return 1 + node_count(f.child());
  return 1 + node_count(f.left()) + node_count(f.right());
}

/// Negation occurs only directly above atoms.
inline bool is_pnf(const Formula &f) {
  switch (f.op()) {
  case Op::Atom: return true;
  case Op::Not: return f.child().is_atom();
  default:
    if (is_unary(f.op()))
      return is_pnf(f.child());
    return is_pnf(f.left()) && is_pnf(f.right());
  }
}

namespace detail {

inline Formula pnf(const Formula &f, bool negate) {
  switch (f.op()) {
  case Op::Atom:
    return negate ? negation(f) : f;
  case Op::Not:
    return pnf(f.child(), !negate);
  default:
    break;
  }
  const Op op = negate ? dual(f.op()) : f.op();
  if (is_unary(op))
    return Formula::unary(op, pnf(f.child(), negate));
  return Formula::binary(op, pnf(f.left(), negate), pnf(f.right(), negate),
                         f.bound());
}

} // namespace detail

/// Positive normal form via the operator dualities; bounds are preserved.
inline Formula to_pnf(const Formula &f) { return detail::pnf(f, false); }

/// Clamp every bound to the path length; satisfaction on paths of length n is unchanged.
inline Formula prune_bounds(const Formula &f, std::size_t n) {
  if (f.op() == Op::Atom)
    return f;
  if (is_unary(f.op()))
    return Formula::unary(f.op(), prune_bounds(f.child(), n));
  return Formula::binary(f.op(), prune_bounds(f.left(), n),
                         prune_bounds(f.right(), n),
                         std::min<Bound>(f.bound(), static_cast<Bound>(n)));
}

/// Largest bound in the formula (0 if none).
inline Bound max_bound(const Formula &f) {
  if (f.op() == Op::Atom)
    return 0;
  if (is_unary(f.op()))
    return max_bound(f.child());
  return std::max({f.bound(), max_bound(f.left()), max_bound(f.right())});
}

/// One node of the syntax tree; `index` is its preorder position.
struct Occurrence {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t index = 0;
  std::size_t parent = npos;
  std::size_t left = npos;  // operand of a unary node
  std::size_t right = npos;
  Formula formula;
};

/// Every node of `f` in preorder (parent before children, left before right).
/// Index 0 is `f` itself. Equal subformulas at different positions are
/// distinct occurrences.
inline std::vector<Occurrence> subformula_occurrences(const Formula &f) {
  std::vector<Occurrence> out;
  struct Frame {
    Formula f;
    std::size_t parent;
    bool is_right;
  };
  std::vector<Frame> stack{{f, Occurrence::npos, false}};
  while (!stack.empty()) {
    Frame fr = std::move(stack.back());
    stack.pop_back();
    const std::size_t idx = out.size();
    out.push_back({idx, fr.parent, Occurrence::npos, Occurrence::npos, fr.f});
    if (fr.parent != Occurrence::npos) {
      if (fr.is_right)
        out[fr.parent].right = idx;
      else
        out[fr.parent].left = idx;
    }
    const Op op = fr.f.op();
    if (op == Op::Atom)
      continue;
    if (is_binary(op))
      stack.push_back({fr.f.right(), idx, true});
    stack.push_back({fr.f.left(), idx, false});
  }
  return out;
}

} // namespace pathcheck
