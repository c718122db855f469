#pragma once

#include <pathcheck/circuit.hpp>
#include <pathcheck/error.hpp>
#include <pathcheck/formula.hpp>
#include <pathcheck/trace.hpp>

#include <cstddef>
#include <string>

namespace pathcheck {

/// Which operand of a binary operator has already been evaluated.
enum class Side { Left, Right };

inline const char *side_name(Side s) { return s == Side::Left ? "left" : "right"; }

/*
 * Layout shared by the single-row constructions: gates 0..n-1 are the input
 * variables v_i (in position order), gates n..2n-1 are the outputs o_i.
 * The grid construction numbers g_{i,j} as j*n + i, inputs are row b and
 * outputs are row 0.
 *
 * construct_* returns the circuit exactly as drawn by the construction,
 * build_* its evaluation (the circuit the contraction engine uses).
 */

namespace detail {

inline void require_length(const BoolSeq &s, std::size_t n) {
  if (s.size() != n)
    throw ArityError("sequence of length " + std::to_string(s.size()) +
                     " for path length " + std::to_string(n));
}

inline bool is_future(Op op) {
  switch (unbounded_of(op)) {
  case Op::Until:
  case Op::Release:
  case Op::NextStrong:
  case Op::NextWeak:
    return true;
  default:
    return false;
  }
}

// Index arithmetic in the operator's time direction.
struct Direction {
  std::size_t n;
  bool future;

  std::size_t last() const { return future ? n - 1 : 0; }
  std::size_t next(std::size_t i) const { return future ? i + 1 : i - 1; }
  // Inclusive end of the window of width b starting at i.
  std::size_t window_end(std::size_t i, Bound b) const {
    if (future)
      return b >= n - 1 - i ? n - 1 : i + static_cast<std::size_t>(b);
    return b >= i ? 0 : i - static_cast<std::size_t>(b);
  }
};

inline TransducerCircuit vars_and_outputs(std::size_t n) {
  TransducerCircuit t;
  t.circuit.gates.assign(2 * n, Gate::var());
  for (GateId i = 0; i < n; ++i) {
    t.inputs.push_back(i);
    t.outputs.push_back(static_cast<GateId>(n + i));
  }
  return t;
}

} // namespace detail

/// Constant circuit of a literal's valuation along the path.
inline TransducerCircuit build_literal(const Path &rho, std::string_view name,
                                       bool negated = false) {
  return constant_circuit(atom_sequence(rho, name, negated));
}

/// X, wX, Y, wY: o_i = Id(v_{i±1}), boundary output constant (0 strong, 1 weak).
inline TransducerCircuit build_shift(std::size_t n, Op op) {
  if (!is_shift(op))
    throw StructureError("build_shift: not a next/yesterday operator");
  if (n == 0)
    throw ArityError("build_shift: path length must be positive");
  const bool future = op == Op::NextStrong || op == Op::NextWeak;
  const bool weak = op == Op::NextWeak || op == Op::YesterdayWeak;
  const detail::Direction dir{n, future};
  TransducerCircuit t = detail::vars_and_outputs(n);
  for (std::size_t i = 0; i < n; ++i)
    t.circuit[t.outputs[i]] =
        i == dir.last() ? Gate::constant(weak) : Gate::id(static_cast<GateId>(dir.next(i)));
  return t;
}

/// And/Or with one operand known; symmetric in the side.
inline TransducerCircuit build_boolean(std::size_t n, Op op, const BoolSeq &s) {
  if (op != Op::And && op != Op::Or)
    throw StructureError("build_boolean: not a Boolean connective");
  detail::require_length(s, n);
  const bool dominant = op == Op::Or;
  TransducerCircuit t = detail::vars_and_outputs(n);
  for (std::size_t i = 0; i < n; ++i)
    t.circuit[t.outputs[i]] =
        s[i] == dominant ? Gate::constant(dominant) : Gate::id(static_cast<GateId>(i));
  return t;
}

/*!
  U, R, S, T with one side known, as drawn by the construction (not yet
  evaluated). Future operators chain o_i to o_{i+1}, past ones to o_{i-1}.

    U, right known:  1 if s_i, boundary s_i, else And(v_i, o_next)
    U, left known:   Or(v_i, o_next) if s_i, else Id(v_i); boundary Id(v_i)
    R, right known:  0 if !s_i, boundary s_i, else Or(v_i, o_next)
    R, left known:   Id(v_i) if s_i, else And(v_i, o_next); boundary Id(v_i)
*/
inline TransducerCircuit construct_unbounded(std::size_t n, Op op, Side side,
                                             const BoolSeq &s) {
  const Op base = unbounded_of(op);
  if (is_bounded(op) || (base != Op::Until && base != Op::Release && base != Op::Since &&
                         base != Op::Trigger))
    throw StructureError("construct_unbounded: not an unbounded temporal operator");
  detail::require_length(s, n);
  const detail::Direction dir{n, detail::is_future(op)};
  // Until/Since are existential: a 1 on the right side settles the position.
  const bool existential = base == Op::Until || base == Op::Since;
  TransducerCircuit t = detail::vars_and_outputs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const GateId v = static_cast<GateId>(i);
    const bool boundary = i == dir.last();
    const GateId next = boundary ? 0 : static_cast<GateId>(n + dir.next(i));
    Gate g;
    if (side == Side::Right) {
      if (s[i] == existential || boundary)
        g = Gate::constant(s[i]);
      else
        g = existential ? Gate::conj(v, next) : Gate::disj(v, next);
    } else {
      if (boundary || s[i] != existential)
        g = Gate::id(v);
      else
        g = existential ? Gate::disj(v, next) : Gate::conj(v, next);
    }
    t.circuit[t.outputs[i]] = g;
  }
  return t;
}

inline TransducerCircuit build_unbounded(std::size_t n, Op op, Side side, const BoolSeq &s) {
  return evaluate(construct_unbounded(n, op, side, s));
}

/*!
  Bounded U, R, S, T with one side known, as drawn by the construction.

  Right known: one row. U/S: o_i = 1 if s_i, 0 if no s_j = 1 in the window
  [i, i±b] (clipped to the path), else And(v_i, o_next); R/T dually with
  0/1 swapped and Or.

  Left known: (b+1) rows, g_{i,j} holds the value at position i with
  remaining bound b-j. Row b is the input row. For j < b, U/S use
  Or(g_{i,j+1}, g_{next,j+1}) where s_i = 1 and Id(g_{i,j+1}) otherwise; R/T
  use And where s_i = 0. The boundary column is Id straight down.
*/
inline TransducerCircuit construct_bounded(std::size_t n, Op op, Bound b, Side side,
                                           const BoolSeq &s) {
  const Op base = unbounded_of(op);
  if (base != Op::Until && base != Op::Release && base != Op::Since && base != Op::Trigger)
    throw StructureError("construct_bounded: not a temporal operator");
  detail::require_length(s, n);
  const detail::Direction dir{n, detail::is_future(op)};
  const bool existential = base == Op::Until || base == Op::Since;

  if (side == Side::Right) {
    TransducerCircuit t = detail::vars_and_outputs(n);
    // Walk against the time direction so the nearest settling position is known.
    std::size_t settle = static_cast<std::size_t>(-1); // nearest j with s_j == existential
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = dir.future ? n - 1 - k : k;
      if (s[i] == existential)
        settle = i;
      Gate g;
      const bool reachable =
          settle != static_cast<std::size_t>(-1) &&
          (dir.future ? settle <= dir.window_end(i, b) : settle >= dir.window_end(i, b));
      if (s[i] == existential)
        g = Gate::constant(existential);
      else if (!reachable)
        g = Gate::constant(!existential);
      else {
        const GateId v = static_cast<GateId>(i);
        const GateId next = static_cast<GateId>(n + dir.next(i));
        g = existential ? Gate::conj(v, next) : Gate::disj(v, next);
      }
      t.circuit[t.outputs[i]] = g;
    }
    return t;
  }

  const std::size_t rows = static_cast<std::size_t>(b) + 1;
  auto at = [n](std::size_t i, std::size_t j) { return static_cast<GateId>(j * n + i); };
  TransducerCircuit t;
  t.circuit.gates.assign(rows * n, Gate::var());
  for (std::size_t j = 0; j + 1 < rows; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const bool joins = i != dir.last() && s[i] == existential;
      if (joins) {
        const GateId a = at(i, j + 1), c = at(dir.next(i), j + 1);
        t.circuit[at(i, j)] = existential ? Gate::disj(a, c) : Gate::conj(a, c);
      } else {
        t.circuit[at(i, j)] = Gate::id(at(i, j + 1));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    t.inputs.push_back(at(i, rows - 1));
    t.outputs.push_back(at(i, 0));
  }
  return t;
}

inline TransducerCircuit build_bounded(std::size_t n, Op op, Bound b, Side side,
                                       const BoolSeq &s) {
  return evaluate(construct_bounded(n, op, b, side, s));
}

/// Partial circuit for a binary operator once the operand on `side` is known.
inline TransducerCircuit build_partial(std::size_t n, Op op, Bound b, Side side,
                                       const BoolSeq &s) {
  if (op == Op::And || op == Op::Or)
    return build_boolean(n, op, s);
  if (is_bounded(op))
    return build_bounded(n, op, b, side, s);
  if (is_binary(op))
    return build_unbounded(n, op, side, s);
  throw StructureError("build_partial: operator is not binary");
}

} // namespace pathcheck
