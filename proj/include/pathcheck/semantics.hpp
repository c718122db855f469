#pragma once

// Reference semantics. Every temporal clause is decided by enumerating its
// quantifiers directly over positions; nothing here shares code with the
// circuit engine, which is what makes this usable as a differential oracle.

#include <pathcheck/error.hpp>
#include <pathcheck/formula.hpp>
#include <pathcheck/trace.hpp>

#include <algorithm>
#include <cstddef>
#include <string>

namespace pathcheck {

namespace detail {

// Window end for future bounded operators: min(i + b, n - 1).
inline std::size_t future_limit(std::size_t i, std::size_t n, Bound b) {
  const std::size_t last = n - 1;
  return b >= last - i ? last : i + static_cast<std::size_t>(b);
}

// Window start for past bounded operators: max(i - b, 0).
inline std::size_t past_limit(std::size_t i, Bound b) {
  return b >= i ? 0 : i - static_cast<std::size_t>(b);
}

/*
 * Satisfaction of the top operator of `op` at position i of a path of length
 * n, given callbacks answering (rho, k) |= left and (rho, k) |= right.
 */
template <class Left, class Right>
bool clause(Op op, Bound b, std::size_t i, std::size_t n, Left &&l, Right &&r) {
  switch (op) {
  case Op::Not: return !l(i);
  case Op::And: return l(i) && r(i);
  case Op::Or: return l(i) || r(i);
  case Op::NextStrong: return i + 1 < n && l(i + 1);
  case Op::NextWeak: return i + 1 == n || l(i + 1);
  case Op::YesterdayStrong: return i >= 1 && l(i - 1);
  case Op::YesterdayWeak: return i < 1 || l(i - 1);
  default: break;
  }

  const bool bounded = is_bounded(op);
  switch (unbounded_of(op)) {
  case Op::Until: {
    // exists j in [i, hi]: r(j) and forall k in [i, j): l(k)
    const std::size_t hi = bounded ? future_limit(i, n, b) : n - 1;
    for (std::size_t j = i; j <= hi; ++j) {
      if (!r(j))
        continue;
      bool all = true;
      for (std::size_t k = i; k < j && all; ++k)
        all = l(k);
      if (all)
        return true;
    }
    return false;
  }
  case Op::Release: {
    // forall j in [i, hi]: r(j) or exists k in [i, j): l(k)
    const std::size_t hi = bounded ? future_limit(i, n, b) : n - 1;
    for (std::size_t j = i; j <= hi; ++j) {
      if (r(j))
        continue;
      bool any = false;
      for (std::size_t k = i; k < j && !any; ++k)
        any = l(k);
      if (!any)
        return false;
    }
    return true;
  }
  case Op::Since: {
    // exists j in [lo, i]: r(j) and forall k in (j, i]: l(k)
    const std::size_t lo = bounded ? past_limit(i, b) : 0;
    for (std::size_t j = i + 1; j-- > lo;) {
      if (!r(j))
        continue;
      bool all = true;
      for (std::size_t k = j + 1; k <= i && all; ++k)
        all = l(k);
      if (all)
        return true;
    }
    return false;
  }
  case Op::Trigger: {
    // forall j in [lo, i]: r(j) or exists k in (j, i]: l(k)
    const std::size_t lo = bounded ? past_limit(i, b) : 0;
    for (std::size_t j = i + 1; j-- > lo;) {
      if (r(j))
        continue;
      bool any = false;
      for (std::size_t k = j + 1; k <= i && !any; ++k)
        any = l(k);
      if (!any)
        return false;
    }
    return true;
  }
  default:
    throw StructureError("no clause for operator");
  }
}

} // namespace detail

/// (rho, i) |= f, by recursion on f. Exponential in temporal nesting depth.
inline bool holds_at(const Path &rho, const Formula &f, std::size_t i) {
  const std::size_t n = rho.size();
  if (i >= n)
    throw Error("position " + std::to_string(i) + " out of range for path of length " +
                std::to_string(n));
  if (f.op() == Op::Atom)
    return rho.holds(f.name(), i);
  const Formula l = f.left();
  auto left = [&](std::size_t k) { return holds_at(rho, l, k); };
  if (is_unary(f.op()))
    return detail::clause(f.op(), 0, i, n, left, left);
  const Formula r = f.right();
  auto right = [&](std::size_t k) { return holds_at(rho, r, k); };
  return detail::clause(f.op(), f.bound(), i, n, left, right);
}

/// f(rho): children are evaluated to whole sequences first, then each
/// position of f is decided by the same quantifier enumeration as holds_at.
inline BoolSeq eval_seq(const Path &rho, const Formula &f) {
  const std::size_t n = rho.size();
  if (n == 0)
    throw TraceError("empty trace");
  if (f.op() == Op::Atom)
    return atom_sequence(rho, f.name());
  BoolSeq out(n);
  const BoolSeq ls = eval_seq(rho, f.left());
  auto left = [&](std::size_t k) { return ls[k]; };
  if (is_unary(f.op())) {
    for (std::size_t i = 0; i < n; ++i)
      out.set(i, detail::clause(f.op(), 0, i, n, left, left));
    return out;
  }
  const BoolSeq rs = eval_seq(rho, f.right());
  auto right = [&](std::size_t k) { return rs[k]; };
  for (std::size_t i = 0; i < n; ++i)
    out.set(i, detail::clause(f.op(), f.bound(), i, n, left, right));
  return out;
}

} // namespace pathcheck
