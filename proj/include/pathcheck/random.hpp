#pragma once

#include <pathcheck/formula.hpp>
#include <pathcheck/trace.hpp>

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace pathcheck {

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of case `index` of a campaign; cases are independent of each other.
inline std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix(seed ^ splitmix(index + 1));
}

/// 64-bit Mersenne twister with a platform-independent bounded draw
/// (std::uniform_int_distribution differs between standard libraries).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do
      x = engine_();
    while (x >= limit);
    return x % n;
  }

  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  bool coin() { return below(2) == 1; }

private:
  std::mt19937_64 engine_;
};

struct GenCaps {
  std::size_t max_nodes = 20;
  std::size_t max_length = 50;
  Bound max_bound = 10;
};

inline const std::vector<std::string> &default_alphabet() {
  static const std::vector<std::string> names{"a", "b", "c", "d"};
  return names;
}

inline Formula random_atom(Rng &rng) {
  if (rng.chance(1, 16))
    return rng.coin() ? Formula::truth() : Formula::falsity();
  return atom(default_alphabet()[rng.below(default_alphabet().size())]);
}

/// Formula with exactly `nodes` syntax-tree nodes; 20% of binary temporal
/// operators are bounded, with bounds uniform in [0, cap].
inline Formula random_formula(Rng &rng, std::size_t nodes, Bound cap) {
  static constexpr Op unary_ops[] = {Op::Not, Op::NextStrong, Op::NextWeak,
                                     Op::YesterdayStrong, Op::YesterdayWeak};
  static constexpr Op binary_ops[] = {Op::And,     Op::Or,    Op::Until,
                                      Op::Release, Op::Since, Op::Trigger};
  if (nodes <= 1)
    return random_atom(rng);
  const std::size_t kinds = nodes == 2 ? 5 : 11;
  const std::size_t pick = rng.below(kinds);
  if (pick < 5)
    return Formula::unary(unary_ops[pick], random_formula(rng, nodes - 1, cap));
  Op op = binary_ops[pick - 5];
  Bound b = 0;
  if (op != Op::And && op != Op::Or && rng.chance(1, 5)) {
    op = bounded_of(op);
    b = rng.below(cap + 1);
  }
  const std::size_t left = 1 + rng.below(nodes - 2);
  Formula l = random_formula(rng, left, cap);
  Formula r = random_formula(rng, nodes - 1 - left, cap);
  return Formula::binary(op, l, r, b);
}

inline Path random_path(Rng &rng, std::size_t length,
                        const std::vector<std::string> &alphabet = default_alphabet()) {
  std::vector<BoolSeq> cols(alphabet.size(), BoolSeq(length));
  for (std::size_t i = 0; i < length; ++i)
    for (auto &c : cols)
      c.set(i, rng.coin());
  return Path(alphabet, std::move(cols));
}

inline BoolSeq random_seq(Rng &rng, std::size_t n) {
  BoolSeq s(n);
  for (std::size_t i = 0; i < n; ++i)
    s.set(i, rng.coin());
  return s;
}

struct Instance {
  Formula formula;
  Path path;
};

/// Case `index` of the campaign seeded with `seed`.
inline Instance random_instance(std::uint64_t seed, std::uint64_t index, const GenCaps &caps) {
  Rng rng(case_seed(seed, index));
  const std::size_t nodes = rng.between(1, caps.max_nodes);
  Formula f = random_formula(rng, nodes, caps.max_bound);
  const std::size_t len = rng.between(1, caps.max_length);
  return {f, random_path(rng, len)};
}

/// PNF formula whose syntax tree is a random binary tree with `leaves`
/// literal leaves and no unary operators.
inline Formula random_binary_tree(Rng &rng, std::size_t leaves, Bound cap) {
  if (leaves <= 1) {
    Formula a = atom(default_alphabet()[rng.below(default_alphabet().size())]);
    return rng.chance(1, 4) ? negation(a) : a;
  }
  static constexpr Op ops[] = {Op::And,     Op::Or,    Op::Until,
                               Op::Release, Op::Since, Op::Trigger};
  Op op = ops[rng.below(6)];
  Bound b = 0;
  if (op != Op::And && op != Op::Or && rng.chance(1, 5)) {
    op = bounded_of(op);
    b = rng.below(cap + 1);
  }
  const std::size_t left = 1 + rng.below(leaves - 1);
  Formula l = random_binary_tree(rng, left, cap);
  Formula r = random_binary_tree(rng, leaves - left, cap);
  return Formula::binary(op, l, r, b);
}

} // namespace pathcheck
