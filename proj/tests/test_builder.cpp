#include <pathcheck/builder.hpp>
#include <pathcheck/random.hpp>
#include <pathcheck/semantics.hpp>

#include <catch_amalgamated.hpp>

using namespace pathcheck;

namespace {

const Op kBinary[] = {Op::And,          Op::Or,           Op::Until,        Op::Release,
                      Op::Since,        Op::Trigger,      Op::BoundedUntil, Op::BoundedRelease,
                      Op::BoundedSince, Op::BoundedTrigger};

BoolSeq bits(std::uint64_t v, std::size_t n) {
  BoolSeq s(n);
  for (std::size_t i = 0; i < n; ++i)
    s.set(i, (v >> i) & 1);
  return s;
}

BoolSeq reversed(const BoolSeq &s) {
  BoolSeq r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    r.set(i, s[s.size() - 1 - i]);
  return r;
}

// Value of (l op r) where the known side carries `s` and the other side `t`.
BoolSeq expected(Op op, Bound b, Side side, const BoolSeq &s, const BoolSeq &t) {
  Path p({"l", "r"}, {side == Side::Left ? s : t, side == Side::Left ? t : s});
  return eval_seq(p, Formula::binary(op, atom("l"), atom("r"), b));
}

std::vector<GateKind> output_kinds(const TransducerCircuit &t) {
  std::vector<GateKind> k;
  for (GateId o : t.outputs)
    k.push_back(t.circuit[o].kind);
  return k;
}

} // namespace

TEST_CASE("literal circuits", "[builder]") {
  Path p({"p", "q"}, {BoolSeq(4, true), BoolSeq{0, 1, 1, 0}});
  auto t = build_literal(p, "p");
  CHECK(t.input_arity() == 0);
  CHECK(t.output_arity() == 4);
  for (GateId o : t.outputs)
    CHECK(t.circuit[o] == Gate::constant(true));
  Path none({"p"}, {BoolSeq(3, false)});
  for (GateId o : build_literal(none, "p", true).outputs)
    CHECK(build_literal(none, "p", true).circuit[o] == Gate::constant(true));
  auto q = build_literal(p, "q", true);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(q.output(i).value == atom_sequence(p, "q", true)[i]);
  CHECK_THROWS_AS(build_literal(p, "z"), UnknownPropositionError);
}

TEST_CASE("shift circuits", "[builder]") {
  CHECK(apply(build_shift(3, Op::NextStrong), BoolSeq{0, 1, 1}) == BoolSeq{1, 1, 0});
  CHECK(apply(build_shift(1, Op::NextWeak), BoolSeq{0}) == BoolSeq{1});
  CHECK(apply(build_shift(3, Op::YesterdayWeak), BoolSeq{1, 0, 1}) == BoolSeq{1, 1, 0});
  CHECK_THROWS_AS(build_shift(0, Op::NextStrong), ArityError);
  auto t = build_shift(5, Op::YesterdayStrong);
  CHECK(t.output(0) == Gate::constant(false));
  CHECK(t.output(3) == Gate::id(2));
  for (const Gate &g : t.circuit.gates)
    CHECK_FALSE(g.is_op());
}

TEST_CASE("boolean circuits", "[builder]") {
  auto all = build_boolean(3, Op::Or, BoolSeq{1, 1, 1});
  for (GateId o : all.outputs)
    CHECK(all.circuit[o] == Gate::constant(true));
  CHECK(apply(build_boolean(3, Op::And, BoolSeq{1, 1, 1}), BoolSeq{0, 1, 0}) == BoolSeq{0, 1, 0});
  CHECK(apply(build_boolean(3, Op::Or, BoolSeq{0, 1, 0}), BoolSeq{1, 0, 0}) == BoolSeq{1, 1, 0});
  CHECK_THROWS_AS(build_boolean(3, Op::Or, BoolSeq{0, 1}), ArityError);
}

TEST_CASE("unbounded circuits", "[builder]") {
  auto u = build_unbounded(3, Op::Until, Side::Right, BoolSeq{0, 0, 1});
  CHECK(u.output(2) == Gate::constant(true));
  CHECK(u.output(1) == Gate::id(1));
  CHECK(u.output(0) == Gate::conj(0, 4));
  CHECK(apply(u, BoolSeq{1, 1, 0}) == BoolSeq{1, 1, 1});

  auto l = build_unbounded(4, Op::Until, Side::Left, BoolSeq(4, false));
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(l.output(i) == Gate::id(static_cast<GateId>(i)));

  auto r = build_unbounded(3, Op::Release, Side::Right, BoolSeq{1, 1, 0});
  CHECK(r.output(2) == Gate::constant(false));
  CHECK(r.output(1) == Gate::id(1));
  CHECK(r.output(0) == Gate::disj(0, 4));
  Rng rng(1);
  for (int k = 0; k < 20; ++k) {
    BoolSeq t = random_seq(rng, 3);
    CHECK(apply(r, t) == expected(Op::Release, 0, Side::Right, BoolSeq{1, 1, 0}, t));
  }
  CHECK_THROWS_AS(build_unbounded(3, Op::Until, Side::Left, BoolSeq{1}), ArityError);
}

TEST_CASE("bounded until with the right side known draws the single row", "[builder]") {
  const BoolSeq s{0, 1, 0, 0, 0, 0, 0, 1};
  auto c = construct_bounded(8, Op::BoundedUntil, 3, Side::Right, s);
  using K = GateKind;
  CHECK(output_kinds(c) ==
        std::vector<K>{K::And, K::Const, K::Const, K::Const, K::And, K::And, K::And, K::Const});
  CHECK(c.output(1).value);
  CHECK_FALSE(c.output(2).value);
  CHECK_FALSE(c.output(3).value);
  CHECK(c.output(7).value);
  CHECK(c.output(0) == Gate::conj(0, 9));
  CHECK(c.output(4) == Gate::conj(4, 13));
  CHECK(c.output(5) == Gate::conj(5, 14));
  CHECK(c.output(6) == Gate::conj(6, 15));

  auto e = build_bounded(8, Op::BoundedUntil, 3, Side::Right, s);
  CHECK(e == evaluate(c));
  CHECK(is_evaluated(e.circuit));
  CHECK(output_kinds(e) ==
        std::vector<K>{K::Id, K::Const, K::Const, K::Const, K::And, K::And, K::Id, K::Const});
}

TEST_CASE("bounded until with the left side known draws the grid", "[builder]") {
  const BoolSeq s{0, 1, 0, 1, 1, 1, 0, 1};
  auto c = build_bounded(8, Op::BoundedUntil, 3, Side::Left, s);
  REQUIRE(c.size() == 32);
  for (std::size_t j = 0; j <= 3; ++j)
    for (std::size_t i = 0; i < 8; ++i) {
      const Gate &g = c.circuit[static_cast<GateId>(j * 8 + i)];
      if (j == 3)
        CHECK(g.kind == GateKind::Var);
      else if (s[i] && i < 7)
        CHECK(g.kind == GateKind::Or);
      else
        CHECK(g.kind == GateKind::Id);
    }
  CHECK(c.inputs.front() == 24);
  CHECK(c.outputs.front() == 0);
}

TEST_CASE("bound zero reduces to the right operand", "[builder]") {
  Rng rng(2);
  for (Op op : {Op::BoundedUntil, Op::BoundedRelease, Op::BoundedSince, Op::BoundedTrigger})
    for (Side side : {Side::Left, Side::Right})
      for (int k = 0; k < 20; ++k) {
        const std::size_t n = rng.between(1, 9);
        BoolSeq s = random_seq(rng, n), t = random_seq(rng, n);
        BoolSeq right = side == Side::Right ? s : t;
        REQUIRE(apply(build_bounded(n, op, 0, side, s), t) == right);
      }
}

TEST_CASE("builders are sound on every input up to length 6", "[builder][property]") {
  for (std::size_t n = 1; n <= 6; ++n)
    for (Op op : kBinary)
      for (Bound b = 0; b <= (is_bounded(op) ? n : 0); ++b)
        for (Side side : {Side::Left, Side::Right})
          for (std::uint64_t sv = 0; sv < (1u << n); ++sv) {
            const BoolSeq s = bits(sv, n);
            auto c = build_partial(n, op, b, side, s);
            REQUIRE(c.input_arity() == n);
            REQUIRE(c.output_arity() == n);
            REQUIRE(is_evaluated(c.circuit));
            for (std::uint64_t tv = 0; tv < (1u << n); ++tv) {
              const BoolSeq t = bits(tv, n);
              REQUIRE(apply(c, t) == expected(op, b, side, s, t));
            }
          }
}

TEST_CASE("builders are sound on random inputs up to length 50", "[builder][property]") {
  Rng rng(3);
  for (int k = 0; k < 2000; ++k) {
    const std::size_t n = rng.between(1, 50);
    const Op op = kBinary[rng.below(std::size(kBinary))];
    const Bound b = rng.below(n + 1);
    const Side side = rng.coin() ? Side::Left : Side::Right;
    const BoolSeq s = random_seq(rng, n), t = random_seq(rng, n);
    auto c = build_partial(n, op, b, side, s);
    validate(c);
    REQUIRE(is_evaluated(c.circuit));
    REQUIRE(apply(c, t) == expected(op, b, side, s, t));
  }
}

TEST_CASE("gate counts stay within their bounds", "[builder][property]") {
  Rng rng(4);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = rng.between(1, 40);
    const BoolSeq s = random_seq(rng, n);
    const Side side = rng.coin() ? Side::Left : Side::Right;
    const Bound b = rng.below(n + 1);
    for (Op op : {Op::Until, Op::Release, Op::Since, Op::Trigger})
      REQUIRE(build_unbounded(n, op, side, s).size() <= 2 * n);
    for (Op op : {Op::And, Op::Or})
      REQUIRE(build_boolean(n, op, s).size() <= 2 * n);
    for (Op op : {Op::NextStrong, Op::NextWeak, Op::YesterdayStrong, Op::YesterdayWeak})
      REQUIRE(build_shift(n, op).size() <= 2 * n);
    for (Op op : {Op::BoundedUntil, Op::BoundedRelease, Op::BoundedSince, Op::BoundedTrigger}) {
      REQUIRE(build_bounded(n, op, b, Side::Left, s).size() <= (b + 1) * n);
      REQUIRE(build_bounded(n, op, b, Side::Right, s).size() <= 2 * n);
    }
  }
}

TEST_CASE("past operators mirror future ones", "[builder][property]") {
  Rng rng(5);
  const std::pair<Op, Op> pairs[] = {{Op::Until, Op::Since},
                                     {Op::Release, Op::Trigger},
                                     {Op::BoundedUntil, Op::BoundedSince},
                                     {Op::BoundedRelease, Op::BoundedTrigger}};
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = rng.between(1, 20);
    const auto [future, past] = pairs[rng.below(4)];
    const Bound b = rng.below(n + 1);
    const Side side = rng.coin() ? Side::Left : Side::Right;
    const BoolSeq s = random_seq(rng, n), t = random_seq(rng, n);
    auto p = build_partial(n, past, b, side, s);
    auto f = build_partial(n, future, b, side, reversed(s));
    REQUIRE(apply(p, t) == reversed(apply(f, reversed(t))));
    REQUIRE(p.size() == f.size());
  }
  CHECK(apply(build_shift(4, Op::YesterdayStrong), BoolSeq{1, 0, 0, 1}) ==
        reversed(apply(build_shift(4, Op::NextStrong), BoolSeq{1, 0, 0, 1})));
}
