#include <pathcheck/parse.hpp>
#include <pathcheck/random.hpp>
#include <pathcheck/semantics.hpp>

#include <catch_amalgamated.hpp>

using namespace pathcheck;

namespace {

Path columns(std::vector<std::string> names, std::vector<BoolSeq> cols) {
  return Path(std::move(names), std::move(cols));
}

Formula bin(Op op, const Formula &l, const Formula &r, Bound b = 0) {
  return Formula::binary(op, l, r, b);
}

} // namespace

TEST_CASE("atom and next clauses", "[semantics]") {
  Path p = columns({"p", "q"}, {BoolSeq{1}, BoolSeq{0}});
  CHECK(holds_at(p, atom("p"), 0));
  CHECK_FALSE(holds_at(p, Formula::unary(Op::NextStrong, atom("q")), 0));
  CHECK(holds_at(p, Formula::unary(Op::NextWeak, atom("q")), 0));
  CHECK_FALSE(holds_at(p, Formula::unary(Op::YesterdayStrong, atom("p")), 0));
  CHECK(holds_at(p, Formula::unary(Op::YesterdayWeak, atom("q")), 0));
  CHECK_THROWS_AS(holds_at(p, atom("p"), 1), Error);
}

TEST_CASE("until by quantifier enumeration", "[semantics]") {
  Path p = columns({"a", "b"}, {BoolSeq{1, 1, 0}, BoolSeq{0, 0, 1}});
  const Formula f = parse("a U b");
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(holds_at(p, f, i));
  CHECK(eval_seq(p, f) == BoolSeq{1, 1, 1});
}

TEST_CASE("eval_seq examples", "[semantics]") {
  Path p = columns({"a", "b", "c", "d", "e"},
                   {BoolSeq(5), BoolSeq(5), BoolSeq(5), BoolSeq(5), BoolSeq{1, 0, 0, 0, 0}});
  CHECK(eval_seq(p, Formula::truth()) == BoolSeq(5, true));
  CHECK(eval_seq(p, parse("((a U b) U (c U d)) U e"))[0]);

  Path sample = columns({"a", "b"}, {BoolSeq(8, true), BoolSeq{0, 1, 0, 0, 0, 0, 0, 1}});
  CHECK(eval_seq(sample, parse("a U[3] b")) == BoolSeq{1, 1, 0, 0, 1, 1, 1, 1});
  CHECK_THROWS_AS(eval_seq(Path::of_length(0), Formula::truth()), TraceError);
}

TEST_CASE("bounded windows include i+b and i-b", "[semantics]") {
  Path p = columns({"a", "b"}, {BoolSeq(4, false), BoolSeq{0, 0, 0, 1}});
  CHECK(eval_seq(p, parse("true U[3] b"))[0]);
  CHECK_FALSE(eval_seq(p, parse("true U[2] b"))[0]);
  Path q = columns({"a", "b"}, {BoolSeq(4, false), BoolSeq{1, 0, 0, 0}});
  CHECK(eval_seq(q, parse("true S[3] b"))[3]);
  CHECK_FALSE(eval_seq(q, parse("true S[2] b"))[3]);
  CHECK(eval_seq(q, parse("false T[0] b")) == BoolSeq{1, 0, 0, 0});
}

TEST_CASE("expansion laws hold pointwise", "[semantics][property]") {
  for (std::uint64_t k = 0; k < 300; ++k) {
    Rng rng(case_seed(21, k));
    const Formula l = random_formula(rng, rng.between(1, 4), 3);
    const Formula r = random_formula(rng, rng.between(1, 4), 3);
    const Bound b = rng.below(5);
    Path p = random_path(rng, rng.between(1, 9));
    const std::size_t i = rng.below(p.size());
    auto X = [](const Formula &f) { return Formula::unary(Op::NextStrong, f); };
    auto Y = [](const Formula &f) { return Formula::unary(Op::YesterdayStrong, f); };
    auto wX = [](const Formula &f) { return Formula::unary(Op::NextWeak, f); };
    auto wY = [](const Formula &f) { return Formula::unary(Op::YesterdayWeak, f); };

    REQUIRE(holds_at(p, bin(Op::Until, l, r), i) ==
            holds_at(p, disj(r, conj(l, X(bin(Op::Until, l, r)))), i));
    REQUIRE(holds_at(p, bin(Op::Release, l, r), i) ==
            holds_at(p, conj(r, disj(l, wX(bin(Op::Release, l, r)))), i));
    REQUIRE(holds_at(p, bin(Op::Since, l, r), i) ==
            holds_at(p, disj(r, conj(l, Y(bin(Op::Since, l, r)))), i));
    REQUIRE(holds_at(p, bin(Op::Trigger, l, r), i) ==
            holds_at(p, conj(r, disj(l, wY(bin(Op::Trigger, l, r)))), i));
    if (b == 0) {
      for (Op op : {Op::BoundedUntil, Op::BoundedRelease, Op::BoundedSince, Op::BoundedTrigger})
        REQUIRE(holds_at(p, bin(op, l, r, 0), i) == holds_at(p, r, i));
    } else {
      REQUIRE(holds_at(p, bin(Op::BoundedUntil, l, r, b), i) ==
              holds_at(p, disj(r, conj(l, X(bin(Op::BoundedUntil, l, r, b - 1)))), i));
      REQUIRE(holds_at(p, bin(Op::BoundedRelease, l, r, b), i) ==
              holds_at(p, conj(r, disj(l, wX(bin(Op::BoundedRelease, l, r, b - 1)))), i));
      REQUIRE(holds_at(p, bin(Op::BoundedSince, l, r, b), i) ==
              holds_at(p, disj(r, conj(l, Y(bin(Op::BoundedSince, l, r, b - 1)))), i));
      REQUIRE(holds_at(p, bin(Op::BoundedTrigger, l, r, b), i) ==
              holds_at(p, conj(r, disj(l, wY(bin(Op::BoundedTrigger, l, r, b - 1)))), i));
    }
  }
}

TEST_CASE("dualities negate pointwise", "[semantics][property]") {
  const Op ops[] = {Op::And,          Op::Or,          Op::Until,        Op::Release,
                    Op::Since,        Op::Trigger,     Op::BoundedUntil, Op::BoundedRelease,
                    Op::BoundedSince, Op::BoundedTrigger};
  for (std::uint64_t k = 0; k < 200; ++k) {
    Rng rng(case_seed(22, k));
    const Formula l = random_formula(rng, rng.between(1, 4), 3);
    const Formula r = random_formula(rng, rng.between(1, 4), 3);
    const Bound b = rng.below(4);
    Path p = random_path(rng, rng.between(1, 9));
    for (Op op : ops) {
      const BoolSeq pos = eval_seq(p, bin(op, l, r, b));
      const BoolSeq neg = eval_seq(p, bin(dual(op), negation(l), negation(r), b));
      REQUIRE(neg == pos.complement());
    }
    for (Op op : {Op::NextStrong, Op::NextWeak, Op::YesterdayStrong, Op::YesterdayWeak})
      REQUIRE(eval_seq(p, Formula::unary(dual(op), negation(l))) ==
              eval_seq(p, Formula::unary(op, l)).complement());
  }
}

TEST_CASE("large bounds coincide with unbounded operators", "[semantics][property]") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    Rng rng(case_seed(23, k));
    const Formula l = random_formula(rng, rng.between(1, 4), 3);
    const Formula r = random_formula(rng, rng.between(1, 4), 3);
    Path p = random_path(rng, rng.between(1, 12));
    const Bound b = p.size() + rng.below(5);
    for (Op op : {Op::Until, Op::Release, Op::Since, Op::Trigger})
      REQUIRE(eval_seq(p, bin(bounded_of(op), l, r, b)) == eval_seq(p, bin(op, l, r)));
  }
}

TEST_CASE("eval_seq agrees with holds_at", "[semantics][property]") {
  for (std::uint64_t k = 0; k < 200; ++k) {
    Rng rng(case_seed(24, k));
    Formula f = random_formula(rng, rng.between(1, 8), 4);
    Path p = random_path(rng, rng.between(1, 8));
    BoolSeq s = eval_seq(p, f);
    for (std::size_t i = 0; i < p.size(); ++i)
      REQUIRE(s[i] == holds_at(p, f, i));
  }
}
