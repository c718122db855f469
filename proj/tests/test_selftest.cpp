#include <pathcheck/selftest.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace pathcheck;

TEST_CASE("campaign passes with the real builder", "[selftest]") {
  CampaignOptions opt;
  opt.seed = 17;
  opt.cases = 500;
  auto r = run_campaign(opt);
  CHECK(r.passed());
  CHECK(r.cases_run == 500);
}

TEST_CASE("a corrupted builder is caught and minimized", "[selftest]") {
  CampaignOptions opt;
  opt.seed = 1;
  opt.cases = 2000;
  opt.partial = [](std::size_t n, Op op, Bound b, Side side, const BoolSeq &s) {
    if (op == Op::Until && side == Side::Right)
      op = Op::Release;
    return build_partial(n, op, b, side, s);
  };
  auto r = run_campaign(opt);
  REQUIRE_FALSE(r.passed());
  const Discrepancy &d = *r.failure;
  CHECK(d.expected == eval_seq(d.path, d.formula));
  CHECK(d.actual != d.expected);
  CHECK(node_count(d.formula) <= 5);
  CHECK(d.path.size() <= 4);
  // The minimized instance still fails.
  CHECK(check(d.formula, d.path, CheckOptions{Engine::Circuit, 1, opt.partial, {}, {}}).sequence !=
        d.expected);
}

TEST_CASE("a throwing builder is reported as a discrepancy", "[selftest]") {
  CampaignOptions opt;
  opt.cases = 200;
  opt.partial = [](std::size_t n, Op op, Bound b, Side side, const BoolSeq &s) {
    if (op == Op::Since)
      throw StructureError("since is broken");
    return build_partial(n, op, b, side, s);
  };
  auto r = run_campaign(opt);
  REQUIRE_FALSE(r.passed());
  CHECK(r.failure->error == "since is broken");
}

TEST_CASE("fixed seeds reproduce the case list", "[selftest]") {
  CHECK(case_list(99, 50) == case_list(99, 50));
  CHECK(case_list(99, 50) != case_list(100, 50));
  auto caps = GenCaps{7, 9, 3};
  for (std::uint64_t i = 0; i < 200; ++i) {
    Instance in = random_instance(5, i, caps);
    REQUIRE(node_count(in.formula) <= 7);
    REQUIRE(in.path.size() >= 1);
    REQUIRE(in.path.size() <= 9);
    REQUIRE(max_bound(in.formula) <= 3);
  }
}

TEST_CASE("random formulas have the requested size", "[selftest]") {
  Rng rng(4);
  for (std::size_t k = 1; k <= 30; ++k)
    REQUIRE(node_count(random_formula(rng, k, 5)) == k);
  for (std::size_t m = 1; m <= 50; ++m) {
    Formula f = random_binary_tree(rng, m, 5);
    REQUIRE(is_pnf(f));
    REQUIRE(2 * m - 1 <= node_count(f));
  }
}

TEST_CASE("Rng draws are bounded and reproducible", "[selftest]") {
  Rng a(3), b(3);
  for (int k = 0; k < 1000; ++k) {
    const std::uint64_t x = a.below(7);
    REQUIRE(x < 7);
    REQUIRE(x == b.below(7));
  }
}

TEST_CASE("bench rows obey the stage bound", "[selftest][bench]") {
  auto rows = run_bench(1, {1, 5, 33}, {4, 9}, {1, 8});
  CHECK(rows.size() == 3 * 2 * 3);
  std::ostringstream csv;
  csv << bench_header() << "\n";
  for (const auto &r : rows) {
    if (r.engine == Engine::Circuit)
      REQUIRE(r.stages <= ceil_log2(r.leaves));
    csv << to_csv_row(r) << "\n";
  }
  for (std::size_t i = 0; i + 1 < rows.size(); i += 3) {
    CHECK(rows[i].satisfied == rows[i + 1].satisfied);
    CHECK(rows[i].satisfied == rows[i + 2].satisfied);
  }
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "formula_size,trace_length,workers,engine,stages,leaves,wall_ms");
  while (std::getline(in, line))
    CHECK(std::count(line.begin(), line.end(), ',') == 6);
}
