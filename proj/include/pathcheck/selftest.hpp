#pragma once

#include <pathcheck/contraction.hpp>
#include <pathcheck/parse.hpp>
#include <pathcheck/random.hpp>
#include <pathcheck/semantics.hpp>

#include <cstddef>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace pathcheck {

struct CampaignOptions {
  std::uint64_t seed = 1;
  std::size_t cases = 10000;
  GenCaps caps;
  std::size_t workers = 1;
  PartialBuilder partial; // replaces the real builder when set
};

struct Discrepancy {
  std::size_t index = 0;
  Formula formula;
  Path path = Path::of_length(0);
  BoolSeq expected;
  BoolSeq actual;
  std::string error; // set when the circuit engine threw
};

struct CampaignResult {
  std::size_t cases_run = 0;
  std::optional<Discrepancy> failure;
  bool passed() const noexcept { return !failure; }
};

namespace detail {

// Circuit engine result, or nullopt with `error` set when it throws.
inline std::optional<BoolSeq> circuit_sequence(const Formula &f, const Path &rho,
                                               const CampaignOptions &opt, std::string *error) {
  CheckOptions co;
  co.workers = opt.workers;
  co.partial = opt.partial;
  try {
    return check(f, rho, co).sequence;
  } catch (const std::exception &e) {
    if (error)
      *error = e.what();
    return std::nullopt;
  }
}

inline bool disagrees(const Formula &f, const Path &rho, const CampaignOptions &opt) {
  auto got = circuit_sequence(f, rho, opt, nullptr);
  return !got || *got != eval_seq(rho, f);
}

// Replaces the preorder-`target`th node of f by `with`.
inline Formula replace_node(const Formula &f, std::size_t &counter, std::size_t target,
                            const Formula &with) {
  if (counter++ == target)
    return with;
  if (f.is_atom())
    return f;
  if (is_unary(f.op()))
    return Formula::unary(f.op(), replace_node(f.child(), counter, target, with));
  Formula l = replace_node(f.left(), counter, target, with);
  Formula r = replace_node(f.right(), counter, target, with);
  return Formula::binary(f.op(), l, r, f.bound());
}

} // namespace detail

/// Greedy shrinking of a failing instance: halve the path, replace formula
/// nodes by their operands, until neither shrinks further.
inline Instance minimize(Instance in, const std::function<bool(const Formula &, const Path &)> &fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    const std::size_t n = in.path.size();
    if (n > 1) {
      const std::size_t half = n / 2;
      for (auto [first, count] : {std::pair{std::size_t{0}, half}, std::pair{half, n - half}}) {
        Path p = in.path.slice(first, count);
        if (fails(in.formula, p)) {
          in.path = std::move(p);
          progress = true;
          break;
        }
      }
      if (progress)
        continue;
    }
    const auto occ = subformula_occurrences(in.formula);
    for (const auto &o : occ) {
      if (o.formula.is_atom())
        continue;
      std::vector<Formula> options{o.formula.left()};
      if (is_binary(o.formula.op()))
        options.push_back(o.formula.right());
      for (const auto &child : options) {
        std::size_t counter = 0;
        Formula g = detail::replace_node(in.formula, counter, o.index, child);
        if (fails(g, in.path)) {
          in.formula = g;
          progress = true;
          break;
        }
      }
      if (progress)
        break;
    }
  }
  return in;
}

/// Differential campaign: circuit engine against the reference evaluator
/// on random instances. Stops at the first disagreement, minimized.
inline CampaignResult run_campaign(const CampaignOptions &opt) {
  CampaignResult res;
  for (std::size_t i = 0; i < opt.cases; ++i) {
    Instance in = random_instance(opt.seed, i, opt.caps);
    std::string error;
    auto got = detail::circuit_sequence(in.formula, in.path, opt, &error);
    const BoolSeq expected = eval_seq(in.path, in.formula);
    ++res.cases_run;
    if (got && *got == expected)
      continue;
    Instance small = minimize(in, [&](const Formula &f, const Path &p) {
      return detail::disagrees(f, p, opt);
    });
    Discrepancy d;
    d.index = i;
    d.formula = small.formula;
    d.path = small.path;
    d.expected = eval_seq(small.path, small.formula);
    auto again = detail::circuit_sequence(small.formula, small.path, opt, &d.error);
    if (again)
      d.actual = *again;
    res.failure = std::move(d);
    break;
  }
  return res;
}

/// Printed formulas and traces of a campaign's first `count` cases.
inline std::vector<std::string> case_list(std::uint64_t seed, std::size_t count,
                                          const GenCaps &caps = {}) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count; ++i) {
    Instance in = random_instance(seed, i, caps);
    out.push_back(print(in.formula) + "\n" + to_csv(in.path));
  }
  return out;
}

struct BenchRow {
  std::size_t formula_size = 0;
  std::size_t trace_length = 0;
  std::size_t workers = 1;
  Engine engine = Engine::Circuit;
  std::size_t stages = 0;
  std::size_t leaves = 0;
  double wall_ms = 0;
  bool satisfied = false;
};

inline const char *engine_name(Engine e) { return e == Engine::Circuit ? "circuit" : "naive"; }

inline std::string bench_header() {
  return "formula_size,trace_length,workers,engine,stages,leaves,wall_ms";
}

inline std::string to_csv_row(const BenchRow &r) {
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
  return std::to_string(r.formula_size) + "," + std::to_string(r.trace_length) + "," +
         std::to_string(r.workers) + "," + engine_name(r.engine) + "," +
         std::to_string(r.stages) + "," + std::to_string(r.leaves) + "," + ms;
}

/// One row per (formula size, trace length, workers, engine) on the grid;
/// each cell checks a fresh random binary-tree formula with that many leaves.
inline std::vector<BenchRow> run_bench(std::uint64_t seed, const std::vector<std::size_t> &leaves,
                                       const std::vector<std::size_t> &lengths,
                                       const std::vector<std::size_t> &workers) {
  std::vector<BenchRow> rows;
  std::uint64_t cell = 0;
  for (std::size_t m : leaves) {
    for (std::size_t n : lengths) {
      Rng rng(case_seed(seed, cell++));
      Formula f = random_binary_tree(rng, m, 10);
      Path rho = random_path(rng, n);
      for (std::size_t w : workers) {
        for (Engine e : {Engine::Circuit, Engine::Naive}) {
          if (e == Engine::Naive && w != workers.front())
            continue;
          CheckResult r = check(f, rho, e, w);
          BenchRow row;
          row.formula_size = node_count(f);
          row.trace_length = n;
          row.workers = w;
          row.engine = e;
          row.stages = r.stats.stages;
          row.leaves = r.stats.initial_leaves;
          row.wall_ms = r.wall_ms;
          row.satisfied = r.satisfied;
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

} // namespace pathcheck
