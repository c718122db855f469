#pragma once

#include <pathcheck/builder.hpp>
#include <pathcheck/circuit.hpp>
#include <pathcheck/error.hpp>
#include <pathcheck/formula.hpp>
#include <pathcheck/semantics.hpp>
#include <pathcheck/trace.hpp>
#include <pathcheck/worker_pool.hpp>

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

namespace pathcheck {

using PartialBuilder =
    std::function<TransducerCircuit(std::size_t, Op, Bound, Side, const BoolSeq &)>;

inline constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);

/// One occurrence in the contraction tree. The edge from the parent is
/// stored on the child: `label` and `context` describe parent -> this.
struct TreeNode {
  Formula formula; // empty for the root marker
  Formula context; // subformula of the parent that the edge denotes
  std::size_t parent = kNoNode;
  std::array<std::size_t, 2> children{kNoNode, kNoNode};
  TransducerCircuit label;
  bool alive = true;

  bool is_leaf() const noexcept { return children[0] == kNoNode; }
};

/*!
  Tree over the binary and literal occurrences of a PNF formula.

  Node 0 is the root marker; its single child is the topmost occurrence.
  Chains of X/wX/Y/wY are folded into the label of the edge above the
  operand they apply to.
*/
struct ContractionTree {
  std::vector<TreeNode> nodes;
  std::vector<std::size_t> leaves; // left-to-right
  Formula formula;
  Path rho = Path::of_length(0);
  PartialBuilder partial = build_partial;
  std::uint64_t gates_built = 0;

  std::size_t length() const noexcept { return rho.size(); }
  std::size_t root() const noexcept { return 0; }
  const TreeNode &operator[](std::size_t i) const { return nodes[i]; }

  std::size_t live_leaf_count() const {
    std::size_t k = 0;
    for (std::size_t l : leaves)
      k += nodes[l].alive;
    return k;
  }
};

namespace detail {

inline BoolSeq literal_sequence(const Path &rho, const Formula &lit) {
  if (lit.is_atom())
    return atom_sequence(rho, lit.name());
  return atom_sequence(rho, lit.child().name(), true);
}

// Adds the occurrence `sub` under `parent`, folding leading shift operators
// into the edge label.
inline std::size_t attach(ContractionTree &t, std::size_t parent, std::size_t slot,
                          const Formula &sub) {
  const std::size_t n = t.length();
  TransducerCircuit acc = identity_transducer(n);
  Formula g = sub;
  bool folded = false;
  while (is_shift(g.op())) {
    TransducerCircuit shift = build_shift(n, g.op());
    t.gates_built += shift.size();
    acc = compose(shift, acc);
    folded = true;
    g = g.child();
  }
  if (folded)
    acc = compact(evaluate(acc));

  const std::size_t id = t.nodes.size();
  t.nodes.push_back({});
  TreeNode &node = t.nodes.back();
  node.formula = g;
  node.context = sub;
  node.parent = parent;
  node.label = std::move(acc);
  t.nodes[parent].children[slot] = id;

  if (g.is_literal()) {
    t.leaves.push_back(id);
  } else if (is_binary(g.op())) {
    attach(t, id, 0, g.left());
    attach(t, id, 1, g.right());
  } else {
    throw StructureError("formula is not in positive normal form");
  }
  return id;
}

} // namespace detail

/// Contraction tree of a PNF formula over a nonempty path.
inline ContractionTree init_tree(const Formula &f, const Path &rho) {
  if (rho.size() == 0)
    throw TraceError("empty trace");
  if (!is_pnf(f))
    throw StructureError("formula is not in positive normal form");
  ContractionTree t;
  t.formula = f;
  t.rho = rho;
  t.nodes.push_back({}); // root marker
  detail::attach(t, 0, 0, f);
  return t;
}

/// Gates produced by the builders during one contraction step.
struct StepResult {
  std::uint64_t gates_built = 0;
};

/*!
  Contracts leaf `leaf`, its parent P and the edge to its sibling K into a
  single edge from P's parent to K. Only the fields of leaf, P and K and the
  one child slot of P's parent are written, so steps with disjoint
  {leaf, P, K} may run concurrently.
*/
inline StepResult contract_step(ContractionTree &t, std::size_t leaf) {
  if (leaf >= t.nodes.size() || leaf == t.root() || !t.nodes[leaf].alive)
    throw StructureError("contract_step: no such node");
  TreeNode &l = t.nodes[leaf];
  if (!l.is_leaf())
    throw StructureError("contract_step: node " + std::to_string(leaf) + " is not a leaf");
  const std::size_t p = l.parent;
  if (p == t.root())
    throw StructureError("contract_step: leaf has no sibling");
  TreeNode &pn = t.nodes[p];
  const std::size_t side_slot = pn.children[0] == leaf ? 0 : 1;
  const std::size_t k = pn.children[1 - side_slot];
  const std::size_t q = pn.parent;
  const std::size_t n = t.length();

  StepResult r;
  const TransducerCircuit lit = constant_circuit(detail::literal_sequence(t.rho, l.formula));
  r.gates_built += lit.size();
  const BoolSeq s = apply(l.label, apply(lit, BoolSeq{}));

  const Side side = side_slot == 0 ? Side::Left : Side::Right;
  const TransducerCircuit partial = t.partial(n, pn.formula.op(), pn.formula.bound(), side, s);
  r.gates_built += partial.size();

  TreeNode &kn = t.nodes[k];
  kn.label = compact(compose_evaluated(kn.label, compose_evaluated(partial, pn.label)));
  kn.context = pn.context;
  kn.parent = q;
  TreeNode &qn = t.nodes[q];
  qn.children[qn.children[0] == p ? 0 : 1] = k;

  l.alive = false;
  pn.alive = false;
  l.label = {};
  pn.label = {};
  return r;
}

/// Convenience wrapper that also accumulates the gate count on the tree.
inline void contract(ContractionTree &t, std::size_t leaf) {
  t.gates_built += contract_step(t, leaf).gates_built;
}

struct ContractionStats {
  std::size_t initial_leaves = 0;
  std::size_t stages = 0;
  /// Live leaves initially and after every half-stage.
  std::vector<std::size_t> leaf_counts;
  /// Node ids contracted in each half-stage, in leaf-number order.
  std::vector<std::vector<std::size_t>> schedule;
  std::uint64_t gates_built = 0;
};

/// Called after each contraction step (stage, half, leaf); forces sequential steps.
using StepObserver =
    std::function<void(const ContractionTree &, std::size_t, int, std::size_t)>;
/// Called after each half-stage (stage, half).
using StageObserver = std::function<void(const ContractionTree &, std::size_t, int)>;

struct ContractionOptions {
  std::size_t workers = 1;
  StepObserver on_step;
  StageObserver on_stage;
};

inline std::size_t ceil_log2(std::size_t m) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < m)
    ++k;
  return k;
}

namespace detail {

// Nodes whose labels or links a step on `leaf` writes.
inline std::array<std::size_t, 3> footprint(const ContractionTree &t, std::size_t leaf) {
  const std::size_t p = t.nodes[leaf].parent;
  const auto &pn = t.nodes[p];
  return {leaf, p, pn.children[0] == leaf ? pn.children[1] : pn.children[0]};
}

inline void assert_disjoint(const ContractionTree &t, const std::vector<std::size_t> &batch) {
  std::vector<bool> owned(t.nodes.size(), false);
  for (std::size_t leaf : batch)
    for (std::size_t v : footprint(t, leaf)) {
      if (owned[v])
        throw StructureError("contraction steps of one half-stage overlap at node " +
                             std::to_string(v));
      owned[v] = true;
    }
}

} // namespace detail

/*!
  Tree contraction by the odd/even leaf schedule: leaves are numbered
  1..m from left to right; each of the ceil(log2 m) stages contracts the odd
  numbered leaves that are left children, then those that are right
  children, then halves the numbers of the remaining leaves. Returns the
  sequence the root edge denotes, i.e. the value of the whole formula at
  every position.
*/
inline BoolSeq run_contraction(ContractionTree &t, const ContractionOptions &opt = {},
                               ContractionStats *stats = nullptr) {
  ContractionStats local;
  ContractionStats &st = stats ? *stats : local;
  st = {};
  st.initial_leaves = t.leaves.size();
  st.leaf_counts.push_back(t.leaves.size());

  std::vector<std::size_t> numbered = t.leaves; // numbered[i] has number i + 1
  const std::size_t stages = ceil_log2(numbered.size());
  StagedPool pool(opt.on_step ? 1 : opt.workers);

  for (std::size_t stage = 0; stage < stages; ++stage) {
    for (int half = 0; half < 2; ++half) {
      std::vector<std::size_t> batch;
      for (std::size_t i = 0; i < numbered.size(); i += 2) {
        const std::size_t leaf = numbered[i];
        const std::size_t p = t.nodes[leaf].parent;
        if (p == t.root())
          continue;
        if ((t.nodes[p].children[0] == leaf) == (half == 0))
          batch.push_back(leaf);
      }
      detail::assert_disjoint(t, batch);

      std::vector<std::uint64_t> gates(batch.size(), 0);
      if (opt.on_step) {
        for (std::size_t i = 0; i < batch.size(); ++i) {
          gates[i] = contract_step(t, batch[i]).gates_built;
          opt.on_step(t, stage, half, batch[i]);
        }
      } else {
        pool.run(batch.size(),
                 [&](std::size_t i) { gates[i] = contract_step(t, batch[i]).gates_built; });
      }
      t.gates_built += std::accumulate(gates.begin(), gates.end(), std::uint64_t{0});
      st.schedule.push_back(std::move(batch));
      st.leaf_counts.push_back(t.live_leaf_count());
      if (opt.on_stage)
        opt.on_stage(t, stage, half);
    }
    std::vector<std::size_t> survivors;
    for (std::size_t i = 1; i < numbered.size(); i += 2)
      survivors.push_back(numbered[i]);
    if (numbered.size() == 1)
      survivors = numbered;
    numbered = std::move(survivors);
    ++st.stages;
  }

  if (numbered.size() != 1 || t.nodes[numbered.front()].parent != t.root())
    throw StructureError("contraction did not reduce the tree to a single leaf");
  const TreeNode &last = t.nodes[numbered.front()];
  const TransducerCircuit lit = constant_circuit(detail::literal_sequence(t.rho, last.formula));
  t.gates_built += lit.size();
  st.gates_built = t.gates_built;
  return apply(last.label, apply(lit, BoolSeq{}));
}

// ---------------------------------------------------------------------------
// Invariants

/// Violations of the three tree conditions; empty when the tree is sound.
/// The semantic condition is decided with the reference evaluator.
inline std::vector<std::string> verify_tree(const ContractionTree &t, bool semantic = true) {
  std::vector<std::string> bad;
  const std::size_t n = t.length();
  const auto &root = t.nodes[t.root()];
  if (root.children[0] == kNoNode || root.children[1] != kNoNode)
    bad.push_back("root marker must have exactly one child");
  for (std::size_t i = 1; i < t.nodes.size(); ++i) {
    const TreeNode &v = t.nodes[i];
    if (!v.alive)
      continue;
    const std::string where = "node " + std::to_string(i) + ": ";
    const TreeNode &par = t.nodes[v.parent];
    if (!par.alive || (par.children[0] != i && par.children[1] != i))
      bad.push_back(where + "parent does not list this node");
    if (v.is_leaf()) {
      if (v.children[1] != kNoNode)
        bad.push_back(where + "has a right child only");
      if (!v.formula.is_literal())
        bad.push_back(where + "leaf is not a literal");
    } else if (v.children[1] == kNoNode) {
      bad.push_back(where + "inner node with one child");
    } else if (!is_binary(v.formula.op())) {
      bad.push_back(where + "inner node is not a binary operator");
    }
    const TransducerCircuit &c = v.label;
    if (c.input_arity() != n || c.output_arity() != n)
      bad.push_back(where + "edge label arity differs from path length");
    try {
      validate(c);
    } catch (const StructureError &e) {
      bad.push_back(where + e.what());
      continue;
    }
    if (!is_evaluated(c.circuit))
      bad.push_back(where + "edge label is not evaluated");
    if (semantic && bad.empty()) {
      if (apply(c, eval_seq(t.rho, v.formula)) != eval_seq(t.rho, v.context))
        bad.push_back(where + "edge label does not denote its context");
    }
  }
  return bad;
}

// ---------------------------------------------------------------------------
// End to end

enum class Engine { Circuit, Naive };

struct CheckOptions {
  Engine engine = Engine::Circuit;
  std::size_t workers = 1;
  PartialBuilder partial; // defaults to build_partial
  StepObserver on_step;
  StageObserver on_stage;
};

struct CheckResult {
  bool satisfied = false;
  BoolSeq sequence;
  ContractionStats stats;
  double wall_ms = 0;
};

/// Decides rho |= f and returns f's value at every position.
inline CheckResult check(const Formula &f, const Path &rho, const CheckOptions &opt) {
  if (rho.size() == 0)
    throw TraceError("empty trace");
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult res;
  if (opt.engine == Engine::Naive) {
    res.sequence = eval_seq(rho, f);
  } else {
    ContractionTree tree = init_tree(prune_bounds(to_pnf(f), rho.size()), rho);
    if (opt.partial)
      tree.partial = opt.partial;
    res.sequence = run_contraction(tree, {opt.workers, opt.on_step, opt.on_stage}, &res.stats);
  }
  res.satisfied = res.sequence[0];
  res.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

inline CheckResult check(const Formula &f, const Path &rho, Engine engine = Engine::Circuit,
                         std::size_t workers = 1) {
  CheckOptions opt;
  opt.engine = engine;
  opt.workers = workers;
  return check(f, rho, opt);
}

} // namespace pathcheck
