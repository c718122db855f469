#pragma once

#include <pathcheck/error.hpp>
#include <pathcheck/trace.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pathcheck {

using GateId = std::uint32_t;

enum class GateKind : std::uint8_t { Const, Var, And, Or, Id };

/// Label of one gate. `lhs`/`rhs` are meaningful for And/Or, `lhs` alone for Id.
struct Gate {
  GateKind kind = GateKind::Var;
  bool value = false;
  GateId lhs = 0;
  GateId rhs = 0;

  static constexpr Gate constant(bool v) { return {GateKind::Const, v, 0, 0}; }
  static constexpr Gate var() { return {GateKind::Var, false, 0, 0}; }
  static constexpr Gate conj(GateId l, GateId r) { return {GateKind::And, false, l, r}; }
  static constexpr Gate disj(GateId l, GateId r) { return {GateKind::Or, false, l, r}; }
  static constexpr Gate id(GateId s) { return {GateKind::Id, false, s, 0}; }

  bool is_const() const noexcept { return kind == GateKind::Const; }
  bool is_const(bool v) const noexcept { return kind == GateKind::Const && value == v; }
  bool is_var() const noexcept { return kind == GateKind::Var; }
  bool is_op() const noexcept { return kind == GateKind::And || kind == GateKind::Or; }

  /// Number of gates this one directly depends on.
  int arity() const noexcept { return is_op() ? 2 : kind == GateKind::Id ? 1 : 0; }

  friend bool operator==(const Gate &a, const Gate &b) {
    if (a.kind != b.kind)
      return false;
    switch (a.kind) {
    case GateKind::Const: return a.value == b.value;
    case GateKind::Var: return true;
    case GateKind::Id: return a.lhs == b.lhs;
    default: return a.lhs == b.lhs && a.rhs == b.rhs;
    }
  }
};

/// Monotone Boolean circuit: a dense arena of gate labels indexed by GateId.
struct Circuit {
  std::vector<Gate> gates;

  std::size_t size() const noexcept { return gates.size(); }
  const Gate &operator[](GateId g) const { return gates[g]; }
  Gate &operator[](GateId g) { return gates[g]; }

  GateId add(Gate g) {
    gates.push_back(g);
    return static_cast<GateId>(gates.size() - 1);
  }

  friend bool operator==(const Circuit &, const Circuit &) = default;
};

/// Circuit with an ordered input interface (exactly its Var gates) and an
/// ordered output interface.
struct TransducerCircuit {
  Circuit circuit;
  std::vector<GateId> inputs;
  std::vector<GateId> outputs;

  std::size_t input_arity() const noexcept { return inputs.size(); }
  std::size_t output_arity() const noexcept { return outputs.size(); }
  std::size_t size() const noexcept { return circuit.size(); }
  const Gate &output(std::size_t i) const { return circuit[outputs[i]]; }

  friend bool operator==(const TransducerCircuit &, const TransducerCircuit &) = default;
};

// ---------------------------------------------------------------------------
// Structure

/// Gates in dependency order (every gate after the gates it depends on).
/// Throws StructureError on a cyclic dependence.
inline std::vector<GateId> topological_order(const Circuit &c) {
  const std::size_t n = c.size();
  std::vector<std::uint32_t> pending(n, 0);
  std::vector<std::uint32_t> start(n + 1, 0);
  for (GateId g = 0; g < n; ++g) {
    const Gate &gate = c[g];
    const int k = gate.arity();
    if (k >= 1) {
      if (gate.lhs >= n)
        throw StructureError("gate " + std::to_string(g) + " references missing gate");
      ++start[gate.lhs + 1];
    }
    if (k == 2) {
      if (gate.rhs >= n)
        throw StructureError("gate " + std::to_string(g) + " references missing gate");
      ++start[gate.rhs + 1];
    }
    pending[g] = static_cast<std::uint32_t>(k);
  }
  for (std::size_t i = 0; i < n; ++i)
    start[i + 1] += start[i];
  // dependents[start[d] .. start[d+1]) lists the gates that depend on d
  std::vector<GateId> dependents(start[n]);
  std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
  for (GateId g = 0; g < n; ++g) {
    const Gate &gate = c[g];
    const int k = gate.arity();
    if (k >= 1)
      dependents[fill[gate.lhs]++] = g;
    if (k == 2)
      dependents[fill[gate.rhs]++] = g;
  }

  std::vector<GateId> order;
  order.reserve(n);
  for (GateId g = 0; g < n; ++g)
    if (pending[g] == 0)
      order.push_back(g);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const GateId d = order[head];
    for (std::uint32_t e = start[d]; e < start[d + 1]; ++e)
      if (--pending[dependents[e]] == 0)
        order.push_back(dependents[e]);
  }
  if (order.size() != n)
    throw StructureError("circuit contains a cyclic dependence");
  return order;
}

inline bool is_acyclic(const Circuit &c) {
  try {
    topological_order(c);
    return true;
  } catch (const StructureError &) {
    return false;
  }
}

/// Per gate: does any other gate depend on it?
inline std::vector<bool> has_dependents(const Circuit &c) {
  std::vector<bool> used(c.size(), false);
  for (const Gate &g : c.gates) {
    const int k = g.arity();
    if (k >= 1)
      used[g.lhs] = true;
    if (k == 2)
      used[g.rhs] = true;
  }
  return used;
}

/// Every constant gate is a sink.
inline bool is_evaluated(const Circuit &c) {
  auto used = has_dependents(c);
  for (GateId g = 0; g < c.size(); ++g)
    if (c[g].is_const() && used[g])
      return false;
  return true;
}

/// Interface invariants: inputs are exactly the Var gates, listed once; outputs
/// exist and are listed once; the circuit is acyclic.
inline void validate(const TransducerCircuit &t) {
  const std::size_t n = t.circuit.size();
  std::vector<int> seen(n, 0);
  for (GateId g : t.inputs) {
    if (g >= n || !t.circuit[g].is_var())
      throw StructureError("input " + std::to_string(g) + " is not a variable gate");
    if (seen[g]++)
      throw StructureError("input " + std::to_string(g) + " listed twice");
  }
  for (GateId g = 0; g < n; ++g)
    if (t.circuit[g].is_var() && !seen[g])
      throw StructureError("variable gate " + std::to_string(g) + " is not an input");
  std::vector<bool> out(n, false);
  for (GateId g : t.outputs) {
    if (g >= n)
      throw StructureError("output " + std::to_string(g) + " does not exist");
    if (out[g])
      throw StructureError("output " + std::to_string(g) + " listed twice");
    out[g] = true;
  }
  topological_order(t.circuit);
}

// ---------------------------------------------------------------------------
// Evaluation

enum class IdChains { Compress, Keep };

/*!
  Constant propagation to the unique evaluated form.

  One pass in dependency order applies the evaluation rules: And/Or gates
  with two constant operands become constants, a neutral constant operand
  turns the gate into an Id of the other operand, a dominating one makes the
  gate constant, and Ids of constants become constants. With
  IdChains::Compress an Id whose target is itself an Id is redirected to the
  end of the chain. Gate ids never change.
*/
inline Circuit evaluate(const Circuit &c, IdChains chains = IdChains::Compress) {
  Circuit out = c;
  for (GateId g : topological_order(c)) {
    Gate &gate = out[g];
    switch (gate.kind) {
    case GateKind::Const:
    case GateKind::Var:
      break;
    case GateKind::Id: {
      const Gate &target = out[gate.lhs];
      if (target.is_const())
        gate = Gate::constant(target.value);
      else if (chains == IdChains::Compress && target.kind == GateKind::Id)
        gate = Gate::id(target.lhs);
      break;
    }
    case GateKind::And:
    case GateKind::Or: {
      const bool is_and = gate.kind == GateKind::And;
      const Gate &l = out[gate.lhs];
      const Gate &r = out[gate.rhs];
      // The absorbing constant for And is 0, for Or it is 1.
      const bool absorbing = !is_and;
      if (l.is_const(absorbing) || r.is_const(absorbing))
        gate = Gate::constant(absorbing);
      else if (l.is_const() && r.is_const())
        gate = Gate::constant(!absorbing);
      else if (l.is_const())
        gate = Gate::id(gate.rhs);
      else if (r.is_const())
        gate = Gate::id(gate.lhs);
      else
        break;
      if (gate.kind == GateKind::Id && chains == IdChains::Compress &&
          out[gate.lhs].kind == GateKind::Id)
        gate = Gate::id(out[gate.lhs].lhs);
      break;
    }
    }
  }
  return out;
}

inline TransducerCircuit evaluate(const TransducerCircuit &t,
                                  IdChains chains = IdChains::Compress) {
  return {evaluate(t.circuit, chains), t.inputs, t.outputs};
}

/// Value of every gate when all variable gates carry `var_value`.
inline std::vector<bool> simulate_uniform(const Circuit &c, bool var_value) {
  std::vector<bool> v(c.size(), false);
  for (GateId g : topological_order(c)) {
    const Gate &gate = c[g];
    switch (gate.kind) {
    case GateKind::Const: v[g] = gate.value; break;
    case GateKind::Var: v[g] = var_value; break;
    case GateKind::Id: v[g] = v[gate.lhs]; break;
    case GateKind::And: v[g] = v[gate.lhs] && v[gate.rhs]; break;
    case GateKind::Or: v[g] = v[gate.lhs] || v[gate.rhs]; break;
    }
  }
  return v;
}

/*!
  Evaluation by the two-assignment classification: gates that are 0 when all
  variables are 1 are constant 0, gates that are 1 when all variables are 0
  are constant 1, and the remaining gates keep their labels except that a
  dependence on a (now) constant operand is replaced by an Id of the other
  operand. Agrees label-for-label with evaluate(c, IdChains::Keep); kept as
  an independent cross-check of the topological pass.
*/
inline Circuit evaluate_two_pass(const Circuit &c) {
  const auto high = simulate_uniform(c, true);
  const auto low = simulate_uniform(c, false);
  Circuit out = c;
  std::vector<bool> fixed(c.size(), false);
  for (GateId g = 0; g < c.size(); ++g) {
    if (!high[g]) {
      out[g] = Gate::constant(false);
      fixed[g] = true;
    } else if (low[g]) {
      out[g] = Gate::constant(true);
      fixed[g] = true;
    }
  }
  for (GateId g = 0; g < c.size(); ++g) {
    if (fixed[g])
      continue;
    Gate &gate = out[g];
    if (gate.is_op()) {
      // Monotonicity: a constant operand of a live gate is the neutral one.
      if (fixed[gate.lhs])
        gate = Gate::id(gate.rhs);
      else if (fixed[gate.rhs])
        gate = Gate::id(gate.lhs);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transducers

/// Outputs are constants carrying `s`; no inputs.
inline TransducerCircuit constant_circuit(const BoolSeq &s) {
  TransducerCircuit t;
  t.circuit.gates.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    t.outputs.push_back(t.circuit.add(Gate::constant(s[i])));
  return t;
}

/// n variable gates serving as both inputs and outputs.
inline TransducerCircuit identity_transducer(std::size_t n) {
  TransducerCircuit t;
  t.circuit.gates.assign(n, Gate::var());
  for (GateId g = 0; g < n; ++g) {
    t.inputs.push_back(g);
    t.outputs.push_back(g);
  }
  return t;
}

/// Structurally the identity: every output is the corresponding input.
inline bool is_identity(const TransducerCircuit &t) {
  return t.inputs == t.outputs;
}

/*!
  G ⋄ D: disjoint union with D's ids offset by |G|; each input gate I_D(i)
  becomes Id(O_G(i)). Inputs are G's, outputs are D's.
*/
inline TransducerCircuit compose(const TransducerCircuit &g, const TransducerCircuit &d) {
  if (g.output_arity() != d.input_arity())
    throw ArityError("cannot compose: output arity " + std::to_string(g.output_arity()) +
                     " differs from input arity " + std::to_string(d.input_arity()));
  const GateId off = static_cast<GateId>(g.size());
  TransducerCircuit e;
  e.circuit.gates.reserve(g.size() + d.size());
  e.circuit.gates = g.circuit.gates;
  for (Gate gate : d.circuit.gates) {
    gate.lhs += gate.arity() >= 1 ? off : 0;
    gate.rhs += gate.arity() == 2 ? off : 0;
    e.circuit.gates.push_back(gate);
  }
  for (std::size_t i = 0; i < d.inputs.size(); ++i)
    e.circuit[d.inputs[i] + off] = Gate::id(g.outputs[i]);
  e.inputs = g.inputs;
  e.outputs.reserve(d.outputs.size());
  for (GateId o : d.outputs)
    e.outputs.push_back(o + off);
  return e;
}

/*!
  Evaluation of G ⋄ D computed in the staged order: constant outputs of G are
  moved into D (the matching inputs of D become those constants and leave
  D's interface), the reduced D is evaluated on its own, the remaining
  interfaces are composed, and the composition is evaluated. Produces the
  same labels as evaluate(compose(g, d)).
*/
inline TransducerCircuit compose_evaluated(const TransducerCircuit &g,
                                           const TransducerCircuit &d) {
  if (g.output_arity() != d.input_arity())
    throw ArityError("cannot compose: output arity " + std::to_string(g.output_arity()) +
                     " differs from input arity " + std::to_string(d.input_arity()));
  TransducerCircuit g_live{g.circuit, g.inputs, {}};
  TransducerCircuit d_reduced{d.circuit, {}, d.outputs};
  for (std::size_t i = 0; i < g.outputs.size(); ++i) {
    const Gate &out = g.circuit[g.outputs[i]];
    if (out.is_const()) {
      d_reduced.circuit[d.inputs[i]] = Gate::constant(out.value);
    } else {
      g_live.outputs.push_back(g.outputs[i]);
      d_reduced.inputs.push_back(d.inputs[i]);
    }
  }
  d_reduced.circuit = evaluate(d_reduced.circuit);
  return evaluate(compose(g_live, d_reduced));
}

/// f_T(s): outputs of evaluate(constant_circuit(s) ⋄ t).
inline BoolSeq apply(const TransducerCircuit &t, const BoolSeq &s) {
  if (s.size() != t.input_arity())
    throw ArityError("apply: sequence of length " + std::to_string(s.size()) +
                     " for input arity " + std::to_string(t.input_arity()));
  const TransducerCircuit e = evaluate(compose(constant_circuit(s), t));
  BoolSeq out(e.output_arity());
  for (std::size_t i = 0; i < e.output_arity(); ++i) {
    const Gate &g = e.output(i);
    if (!g.is_const())
      throw StructureError("apply: output " + std::to_string(i) + " did not evaluate");
    out.set(i, g.value);
  }
  return out;
}

/// Drops gates that are neither inputs nor reachable from an output.
/// Surviving gates keep their relative order; the function is unchanged.
inline TransducerCircuit compact(const TransducerCircuit &t) {
  const Circuit &c = t.circuit;
  std::vector<bool> keep(c.size(), false);
  std::vector<GateId> stack(t.outputs.begin(), t.outputs.end());
  for (GateId g : t.inputs)
    keep[g] = true;
  while (!stack.empty()) {
    const GateId g = stack.back();
    stack.pop_back();
    if (keep[g] && !c[g].is_var())
      continue;
    keep[g] = true;
    const Gate &gate = c[g];
    if (gate.arity() >= 1 && !keep[gate.lhs])
      stack.push_back(gate.lhs);
    if (gate.arity() == 2 && !keep[gate.rhs])
      stack.push_back(gate.rhs);
  }
  std::vector<GateId> remap(c.size(), 0);
  TransducerCircuit out;
  for (GateId g = 0; g < c.size(); ++g) {
    if (!keep[g])
      continue;
    remap[g] = static_cast<GateId>(out.circuit.size());
    out.circuit.add(c[g]);
  }
  for (Gate &gate : out.circuit.gates) {
    if (gate.arity() >= 1)
      gate.lhs = remap[gate.lhs];
    if (gate.arity() == 2)
      gate.rhs = remap[gate.rhs];
  }
  for (GateId g : t.inputs)
    out.inputs.push_back(remap[g]);
  for (GateId g : t.outputs)
    out.outputs.push_back(remap[g]);
  return out;
}

/// Kind name as used in DOT output: AND, OR, ID, VAR, 0, 1.
inline const char *kind_name(const Gate &g) {
  switch (g.kind) {
  case GateKind::Const: return g.value ? "1" : "0";
  case GateKind::Var: return "VAR";
  case GateKind::And: return "AND";
  case GateKind::Or: return "OR";
  case GateKind::Id: return "ID";
  }
  return "?";
}

} // namespace pathcheck
