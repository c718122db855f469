#include <pathcheck/pathcheck.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace pathcheck;

namespace {

constexpr int kSatisfied = 0;
constexpr int kViolated = 1;
constexpr int kError = 2;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write '" + path + "'");
  out << text;
}

std::size_t default_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

struct Input {
  std::string formula;
  std::string formula_file;
  std::string trace;
  std::string format = "csv";

  Formula load_formula() const {
    return parse(formula_file.empty() ? formula : read_file(formula_file));
  }
  Path load_path() const {
    return load_trace(read_file(trace), format == "jsonl" ? TraceFormat::Jsonl : TraceFormat::Csv);
  }
};

void add_input(CLI::App *cmd, Input &in, bool trace_required) {
  auto *f = cmd->add_option("--formula", in.formula, "Formula text");
  auto *ff = cmd->add_option("--formula-file", in.formula_file, "File holding the formula");
  f->excludes(ff);
  auto *t = cmd->add_option("--trace", in.trace, "Trace file");
  if (trace_required) {
    t->required();
  }
  cmd->add_option("--format", in.format, "Trace format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
}

// "U[3]" -> BoundedUntil, 3
std::pair<Op, Bound> parse_op(const std::string &text) {
  std::string name = text;
  std::optional<Bound> bound;
  if (auto open = text.find('['); open != std::string::npos) {
    if (text.back() != ']')
      throw Error("operator '" + text + "': expected ']'");
    name = text.substr(0, open);
    const std::string digits = text.substr(open + 1, text.size() - open - 2);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
      throw Error("operator '" + text + "': bound is not a decimal natural");
    bound = std::stoull(digits);
  }
  static const std::vector<std::pair<std::string, Op>> names{
      {"&", Op::And},         {"and", Op::And},           {"|", Op::Or},
      {"or", Op::Or},         {"X", Op::NextStrong},      {"wX", Op::NextWeak},
      {"Y", Op::YesterdayStrong}, {"wY", Op::YesterdayWeak}, {"U", Op::Until},
      {"R", Op::Release},     {"S", Op::Since},           {"T", Op::Trigger}};
  for (const auto &[n, op] : names) {
    if (n != name)
      continue;
    if (bound) {
      if (!is_binary(op) || op == Op::And || op == Op::Or)
        throw Error("operator '" + name + "' takes no bound");
      return {bounded_of(op), *bound};
    }
    return {op, 0};
  }
  throw Error("unknown operator '" + name + "'");
}

int cmd_check(const Input &in, const std::string &engine, std::size_t workers, bool emit_sequence,
              const std::string &emit_dot) {
  const Formula f = in.load_formula();
  const Path rho = in.load_path();
  CheckOptions opt;
  opt.engine = engine == "naive" ? Engine::Naive : Engine::Circuit;
  opt.workers = workers;
  std::string dot;
  if (!emit_dot.empty() && opt.engine == Engine::Circuit) {
    opt.on_stage = [&](const ContractionTree &t, std::size_t stage, int half) {
      std::vector<std::pair<std::string, TransducerCircuit>> parts;
      for (std::size_t i = 1; i < t.nodes.size(); ++i)
        if (t.nodes[i].alive)
          parts.emplace_back(print(t.nodes[i].context), t.nodes[i].label);
      dot += to_dot(parts, "stage " + std::to_string(stage + 1) + (half ? " right" : " left"));
    };
  }
  const CheckResult r = check(f, rho, opt);
  std::cout << (r.satisfied ? "SATISFIED" : "VIOLATED") << "\n";
  std::cout << "engine: " << engine_name(opt.engine) << "\n";
  std::cout << "workers: " << workers << "\n";
  std::cout << "stages: " << r.stats.stages << "\n";
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
  std::cout << "time_ms: " << ms << "\n";
  if (emit_sequence)
    std::cout << "sequence: " << r.sequence.to_string() << "\n";
  if (!emit_dot.empty())
    write_output(emit_dot, dot);
  return r.satisfied ? kSatisfied : kViolated;
}

struct DotArgs {
  Input in;
  std::string op;
  std::string side = "right";
  std::string seq;
  std::size_t length = 0;
  bool evaluated = false;
  std::string output;
};

int cmd_dot(const DotArgs &a) {
  if (!a.in.trace.empty()) {
    if (a.in.formula.empty() && a.in.formula_file.empty())
      throw Error("--trace needs --formula or --formula-file");
    const Formula f = a.in.load_formula();
    const Path rho = a.in.load_path();
    ContractionTree t = init_tree(prune_bounds(to_pnf(f), rho.size()), rho);
    auto snapshot = [](const ContractionTree &tree, const std::string &title) {
      std::vector<std::pair<std::string, TransducerCircuit>> parts;
      for (std::size_t i = 1; i < tree.nodes.size(); ++i)
        if (tree.nodes[i].alive)
          parts.emplace_back(print(tree.nodes[i].context), tree.nodes[i].label);
      return to_dot(parts, title);
    };
    std::string out = snapshot(t, "initial");
    ContractionOptions opt;
    opt.on_stage = [&](const ContractionTree &tree, std::size_t stage, int half) {
      out += snapshot(tree, "stage " + std::to_string(stage + 1) + (half ? " right" : " left"));
    };
    run_contraction(t, opt);
    write_output(a.output, out);
    return 0;
  }

  if (a.op.empty())
    throw Error("dot needs --op (builder circuit) or --formula with --trace");
  const auto [op, bound] = parse_op(a.op);
  const Side side = a.side == "left" ? Side::Left : Side::Right;
  TransducerCircuit c;
  if (is_shift(op)) {
    const std::size_t n = a.length ? a.length : BoolSeq::from_string(a.seq).size();
    c = build_shift(n, op);
  } else {
    if (a.seq.empty())
      throw Error("--op " + a.op + " needs --seq");
    const BoolSeq s = BoolSeq::from_string(a.seq);
    const std::size_t n = a.length ? a.length : s.size();
    if (s.size() != n)
      throw ArityError("--seq has " + std::to_string(s.size()) + " values but --length is " +
                       std::to_string(n));
    if (op == Op::And || op == Op::Or)
      c = build_boolean(n, op, s);
    else if (is_bounded(op))
      c = a.evaluated ? build_bounded(n, op, bound, side, s)
                      : construct_bounded(n, op, bound, side, s);
    else
      c = a.evaluated ? build_unbounded(n, op, side, s) : construct_unbounded(n, op, side, s);
  }
  write_output(a.output, to_dot(c, a.op + " " + a.side));
  return 0;
}

struct SelftestArgs {
  std::uint64_t seed = 1;
  std::size_t cases = 10000;
  std::size_t workers = 1;
  GenCaps caps;
  bool inject_fault = false;
};

int cmd_selftest(const SelftestArgs &a) {
  CampaignOptions opt;
  opt.seed = a.seed;
  opt.cases = a.cases;
  opt.caps = a.caps;
  opt.workers = a.workers;
  if (a.inject_fault) {
    // Until with a known right side is built as Release.
    opt.partial = [](std::size_t n, Op op, Bound b, Side side, const BoolSeq &s) {
      if (op == Op::Until && side == Side::Right)
        op = Op::Release;
      return build_partial(n, op, b, side, s);
    };
  }
  const CampaignResult r = run_campaign(opt);
  std::cout << "seed: " << a.seed << "\n";
  std::cout << "cases: " << r.cases_run << "\n";
  if (r.passed()) {
    std::cout << "discrepancies: 0\nPASS\n";
    return 0;
  }
  const Discrepancy &d = *r.failure;
  std::cout << "discrepancies: 1 (case " << d.index << ")\nFAIL\n";
  std::cout << "formula: " << print(d.formula) << "\n";
  std::cout << "expected: " << d.expected.to_string() << "\n";
  if (d.error.empty())
    std::cout << "actual: " << d.actual.to_string() << "\n";
  else
    std::cout << "error: " << d.error << "\n";
  std::cout << "trace:\n" << to_csv(d.path);
  return 1;
}

struct BenchArgs {
  std::uint64_t seed = 1;
  std::vector<std::size_t> leaves{4, 16, 64, 256};
  std::vector<std::size_t> lengths{8, 32, 128};
  std::vector<std::size_t> workers{1, 2, 4};
};

int cmd_bench(const BenchArgs &a) {
  std::cout << bench_header() << "\n";
  for (const BenchRow &r : run_bench(a.seed, a.leaves, a.lengths, a.workers))
    std::cout << to_csv_row(r) << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Path checking for temporal formulas over finite traces"};
  app.require_subcommand(1);

  Input check_in;
  std::string engine = "circuit";
  std::size_t workers = default_workers();
  bool emit_sequence = false;
  std::string emit_dot;
  auto *check_cmd = app.add_subcommand("check", "Decide whether a trace satisfies a formula");
  add_input(check_cmd, check_in, true);
  check_cmd->add_option("--engine", engine, "circuit or naive")
      ->check(CLI::IsMember({"circuit", "naive"}));
  check_cmd->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  check_cmd->add_flag("--emit-sequence", emit_sequence, "Print the value at every position");
  check_cmd->add_option("--emit-dot", emit_dot, "Write every contraction stage as DOT");

  DotArgs dot;
  auto *dot_cmd = app.add_subcommand("dot", "Write circuits as Graphviz DOT");
  add_input(dot_cmd, dot.in, false);
  dot_cmd->add_option("--op", dot.op, "Operator, e.g. U[3], R, X, &");
  dot_cmd->add_option("--side", dot.side, "Known operand")
      ->check(CLI::IsMember({"left", "right"}));
  dot_cmd->add_option("--seq", dot.seq, "Known operand's values, e.g. 0,1,0");
  dot_cmd->add_option("--length", dot.length, "Path length");
  dot_cmd->add_flag("--evaluated", dot.evaluated, "Emit the evaluated circuit");
  dot_cmd->add_option("-o,--output,--emit-dot", dot.output, "Output file (default stdout)");

  SelftestArgs st;
  auto *st_cmd = app.add_subcommand("selftest", "Compare both engines on random instances");
  st_cmd->add_option("--seed", st.seed, "Campaign seed");
  st_cmd->add_option("--cases", st.cases, "Number of instances");
  st_cmd->add_option("--workers", st.workers, "Worker threads")->check(CLI::PositiveNumber);
  st_cmd->add_option("--max-nodes", st.caps.max_nodes, "Formula size cap")
      ->check(CLI::PositiveNumber);
  st_cmd->add_option("--max-length", st.caps.max_length, "Trace length cap")
      ->check(CLI::PositiveNumber);
  st_cmd->add_option("--max-bound", st.caps.max_bound, "Bound cap");
  st_cmd->add_flag("--inject-fault", st.inject_fault, "Use a deliberately broken builder");

  BenchArgs bench;
  auto *bench_cmd = app.add_subcommand("bench", "Time both engines over a grid of sizes");
  bench_cmd->add_option("--seed", bench.seed, "Grid seed");
  bench_cmd->add_option("--leaves", bench.leaves, "Formula leaf counts")->delimiter(',');
  bench_cmd->add_option("--lengths", bench.lengths, "Trace lengths")->delimiter(',');
  bench_cmd->add_option("--workers", bench.workers, "Worker counts")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*check_cmd) {
      if (check_in.formula.empty() && check_in.formula_file.empty())
        throw Error("one of --formula or --formula-file is required");
      return cmd_check(check_in, engine, workers, emit_sequence, emit_dot);
    }
    if (*dot_cmd)
      return cmd_dot(dot);
    if (*st_cmd)
      return cmd_selftest(st);
    if (*bench_cmd)
      return cmd_bench(bench);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
