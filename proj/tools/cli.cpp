#include "cli.hpp"

#include <istream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "costquery/bounds.hpp"
#include "costquery/builder.hpp"
#include "costquery/errors.hpp"
#include "costquery/format.hpp"
#include "costquery/instance_io.hpp"
#include "costquery/oracle.hpp"
#include "costquery/scenarios.hpp"
#include "costquery/sim.hpp"
#include "costquery/tree_io.hpp"

namespace costquery::cli {

namespace {

struct Flags {
  std::string instance;
  std::string algorithm = "greedy";
  double epsilon = 0.0;
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::string out;
  std::string dot;
  std::optional<std::size_t> cap_n;
  std::string tree;
  bool debug = false;

  // gen
  std::string kind = "random";
  GeneratorConfig generator;
  double overhead = 0.0;
  std::size_t max_batch = 2;
  std::string mode = "sum";
  std::size_t max_blocks = 2;
  std::string labels;

  // report
  std::size_t count = 200;
  std::size_t max_n = 8;
  std::size_t max_m = 12;
  std::size_t max_k = 4;
};

class Runner {
 public:
  Runner(const Flags& flags, std::istream& in, std::ostream& out, std::ostream& err)
      : f_(flags), in_(in), out_(out), err_(err) {}

  int validate() {
    const Instance inst = load_instance(f_.instance);
    const auto report = validate_instance(inst);
    for (const auto& w : report.warnings) out_ << "warning: " << w << "\n";
    for (const auto& e : report.errors) out_ << "error: " << e.message << "\n";
    if (!report.ok()) return kInvalidInstance;
    out_ << "valid: " << inst.num_hypotheses() << " hypotheses, " << inst.num_questions() << " questions\n";
    return kOk;
  }

  int build() {
    if (f_.algorithm == "eps") (void)EpsilonPolicy(f_.epsilon);  // flag errors before I/O
    const Instance inst = load_valid();
    const QueryTree tree = build_with(inst, f_.algorithm);
    emit_tree(tree, inst);
    report_cost(tree_cost(tree, inst, inst.prior).expected_cost);
    return kOk;
  }

  int eval() {
    const Instance inst = load_valid();
    const QueryTree tree = parse_tree(read_text_file(f_.tree), inst);
    const auto check = validate_tree(tree, inst);
    for (const auto& e : check.errors) err_ << "tree error: " << e.message << "\n";
    if (!check.ok()) return kInvalidInstance;
    const auto report = tree_cost(tree, inst, inst.prior);
    out_ << "expected cost: " << format_number(report.expected_cost) << "\n";
    out_ << "max depth: " << report.max_depth << "\n";
    for (const auto& [h, cost] : report.per_hypothesis) {
      out_ << "  " << inst.hypotheses[h] << ": " << format_number(cost) << "\n";
    }
    return kOk;
  }

  int optimal() {
    const Instance inst = load_valid();
    OracleOptions options;
    options.cap_n = f_.cap_n ? *f_.cap_n : oracle_cap_from_env();
    const auto result = optimal_tree(inst, options);
    emit_tree(result.tree, inst);
    std::ostream& os = f_.out.empty() ? err_ : out_;
    os << "optimal cost: " << format_number(result.cost) << "\n";
    os << "subproblems: " << result.subproblems_solved << "\n";
    return kOk;
  }

  int simulate() {
    const Instance inst = load_valid();
    const QueryTree tree = f_.tree.empty() ? build_with(inst, f_.algorithm) : parse_tree(read_text_file(f_.tree), inst);
    const auto est = costquery::simulate(tree, inst, inst.prior, f_.trials, f_.seed);
    out_ << "trials: " << est.trials << "\n";
    out_ << "mean cost: " << format_number(est.mean) << "\n";
    out_ << "standard error: " << format_number(est.standard_error) << "\n";
    out_ << "expected cost: " << format_number(tree_cost(tree, inst, inst.prior).expected_cost) << "\n";
    return kOk;
  }

  int play() {
    const Instance inst = load_valid();
    StreamOracle oracle(in_, out_);
    const auto transcript = run_session(inst, SessionStrategy::online_greedy(), oracle);
    out_ << "identified " << inst.hypotheses[transcript.identified] << " cost " << format_number(transcript.total_cost)
         << "\n";
    if (!f_.out.empty()) write_text_file(f_.out, transcript_to_jsonl(transcript, inst));
    return kOk;
  }

  int gen() {
    Instance inst;
    if (f_.kind == "random") {
      GeneratorConfig g = f_.generator;
      g.seed = f_.seed;
      inst = gen_random(g);
    } else if (f_.kind == "compression") {
      Prior prior;
      if (!f_.instance.empty()) {
        prior = load_instance(f_.instance).prior;
      } else {
        GeneratorConfig g = f_.generator;
        g.seed = f_.seed;
        prior = gen_random(g).prior;
      }
      inst = gen_compression(prior, f_.cap_n.value_or(kDefaultCompressionCap), f_.max_blocks);
    } else if (f_.kind == "batch") {
      const BatchMode mode = f_.mode == "max" ? BatchMode::kMax : BatchMode::kSum;
      inst = gen_batch(load_valid(), f_.overhead, f_.max_batch, mode);
    } else {
      inst = gen_from_labels();
    }
    const std::string text = dump_instance(inst);
    if (f_.out.empty()) {
      out_ << text;
    } else {
      write_text_file(f_.out, text);
    }
    return kOk;
  }

  int report() {
    ReportConfig cfg;
    cfg.suite.instances = f_.count;
    cfg.suite.seed = f_.seed;
    cfg.suite.max_n = f_.max_n;
    cfg.suite.max_m = f_.max_m;
    cfg.suite.max_k = f_.max_k;
    cfg.oracle.cap_n = f_.cap_n ? *f_.cap_n : oracle_cap_from_env();
    if (cfg.suite.max_n > cfg.oracle.cap_n) {
      throw PreconditionError("--max-n " + std::to_string(cfg.suite.max_n) + " exceeds the oracle cap of " +
                              std::to_string(cfg.oracle.cap_n));
    }
    const auto report = run_bound_report(cfg);
    const std::string csv = report_to_csv(report, cfg);
    if (f_.out.empty()) {
      out_ << csv;
    } else {
      write_text_file(f_.out, csv);
    }
    out_ << report_summary(report);
    return report.failures == 0 ? kOk : kBoundViolation;
  }

 private:
  Instance load_valid() const {
    Instance inst = load_instance(f_.instance);
    require_valid(inst);
    return inst;
  }

  QueryTree build_with(const Instance& inst, const std::string& algorithm) const {
    if (algorithm == "eps") return epsilon_greedy_tree(inst, EpsilonPolicy(f_.epsilon));
    if (algorithm == "rounded") {
      if (inst.num_hypotheses() <= 2) {
        throw PreconditionError("algorithm 'rounded' requires n > 2 hypotheses; instance has " +
                                std::to_string(inst.num_hypotheses()));
      }
      return greedy_rounded_tree(inst).tree;
    }
    return greedy_tree(inst);
  }

  void emit_tree(const QueryTree& tree, const Instance& inst) {
    const std::string json = dump_tree(tree, inst, {.include_version_space = f_.debug});
    if (f_.out.empty()) {
      out_ << json;
    } else {
      write_text_file(f_.out, json);
    }
    if (!f_.dot.empty()) write_text_file(f_.dot, tree_to_dot(tree, inst));
  }

  void report_cost(double cost) {
    // Keep stdout pure JSON when the tree itself goes there.
    (f_.out.empty() ? err_ : out_) << "expected cost: " << format_number(cost) << "\n";
  }

  Instance gen_from_labels() const {
    const auto doc = nlohmann::json::parse(read_text_file(f_.labels));
    std::optional<Prior> prior;
    if (doc.contains("prior")) prior = Distribution(doc.at("prior").get<std::vector<double>>());
    if (f_.kind == "label-cost") {
      return gen_label_cost(doc.at("labelings").get<std::vector<std::vector<Answer>>>(),
                            doc.at("costs").get<std::vector<double>>(), prior);
    }
    return gen_partial_label(doc.at("labels").get<std::vector<std::vector<Answer>>>(), doc.at("full_cost").get<double>(),
                             doc.at("partial_cost").get<double>(), prior);
  }

  const Flags& f_;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Cost-sensitive query trees: build, evaluate, solve exactly, simulate and verify bounds.", "costquery"};
  app.require_subcommand(1);

  auto add_instance = [&f](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--instance", f.instance, "Instance JSON file");
    if (required) opt->required();
  };

  auto* validate = app.add_subcommand("validate", "Check an instance file");
  add_instance(validate, true);

  auto* build = app.add_subcommand("build", "Build a query tree");
  add_instance(build, true);
  build->add_option("--algorithm", f.algorithm, "greedy | eps | rounded")
      ->check(CLI::IsMember({"greedy", "eps", "rounded"}));
  build->add_option("--epsilon", f.epsilon, "Approximation slack for --algorithm eps, in [0, 1)");
  build->add_option("--out", f.out, "Tree JSON output (stdout if omitted)");
  build->add_option("--dot", f.dot, "Graphviz output");
  build->add_flag("--debug", f.debug, "Record the version space at every node");

  auto* eval = app.add_subcommand("eval", "Expected and per-hypothesis cost of a tree");
  add_instance(eval, true);
  eval->add_option("--tree", f.tree, "Tree JSON file")->required();

  auto* optimal = app.add_subcommand("optimal", "Exact minimum expected-cost tree");
  add_instance(optimal, true);
  optimal->add_option("--out", f.out, "Tree JSON output (stdout if omitted)");
  optimal->add_option("--dot", f.dot, "Graphviz output");
  optimal->add_option("--cap-n", f.cap_n, "Largest hypothesis count the oracle accepts");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of a tree's cost");
  add_instance(simulate, true);
  simulate->add_option("--tree", f.tree, "Tree JSON file (built with --algorithm if omitted)");
  simulate->add_option("--algorithm", f.algorithm, "greedy | eps | rounded")
      ->check(CLI::IsMember({"greedy", "eps", "rounded"}));
  simulate->add_option("--epsilon", f.epsilon, "Slack for --algorithm eps");
  simulate->add_option("--trials", f.trials, "Number of sampled targets")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", f.seed, "Sampling seed");

  auto* play = app.add_subcommand("play", "Identify a target interactively with the greedy strategy");
  add_instance(play, true);
  play->add_option("--out", f.out, "Write the session transcript as JSON lines");

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--kind", f.kind, "random | compression | batch | label-cost | partial-label")
      ->check(CLI::IsMember({"random", "compression", "batch", "label-cost", "partial-label"}));
  gen->add_option("--seed", f.seed, "Generator seed");
  gen->add_option("--n", f.generator.n, "Hypotheses");
  gen->add_option("--m", f.generator.m, "Questions");
  gen->add_option("--k", f.generator.k, "Maximum answers per question");
  gen->add_option("--cost-low", f.generator.cost_low, "Lowest question cost");
  gen->add_option("--cost-high", f.generator.cost_high, "Highest question cost");
  gen->add_option("--concentration", f.generator.concentration, "Dirichlet concentration of the prior");
  gen->add_option("--instance", f.instance, "Base instance (batch) or prior source (compression)");
  gen->add_option("--overhead", f.overhead, "Per-batch overhead cost");
  gen->add_option("--max-batch", f.max_batch, "Largest batch size");
  gen->add_option("--mode", f.mode, "sum | max")->check(CLI::IsMember({"sum", "max"}));
  gen->add_option("--max-blocks", f.max_blocks, "Compression: largest number of answer blocks");
  gen->add_option("--cap-n", f.cap_n, "Compression: largest hypothesis count");
  gen->add_option("--labels", f.labels, "Label table JSON for label-cost / partial-label");
  gen->add_option("--out", f.out, "Instance output (stdout if omitted)");

  auto* report = app.add_subcommand("report", "Check the approximation bounds on random instances");
  report->add_option("--count", f.count, "Number of instances");
  report->add_option("--seed", f.seed, "Suite seed");
  report->add_option("--max-n", f.max_n, "Largest hypothesis count");
  report->add_option("--max-m", f.max_m, "Largest question count");
  report->add_option("--max-k", f.max_k, "Largest answer count");
  report->add_option("--cap-n", f.cap_n, "Oracle cap");
  report->add_option("--out", f.out, "CSV output (stdout if omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kBadFlags;
  }

  Runner runner(f, in, out, err);
  try {
    if (*validate) return runner.validate();
    if (*build) return runner.build();
    if (*eval) return runner.eval();
    if (*optimal) return runner.optimal();
    if (*simulate) return runner.simulate();
    if (*play) return runner.play();
    if (*gen) {
      if ((f.kind == "label-cost" || f.kind == "partial-label") && f.labels.empty()) {
        throw PreconditionError("--kind " + f.kind + " needs --labels");
      }
      if (f.kind == "batch" && f.instance.empty()) throw PreconditionError("--kind batch needs --instance");
      return runner.gen();
    }
    if (*report) return runner.report();
  } catch (const InconsistentOracle& e) {
    err << e.what() << "\n";
    return kInconsistentOracle;
  } catch (const InvalidInstance& e) {
    err << e.what() << "\n";
    return kInvalidInstance;
  } catch (const IoError& e) {
    err << e.what() << "\n";
    return kIoError;
  } catch (const PreconditionError& e) {
    err << e.what() << "\n";
    return kBadFlags;
  } catch (const nlohmann::json::exception& e) {
    err << "malformed JSON: " << e.what() << "\n";
    return kInvalidInstance;
  }
  return kBadFlags;
}

}  // namespace costquery::cli
