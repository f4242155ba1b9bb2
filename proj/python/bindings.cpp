#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "costquery/builder.hpp"
#include "costquery/errors.hpp"
#include "costquery/instance_io.hpp"
#include "costquery/measures.hpp"
#include "costquery/oracle.hpp"
#include "costquery/scenarios.hpp"
#include "costquery/sim.hpp"
#include "costquery/tree_io.hpp"

namespace py = pybind11;
using namespace costquery;

namespace {

Distribution prior_or_default(const Instance& inst, const std::optional<std::vector<double>>& prior) {
  return prior ? Distribution(*prior) : inst.prior;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Cost-sensitive query trees";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidInstance>(m, "InvalidInstance", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<InconsistentOracle>(m, "InconsistentOracle", base.ptr());

  py::class_<Question>(m, "Question")
      .def(py::init([](std::string id, double cost, std::vector<Answer> answers) {
             return Question{std::move(id), cost, std::move(answers)};
           }),
           py::arg("id"), py::arg("cost"), py::arg("answers"))
      .def_readwrite("id", &Question::id)
      .def_readwrite("cost", &Question::cost)
      .def_readwrite("answers", &Question::answers)
      .def("__repr__", [](const Question& q) { return "Question('" + q.id + "', cost=" + std::to_string(q.cost) + ")"; });

  py::class_<Instance>(m, "Instance")
      .def(py::init([](std::vector<std::string> hypotheses, std::vector<double> prior, std::vector<Question> questions) {
             return Instance{std::move(hypotheses), Distribution(std::move(prior)), std::move(questions)};
           }),
           py::arg("hypotheses"), py::arg("prior"), py::arg("questions"))
      .def_static("from_json", [](const std::string& text) { return parse_instance(text); })
      .def_static("load", [](const std::string& path) { return load_instance(path); })
      .def("to_json", &dump_instance)
      .def("save", [](const Instance& inst, const std::string& path) { save_instance(inst, path); })
      .def_readonly("hypotheses", &Instance::hypotheses)
      .def_property_readonly("prior", [](const Instance& inst) {
        const auto v = inst.prior.values();
        return std::vector<double>(v.begin(), v.end());
      })
      .def_readonly("questions", &Instance::questions)
      .def_property_readonly("n", &Instance::num_hypotheses)
      .def_property_readonly("m", &Instance::num_questions);

  m.def("validate", [](const Instance& inst) {
    const auto report = validate_instance(inst);
    py::dict out;
    py::list errors;
    for (const auto& e : report.errors) errors.append(e.message);
    out["ok"] = report.ok();
    out["errors"] = errors;
    out["warnings"] = report.warnings;
    return out;
  });

  py::class_<QueryTree>(m, "QueryTree")
      .def_property_readonly("node_count", &QueryTree::node_count)
      .def("leaves", &QueryTree::leaves)
      .def("to_json", [](const QueryTree& t, const Instance& inst) { return dump_tree(t, inst); })
      .def("to_dot", &tree_to_dot)
      .def_static("from_json", &parse_tree, py::arg("text"), py::arg("instance"));

  m.def("greedy_tree", py::overload_cast<const Instance&>(&greedy_tree));
  m.def("epsilon_greedy_tree", [](const Instance& inst, double epsilon) {
    return epsilon_greedy_tree(inst, EpsilonPolicy(epsilon));
  }, py::arg("instance"), py::arg("epsilon"));
  m.def("greedy_rounded_tree", [](const Instance& inst) {
    auto built = greedy_rounded_tree(inst);
    return py::make_tuple(std::move(built.tree), built.cost.expected_cost);
  });
  m.def("round_distribution", [](const Instance& inst) {
    const auto r = round_distribution(inst);
    py::dict out;
    out["mass"] = std::vector<double>(r.mass.values().begin(), r.mass.values().end());
    out["donor"] = r.donor;
    out["bumped"] = r.bumped;
    out["threshold"] = r.threshold;
    return out;
  });
  m.def("optimal_tree", [](const Instance& inst, std::size_t cap_n, bool prune) {
    auto result = optimal_tree(inst, {.cap_n = cap_n, .prune = prune});
    return py::make_tuple(std::move(result.tree), result.cost);
  }, py::arg("instance"), py::arg("cap_n") = kDefaultOracleCap, py::arg("prune") = false);

  m.def("tree_cost", [](const QueryTree& t, const Instance& inst, std::optional<std::vector<double>> prior) {
    return tree_cost(t, inst, prior_or_default(inst, prior)).expected_cost;
  }, py::arg("tree"), py::arg("instance"), py::arg("prior") = py::none());
  m.def("path_cost", &path_cost, py::arg("tree"), py::arg("instance"), py::arg("hypothesis"));
  m.def("validate_tree", [](const QueryTree& t, const Instance& inst) {
    std::vector<std::string> errors;
    for (const auto& e : validate_tree(t, inst).errors) errors.push_back(e.message);
    return errors;
  });

  m.def("shrinkage", [](const Instance& inst, std::vector<HypothesisIndex> s, QuestionIndex q) {
    const auto v = shrinkage(VersionSpace(std::move(s)), inst.prior, inst.questions.at(q));
    return py::make_tuple(v.delta, v.ratio);
  }, py::arg("instance"), py::arg("version_space"), py::arg("question"));
  m.def("collision_probability", [](std::vector<double> p) { return collision_probability(Distribution(std::move(p))); });
  m.def("huffman_cost", [](std::vector<double> p) { return huffman_cost(Distribution(std::move(p))); });
  m.def("entropy", [](std::vector<double> p) { return entropy(Distribution(std::move(p))); });

  m.def("gen_random", [](std::uint64_t seed, std::size_t n, std::size_t m_, std::size_t k, double cost_low,
                         double cost_high, double concentration) {
    return gen_random({seed, n, m_, k, cost_low, cost_high, concentration});
  }, py::arg("seed") = 1, py::arg("n") = 6, py::arg("m") = 6, py::arg("k") = 2, py::arg("cost_low") = 1.0,
        py::arg("cost_high") = 1.0, py::arg("concentration") = 1.0);
  m.def("gen_compression", [](std::vector<double> prior, std::size_t max_blocks) {
    return gen_compression(Distribution(std::move(prior)), kDefaultCompressionCap, max_blocks);
  }, py::arg("prior"), py::arg("max_blocks") = 2);

  m.def("simulate", [](const QueryTree& t, const Instance& inst, std::size_t trials, std::uint64_t seed) {
    const auto est = simulate(t, inst, inst.prior, trials, seed);
    return py::make_tuple(est.mean, est.standard_error);
  }, py::arg("tree"), py::arg("instance"), py::arg("trials") = 10000, py::arg("seed") = 1);
  m.def("play", [](const Instance& inst, HypothesisIndex target) {
    HypothesisOracle oracle(target);
    const auto t = run_session(inst, SessionStrategy::online_greedy(), oracle);
    py::list questions;
    for (const auto& step : t.steps) questions.append(inst.questions[step.question].id);
    return py::make_tuple(questions, t.total_cost);
  }, py::arg("instance"), py::arg("target"));
}
