#include "costquery/tree.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "costquery/errors.hpp"

namespace costquery {

QueryTree QueryTree::single_leaf(HypothesisIndex h) {
  QueryTree t;
  t.set_root(t.add_leaf(h));
  return t;
}

QueryTree::NodeId QueryTree::add_leaf(HypothesisIndex h) {
  nodes_.push_back(Node{h, 0, {}});
  return static_cast<NodeId>(nodes_.size() - 1);
}

QueryTree::NodeId QueryTree::add_internal(QuestionIndex q, std::vector<Edge> children) {
  std::sort(children.begin(), children.end(),
            [](const Edge& a, const Edge& b) { return a.answer < b.answer; });
  for (std::size_t i = 1; i < children.size(); ++i) {
    if (children[i].answer == children[i - 1].answer) {
      throw PreconditionError("duplicate answer " + std::to_string(children[i].answer) + " under one node");
    }
  }
  for (const auto& e : children) {
    if (e.child >= nodes_.size()) throw PreconditionError("child node does not exist");
  }
  nodes_.push_back(Node{std::nullopt, q, std::move(children)});
  return static_cast<NodeId>(nodes_.size() - 1);
}

void QueryTree::set_root(NodeId id) {
  if (id >= nodes_.size()) throw PreconditionError("root node does not exist");
  root_ = id;
}

QueryTree::NodeId QueryTree::root() const {
  if (!root_) throw PreconditionError("empty query tree");
  return *root_;
}

std::optional<QueryTree::NodeId> QueryTree::child(NodeId id, Answer answer) const {
  const auto& kids = node(id).children;
  auto it = std::lower_bound(kids.begin(), kids.end(), answer,
                             [](const Edge& e, Answer a) { return e.answer < a; });
  if (it == kids.end() || it->answer != answer) return std::nullopt;
  return it->child;
}

std::vector<HypothesisIndex> QueryTree::leaves() const {
  std::vector<HypothesisIndex> out;
  if (empty()) return out;
  std::vector<NodeId> stack{root()};
  while (!stack.empty()) {
    const Node& n = node(stack.back());
    stack.pop_back();
    if (n.is_leaf()) {
      out.push_back(*n.hypothesis);
      continue;
    }
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(it->child);
  }
  return out;
}

std::vector<QueryTree::NodeId> QueryTree::internal_nodes() const {
  std::vector<NodeId> out;
  if (empty()) return out;
  std::vector<NodeId> stack{root()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const Node& n = node(id);
    if (n.is_leaf()) continue;
    out.push_back(id);
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(it->child);
  }
  return out;
}

namespace {

bool find_path(const QueryTree& t, QueryTree::NodeId id, HypothesisIndex h,
               std::vector<QueryTree::NodeId>& path) {
  path.push_back(id);
  const auto& n = t.node(id);
  if (n.is_leaf()) {
    if (*n.hypothesis == h) return true;
  } else {
    for (const auto& e : n.children) {
      if (find_path(t, e.child, h, path)) return true;
    }
  }
  path.pop_back();
  return false;
}

bool equal_from(const QueryTree& a, QueryTree::NodeId x, const QueryTree& b, QueryTree::NodeId y) {
  const auto& nx = a.node(x);
  const auto& ny = b.node(y);
  if (nx.hypothesis != ny.hypothesis) return false;
  if (nx.is_leaf()) return true;
  if (nx.question != ny.question || nx.children.size() != ny.children.size()) return false;
  for (std::size_t i = 0; i < nx.children.size(); ++i) {
    if (nx.children[i].answer != ny.children[i].answer) return false;
    if (!equal_from(a, nx.children[i].child, b, ny.children[i].child)) return false;
  }
  return true;
}

// Accumulates path costs for every leaf below id.
void accumulate_costs(const QueryTree& t, const Instance& inst, QueryTree::NodeId id, double so_far,
                      std::size_t depth, CostReport& report) {
  const auto& n = t.node(id);
  if (n.is_leaf()) {
    report.per_hypothesis[*n.hypothesis] = so_far;
    report.max_depth = std::max(report.max_depth, depth);
    return;
  }
  const double cost = inst.questions.at(n.question).cost;
  for (const auto& e : n.children) accumulate_costs(t, inst, e.child, so_far + cost, depth + 1, report);
}

}  // namespace

std::vector<QueryTree::NodeId> QueryTree::path_to(HypothesisIndex h) const {
  std::vector<NodeId> path;
  if (!empty() && !find_path(*this, root(), h, path)) path.clear();
  return path;
}

bool structurally_equal(const QueryTree& a, const QueryTree& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  return equal_from(a, a.root(), b, b.root());
}

CostReport tree_cost(const QueryTree& t, const Instance& inst, const Distribution& dist) {
  CostReport report;
  accumulate_costs(t, inst, t.root(), 0.0, 0, report);
  for (std::size_t h = 0; h < dist.size(); ++h) {
    if (dist[h] > 0.0 && !report.per_hypothesis.contains(static_cast<HypothesisIndex>(h))) {
      throw PreconditionError("hypothesis " + std::to_string(h) + " has mass but is not a leaf of the tree");
    }
  }
  for (const auto& [h, cost] : report.per_hypothesis) {
    if (h < dist.size()) report.expected_cost += dist[h] * cost;
  }
  return report;
}

double path_cost(const QueryTree& t, const Instance& inst, HypothesisIndex h) {
  const auto path = t.path_to(h);
  if (path.empty()) throw PreconditionError("hypothesis " + std::to_string(h) + " is not a leaf of the tree");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) total += inst.questions.at(t.node(path[i]).question).cost;
  return total;
}

namespace {

struct TreeChecker {
  const QueryTree& tree;
  const Instance& inst;
  ValidationReport report;
  std::set<HypothesisIndex> seen_leaves;
  std::map<QueryTree::NodeId, VersionSpace>* spaces = nullptr;

  void error(ViolationKind kind, std::string message) { report.errors.push_back({kind, std::move(message)}); }

  std::string names(const VersionSpace& s) const {
    std::string out;
    for (auto h : s) out += (out.empty() ? "" : ", ") + inst.hypotheses[h];
    return "{" + out + "}";
  }

  void visit(QueryTree::NodeId id, const VersionSpace& s) {
    if (spaces) spaces->emplace(id, s);
    const auto& n = tree.node(id);
    if (n.is_leaf()) {
      const HypothesisIndex h = *n.hypothesis;
      if (h >= inst.num_hypotheses()) {
        error(ViolationKind::kUnknownReference, "leaf references unknown hypothesis " + std::to_string(h));
        return;
      }
      if (!seen_leaves.insert(h).second) {
        error(ViolationKind::kDuplicateLeaf, "hypothesis '" + inst.hypotheses[h] + "' appears at more than one leaf");
      }
      if (!s.contains(h)) {
        error(ViolationKind::kInconsistentBranch,
              "leaf '" + inst.hypotheses[h] + "' is reached by answers it does not give");
      }
      if (s.size() > 1) {
        error(ViolationKind::kIncompleteCover, "leaf '" + inst.hypotheses[h] + "' does not resolve " + names(s));
      }
      return;
    }

    if (n.question >= inst.num_questions()) {
      error(ViolationKind::kUnknownReference, "node references unknown question " + std::to_string(n.question));
      return;
    }
    const auto& q = inst.questions[n.question];
    if (n.children.size() < 2) {
      error(ViolationKind::kReducible, "question '" + q.id + "' has fewer than two children (zero shrinkage)");
    }
    auto blocks = partition(s, q);
    for (const auto& e : n.children) {
      auto it = blocks.find(e.answer);
      if (it == blocks.end()) {
        error(ViolationKind::kInconsistentBranch, "edge answer " + std::to_string(e.answer) + " of question '" + q.id +
                                                      "' is given by no hypothesis reaching it");
        visit(e.child, VersionSpace{});
        continue;
      }
      visit(e.child, it->second);
      blocks.erase(it);
    }
    for (const auto& [answer, block] : blocks) {
      error(ViolationKind::kIncompleteCover, "answer " + std::to_string(answer) + " of question '" + q.id +
                                                 "' has no branch; " + names(block) + " not covered");
    }
  }
};

}  // namespace

ValidationReport validate_tree(const QueryTree& t, const Instance& inst) {
  return validate_tree(t, inst, VersionSpace::full(inst.num_hypotheses()));
}

ValidationReport validate_tree(const QueryTree& t, const Instance& inst, const VersionSpace& root_space) {
  TreeChecker checker{t, inst, {}, {}};
  if (t.empty()) {
    checker.error(ViolationKind::kIncompleteCover, "empty tree");
    return checker.report;
  }
  checker.visit(t.root(), root_space);
  for (auto h : root_space) {
    if (!checker.seen_leaves.contains(h)) {
      checker.error(ViolationKind::kIncompleteCover, "hypothesis '" + inst.hypotheses.at(h) + "' has no leaf");
    }
  }
  return checker.report;
}

std::map<QueryTree::NodeId, VersionSpace> node_version_spaces(const QueryTree& t, const Instance& inst) {
  std::map<QueryTree::NodeId, VersionSpace> spaces;
  TreeChecker checker{t, inst, {}, {}, &spaces};
  if (!t.empty()) checker.visit(t.root(), VersionSpace::full(inst.num_hypotheses()));
  return spaces;
}

double decomposition_check(const QueryTree& t, const Instance& inst, const Prior& prior,
                           std::span<const VersionSpace> blocks) {
  std::vector<HypothesisIndex> all;
  for (const auto& b : blocks) {
    if (b.empty()) throw PreconditionError("empty block in cover");
    all.insert(all.end(), b.begin(), b.end());
  }
  if (all.empty()) throw PreconditionError("cover of an empty set");
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) throw PreconditionError("overlapping blocks");
  const VersionSpace whole(std::move(all));

  const Distribution on_whole = restrict(prior, whole);
  const double lhs = tree_cost(t, inst, on_whole).expected_cost;
  double rhs = 0.0;
  for (const auto& b : blocks) {
    rhs += mass(on_whole, b) * tree_cost(t, inst, restrict(prior, b)).expected_cost;
  }
  return std::abs(lhs - rhs);
}

}  // namespace costquery
