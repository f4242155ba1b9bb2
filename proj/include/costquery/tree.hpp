#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "costquery/model.hpp"

namespace costquery {

// A query tree stored as a node arena. Internal nodes reference questions by
// their index in the owning Instance; costs and answers are always looked up
// there, never copied into the tree.
class QueryTree {
 public:
  using NodeId = std::uint32_t;

  struct Edge {
    Answer answer;
    NodeId child;
    bool operator==(const Edge&) const = default;
  };

  struct Node {
    std::optional<HypothesisIndex> hypothesis;  // set on leaves
    QuestionIndex question = 0;                 // meaningful on internal nodes
    std::vector<Edge> children;                 // sorted by answer

    bool is_leaf() const noexcept { return hypothesis.has_value(); }
  };

  QueryTree() = default;

  static QueryTree single_leaf(HypothesisIndex h);

  NodeId add_leaf(HypothesisIndex h);
  /// Children are sorted by answer; duplicate answers throw PreconditionError.
  NodeId add_internal(QuestionIndex q, std::vector<Edge> children);
  void set_root(NodeId id);

  bool empty() const noexcept { return !root_.has_value(); }
  NodeId root() const;
  const Node& node(NodeId id) const { return nodes_.at(id); }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  std::optional<NodeId> child(NodeId id, Answer answer) const;
  /// Leaves reachable from the root, in depth-first answer order.
  std::vector<HypothesisIndex> leaves() const;
  /// Node ids from the root down to the leaf for h; empty if h is not a leaf.
  std::vector<NodeId> path_to(HypothesisIndex h) const;
  /// Internal node ids reachable from the root, in preorder.
  std::vector<NodeId> internal_nodes() const;

  /// Same shape, questions, answers and leaves (node numbering ignored).
  friend bool structurally_equal(const QueryTree& a, const QueryTree& b);

 private:
  std::vector<Node> nodes_;
  std::optional<NodeId> root_;
};

struct CostReport {
  double expected_cost = 0.0;
  std::map<HypothesisIndex, double> per_hypothesis;
  /// Largest number of questions on a root-to-leaf path.
  std::size_t max_depth = 0;
};

// Expected cost of t under dist: sum_h dist(h) * c_T(h). Every hypothesis with
// positive mass must be a leaf of t (PreconditionError otherwise).
CostReport tree_cost(const QueryTree& t, const Instance& inst, const Distribution& dist);

/// Sum of question costs on the root-to-h path.
double path_cost(const QueryTree& t, const Instance& inst, HypothesisIndex h);

// Checks, against the full hypothesis set of inst: every referenced question
// and hypothesis exists, each hypothesis ends up at exactly one leaf, every
// edge answer is realized by the version space reaching its node, and every
// internal node has at least two children.
ValidationReport validate_tree(const QueryTree& t, const Instance& inst);
/// Same checks for a tree meant to resolve only root_space.
ValidationReport validate_tree(const QueryTree& t, const Instance& inst, const VersionSpace& root_space);

// |C(T, pi_S) - sum_i pi_S(S^i) C(T, pi_{S^i})| for S the union of blocks.
// Throws PreconditionError on overlapping or empty blocks.
double decomposition_check(const QueryTree& t, const Instance& inst, const Prior& prior,
                           std::span<const VersionSpace> blocks);

/// Version space reaching every node, keyed by node id.
std::map<QueryTree::NodeId, VersionSpace> node_version_spaces(const QueryTree& t, const Instance& inst);

}  // namespace costquery
