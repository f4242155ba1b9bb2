#pragma once

#include <string>

#include "costquery/tree.hpp"
#include "json.hpp"

namespace costquery {

struct TreeJsonOptions {
  /// Adds a "version_space" array of hypothesis labels to every node.
  bool include_version_space = false;
};

// {"question": id, "children": {"<answer>": subtree, ...}} or {"leaf": label}.
nlohmann::json tree_to_json(const QueryTree& t, const Instance& inst, TreeJsonOptions options = {});

/// Resolves ids and labels against inst; throws InvalidInstance on unknown names or bad shape.
QueryTree tree_from_json(const nlohmann::json& doc, const Instance& inst);

/// Canonical serialized form, used for byte-level comparisons and files.
std::string dump_tree(const QueryTree& t, const Instance& inst, TreeJsonOptions options = {});
QueryTree parse_tree(const std::string& text, const Instance& inst);

// Graphviz rendering: internal nodes "q:<id> c:<cost>", edges labeled with
// answers, leaves with hypothesis labels.
std::string tree_to_dot(const QueryTree& t, const Instance& inst);

}  // namespace costquery
