#include "costquery/tree_io.hpp"

#include <charconv>
#include <sstream>

#include "costquery/errors.hpp"
#include "costquery/format.hpp"

namespace costquery {

using nlohmann::json;

namespace {

json node_to_json(const QueryTree& t, QueryTree::NodeId id, const Instance& inst,
                  const std::map<QueryTree::NodeId, VersionSpace>* spaces) {
  const auto& n = t.node(id);
  json out;
  if (n.is_leaf()) {
    out["leaf"] = inst.hypotheses.at(*n.hypothesis);
  } else {
    out["question"] = inst.questions.at(n.question).id;
    json children = json::object();
    for (const auto& e : n.children) {
      children[std::to_string(e.answer)] = node_to_json(t, e.child, inst, spaces);
    }
    out["children"] = std::move(children);
  }
  if (spaces) {
    json labels = json::array();
    if (auto it = spaces->find(id); it != spaces->end()) {
      for (auto h : it->second) labels.push_back(inst.hypotheses.at(h));
    }
    out["version_space"] = std::move(labels);
  }
  return out;
}

Answer parse_answer(const std::string& key) {
  Answer value = 0;
  auto [end, ec] = std::from_chars(key.data(), key.data() + key.size(), value);
  if (ec != std::errc{} || end != key.data() + key.size()) {
    throw InvalidInstance("tree edge label '" + key + "' is not a non-negative integer");
  }
  return value;
}

QueryTree::NodeId node_from_json(const json& doc, const Instance& inst, QueryTree& t) {
  if (!doc.is_object()) throw InvalidInstance("tree node must be an object");
  if (auto leaf = doc.find("leaf"); leaf != doc.end()) {
    if (!leaf->is_string()) throw InvalidInstance("leaf label must be a string");
    return t.add_leaf(inst.hypothesis_index(leaf->get<std::string>()));
  }
  auto question = doc.find("question");
  auto children = doc.find("children");
  if (question == doc.end() || !question->is_string() || children == doc.end() || !children->is_object()) {
    throw InvalidInstance("tree node needs either 'leaf' or 'question' and 'children'");
  }
  std::vector<QueryTree::Edge> edges;
  for (const auto& [key, sub] : children->items()) {
    edges.push_back({parse_answer(key), node_from_json(sub, inst, t)});
  }
  try {
    return t.add_internal(inst.question_index(question->get<std::string>()), std::move(edges));
  } catch (const PreconditionError& e) {
    throw InvalidInstance(e.what());
  }
}

}  // namespace

json tree_to_json(const QueryTree& t, const Instance& inst, TreeJsonOptions options) {
  if (options.include_version_space) {
    const auto spaces = node_version_spaces(t, inst);
    return node_to_json(t, t.root(), inst, &spaces);
  }
  return node_to_json(t, t.root(), inst, nullptr);
}

QueryTree tree_from_json(const json& doc, const Instance& inst) {
  QueryTree t;
  t.set_root(node_from_json(doc, inst, t));
  return t;
}

std::string dump_tree(const QueryTree& t, const Instance& inst, TreeJsonOptions options) {
  return tree_to_json(t, inst, options).dump(2) + "\n";
}

QueryTree parse_tree(const std::string& text, const Instance& inst) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInstance(std::string("malformed tree JSON: ") + e.what());
  }
  return tree_from_json(doc, inst);
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

int emit_dot(const QueryTree& t, QueryTree::NodeId id, const Instance& inst, int& counter, std::ostream& os) {
  const int me = counter++;
  const auto& n = t.node(id);
  if (n.is_leaf()) {
    os << "  n" << me << " [shape=ellipse, label=\"" << dot_escape(inst.hypotheses.at(*n.hypothesis)) << "\"];\n";
    return me;
  }
  const auto& q = inst.questions.at(n.question);
  os << "  n" << me << " [shape=box, label=\"q:" << dot_escape(q.id) << " c:" << format_number(q.cost) << "\"];\n";
  for (const auto& e : n.children) {
    const int child = emit_dot(t, e.child, inst, counter, os);
    os << "  n" << me << " -> n" << child << " [label=\"" << e.answer << "\"];\n";
  }
  return me;
}

}  // namespace

std::string tree_to_dot(const QueryTree& t, const Instance& inst) {
  std::ostringstream os;
  os << "digraph QueryTree {\n";
  int counter = 0;
  emit_dot(t, t.root(), inst, counter, os);
  os << "}\n";
  return os.str();
}

}  // namespace costquery
