#include "costquery/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "costquery/errors.hpp"

namespace costquery {

using nlohmann::json;

namespace {

const json& require_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InvalidInstance(std::string("missing field '") + key + "'");
  return *it;
}

double as_number(const json& v, const std::string& what) {
  if (!v.is_number()) throw InvalidInstance(what + " must be a number");
  return v.get<double>();
}

}  // namespace

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidInstance("instance must be a JSON object");
  Instance inst;

  const auto& hyps = require_field(doc, "hypotheses");
  if (!hyps.is_array()) throw InvalidInstance("'hypotheses' must be an array");
  for (const auto& h : hyps) {
    if (!h.is_string()) throw InvalidInstance("hypothesis labels must be strings");
    inst.hypotheses.push_back(h.get<std::string>());
  }

  const auto& prior = require_field(doc, "prior");
  if (!prior.is_array()) throw InvalidInstance("'prior' must be an array");
  std::vector<double> mass;
  for (const auto& p : prior) mass.push_back(as_number(p, "prior entries"));
  double total = 0.0;
  for (double p : mass) total += p;
  if (!std::isfinite(total) || std::abs(total - 1.0) >= kRenormalizeTolerance) {
    std::ostringstream msg;
    msg << "prior sums to " << total << "; must be 1 within " << kRenormalizeTolerance;
    throw InvalidInstance(msg.str());
  }
  // Leave float-noise sums alone so load/dump round trips are stable.
  if (std::abs(total - 1.0) > kTolerance) {
    for (double& p : mass) p /= total;
  }
  inst.prior = Distribution(std::move(mass));

  const auto& questions = require_field(doc, "questions");
  if (!questions.is_array()) throw InvalidInstance("'questions' must be an array");
  for (const auto& q : questions) {
    if (!q.is_object()) throw InvalidInstance("each question must be an object");
    Question out;
    const auto& id = require_field(q, "id");
    if (!id.is_string()) throw InvalidInstance("question id must be a string");
    out.id = id.get<std::string>();
    out.cost = as_number(require_field(q, "cost"), "cost of '" + out.id + "'");
    const auto& answers = require_field(q, "answers");
    if (!answers.is_array()) throw InvalidInstance("answers of '" + out.id + "' must be an array");
    for (const auto& a : answers) {
      if (!a.is_number_integer() || a.get<long long>() < 0 || a.get<long long>() > 0xFFFFFFFFLL) {
        throw InvalidInstance("answers of '" + out.id + "' must be non-negative integers");
      }
      out.answers.push_back(static_cast<Answer>(a.get<long long>()));
    }
    inst.questions.push_back(std::move(out));
  }
  return inst;
}

json instance_to_json(const Instance& inst) {
  json questions = json::array();
  for (const auto& q : inst.questions) {
    questions.push_back({{"id", q.id}, {"cost", q.cost}, {"answers", q.answers}});
  }
  std::vector<double> prior(inst.prior.values().begin(), inst.prior.values().end());
  return {{"hypotheses", inst.hypotheses}, {"prior", prior}, {"questions", questions}};
}

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInstance(std::string("malformed instance JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

std::string dump_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

Instance load_instance(const std::filesystem::path& path) { return parse_instance(read_text_file(path)); }

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_text_file(path, dump_instance(inst));
}

std::string read_text_file(const std::filesystem::path& path) {
  if (path.empty()) throw IoError("no input path given");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace costquery
