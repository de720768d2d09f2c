#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gauduchon/hermitian.hpp"

namespace gauduchon {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw SpecError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

int require_int(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw SpecError(where + ": field \"" + key + "\" must be an integer");
  return v.get<int>();
}

double require_number(const json& obj, const char* key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number()) throw SpecError(where + ": field \"" + key + "\" must be a number");
  return v.get<double>();
}

int check_index(int value, int n, const std::string& where) {
  if (value < 1 || value > n)
    throw SpecError(where + ": index " + std::to_string(value) + " outside 1.." + std::to_string(n));
  return value - 1;
}

Complex read_pair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw SpecError(where + ": metric entries must be [re, im] pairs");
  return {v[0].get<double>(), v[1].get<double>()};
}

ManifoldSpec parse(const json& doc) {
  if (!doc.is_object()) throw SpecError("manifold document must be a JSON object");
  ManifoldSpec spec;
  const json& name = require(doc, "name", "manifold");
  if (!name.is_string()) throw SpecError("manifold: field \"name\" must be a string");
  spec.name = name.get<std::string>();
  spec.n = require_int(doc, "n", "manifold");
  if (spec.n < kMinSupportedDim || spec.n > kMaxDim)
    throw SpecError("manifold: n = " + std::to_string(spec.n) + " outside supported range 2..6");
  const int n = spec.n;
  spec.sc = StructureConstants(n);

  const json& d_phi = require(doc, "d_phi", "manifold");
  if (!d_phi.is_array()) throw SpecError("manifold: \"d_phi\" must be an array");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const json& entry : d_phi) {
    const int k = check_index(require_int(entry, "k", "d_phi entry"), n, "d_phi entry k");
    if (seen[static_cast<std::size_t>(k)]) throw SpecError("d_phi: k = " + std::to_string(k + 1) + " listed twice");
    seen[static_cast<std::size_t>(k)] = true;
    const std::string where = "d_phi[k=" + std::to_string(k + 1) + "]";
    if (entry.contains("pp")) {
      if (!entry["pp"].is_array()) throw SpecError(where + ": \"pp\" must be an array");
      for (const json& t : entry["pp"]) {
        const int i = check_index(require_int(t, "i", where + ".pp"), n, where + ".pp i");
        const int j = check_index(require_int(t, "j", where + ".pp"), n, where + ".pp j");
        if (i >= j) throw SpecError(where + ".pp: entries require i < j");
        spec.sc.set_pp(k, i, j, {require_number(t, "re", where + ".pp"), require_number(t, "im", where + ".pp")});
      }
    }
    if (entry.contains("pq")) {
      if (!entry["pq"].is_array()) throw SpecError(where + ": \"pq\" must be an array");
      for (const json& t : entry["pq"]) {
        const int i = check_index(require_int(t, "i", where + ".pq"), n, where + ".pq i");
        const int j = check_index(require_int(t, "jbar", where + ".pq"), n, where + ".pq jbar");
        spec.sc.set_pq(k, i, j, {require_number(t, "re", where + ".pq"), require_number(t, "im", where + ".pq")});
      }
    }
  }

  const json& metric = require(doc, "metric", "manifold");
  const json& type = require(metric, "type", "metric");
  if (type == "identity") {
    spec.metric = Eigen::MatrixXcd::Identity(n, n);
  } else if (type == "hermitian") {
    const json& rows = require(metric, "entries", "metric");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw SpecError("metric: \"entries\" must have n rows");
    spec.metric.resize(n, n);
    for (int i = 0; i < n; ++i) {
      const json& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        throw SpecError("metric: every row must have n entries");
      for (int j = 0; j < n; ++j) spec.metric(i, j) = read_pair(row[static_cast<std::size_t>(j)], "metric");
    }
  } else {
    throw SpecError("metric: \"type\" must be \"identity\" or \"hermitian\"");
  }

  validate(spec);
  return spec;
}

}  // namespace

ManifoldSpec load_spec(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("malformed JSON: ") + e.what());
  }
  return parse(doc);
}

ManifoldSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open manifold file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_spec(buffer.str());
}

std::string dump_spec(const ManifoldSpec& spec) {
  const int n = spec.n;
  json doc;
  doc["name"] = spec.name;
  doc["n"] = n;
  doc["d_phi"] = json::array();
  for (int k = 0; k < n; ++k) {
    json pp = json::array(), pq = json::array();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Complex c = spec.sc.pp(k, i, j);
        if (c != Complex{}) pp.push_back({{"i", i + 1}, {"j", j + 1}, {"re", c.real()}, {"im", c.imag()}});
      }
      for (int j = 0; j < n; ++j) {
        const Complex c = spec.sc.pq(k, i, j);
        if (c != Complex{}) pq.push_back({{"i", i + 1}, {"jbar", j + 1}, {"re", c.real()}, {"im", c.imag()}});
      }
    }
    if (!pp.empty() || !pq.empty()) doc["d_phi"].push_back({{"k", k + 1}, {"pp", pp}, {"pq", pq}});
  }
  if (spec.metric == Eigen::MatrixXcd::Identity(n, n)) {
    doc["metric"] = {{"type", "identity"}};
  } else {
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int j = 0; j < n; ++j) row.push_back({spec.metric(i, j).real(), spec.metric(i, j).imag()});
      rows.push_back(row);
    }
    doc["metric"] = {{"type", "hermitian"}, {"entries", rows}};
  }
  return doc.dump(2);
}

}  // namespace gauduchon
