#include "claimlattice/claim_graph.hpp"

#include <algorithm>
#include <queue>

namespace claimlattice {

using nlohmann::json;

namespace {

const std::vector<std::pair<NodeType, const char*>> kTypeNames = {
    {NodeType::Preamble, "preamble"},     {NodeType::Structural, "structural"},
    {NodeType::Functional, "functional"}, {NodeType::Quantitative, "quantitative"},
    {NodeType::Wherein, "wherein"},       {NodeType::Coupling, "coupling"},
    {NodeType::Signal, "signal"},
};

// Doctrinal default weights, one decimal string per type.
const std::vector<std::pair<NodeType, const char*>> kDefaultWeights = {
    {NodeType::Wherein, "3.0"},    {NodeType::Quantitative, "2.0"},
    {NodeType::Functional, "1.5"}, {NodeType::Coupling, "1.5"},
    {NodeType::Signal, "1.5"},     {NodeType::Structural, "1.0"},
    {NodeType::Preamble, "0.3"},
};

void expect_object(const json& j, const std::string& what) {
  if (!j.is_object()) throw SchemaError(what + " must be a JSON object");
}

std::string get_string(const json& j, const char* key, const std::string& ctx) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw SchemaError(ctx + " needs string field '" + key + "'");
  }
  return j[key].get<std::string>();
}

}  // namespace

NodeType node_type_from_string(const std::string& s) {
  for (const auto& [t, name] : kTypeNames) {
    if (s == name) return t;
  }
  throw SchemaError("unknown node type '" + s + "'");
}

std::string to_string(NodeType t) {
  for (const auto& [tt, name] : kTypeNames) {
    if (tt == t) return name;
  }
  return "?";
}

const std::vector<NodeType>& all_node_types() {
  static const std::vector<NodeType> types = [] {
    std::vector<NodeType> v;
    for (const auto& [t, name] : kTypeNames) v.push_back(t);
    return v;
  }();
  return types;
}

WeightScheme WeightScheme::defaults() {
  WeightScheme w;
  for (const auto& [t, dec] : kDefaultWeights) {
    w.weights_[t] = Rational::from_decimal(dec);
  }
  w.validate();
  return w;
}

WeightScheme WeightScheme::from_overrides(
    const std::map<std::string, std::string>& overrides) {
  WeightScheme w = defaults();
  for (const auto& [name, dec] : overrides) {
    NodeType t = node_type_from_string(name);
    Rational r;
    try {
      r = Rational::from_decimal(dec);
    } catch (const ParseError& e) {
      throw SchemaError("weight for '" + name + "': " + e.what());
    }
    w.weights_[t] = r;
  }
  w.validate();
  return w;
}

void WeightScheme::validate() const {
  for (NodeType t : all_node_types()) {
    auto it = weights_.find(t);
    if (it == weights_.end()) {
      throw NonPositiveWeight("missing weight for type " + to_string(t));
    }
    if (!(it->second > Rational())) {
      throw NonPositiveWeight("weight for type " + to_string(t) +
                              " must be strictly positive, got " +
                              it->second.to_fraction_string());
    }
  }
}

const Rational& WeightScheme::of(NodeType t) const {
  return weights_.at(t);
}

std::map<std::string, std::string> WeightScheme::to_decimal_map() const {
  std::map<std::string, std::string> out;
  for (const auto& [t, r] : weights_) out[to_string(t)] = r.to_exact_decimal();
  return out;
}

ClaimDag ClaimDag::load(const std::string& json_bytes) {
  json doc = json::parse(json_bytes, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("claim file is not valid JSON");
  return from_json(doc);
}

ClaimDag ClaimDag::from_json(const json& doc) {
  expect_object(doc, "claim document");
  if (!doc.contains("schema_version") ||
      !doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<int>() != 1) {
    throw SchemaError("claim document needs schema_version = 1");
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array() ||
      doc["nodes"].empty()) {
    throw SchemaError("claim document needs a non-empty 'nodes' array");
  }

  ClaimDag dag;
  for (const json& jn : doc["nodes"]) {
    expect_object(jn, "claim node");
    ClaimNode n;
    n.id = get_string(jn, "id", "claim node");
    if (n.id.empty()) throw SchemaError("claim node with empty id");
    n.type = node_type_from_string(get_string(jn, "type", "node '" + n.id + "'"));
    n.text = get_string(jn, "text", "node '" + n.id + "'");
    if (!jn.contains("deps") || !jn["deps"].is_array()) {
      throw SchemaError("node '" + n.id + "' needs a 'deps' array");
    }
    for (const json& d : jn["deps"]) {
      if (!d.is_string()) {
        throw SchemaError("node '" + n.id + "' has a non-string dep");
      }
      n.deps.push_back(d.get<std::string>());
    }
    if (jn.contains("ann")) {
      if (!jn["ann"].is_array()) {
        throw SchemaError("node '" + n.id + "' has non-array 'ann'");
      }
      for (const json& a : jn["ann"]) {
        if (!a.is_string()) {
          throw SchemaError("node '" + n.id + "' has a non-string ann term");
        }
        n.ann.push_back(a.get<std::string>());
      }
      std::sort(n.ann.begin(), n.ann.end());
      n.ann.erase(std::unique(n.ann.begin(), n.ann.end()), n.ann.end());
    }
    dag.nodes_.push_back(std::move(n));
  }

  if (doc.contains("weights")) {
    expect_object(doc["weights"], "'weights'");
    std::map<std::string, std::string> overrides;
    for (const auto& [key, val] : doc["weights"].items()) {
      if (!val.is_string()) {
        throw SchemaError("weight for '" + key + "' must be a decimal string");
      }
      overrides[key] = val.get<std::string>();
    }
    dag.weights_ = WeightScheme::from_overrides(overrides);
  }

  if (doc.contains("vocabulary")) {
    if (!doc["vocabulary"].is_array()) {
      throw SchemaError("'vocabulary' must be an array of terms");
    }
    for (const json& t : doc["vocabulary"]) {
      if (!t.is_string()) throw SchemaError("non-string vocabulary term");
      dag.vocabulary_.push_back(t.get<std::string>());
    }
    std::sort(dag.vocabulary_.begin(), dag.vocabulary_.end());
    dag.vocabulary_.erase(
        std::unique(dag.vocabulary_.begin(), dag.vocabulary_.end()),
        dag.vocabulary_.end());
  }

  dag.validate_and_index();
  return dag;
}

void ClaimDag::validate_and_index() {
  for (size_t i = 0; i < nodes_.size(); ++i) {
    auto [it, inserted] = index_.emplace(nodes_[i].id, i);
    if (!inserted) throw DuplicateId("duplicate node id '" + nodes_[i].id + "'");
  }
  for (const ClaimNode& n : nodes_) {
    std::set<std::string> seen;
    for (const std::string& d : n.deps) {
      if (!index_.count(d)) {
        throw DanglingDep("node '" + n.id + "' depends on unknown id '" + d +
                          "'");
      }
      if (!seen.insert(d).second) {
        throw SchemaError("node '" + n.id + "' lists dep '" + d + "' twice");
      }
    }
    if (!vocabulary_.empty()) {
      for (const std::string& t : n.ann) {
        if (!std::binary_search(vocabulary_.begin(), vocabulary_.end(), t)) {
          throw SchemaError("node '" + n.id + "' annotation '" + t +
                            "' not in declared vocabulary");
        }
      }
    }
    node_weight_.emplace(n.id, weights_.of(n.type));
  }

  // Kahn's algorithm with input-order tie-break among ready nodes: the
  // resulting order, and everything derived from it, is reproducible
  // byte-for-byte.
  std::vector<int> pending(nodes_.size());
  std::vector<std::vector<size_t>> dependents(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) {
    pending[i] = int(nodes_[i].deps.size());
    for (const std::string& d : nodes_[i].deps) {
      dependents[index_[d]].push_back(i);
    }
  }
  std::priority_queue<size_t, std::vector<size_t>, std::greater<>> ready;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    if (pending[i] == 0) ready.push(i);
  }
  while (!ready.empty()) {
    size_t i = ready.top();
    ready.pop();
    topo_order_.push_back(nodes_[i].id);
    int d = 0;
    for (const std::string& dep : nodes_[i].deps) {
      d = std::max(d, depth_[dep] + 1);
    }
    depth_[nodes_[i].id] = d;
    max_depth_ = std::max(max_depth_, d);
    for (size_t j : dependents[i]) {
      if (--pending[j] == 0) ready.push(j);
    }
  }

  if (topo_order_.size() != nodes_.size()) {
    // Extract one concrete cycle among the unresolved nodes by walking deps
    // from the first unresolved node in input order.
    std::set<std::string> unresolved;
    std::string start;
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (pending[i] > 0) {
        if (start.empty()) start = nodes_[i].id;
        unresolved.insert(nodes_[i].id);
      }
    }
    std::vector<std::string> path;
    std::map<std::string, size_t> pos;
    std::string cur = start;
    while (!pos.count(cur)) {
      pos[cur] = path.size();
      path.push_back(cur);
      for (const std::string& d : node(cur).deps) {
        if (unresolved.count(d)) {
          cur = d;
          break;
        }
      }
    }
    std::vector<std::string> cycle(path.begin() + pos[cur], path.end());
    cycle.push_back(cycle.front());
    std::string desc;
    for (size_t i = 0; i < cycle.size(); ++i) {
      if (i) desc += " -> ";
      desc += cycle[i];
    }
    throw CycleError("dependency cycle " + desc, cycle);
  }

  // Acyclicity witness: depth strictly decreases from dependent to dep.
  for (const ClaimNode& n : nodes_) {
    for (const std::string& d : n.deps) {
      if (!(depth_.at(d) < depth_.at(n.id))) {
        throw Error("Internal", "depth witness violated at " + n.id);
      }
    }
  }
}

std::string ClaimDag::serialize() const { return to_json().dump(); }

json ClaimDag::to_json() const {
  json doc;
  doc["schema_version"] = 1;
  json nodes = json::array();
  for (const ClaimNode& n : nodes_) {
    json jn;
    jn["id"] = n.id;
    jn["type"] = to_string(n.type);
    jn["text"] = n.text;
    jn["deps"] = n.deps;
    if (!n.ann.empty()) jn["ann"] = n.ann;
    nodes.push_back(std::move(jn));
  }
  doc["nodes"] = std::move(nodes);
  doc["weights"] = weights_.to_decimal_map();
  if (!vocabulary_.empty()) doc["vocabulary"] = vocabulary_;
  return doc;
}

bool ClaimDag::contains(const std::string& id) const {
  return index_.count(id) > 0;
}

const ClaimNode& ClaimDag::node(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownNode("no node with id '" + id + "'");
  return nodes_[it->second];
}

size_t ClaimDag::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownNode("no node with id '" + id + "'");
  return it->second;
}

int ClaimDag::depth(const std::string& id) const {
  auto it = depth_.find(id);
  if (it == depth_.end()) throw UnknownNode("no node with id '" + id + "'");
  return it->second;
}

Rational ClaimDag::total_weight() const {
  Rational sum;
  for (const ClaimNode& n : nodes_) sum += weights_.of(n.type);
  return sum;
}

const Rational& ClaimDag::weight_of(const std::string& id) const {
  auto it = node_weight_.find(id);
  if (it == node_weight_.end()) throw UnknownNode("no node with id '" + id + "'");
  return it->second;
}

std::set<std::string> ClaimDag::terms() const {
  std::set<std::string> out;
  for (const ClaimNode& n : nodes_) out.insert(n.ann.begin(), n.ann.end());
  return out;
}

}  // namespace claimlattice
