#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "claimlattice/errors.hpp"
#include "claimlattice/rational.hpp"

namespace claimlattice {

/// The seven claim-limitation categories. Closed set; files use the
/// lowercase names.
enum class NodeType {
  Preamble,
  Structural,
  Functional,
  Quantitative,
  Wherein,
  Coupling,
  Signal,
};

NodeType node_type_from_string(const std::string& s);  // throws SchemaError
std::string to_string(NodeType t);
const std::vector<NodeType>& all_node_types();

/// Per-type positive weights. Defaults carry the doctrinal scheme
/// (wherein 3.0 down to preamble 0.3); files may override any subset.
/// The values are deliberately data, not constants baked into algorithms.
class WeightScheme {
 public:
  static WeightScheme defaults();
  /// Defaults overridden by the given {type -> decimal string} map.
  static WeightScheme from_overrides(
      const std::map<std::string, std::string>& overrides);

  const Rational& of(NodeType t) const;
  /// Exact decimal rendering per type, for canonical serialization.
  std::map<std::string, std::string> to_decimal_map() const;

  bool operator==(const WeightScheme& o) const { return weights_ == o.weights_; }

 private:
  std::map<NodeType, Rational> weights_;
  void validate() const;  // all seven present, all strictly positive
};

struct ClaimNode {
  std::string id;
  std::string text;
  NodeType type = NodeType::Structural;
  std::vector<std::string> deps;  // ids this node depends on
  std::vector<std::string> ann;   // vocabulary terms, sorted unique
};

/// A validated claim DAG. Immutable after load; acyclicity is established
/// at construction and witnessed by the stored topological order and the
/// strictly decreasing depth along every dependency edge.
class ClaimDag {
 public:
  /// Empty placeholder; only DAGs produced by load/from_json satisfy the
  /// class invariants.
  ClaimDag() = default;

  /// Parses and fully validates the claim-file format.
  static ClaimDag load(const std::string& json_bytes);
  static ClaimDag from_json(const nlohmann::json& doc);

  /// Canonical JSON rendering: sorted keys, no insignificant whitespace,
  /// all seven weights explicit. load(serialize()) reproduces the DAG.
  std::string serialize() const;
  nlohmann::json to_json() const;

  const std::vector<ClaimNode>& nodes() const { return nodes_; }
  const WeightScheme& weights() const { return weights_; }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }

  bool contains(const std::string& id) const;
  const ClaimNode& node(const std::string& id) const;  // throws UnknownNode
  size_t index_of(const std::string& id) const;

  /// Node ids in dependency order: every node after all of its deps,
  /// ties broken by input order.
  const std::vector<std::string>& topo_order() const { return topo_order_; }
  /// Longest dependency-path length below the node (0 for leaves).
  int depth(const std::string& id) const;
  int max_depth() const { return max_depth_; }

  Rational total_weight() const;
  const Rational& weight_of(const std::string& id) const;

  /// Union of all node annotations.
  std::set<std::string> terms() const;

 private:
  void validate_and_index();

  std::vector<ClaimNode> nodes_;
  WeightScheme weights_ = WeightScheme::defaults();
  std::vector<std::string> vocabulary_;

  std::map<std::string, size_t> index_;
  std::vector<std::string> topo_order_;
  std::map<std::string, int> depth_;
  std::map<std::string, Rational> node_weight_;
  int max_depth_ = 0;
};

}  // namespace claimlattice
