#include "claimlattice/scoring.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <set>

namespace claimlattice {

using nlohmann::json;

// ---------------------------------------------------------------------------
// EvidenceSet

EvidenceSet::EvidenceSet(std::vector<EvidenceSegment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw SchemaError("evidence set must be non-empty");
  for (size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].index != int(i)) {
      throw SchemaError("evidence segment indices must be 0..m-1 in order; "
                        "index " + std::to_string(segments_[i].index) +
                        " at position " + std::to_string(i));
    }
  }
}

EvidenceSet EvidenceSet::load(const std::string& json_bytes) {
  json doc = json::parse(json_bytes, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("evidence file is not valid JSON");
  return from_json(doc);
}

EvidenceSet EvidenceSet::from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("segments") ||
      !doc["segments"].is_array()) {
    throw SchemaError("evidence document needs a 'segments' array");
  }
  std::vector<EvidenceSegment> segs;
  for (const json& js : doc["segments"]) {
    if (!js.is_object() || !js.contains("index") ||
        !js["index"].is_number_integer() || !js.contains("text") ||
        !js["text"].is_string()) {
      throw SchemaError("evidence segment needs integer 'index' and string 'text'");
    }
    segs.push_back({js["index"].get<int>(), js["text"].get<std::string>()});
  }
  return EvidenceSet(std::move(segs));
}

// ---------------------------------------------------------------------------
// ScoreTable

ScoreTable ScoreTable::load(const std::string& json_bytes, const ClaimDag& dag) {
  json doc = json::parse(json_bytes, nullptr, false);
  if (doc.is_discarded()) throw SchemaError("score table is not valid JSON");
  return from_json(doc, dag);
}

ScoreTable ScoreTable::from_json(const json& doc, const ClaimDag& dag) {
  if (!doc.is_object()) throw SchemaError("score table must be a JSON object");
  if (!doc.contains("schema_version") ||
      !doc["schema_version"].is_number_integer() ||
      doc["schema_version"].get<int>() != 1) {
    throw SchemaError("score table needs schema_version = 1");
  }
  ScoreTable t;
  if (doc.contains("construction_id")) {
    if (!doc["construction_id"].is_string()) {
      throw SchemaError("construction_id must be a string");
    }
    t.construction_id = doc["construction_id"].get<std::string>();
  }
  if (!doc.contains("scores") || !doc["scores"].is_object()) {
    throw SchemaError("score table needs a 'scores' object");
  }
  for (const auto& [id, val] : doc["scores"].items()) {
    if (!dag.contains(id)) {
      throw UnknownNode("score table entry for unknown node '" + id + "'");
    }
    if (!val.is_number_integer()) {
      throw SchemaError("score for '" + id + "' must be an integer 0..10000");
    }
    long long v = val.get<long long>();
    if (v < 0 || v > 10000) {
      throw OutOfRange("score for '" + id + "' outside 0..10000: " +
                       std::to_string(v));
    }
    t.scores.emplace(id, BasisPoints(int(v)));
  }
  for (const ClaimNode& n : dag.nodes()) {
    if (!t.scores.count(n.id)) {
      throw MissingNode("score table has no entry for node '" + n.id + "'");
    }
  }
  if (doc.contains("witness")) {
    if (!doc["witness"].is_object()) {
      throw SchemaError("'witness' must be an object");
    }
    for (const auto& [id, val] : doc["witness"].items()) {
      if (!dag.contains(id)) {
        throw UnknownNode("witness entry for unknown node '" + id + "'");
      }
      if (!val.is_number_integer() || val.get<long long>() < 0) {
        throw SchemaError("witness for '" + id + "' must be a segment index");
      }
      t.witness[id] = val.get<int>();
    }
  }
  return t;
}

json ScoreTable::to_json() const {
  json doc;
  doc["schema_version"] = 1;
  doc["construction_id"] = construction_id;
  json s = json::object();
  for (const auto& [id, bp] : scores) s[id] = bp.value();
  doc["scores"] = std::move(s);
  if (!witness.empty()) {
    json w = json::object();
    for (const auto& [id, idx] : witness) w[id] = idx;
    doc["witness"] = std::move(w);
  }
  return doc;
}

const BasisPoints& ScoreTable::at(const std::string& id) const {
  auto it = scores.find(id);
  if (it == scores.end()) {
    throw IncompleteScores("no score for node '" + id + "'");
  }
  return it->second;
}

void ScoreTable::require_complete(const ClaimDag& dag) const {
  for (const ClaimNode& n : dag.nodes()) {
    if (!scores.count(n.id)) {
      throw IncompleteScores("score table is missing node '" + n.id + "'");
    }
  }
}

// ---------------------------------------------------------------------------
// ScoreMatrix

ScoreMatrix ScoreMatrix::from_json(const json& doc, size_t segment_count) {
  if (!doc.is_object()) throw SchemaError("score matrix must be a JSON object");
  ScoreMatrix m;
  for (const auto& [id, row] : doc.items()) {
    if (!row.is_array() || row.size() != segment_count) {
      throw SchemaError("score matrix row for '" + id + "' must list one "
                        "integer per evidence segment");
    }
    std::vector<BasisPoints> vals;
    for (const json& v : row) {
      if (!v.is_number_integer()) {
        throw SchemaError("score matrix entry for '" + id + "' must be an integer");
      }
      long long x = v.get<long long>();
      if (x < 0 || x > 10000) {
        throw OutOfRange("score matrix entry for '" + id + "' outside 0..10000");
      }
      vals.emplace_back(int(x));
    }
    m.rows.emplace(id, std::move(vals));
  }
  return m;
}

const std::vector<BasisPoints>& ScoreMatrix::row(const std::string& id) const {
  auto it = rows.find(id);
  if (it == rows.end()) {
    throw IncompleteScores("score matrix has no row for node '" + id + "'");
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// TfIdfScorer

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : text) {
    // Non-ASCII bytes count as token characters so multi-byte UTF-8
    // sequences stay intact.
    bool word = std::isalnum(c) || c >= 0x80;
    if (word) {
      cur.push_back(char(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::map<std::string, long long> term_counts(const std::string& text) {
  std::map<std::string, long long> counts;
  for (const std::string& tok : tokenize(text)) counts[tok] += 1;
  return counts;
}

using U128 = unsigned __int128;
using U256 = std::array<uint64_t, 4>;  // little-endian limbs

U256 mul_u128(U128 a, U128 b) {
  uint64_t a0 = uint64_t(a), a1 = uint64_t(a >> 64);
  uint64_t b0 = uint64_t(b), b1 = uint64_t(b >> 64);
  U128 p00 = U128(a0) * b0;
  U128 p01 = U128(a0) * b1;
  U128 p10 = U128(a1) * b0;
  U128 p11 = U128(a1) * b1;
  U256 r{};
  r[0] = uint64_t(p00);
  U128 mid = (p00 >> 64) + uint64_t(p01) + uint64_t(p10);
  r[1] = uint64_t(mid);
  U128 hi = (mid >> 64) + (p01 >> 64) + (p10 >> 64) + uint64_t(p11);
  r[2] = uint64_t(hi);
  r[3] = uint64_t((hi >> 64) + (p11 >> 64));
  return r;
}

bool u256_ge(const U256& a, const U256& b) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return true;
}

}  // namespace

TfIdfScorer::TfIdfScorer(const std::vector<std::string>& corpus_docs) {
  doc_count_ = int(corpus_docs.size());
  for (const std::string& doc : corpus_docs) {
    std::set<std::string> seen;
    for (const std::string& tok : tokenize(doc)) seen.insert(tok);
    for (const std::string& tok : seen) df_[tok] += 1;
  }
}

TfIdfScorer::TfIdfScorer(const ClaimDag& dag, const EvidenceSet& evidence)
    : TfIdfScorer([&] {
        std::vector<std::string> docs;
        for (const ClaimNode& n : dag.nodes()) docs.push_back(n.text);
        for (const EvidenceSegment& s : evidence.segments()) docs.push_back(s.text);
        return docs;
      }()) {}

Rational TfIdfScorer::lexical_score(const std::string& t1,
                                    const std::string& t2) const {
  auto c1 = term_counts(t1);
  auto c2 = term_counts(t2);
  if (c1.empty() || c2.empty()) return Rational();

  // Integer idf keeps every weight, dot product, and norm an exact integer.
  auto idf = [&](const std::string& term) -> U128 {
    auto it = df_.find(term);
    int df = it == df_.end() ? 0 : it->second;
    return U128(doc_count_ - df + 1);
  };

  U128 dot = 0, n1 = 0, n2 = 0;
  for (const auto& [term, cnt] : c1) {
    U128 w = U128(cnt) * idf(term);
    n1 += w * w;
    auto it = c2.find(term);
    if (it != c2.end()) dot += w * (U128(it->second) * idf(term));
  }
  for (const auto& [term, cnt] : c2) {
    U128 w = U128(cnt) * idf(term);
    n2 += w * w;
  }
  if (dot == 0) return Rational();

  // cos = dot / sqrt(n1 * n2). The result is round-half-up(cos * 10^4),
  // found by binary search on the exact integer predicate
  //   (2n - 1)^2 * n1 * n2  <=  (2 * 10^4 * dot)^2
  // i.e. cos * 10^4 >= n - 1/2, compared in 256 bits. No floating point.
  const U128 cap = U128(1) << 96;
  if (dot >= cap || n1 >= cap || n2 >= cap) {
    throw OverflowError("texts too large for exact lexical scoring");
  }
  const U256 lhs = mul_u128(dot * 20000, dot * 20000);
  int lo = 0, hi = 10000;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    U128 m = U128(2 * mid - 1);
    U256 rhs = mul_u128(m * m * n1, n2);
    if (u256_ge(lhs, rhs)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return Rational(lo, 10000);
}

// ---------------------------------------------------------------------------
// fuse / best_match

BasisPoints fuse(const Rational& lex, const Rational& sem,
                 const Rational& alpha) {
  const Rational one = Rational::from_int(1);
  if (lex.is_negative() || lex > one) {
    throw OutOfRange("lexical score outside [0,1]");
  }
  if (sem.is_negative() || sem > one) {
    throw OutOfRange("semantic score outside [0,1]");
  }
  if (alpha.is_negative() || alpha > one) {
    throw OutOfRange("alpha outside [0,1]");
  }
  return discretize(alpha * lex + (one - alpha) * sem);
}

Matcher::Matcher(const TfIdfScorer& scorer, Rational alpha,
                 std::map<std::pair<std::string, int>, Rational> semantic_scores)
    : scorer_(scorer), alpha_(std::move(alpha)), semantic_(std::move(semantic_scores)) {
  const Rational one = Rational::from_int(1);
  if (alpha_.is_negative() || alpha_ > one) {
    throw OutOfRange("alpha outside [0,1]");
  }
  // No semantic data means nothing to fuse: fall back to pure lexical.
  if (semantic_.empty()) alpha_ = one;
}

BasisPoints Matcher::score(const ClaimNode& node,
                           const EvidenceSegment& seg) const {
  Rational lex = scorer_.lexical_score(node.text, seg.text);
  Rational sem;
  auto it = semantic_.find({node.id, seg.index});
  if (it != semantic_.end()) sem = it->second;
  return fuse(lex, sem, alpha_);
}

BestMatch best_match(const ClaimNode& node, const EvidenceSet& evidence,
                     const Matcher& matcher) {
  BestMatch best;
  bool first = true;
  for (const EvidenceSegment& seg : evidence.segments()) {
    BasisPoints s = matcher.score(node, seg);
    if (first || s > best.score) {
      best.score = s;
      best.witness = seg.index;
      first = false;
    }
  }
  return best;
}

}  // namespace claimlattice
