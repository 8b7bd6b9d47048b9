#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "claimlattice/propagation.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace claimlattice;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURES_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const BasisPoints kTheta(6500);

}  // namespace

TEST_CASE("three-node prefix keeps every raw score") {
  ClaimDag dag = ClaimDag::load(fixture("memory_module_3node.json"));
  ScoreTable scores = ScoreTable::load(fixture("scores_3node_i1.json"), dag);
  EffTable eff = compute_eff(dag, scores, kTheta);
  for (const ClaimNode& n : dag.nodes()) CHECK(eff.at(n.id) == scores.at(n.id));
}

TEST_CASE("narrow construction cascades through C11, C12, C13") {
  ClaimDag dag = ClaimDag::load(fixture("memory_module.json"));
  ScoreTable i2 = ScoreTable::load(fixture("scores_i2.json"), dag);
  EffTable eff = compute_eff(dag, i2, kTheta);
  // C3 keeps its sub-threshold raw score: its own dependency is met.
  CHECK(eff.at("C3") == BasisPoints(5800));
  // C11 is zeroed despite a raw score above theta.
  CHECK(eff.at("C11") == BasisPoints(0));
  CHECK(i2.at("C11") == BasisPoints(7800));
  CHECK(eff.at("C12") == BasisPoints(0));
  CHECK(eff.at("C13") == BasisPoints(0));
  CHECK(eff.at("C2") == BasisPoints(8700));
}

TEST_CASE("nodes without deps keep their score unconditionally") {
  std::mt19937 rng(47);
  for (int i = 0; i < 300; ++i) {
    ClaimDag dag = testgen::random_dag(rng);
    ScoreTable scores = testgen::random_scores(rng, dag);
    EffTable eff = compute_eff(dag, scores, testgen::random_theta(rng));
    for (const ClaimNode& n : dag.nodes()) {
      if (n.deps.empty()) CHECK(eff.at(n.id) == scores.at(n.id));
    }
  }
}

TEST_CASE("eff dichotomy, eff <= score, and dependency zeroing") {
  std::mt19937 rng(53);
  for (int i = 0; i < 1200; ++i) {
    ClaimDag dag = testgen::random_dag(rng);
    ScoreTable scores = testgen::random_scores(rng, dag);
    BasisPoints theta = testgen::random_theta(rng);
    EffTable eff = compute_eff(dag, scores, theta);
    for (const ClaimNode& n : dag.nodes()) {
      BasisPoints e = eff.at(n.id);
      CHECK((e == scores.at(n.id) || e == BasisPoints(0)));
      CHECK(e <= scores.at(n.id));
      for (const std::string& d : n.deps) {
        if (eff.at(d) < theta) CHECK(e == BasisPoints(0));
      }
    }
  }
}

TEST_CASE("compute_eff is pointwise monotone in the scores") {
  std::mt19937 rng(59);
  for (int i = 0; i < 1200; ++i) {
    ClaimDag dag = testgen::random_dag(rng);
    ScoreTable low = testgen::random_scores(rng, dag);
    ScoreTable high = testgen::raise_scores(rng, low);
    BasisPoints theta = testgen::random_theta(rng);
    EffTable eff_low = compute_eff(dag, low, theta);
    EffTable eff_high = compute_eff(dag, high, theta);
    for (const ClaimNode& n : dag.nodes()) {
      CHECK(eff_low.at(n.id) <= eff_high.at(n.id));
    }
  }
}

TEST_CASE("claim strength: leaves, the case-study bottleneck, schematic cap") {
  ClaimDag dag = ClaimDag::load(fixture("memory_module.json"));
  ScoreTable i1 = ScoreTable::load(fixture("scores_i1.json"), dag);
  StrengthTable st = claim_strength(dag, i1);
  CHECK(st.at("C1") == i1.at("C1"));  // leaf
  CHECK(st.at("C13") == BasisPoints(7700));
  CHECK(st.at("C12") == BasisPoints(7800));  // capped by C11 upstream

  // A low ancestor bounds every dependent.
  nlohmann::json chain{
      {"schema_version", 1},
      {"nodes",
       {{{"id", "A"}, {"type", "structural"}, {"text", "a"}, {"deps", nlohmann::json::array()}},
        {{"id", "B"}, {"type", "structural"}, {"text", "b"}, {"deps", {"A"}}},
        {{"id", "C"}, {"type", "structural"}, {"text", "c"}, {"deps", {"B"}}}}}};
  ClaimDag abc = ClaimDag::from_json(chain);
  ScoreTable s;
  s.scores = {{"A", BasisPoints(4500)}, {"B", BasisPoints(9000)}, {"C", BasisPoints(9900)}};
  StrengthTable st2 = claim_strength(abc, s);
  CHECK(st2.at("B") == BasisPoints(4500));
  CHECK(st2.at("C") == BasisPoints(4500));
}

TEST_CASE("claim strength equals the transitive-ancestor meet oracle") {
  std::mt19937 rng(61);
  for (int i = 0; i < 1200; ++i) {
    ClaimDag dag = testgen::random_dag(rng, 10);
    ScoreTable scores = testgen::random_scores(rng, dag);
    StrengthTable st = claim_strength(dag, scores);
    auto expect = oracles::oracle_claim_strength(dag, scores);
    for (const ClaimNode& n : dag.nodes()) {
      CHECK(st.at(n.id) == expect.at(n.id));
      CHECK(st.at(n.id) <= scores.at(n.id));
      for (const std::string& d : n.deps) CHECK(st.at(n.id) <= st.at(d));
    }
  }
}

TEST_CASE("claim strength is monotone in the scores") {
  std::mt19937 rng(67);
  for (int i = 0; i < 1200; ++i) {
    ClaimDag dag = testgen::random_dag(rng);
    ScoreTable low = testgen::random_scores(rng, dag);
    ScoreTable high = testgen::raise_scores(rng, low);
    StrengthTable st_low = claim_strength(dag, low);
    StrengthTable st_high = claim_strength(dag, high);
    for (const ClaimNode& n : dag.nodes()) {
      CHECK(st_low.at(n.id) <= st_high.at(n.id));
    }
  }
}

TEST_CASE("kleene fixpoint agrees with compute_eff within the pass bound") {
  ClaimDag dag = ClaimDag::load(fixture("memory_module.json"));
  ScoreTable i1 = ScoreTable::load(fixture("scores_i1.json"), dag);
  FixpointResult fp = kleene_fixpoint(dag, i1, kTheta);
  EffTable direct = compute_eff(dag, i1, kTheta);
  CHECK(fp.eff.eff == direct.eff);
  CHECK(fp.iterations <= dag.max_depth() + 2);
  CHECK(fp.iterations <= 8);  // depth 6
}

TEST_CASE("kleene on a chain and on all-zero scores") {
  nlohmann::json chain{
      {"schema_version", 1},
      {"nodes",
       {{{"id", "A"}, {"type", "structural"}, {"text", "a"}, {"deps", nlohmann::json::array()}},
        {{"id", "B"}, {"type", "structural"}, {"text", "b"}, {"deps", {"A"}}},
        {{"id", "C"}, {"type", "structural"}, {"text", "c"}, {"deps", {"B"}}}}}};
  ClaimDag abc = ClaimDag::from_json(chain);
  ScoreTable s;
  s.scores = {{"A", BasisPoints(9000)}, {"B", BasisPoints(9000)}, {"C", BasisPoints(9000)}};
  FixpointResult fp = kleene_fixpoint(abc, s, kTheta);
  CHECK(fp.iterations <= 4);
  CHECK(fp.eff.at("C") == BasisPoints(9000));

  ScoreTable zeros;
  zeros.scores = {{"A", BasisPoints(0)}, {"B", BasisPoints(0)}, {"C", BasisPoints(0)}};
  FixpointResult fz = kleene_fixpoint(abc, zeros, kTheta);
  CHECK(fz.iterations == 1);
  for (const auto& [id, v] : fz.eff.eff) CHECK(v == BasisPoints(0));
}

TEST_CASE("naive iteration oracle reproduces the narrow-construction cascade") {
  ClaimDag dag = ClaimDag::load(fixture("memory_module.json"));
  ScoreTable i2 = ScoreTable::load(fixture("scores_i2.json"), dag);
  auto naive = oracles::oracle_kleene(dag, i2, kTheta);
  EffTable direct = compute_eff(dag, i2, kTheta);
  CHECK(naive == direct.eff);
  CHECK(naive.at("C11") == BasisPoints(0));
  CHECK(naive.at("C13") == BasisPoints(0));
}

TEST_CASE("triple agreement: direct pass, fixpoint, naive oracle") {
  std::mt19937 rng(71);
  for (int i = 0; i < 1200; ++i) {
    ClaimDag dag = testgen::random_dag(rng);
    ScoreTable scores = testgen::random_scores(rng, dag);
    BasisPoints theta = testgen::random_theta(rng);
    EffTable direct = compute_eff(dag, scores, theta);
    FixpointResult fp = kleene_fixpoint(dag, scores, theta);
    auto naive = oracles::oracle_kleene(dag, scores, theta);
    CHECK(fp.eff.eff == direct.eff);
    CHECK(fp.eff.eff == naive);
    CHECK(fp.iterations <= dag.max_depth() + 2);
  }
}

TEST_CASE("threshold and meet models genuinely diverge") {
  // Under the narrow construction C11 is zeroed by the threshold model but
  // keeps a positive weakest-link strength.
  ClaimDag dag = ClaimDag::load(fixture("memory_module.json"));
  ScoreTable i2 = ScoreTable::load(fixture("scores_i2.json"), dag);
  EffTable eff = compute_eff(dag, i2, kTheta);
  StrengthTable st = claim_strength(dag, i2);
  CHECK(eff.at("C11") == BasisPoints(0));
  CHECK(st.at("C11") == BasisPoints(5800));
  CHECK(st.at("C11") > BasisPoints(0));
}

TEST_CASE("oracles refuse instances beyond their budget") {
  nlohmann::json nodes = nlohmann::json::array();
  for (int i = 0; i < 11; ++i) {
    nodes.push_back({{"id", "N" + std::to_string(i)},
                     {"type", "structural"},
                     {"text", "n"},
                     {"deps", nlohmann::json::array()}});
  }
  ClaimDag big = ClaimDag::from_json(
      nlohmann::json{{"schema_version", 1}, {"nodes", nodes}});
  ScoreTable scores;
  ScoreMatrix matrix;
  for (const ClaimNode& n : big.nodes()) {
    scores.scores.emplace(n.id, BasisPoints(9000));
    matrix.rows.emplace(n.id, std::vector<BasisPoints>{BasisPoints(9000)});
  }
  CHECK_THROWS_AS(oracles::oracle_claim_strength(big, scores),
                  oracles::BudgetExceeded);
  CHECK_THROWS_AS(oracles::oracle_full_coverage_exists(big, matrix, kTheta),
                  oracles::BudgetExceeded);
}

TEST_CASE("incomplete score tables are refused") {
  ClaimDag dag = ClaimDag::load(fixture("memory_module_3node.json"));
  ScoreTable partial;
  partial.scores = {{"C1", BasisPoints(9000)}};
  CHECK_THROWS_AS(compute_eff(dag, partial, kTheta), IncompleteScores);
  CHECK_THROWS_AS(claim_strength(dag, partial), IncompleteScores);
  CHECK_THROWS_AS(kleene_fixpoint(dag, partial, kTheta), IncompleteScores);
}
