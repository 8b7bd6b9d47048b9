#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "claimlattice/scoring.hpp"

using namespace claimlattice;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURES_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ClaimDag tiny_dag() {
  return ClaimDag::from_json(nlohmann::json{
      {"schema_version", 1},
      {"nodes",
       {{{"id", "E1"}, {"type", "functional"}, {"text", "a filter element that attenuates high-frequency noise"}, {"deps", nlohmann::json::array()}},
        {{"id", "E2"}, {"type", "wherein"}, {"text", "wherein the filter subtracts a delayed copy of the input"}, {"deps", {"E1"}}}}}});
}

}  // namespace

TEST_CASE("lexical score is 1 for identical texts and 0 for disjoint ones") {
  TfIdfScorer scorer({"rank translation circuit", "signal filter stage",
                      "register on the board"});
  CHECK(scorer.lexical_score("rank translation circuit",
                             "rank translation circuit") ==
        Rational::from_int(1));
  CHECK(scorer.lexical_score("rank translation", "signal filter") == Rational());
  CHECK(scorer.lexical_score("", "anything") == Rational());
}

TEST_CASE("lexical score is symmetric under a shared corpus") {
  std::mt19937 rng(31);
  const std::vector<std::string> words = {"rank",  "translation", "circuit",
                                          "filter", "signal",     "register",
                                          "board",  "memory",     "device"};
  std::vector<std::string> docs;
  for (int i = 0; i < 12; ++i) {
    std::string d;
    for (int j = 0; j < 6; ++j) d += words[rng() % words.size()] + " ";
    docs.push_back(d);
  }
  TfIdfScorer scorer(docs);
  for (int i = 0; i < 300; ++i) {
    const std::string& a = docs[rng() % docs.size()];
    const std::string& b = docs[rng() % docs.size()];
    CHECK(scorer.lexical_score(a, b) == scorer.lexical_score(b, a));
  }
}

TEST_CASE("tokenization lowercases and splits on punctuation") {
  TfIdfScorer scorer({"Rank-Translation (circuit)!", "other text"});
  CHECK(scorer.lexical_score("Rank-Translation (circuit)!",
                             "rank translation circuit") ==
        Rational::from_int(1));
}

TEST_CASE("fuse is the discretized convex combination") {
  CHECK(fuse(Rational::from_int(1), Rational(3, 5), Rational(1, 2)) ==
        BasisPoints(8000));
  // Zero lexical vector against itself under semantic identity: 1 - alpha.
  CHECK(fuse(Rational(), Rational::from_int(1), Rational(3, 10)) ==
        BasisPoints(7000));
  std::mt19937 rng(37);
  for (int i = 0; i < 1000; ++i) {
    Rational x(int(rng() % 10001), 10000);
    Rational alpha(int(rng() % 101), 100);
    CHECK(fuse(x, x, alpha) == discretize(x));
  }
}

TEST_CASE("fuse rejects inputs escaping the unit interval") {
  CHECK_THROWS_AS(fuse(Rational(11, 10), Rational(), Rational(1, 2)), OutOfRange);
  CHECK_THROWS_AS(fuse(Rational(), Rational(-1, 10), Rational(1, 2)), OutOfRange);
  CHECK_THROWS_AS(fuse(Rational(), Rational(), Rational(2, 1)), OutOfRange);
}

TEST_CASE("fuse stays bounded for all valid inputs") {
  std::mt19937 rng(41);
  for (int i = 0; i < 2000; ++i) {
    Rational lex(int(rng() % 10001), 10000);
    Rational sem(int(rng() % 10001), 10000);
    Rational alpha(int(rng() % 1001), 1000);
    BasisPoints out = fuse(lex, sem, alpha);
    CHECK(out.value() >= 0);
    CHECK(out.value() <= 10000);
  }
}

TEST_CASE("best_match maximizes with lowest-index tie-break") {
  ClaimDag dag = tiny_dag();
  EvidenceSet evidence = EvidenceSet::from_json(nlohmann::json{
      {"segments",
       {{{"index", 0}, {"text", "an amplifier with no filtering stage"}},
        {{"index", 1}, {"text", "a gain block driving the speaker"}},
        {{"index", 2}, {"text", "a tone control section"}}}}});
  TfIdfScorer scorer(dag, evidence);

  SUBCASE("semantic table drives the pinned filter-claim score") {
    // Pure semantic configuration (alpha = 0); scores are external data.
    std::map<std::pair<std::string, int>, Rational> sem = {
        {{"E1", 0}, Rational(29, 50)},   // 0.58
        {{"E1", 1}, Rational(1, 2)},
        {{"E1", 2}, Rational(11, 25)},
        {{"E2", 0}, Rational(11, 25)},   // 0.44
        {{"E2", 1}, Rational(2, 5)},
        {{"E2", 2}, Rational(1, 4)},
    };
    Matcher matcher(scorer, Rational(), sem);
    BestMatch m = best_match(dag.node("E1"), evidence, matcher);
    CHECK(m.score == BasisPoints(5800));
    CHECK(m.witness == 0);
    CHECK(best_match(dag.node("E2"), evidence, matcher).score == BasisPoints(4400));
  }

  SUBCASE("ties resolve to the lowest segment index") {
    std::map<std::pair<std::string, int>, Rational> sem = {
        {{"E1", 0}, Rational(1, 2)},
        {{"E1", 1}, Rational(7, 10)},
        {{"E1", 2}, Rational(7, 10)},
    };
    Matcher matcher(scorer, Rational(), sem);
    BestMatch m = best_match(dag.node("E1"), evidence, matcher);
    CHECK(m.score == BasisPoints(7000));
    CHECK(m.witness == 1);
  }

  SUBCASE("single segment wins trivially") {
    EvidenceSet one = EvidenceSet::from_json(nlohmann::json{
        {"segments", {{{"index", 0}, {"text", "lone segment"}}}}});
    TfIdfScorer s2(dag, one);
    Matcher matcher(s2, Rational::from_int(1));
    BestMatch m = best_match(dag.node("E1"), one, matcher);
    CHECK(m.witness == 0);
  }
}

TEST_CASE("best_match equals the brute-force maximum") {
  ClaimDag dag = tiny_dag();
  std::mt19937 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 1 + int(rng() % 4);
    nlohmann::json segs = nlohmann::json::array();
    for (int i = 0; i < m; ++i) {
      segs.push_back({{"index", i}, {"text", "segment " + std::to_string(i)}});
    }
    EvidenceSet evidence = EvidenceSet::from_json(nlohmann::json{{"segments", segs}});
    TfIdfScorer scorer(dag, evidence);
    std::map<std::pair<std::string, int>, Rational> sem;
    for (int i = 0; i < m; ++i) {
      sem[{"E1", i}] = Rational(int(rng() % 10001), 10000);
    }
    Matcher matcher(scorer, Rational(), sem);
    BestMatch got = best_match(dag.node("E1"), evidence, matcher);
    BasisPoints expect;
    for (int i = 0; i < m; ++i) {
      expect = join(expect, matcher.score(dag.node("E1"), evidence.segments()[i]));
    }
    CHECK(got.score == expect);
    CHECK(matcher.score(dag.node("E1"), evidence.segments()[got.witness]) == expect);
  }
}

TEST_CASE("score tables validate against the claim") {
  ClaimDag dag = ClaimDag::load(fixture("memory_module.json"));
  ScoreTable i1 = ScoreTable::load(fixture("scores_i1.json"), dag);
  CHECK(i1.at("C1") == BasisPoints(9000));
  CHECK(i1.at("C13") == BasisPoints(7700));
  ScoreTable i2 = ScoreTable::load(fixture("scores_i2.json"), dag);
  CHECK(i2.at("C3") == BasisPoints(5800));
  CHECK(i2.at("C12") == BasisPoints(5200));
  CHECK(i2.at("C11") == BasisPoints(7800));

  nlohmann::json missing = i1.to_json();
  missing["scores"].erase("C7");
  CHECK_THROWS_AS(ScoreTable::from_json(missing, dag), MissingNode);

  nlohmann::json unknown = i1.to_json();
  unknown["scores"]["C99"] = 5;
  CHECK_THROWS_AS(ScoreTable::from_json(unknown, dag), UnknownNode);

  nlohmann::json oob = i1.to_json();
  oob["scores"]["C1"] = 10001;
  CHECK_THROWS_AS(ScoreTable::from_json(oob, dag), OutOfRange);

  nlohmann::json bad = i1.to_json();
  bad["scores"]["C1"] = "high";
  CHECK_THROWS_AS(ScoreTable::from_json(bad, dag), SchemaError);
}

TEST_CASE("evidence sets enforce canonical indexing") {
  CHECK_THROWS_AS(EvidenceSet::from_json(nlohmann::json{
                      {"segments", nlohmann::json::array()}}),
                  SchemaError);
  CHECK_THROWS_AS(EvidenceSet::from_json(nlohmann::json{
                      {"segments",
                       {{{"index", 1}, {"text", "skipped zero"}}}}}),
                  SchemaError);
}
