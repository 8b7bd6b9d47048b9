#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "claimlattice/coverage.hpp"
#include "generators.hpp"

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

struct CaseStudy {
  ClaimDag dag;
  ScoreTable i1;
  ScoreTable i2;
};

CaseStudy load_case_study() {
  ClaimDag dag = ClaimDag::load(fixture("memory_module.json"));
  ScoreTable i1 = ScoreTable::load(fixture("scores_i1.json"), dag);
  ScoreTable i2 = ScoreTable::load(fixture("scores_i2.json"), dag);
  return {std::move(dag), std::move(i1), std::move(i2)};
}

}  // namespace

TEST_CASE("weighted coverage reproduces the case-study rationals") {
  CaseStudy cs = load_case_study();
  CoverageValue c1 = weighted_coverage(cs.dag, compute_eff(cs.dag, cs.i1, kTheta));
  CHECK(c1.value == Rational(19165, 233));
  CHECK(c1.display() == "82.3");
  CoverageValue c2 = weighted_coverage(cs.dag, compute_eff(cs.dag, cs.i2, kTheta));
  CHECK(c2.value == Rational(12415, 233));
  CHECK(c2.display() == "53.3");
}

TEST_CASE("three-node prefix coverage") {
  ClaimDag dag = ClaimDag::load(fixture("memory_module_3node.json"));
  ScoreTable scores = ScoreTable::load(fixture("scores_3node_i1.json"), dag);
  CoverageValue c = weighted_coverage(dag, compute_eff(dag, scores, kTheta));
  CHECK(c.value == Rational(278, 100) / Rational(33, 10) * Rational::from_int(100));
  CHECK(c.display() == "84.2");
}

TEST_CASE("flat coverage") {
  CaseStudy cs = load_case_study();
  CHECK(flat_coverage(cs.i1).display() == "83.8");
  CHECK(flat_coverage(cs.i1).value == Rational(1257, 15));

  ScoreTable one;
  one.scores = {{"X", BasisPoints(5000)}};
  CHECK(flat_coverage(one).value == Rational(50, 1));

  ScoreTable full;
  full.scores = {{"X", BasisPoints(10000)}, {"Y", BasisPoints(10000)}};
  CHECK(flat_coverage(full).value == Rational(100, 1));
}

TEST_CASE("waterfall reproduces the five case-study rows") {
  CaseStudy cs = load_case_study();
  WaterfallReport wf = waterfall(cs.dag, cs.i1, cs.i2, kTheta);

  REQUIRE(wf.rows.size() == 5);
  auto row = [&](size_t i) { return wf.rows[i]; };
  CHECK(row(0).node == "C3");
  CHECK(row(0).kind == WaterfallRow::Kind::Direct);
  CHECK(row(0).delta_pp == Rational(480, 233));
  CHECK(row(0).display_pp() == "2.060");

  CHECK(row(1).node == "C11");
  CHECK(row(1).kind == WaterfallRow::Kind::Cascade);
  CHECK(row(1).delta_pp == Rational(1560, 233));
  CHECK(row(1).display_pp() == "6.695");

  CHECK(row(2).node == "C12");
  CHECK(row(2).kind == WaterfallRow::Kind::Direct);
  CHECK(row(2).delta_pp == Rational(840, 233));
  CHECK(row(2).display_pp() == "3.605");

  CHECK(row(3).node == "C12");
  CHECK(row(3).kind == WaterfallRow::Kind::Cascade);
  CHECK(row(3).delta_pp == Rational(1560, 233));
  CHECK(row(3).display_pp() == "6.695");

  CHECK(row(4).node == "C13");
  CHECK(row(4).kind == WaterfallRow::Kind::Cascade);
  CHECK(row(4).delta_pp == Rational(2310, 233));
  CHECK(row(4).display_pp() == "9.914");

  CHECK(wf.total_pp == Rational(6750, 233));
  CHECK(wf.total_pp == wf.coverage_base.value - wf.coverage_alt.value);
}

TEST_CASE("waterfall of identical tables is empty") {
  CaseStudy cs = load_case_study();
  WaterfallReport wf = waterfall(cs.dag, cs.i1, cs.i1, kTheta);
  CHECK(wf.rows.empty());
  CHECK(wf.total_pp == Rational());
}

TEST_CASE("single-term C12 perturbation: C13 cascades, C11 does not") {
  // Frozen from fixtures/derivations/derive_c12_perturbation.py.
  CaseStudy cs = load_case_study();
  ScoreTable perturbed = cs.i1;
  perturbed.construction_id = "I1+C12";
  perturbed.scores["C12"] = BasisPoints(5200);

  EffTable eff = compute_eff(cs.dag, perturbed, kTheta);
  CHECK(eff.at("C12") == BasisPoints(5200));
  CHECK(eff.at("C13") == BasisPoints(0));
  CHECK(eff.at("C11") == BasisPoints(7800));

  CoverageValue cov = weighted_coverage(cs.dag, eff);
  CHECK(cov.value == Rational(16015, 233));
  CHECK(cov.display() == "68.7");

  WaterfallReport wf = waterfall(cs.dag, cs.i1, perturbed, kTheta);
  CHECK(wf.total_pp == Rational(3150, 233));
  REQUIRE(wf.rows.size() == 2);
  CHECK(wf.rows[0].node == "C12");
  CHECK(wf.rows[0].kind == WaterfallRow::Kind::Direct);
  CHECK(wf.rows[1].node == "C13");
  CHECK(wf.rows[1].kind == WaterfallRow::Kind::Cascade);
}

TEST_CASE("coverage stays within [0,100] on random instances") {
  std::mt19937 rng(73);
  for (int i = 0; i < 1200; ++i) {
    ClaimDag dag = testgen::random_dag(rng, 12, true);
    ScoreTable scores = testgen::random_scores(rng, dag);
    CoverageValue cov =
        weighted_coverage(dag, compute_eff(dag, scores, testgen::random_theta(rng)));
    CHECK(!cov.value.is_negative());
    CHECK(cov.value <= Rational::from_int(100));
  }
}

TEST_CASE("coverage is pointwise monotone in the raw scores") {
  std::mt19937 rng(79);
  for (int i = 0; i < 1200; ++i) {
    ClaimDag dag = testgen::random_dag(rng, 12, true);
    ScoreTable low = testgen::random_scores(rng, dag);
    ScoreTable high = testgen::raise_scores(rng, low);
    BasisPoints theta = testgen::random_theta(rng);
    CoverageValue c_low = weighted_coverage(dag, compute_eff(dag, low, theta));
    CoverageValue c_high = weighted_coverage(dag, compute_eff(dag, high, theta));
    CHECK(c_low.value <= c_high.value);
  }
}

TEST_CASE("waterfall rows sum exactly to the gap on random pairs") {
  std::mt19937 rng(83);
  for (int i = 0; i < 600; ++i) {
    ClaimDag dag = testgen::random_dag(rng, 12, true);
    ScoreTable base = testgen::random_scores(rng, dag);
    ScoreTable alt = testgen::random_scores(rng, dag);
    BasisPoints theta = testgen::random_theta(rng);
    WaterfallReport wf = waterfall(dag, base, alt, theta);
    CHECK(wf.total_pp == wf.coverage_base.value - wf.coverage_alt.value);
  }
}

TEST_CASE("coverage dominates the weakest effective score for any weights") {
  std::mt19937 rng(89);
  for (int i = 0; i < 1200; ++i) {
    ClaimDag dag = testgen::random_dag(rng, 12, true);  // random positive weights
    ScoreTable scores = testgen::random_scores(rng, dag);
    EffTable eff = compute_eff(dag, scores, testgen::random_theta(rng));
    BasisPoints min_eff = BasisPoints::top();
    for (const ClaimNode& n : dag.nodes()) min_eff = meet(min_eff, eff.at(n.id));
    CoverageValue cov = weighted_coverage(dag, eff);
    CHECK(cov.value >= Rational(min_eff.value(), 100));
  }
}

TEST_CASE("the broad-construction conclusion survives any reweighting") {
  // min eff under the broad construction is 0.77, so coverage is at least
  // 77 for every strictly positive weight scheme.
  CaseStudy cs = load_case_study();
  std::mt19937 rng(97);
  nlohmann::json base = cs.dag.to_json();
  for (int i = 0; i < 1000; ++i) {
    nlohmann::json weights = nlohmann::json::object();
    for (const char* t : {"preamble", "structural", "functional",
                          "quantitative", "wherein", "coupling", "signal"}) {
      int hundredths = 1 + int(rng() % 5000);
      weights[t] = std::to_string(hundredths / 100) + "." +
                   (hundredths % 100 < 10 ? "0" : "") +
                   std::to_string(hundredths % 100);
    }
    base["weights"] = weights;
    ClaimDag reweighted = ClaimDag::from_json(base);
    CoverageValue cov =
        weighted_coverage(reweighted, compute_eff(reweighted, cs.i1, kTheta));
    CHECK(cov.value >= Rational::from_int(77));
  }
}

TEST_CASE("incomplete tables are refused") {
  CaseStudy cs = load_case_study();
  EffTable eff = compute_eff(cs.dag, cs.i1, kTheta);
  eff.eff.erase("C5");
  CHECK_THROWS_AS(weighted_coverage(cs.dag, eff), IncompleteEff);
  ScoreTable empty;
  CHECK_THROWS_AS(flat_coverage(empty), EmptyInput);
}
