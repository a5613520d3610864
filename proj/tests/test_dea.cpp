#include <doctest.h>

#include <cmath>
#include <random>

#include "resprod/dea.hpp"
#include "resprod/errors.hpp"
#include "support/oracles.hpp"
#include "support/random_dea.hpp"

using namespace resprod;
using dea::Regime;
using dea::ReturnsToScale;

namespace {

dea::DeaProblem single_io(std::vector<std::pair<double, double>> xy) {
  std::vector<dea::DmuRecord> dmus;
  char name = 'A';
  for (auto [x, y] : xy) dmus.push_back({{std::string(1, name++), "1"}, {x}, {y}});
  return dea::DeaProblem(std::move(dmus), {"X"}, {"Y"});
}

std::vector<std::vector<double>> inputs_of(const dea::DeaProblem& p) {
  std::vector<std::vector<double>> v;
  for (const auto& d : p.dmus()) v.push_back(d.inputs);
  return v;
}

std::vector<std::vector<double>> outputs_of(const dea::DeaProblem& p) {
  std::vector<std::vector<double>> v;
  for (const auto& d : p.dmus()) v.push_back(d.outputs);
  return v;
}

}  // namespace

TEST_CASE("a lone DMU spans itself under every regime") {
  const auto p = single_io({{3.0, 5.0}});
  for (auto regime : {Regime::crs, Regime::vrs, Regime::nirs}) {
    CHECK(dea::solve_output_oriented(p, 0, regime).phi == doctest::Approx(1.0));
  }
}

TEST_CASE("CRS expansion against a more productive peer") {
  const auto p = single_io({{1.0, 2.0}, {1.0, 1.0}});
  const auto s = dea::solve_output_oriented(p, 1, Regime::crs);
  const double oracle = 1.0 / oracle::ratio_crs_score({1.0, 1.0}, {2.0, 1.0}, 1);
  CHECK(s.phi == doctest::Approx(oracle));
  CHECK(s.phi == doctest::Approx(2.0));
  CHECK(dea::efficiency_score(s.phi) == doctest::Approx(0.5));
}

TEST_CASE("VRS expansion reaches the peer with equal input") {
  const auto p = single_io({{1.0, 1.0}, {2.0, 2.0}, {2.0, 1.0}});
  const double oracle = oracle::envelopment_phi(inputs_of(p), outputs_of(p), 2, oracle::Returns::vrs);
  const auto s = dea::solve_output_oriented(p, 2, Regime::vrs);
  CHECK(oracle == doctest::Approx(2.0));
  CHECK(s.phi == doctest::Approx(oracle));
  CHECK(s.intensities[1] == doctest::Approx(1.0));
}

TEST_CASE("efficiency_score is the reciprocal") {
  CHECK(dea::efficiency_score(1.0) == 1.0);
  CHECK(dea::efficiency_score(2.0) == 0.5);
  CHECK(dea::efficiency_score(1.25) == doctest::Approx(0.8));
  CHECK_THROWS_AS(dea::efficiency_score(0.99), InvariantViolation);
}

TEST_CASE("decompose: frontier DMU is fully efficient") {
  const auto r = dea::decompose(single_io({{1.0, 2.0}, {1.0, 1.0}}));
  CHECK(r[0].te == 1.0);
  CHECK(r[0].pte == 1.0);
  CHECK(r[0].se == 1.0);
  CHECK(r[0].rts == ReturnsToScale::constant);
}

TEST_CASE("decompose: dominated DMU with the same input") {
  // B=(1,1) is dominated by A=(1,2) at identical input, so the VRS hull also
  // expands it by 2; all inefficiency is technical, none is scale.
  const auto p = single_io({{1.0, 2.0}, {1.0, 1.0}});
  const auto r = dea::decompose(p);
  const double vrs = oracle::envelopment_phi(inputs_of(p), outputs_of(p), 1, oracle::Returns::vrs);
  CHECK(r[1].te == doctest::Approx(0.5));
  CHECK(r[1].pte == doctest::Approx(1.0 / vrs));
  CHECK(r[1].pte == doctest::Approx(0.5));
  CHECK(r[1].se == doctest::Approx(1.0));
  CHECK(r[1].rts == ReturnsToScale::constant);
  REQUIRE(r[1].peers.size() == 1);
  CHECK(r[1].peers[0].id.university == "A");
}

TEST_CASE("decompose: large DMU shows decreasing returns") {
  const auto p = single_io({{1.0, 2.0}, {3.0, 4.0}});
  const auto r = dea::decompose(p);
  CHECK(r[1].te == doctest::Approx(2.0 / 3.0));
  CHECK(r[1].te_nirs == doctest::Approx(1.0));
  CHECK(r[1].pte == doctest::Approx(1.0));
  CHECK(r[1].rts == ReturnsToScale::decreasing);
}

TEST_CASE("decompose: small DMU shows increasing returns") {
  // A=(2,2) sits on the CRS ray; B=(1,0.5) is VRS-efficient as the minimal-input unit.
  const auto p = single_io({{2.0, 2.0}, {1.0, 0.5}});
  const auto r = dea::decompose(p);
  CHECK(r[1].te == doctest::Approx(0.5));
  CHECK(r[1].te_nirs == doctest::Approx(0.5));
  CHECK(r[1].pte == doctest::Approx(1.0));
  CHECK(r[1].rts == ReturnsToScale::increasing);
}

TEST_CASE("classify_rts") {
  CHECK(dea::classify_rts(1.0, 1.0, 1.0) == ReturnsToScale::constant);
  CHECK(dea::classify_rts(0.5, 0.5, 1.0) == ReturnsToScale::increasing);
  CHECK(dea::classify_rts(2.0 / 3.0, 1.0, 1.0) == ReturnsToScale::decreasing);
  CHECK_THROWS_AS(dea::classify_rts(0.9, 0.5, 1.0), InvariantViolation);
  CHECK_THROWS_AS(dea::classify_rts(0.0, 0.5, 1.0), InvariantViolation);
}

TEST_CASE("degenerate and malformed problems") {
  const auto p = single_io({{1.0, 2.0}, {1.0, 0.0}});
  CHECK(p.degenerate_dmus() == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(dea::solve_output_oriented(p, 1, Regime::crs), DegenerateDmuError);
  try {
    dea::decompose(p);
    FAIL("expected DegenerateDmuError");
  } catch (const DegenerateDmuError& e) {
    CHECK(e.dmu() == "B/1");
  }

  CHECK_THROWS_AS(dea::DeaProblem({{{"A", "1"}, {1.0, 2.0}, {1.0}}}, {"X"}, {"Y"}), StructuralError);
  CHECK_THROWS_AS(dea::DeaProblem({{{"A", "1"}, {-1.0}, {1.0}}}, {"X"}, {"Y"}), StructuralError);
  CHECK_THROWS_AS(p.without_input("X"), StructuralError);
  CHECK_THROWS_AS(p.without_input("Z"), StructuralError);
}

TEST_CASE("zero inputs are well-posed") {
  std::vector<dea::DmuRecord> dmus{{{"A", "1"}, {0.0, 2.0}, {3.0}},
                                   {{"B", "1"}, {1.0, 2.0}, {3.0}},
                                   {{"C", "1"}, {2.0, 1.0}, {1.0}}};
  const dea::DeaProblem p(std::move(dmus), {"FP", "AP"}, {"PU"});
  const auto r = dea::decompose(p);
  for (const auto& e : r) {
    CHECK(e.te > 0.0);
    CHECK(e.te <= e.pte);
  }
  CHECK(r[0].pte == doctest::Approx(1.0));
}

TEST_CASE("property: multi-dimensional scores match vertex enumeration") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> v(1, 9);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 3;
    std::vector<dea::DmuRecord> dmus;
    for (std::size_t k = 0; k < n; ++k) {
      dmus.push_back({{"D" + std::to_string(k), "A"},
                      {double(v(rng)), double(v(rng))},
                      {double(v(rng)), double(v(rng))}});
    }
    const dea::DeaProblem p(std::move(dmus), {"X1", "X2"}, {"Y1", "Y2"});
    for (std::size_t k = 0; k < n; ++k) {
      const std::pair<Regime, oracle::Returns> pairs[] = {{Regime::crs, oracle::Returns::crs},
                                                          {Regime::vrs, oracle::Returns::vrs},
                                                          {Regime::nirs, oracle::Returns::nirs}};
      for (auto [regime, returns] : pairs) {
        const double want = oracle::envelopment_phi(inputs_of(p), outputs_of(p), k, returns);
        CHECK(dea::solve_output_oriented(p, k, regime).phi == doctest::Approx(want).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("property: 52-unit synthetic areas satisfy the decomposition invariants") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = testing::random_area_problem(rng, 52);
    const auto r = dea::decompose(p);
    int te_eff = 0;
    int pte_eff = 0;
    for (const auto& e : r) {
      CHECK(e.te > 0.0);
      CHECK(e.te <= e.te_nirs);
      CHECK(e.te_nirs <= e.pte);
      CHECK(e.pte <= 1.0);
      CHECK(e.se == doctest::Approx(e.te / e.pte));
      CHECK(e.se <= 1.0);
      CHECK((e.rts == ReturnsToScale::constant) == (std::abs(e.te - e.pte) <= 1e-6));
      te_eff += e.te >= 1.0 - 1e-6;
      pte_eff += e.pte >= 1.0 - 1e-6;
    }
    CHECK(te_eff >= 1);
    CHECK(pte_eff >= te_eff);
  }
}

TEST_CASE("property: adding a DMU never raises an existing score") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto big = testing::random_area_problem(rng, 15);
    std::vector<dea::DmuRecord> fewer(big.dmus().begin(), big.dmus().end() - 1);
    const dea::DeaProblem small(std::move(fewer), big.input_labels(), big.output_labels());
    const auto before = dea::decompose(small);
    const auto after = dea::decompose(big);
    for (std::size_t k = 0; k < before.size(); ++k) {
      CHECK(after[k].te <= before[k].te + 1e-9);
      CHECK(after[k].pte <= before[k].pte + 1e-9);
    }
  }
}

TEST_CASE("property: units invariance and dimension monotonicity") {
  std::mt19937_64 rng(5);
  const auto p = testing::random_area_problem(rng, 20);
  const auto base = dea::decompose(p);
  for (double k : {0.01, 7.0, 1000.0}) {
    const auto q = dea::decompose(testing::scale_column(p, true, 3, k));
    const auto o = dea::decompose(testing::scale_column(p, false, 1, k));
    for (std::size_t j = 0; j < base.size(); ++j) {
      CHECK(std::abs(q[j].te - base[j].te) <= 1e-6);
      CHECK(std::abs(o[j].pte - base[j].pte) <= 1e-6);
      CHECK(q[j].rts == base[j].rts);
    }
  }
  for (const auto& label : p.input_labels()) {
    const auto dropped = dea::decompose(p.without_input(label));
    for (std::size_t j = 0; j < base.size(); ++j) {
      CHECK(dropped[j].te <= base[j].te + 1e-9);
      CHECK(dropped[j].pte <= base[j].pte + 1e-9);
    }
  }
}

TEST_CASE("property: single ratio CRS equals the productivity ratio") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = testing::random_single_ratio_problem(rng, 2 + trial % 9);
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& d : p.dmus()) {
      x.push_back(d.inputs[0]);
      y.push_back(d.outputs[0]);
    }
    const auto r = dea::decompose(p);
    for (std::size_t k = 0; k < r.size(); ++k) {
      CHECK(std::abs(r[k].te - oracle::ratio_crs_score(x, y, k)) <= 1e-9);
    }
  }
}
