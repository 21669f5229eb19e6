#include "toric/euler.hpp"

#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

using namespace toric;

namespace {

std::set<std::vector<Int>> exps(const MonomialSymbolSystem& s) {
  std::set<std::vector<Int>> out;
  for (const auto& a : s.exponents)
    out.insert({a.data(), a.data() + a.size()});
  return out;
}

std::vector<Int> key(const IntVector& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace

TEST_CASE("fundamental form of the unit square is the quadric's") {
  auto p = oracles::unit_square();
  auto w = is_inscribed_in_rectangle(p);
  REQUIRE(w.has_value());
  auto form = fundamental_form(p, *w);
  std::set<std::vector<Int>> expected = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  CHECK(exps(form) == expected);
  REQUIRE(form.grading.count(2) == 1);
  REQUIRE(form.grading.at(2).size() == 1);
  CHECK(form.grading.at(2)[0] == int_vector({1, 1}));
}

TEST_CASE("fundamental form of a segment is the rational normal curve's") {
  for (long long d : {1, 2, 5}) {
    auto p = oracles::segment(0, d);
    auto w = is_inscribed_in_rectangle(p);
    REQUIRE(w.has_value());
    auto form = fundamental_form(p, *w);
    REQUIRE(form.exponents.size() == static_cast<size_t>(d + 1));
    for (long long k = 0; k <= d; ++k)
      CHECK(form.exponents[static_cast<size_t>(k)] == int_vector({k}));
  }
}

TEST_CASE("fundamental form of the inscribed pentagon") {
  auto p = oracles::inscribed_pentagon();
  auto w = is_inscribed_in_rectangle(p);
  REQUIRE(w.has_value());
  CHECK(w->v0 == int_vector({0, 0}));
  auto form = fundamental_form(p, *w);
  // v0 is the origin and the edge basis is the ambient basis, so D(F) is
  // the lattice point set itself.
  std::set<std::vector<Int>> expected;
  for (const auto& m : lattice_points(p)) expected.insert(key(m));
  CHECK(exps(form) == expected);
}

TEST_CASE("fundamental_form rejects foreign witnesses") {
  auto p = oracles::unit_square();
  RectangleWitness bogus{int_vector({2, 2}),
                         {int_vector({1, 0}), int_vector({0, 1})}};
  CHECK_THROWS_AS(fundamental_form(p, bogus), InvalidWitness);
  RectangleWitness wrong_edges{int_vector({0, 0}),
                               {int_vector({1, 1}), int_vector({0, 1})}};
  CHECK_THROWS_AS(fundamental_form(p, wrong_edges), InvalidWitness);
}

TEST_CASE("is_symbol_system") {
  auto good = make_symbol_system(
      2, {int_vector({0, 0}), int_vector({1, 0}), int_vector({0, 1}),
          int_vector({1, 1})});
  CHECK(is_symbol_system(good));

  // (2,1) requires (1,1).
  auto gap = make_symbol_system(
      2, {int_vector({0, 0}), int_vector({1, 0}), int_vector({0, 1}),
          int_vector({2, 1})});
  CHECK_FALSE(is_symbol_system(gap));

  auto curve = make_symbol_system(1, {int_vector({0}), int_vector({1}),
                                      int_vector({2})});
  CHECK(is_symbol_system(curve));

  // Missing a unit vector.
  auto no_unit = make_symbol_system(2, {int_vector({0, 0}), int_vector({1, 0})});
  CHECK_FALSE(is_symbol_system(no_unit));
}

TEST_CASE("euler_action golden weights") {
  auto square = oracles::unit_square();
  auto w = is_inscribed_in_rectangle(square);
  REQUIRE(w.has_value());
  auto act = euler_action(square, *w);
  CHECK(act.lambda == int_vector({1, 1}));
  // Lattice points in lex order: (0,0), (0,1), (1,0), (1,1).
  REQUIRE(act.ambient_weights.size() == 4);
  CHECK(act.ambient_weights[0] == 0);
  CHECK(act.ambient_weights[1] == 1);
  CHECK(act.ambient_weights[2] == 1);
  CHECK(act.ambient_weights[3] == 2);

  auto seg = oracles::segment(0, 3);
  auto ws = is_inscribed_in_rectangle(seg);
  REQUIRE(ws.has_value());
  auto act_seg = euler_action(seg, *ws);
  CHECK(act_seg.lambda == int_vector({1}));
  REQUIRE(act_seg.ambient_weights.size() == 4);
  for (long long k = 0; k <= 3; ++k)
    CHECK(act_seg.ambient_weights[static_cast<size_t>(k)] == k);
}

TEST_CASE("euler_action weights are total degrees of the form") {
  std::vector<LatticePolytope> corpus;
  corpus.push_back(oracles::inscribed_pentagon());
  corpus.push_back(oracles::unit_cube());
  std::mt19937 rng(424242);
  for (int i = 0; i < 25; ++i) corpus.push_back(oracles::random_polygon(rng));
  for (const auto& p : corpus) {
    auto w = is_inscribed_in_rectangle(p);
    if (!w.has_value()) continue;
    auto act = euler_action(p, *w);
    auto pts = lattice_points(p);
    REQUIRE(act.ambient_weights.size() == pts.size());
    int units_seen = 0;
    for (size_t k = 0; k < pts.size(); ++k) {
      IntVector c = coords_in_basis(w->edge_basis, IntVector(pts[k] - w->v0));
      Int deg = 0;
      for (Index i = 0; i < c.size(); ++i) deg += c(i);
      CHECK(act.ambient_weights[k] == deg);
      if (pts[k] == w->v0) CHECK(act.ambient_weights[k] == 0);
      bool is_unit = deg == 1;
      if (is_unit) {
        CHECK(act.ambient_weights[k] == 1);
        ++units_seen;
      }
      if (pts[k] != w->v0) CHECK(act.ambient_weights[k] >= 1);
    }
    CHECK(units_seen >= p.dim());
    // The fundamental form of a rectangle witness is a symbol system.
    CHECK(is_symbol_system(fundamental_form(p, *w)));
  }
}

TEST_CASE("classify_euler_orbits on the Hirzebruch surfaces") {
  for (long long s : {1, 2}) {
    auto report = classify_euler_orbits(oracles::hirzebruch_fan(s));
    REQUIRE(report.records.size() == 9);
    for (const auto& rec : report.records) {
      CHECK(rec.smooth);
      REQUIRE(rec.euler.has_value());
      CHECK(*rec.euler);
      REQUIRE(rec.witness.has_value());
    }
  }
}

TEST_CASE("classify_euler_orbits on the blow-up of P1xP1") {
  auto report = classify_euler_orbits(oracles::blowup_p1p1_fan());
  REQUIRE(report.records.size() == 11);
  bool saw_sigma4 = false, saw_open = false;
  for (const auto& rec : report.records) {
    CHECK(rec.smooth);
    REQUIRE(rec.euler.has_value());
    if (rec.cone == Cone{{3}}) {
      saw_sigma4 = true;
      CHECK_FALSE(*rec.euler);  // smooth but not Euler
      CHECK_FALSE(rec.witness.has_value());
    }
    if (rec.cone.ray_indices.empty()) {
      saw_open = true;
      CHECK(*rec.euler);
    }
  }
  CHECK(saw_sigma4);
  CHECK(saw_open);
}

TEST_CASE("classify_euler_orbits on P2: everything is Euler") {
  auto report = classify_euler_orbits(oracles::p2_fan());
  for (const auto& rec : report.records) {
    CHECK(rec.smooth);
    CHECK(rec.euler.value());
  }
}

TEST_CASE("orbit classification over a class group with torsion") {
  // All three sector determinants are 3: Cl(X) = Z + Z/3, no maximal cone
  // is smooth, so there is no smooth fixed point to move any orbit onto.
  Fan fake(2, {int_vector({2, -1}), int_vector({-1, 2}), int_vector({-1, -1})},
           {{0, 1}, {1, 2}, {0, 2}});
  auto report = classify_euler_orbits(fake);
  REQUIRE(report.records.size() == 7);
  for (const auto& rec : report.records) {
    if (rec.cone.ray_indices.size() == 2) {
      CHECK_FALSE(rec.smooth);
      CHECK_FALSE(rec.euler.has_value());
    } else {
      CHECK(rec.smooth);
      REQUIRE(rec.euler.has_value());
      CHECK_FALSE(*rec.euler);
    }
  }
  CHECK_FALSE(is_euler_symmetric(fake));

  // The cyclic ray symmetry is still detected as an orbit equivalence.
  ClassGroup cg(fake);
  auto ups = upsilon(fake, cg);
  CHECK(bazhov_equivalent(fake, Cone{{0}}, Cone{{1}}, cg, ups).has_value());
}

TEST_CASE("non-smooth orbits are reported without an Euler flag") {
  Fan weighted(2,
               {int_vector({1, 0}), int_vector({0, 1}), int_vector({-1, -2})},
               {{0, 1}, {1, 2}, {0, 2}});
  auto report = classify_euler_orbits(weighted);
  bool saw_singular = false;
  for (const auto& rec : report.records) {
    if (rec.cone == Cone{{0, 2}}) {
      saw_singular = true;
      CHECK_FALSE(rec.smooth);
      CHECK_FALSE(rec.euler.has_value());
    }
  }
  CHECK(saw_singular);
}

TEST_CASE("is_euler_symmetric golden cases") {
  for (long long s : {1, 2, 3})
    CHECK(is_euler_symmetric(oracles::hirzebruch_fan(s)));
  CHECK(is_euler_symmetric(oracles::blowup_p1p1_fan()));
  CHECK_FALSE(is_euler_symmetric(oracles::uninscribed_pentagon()));
  CHECK(is_euler_symmetric(oracles::segment(0, 1)));
  CHECK(is_euler_symmetric(oracles::unit_square()));
  CHECK(is_euler_symmetric(oracles::unit_cube()));
}

TEST_CASE("the fan route and the polytope route agree") {
  std::vector<LatticePolytope> corpus;
  corpus.push_back(oracles::unit_square());
  corpus.push_back(oracles::inscribed_pentagon());
  corpus.push_back(oracles::uninscribed_pentagon());
  corpus.push_back(oracles::standard_triangle(2));
  std::mt19937 rng(171717);
  for (int i = 0; i < 40; ++i) corpus.push_back(oracles::random_polygon(rng));
  for (const auto& p : corpus) {
    bool via_polytope = is_euler_symmetric(p);
    bool via_fan = is_euler_symmetric(normal_fan(p));
    bool inscribed = is_inscribed_in_rectangle(p).has_value();
    CHECK(via_polytope == via_fan);
    CHECK(via_polytope == inscribed);
  }
}

TEST_CASE("open orbit is Euler iff the fan is Euler-symmetric") {
  std::vector<Fan> corpus;
  corpus.push_back(oracles::p2_fan());
  corpus.push_back(oracles::p1xp1_fan());
  corpus.push_back(oracles::hirzebruch_fan(1));
  corpus.push_back(oracles::blowup_p1p1_fan());
  corpus.push_back(oracles::five_ray_additive_fan());
  corpus.push_back(normal_fan(oracles::uninscribed_pentagon()));
  std::mt19937 rng(55555);
  for (int i = 0; i < 15; ++i)
    corpus.push_back(normal_fan(oracles::random_polygon(rng)));
  for (const auto& f : corpus) {
    auto report = classify_euler_orbits(f);
    std::optional<bool> open_orbit_euler;
    for (const auto& rec : report.records)
      if (rec.cone.ray_indices.empty()) open_orbit_euler = rec.euler;
    REQUIRE(open_orbit_euler.has_value());
    CHECK(*open_orbit_euler == is_euler_symmetric(f));
  }
}
