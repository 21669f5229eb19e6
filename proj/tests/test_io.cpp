#include "toric/io.hpp"

#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace toric;

TEST_CASE("fan documents round-trip through serialization") {
  std::vector<Fan> corpus;
  corpus.push_back(oracles::p2_fan());
  corpus.push_back(oracles::hirzebruch_fan(3));
  corpus.push_back(oracles::blowup_p1p1_fan());
  std::mt19937 rng(31337);
  for (int i = 0; i < 10; ++i)
    corpus.push_back(normal_fan(oracles::random_polygon(rng)));
  for (const auto& f : corpus) {
    std::string text = fan_to_json(f).dump();
    FanData data = parse_fan_document(text);
    Fan back(data);
    REQUIRE(back.num_rays() == f.num_rays());
    for (int i = 0; i < f.num_rays(); ++i)
      CHECK(back.ray(i) == f.ray(i));
    CHECK(back.max_cones() == f.max_cones());
    CHECK(back.completeness() == f.completeness());
  }
}

TEST_CASE("polytope documents parse") {
  std::string text = R"({"dim": 2, "vertices": [[0,0],[2,0],[0,3]], "notes": "x"})";
  PolytopeData data = parse_polytope_document(text);
  CHECK(data.dim == 2);
  REQUIRE(data.vertices.size() == 3);
  CHECK(data.vertices[1] == int_vector({2, 0}));
}

TEST_CASE("parse errors name the offending field") {
  CHECK_THROWS_WITH_AS(parse_fan_document("{\"rays\": []}"),
                       doctest::Contains("dim"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_fan_document("{\"dim\": 2, \"rays\": [[1, 0], [0]], \"max_cones\": []}"),
      doctest::Contains("rays"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_fan_document(
          "{\"dim\": 2, \"rays\": [[1, 0]], \"max_cones\": [[4]]}"),
      doctest::Contains("out-of-range"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_polytope_document("{\"dim\": 1, \"vertices\": [[0.5], [1]]}"),
      doctest::Contains("vertices"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_polytope_document("{\"dim\": 1, \"vertices\": [[0]], \"extra\": 1}"),
      doctest::Contains("extra"), ParseError);
  CHECK_THROWS_WITH_AS(parse_fan_document("{oops"),
                       doctest::Contains("line"), ParseError);
}

TEST_CASE("input digest is stable") {
  CHECK(input_digest("") == "cbf29ce484222325");
  CHECK(input_digest("abc") == "e71fa2190541574b");
  CHECK(input_digest("{\"dim\": 1}") == "8d825b645d375d70");
}
