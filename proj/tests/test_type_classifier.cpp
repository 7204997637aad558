#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/type_classifier.hpp"

using namespace bnet;

namespace {

std::shared_ptr<const FusionRing> make(const std::string& name) {
  auto r = std::make_shared<FusionRing>(builtin_ring(name));
  fp_dimensions(*r);
  return r;
}

Real golden() { return (Real(1) + boost::multiprecision::sqrt(Real(5))) / 2; }

}  // namespace

TEST_CASE("weighted graph satisfies the weight condition") {
  set_precision(50);
  SUBCASE("exact rings") {
    for (std::string name : {"hilb_z2", "hilb_s3", "rep_s3"}) {
      auto ring = make(name);
      WeightedGraph g = build_weighted_graph(ring);
      for (const Num& r : weight_condition_residuals(g)) CHECK(r.is_zero());
    }
    CHECK(build_weighted_graph(make("rep_s3")).delta == Num(36));
    CHECK(build_weighted_graph(make("hilb_s3")).delta == Num(36));
  }
  SUBCASE("float rings") {
    for (std::string name : {"fib", "ising"}) {
      auto ring = make(name);
      WeightedGraph g = build_weighted_graph(ring);
      for (const Num& r : weight_condition_residuals(g))
        CHECK(abs_value(Cplx(r)) < pow10(-40));
    }
    // delta for the golden ring is (2+phi)^2 = 5 + 5 phi
    WeightedGraph g = build_weighted_graph(make("fib"));
    Real expect = Real(5) + Real(5) * golden();
    CHECK(boost::multiprecision::abs(g.delta.to_real() - expect) < pow10(-40));
  }
}

TEST_CASE("edge class multiplicities") {
  WeightedGraph g = build_weighted_graph(make("fib"));
  auto find = [&](int c1, int c2, int a, int b) -> long long {
    for (const EdgeClass& e : g.edges)
      if (e.c1 == c1 && e.c2 == c2 && e.a == a && e.b == b) return e.count;
    return 0;
  };
  // tau -> tau via (tau,tau): tau*tau*tau contains tau twice
  CHECK(find(1, 1, 1, 1) == 2);
  CHECK(find(0, 0, 1, 1) == 1);
  CHECK(find(0, 1, 0, 0) == 0);
}

TEST_CASE("ratio generators deduplicate and sort") {
  auto rep = make("rep_s3");
  auto gens = ratio_generators(*rep);
  REQUIRE(gens.size() == 3);
  CHECK(gens[0].ratio == Num(1));
  CHECK(gens[1].ratio == Num(2));
  CHECK(gens[2].ratio == Num(4));
  CHECK(gens[1].triple == std::array<int, 3>{2, 2, 2});
  CHECK(gens[2].triple == std::array<int, 3>{2, 2, 0});

  auto fib = make("fib");
  auto fg = ratio_generators(*fib);
  REQUIRE(fg.size() == 3);
  CHECK(fg[0].ratio == Num(1));
  CHECK(boost::multiprecision::abs(fg[1].ratio.to_real() - golden()) < pow10(-40));
  CHECK(boost::multiprecision::abs(fg[2].ratio.to_real() - golden() * golden()) <
        pow10(-40));

  // ising: no triple realizes sqrt2 itself, ratios are {1,2}
  auto ising = make("ising");
  auto ig = ratio_generators(*ising);
  REQUIRE(ig.size() == 2);
  CHECK(abs_value(Cplx(ig[0].ratio - Num(1))) < pow10(-40));
  CHECK(abs_value(Cplx(ig[1].ratio - Num(2))) < pow10(-40));
}

TEST_CASE("pointed rings classify as the tracial factor") {
  for (std::string name : {"hilb_z2", "hilb_s3"}) {
    TypeReport rep = classify_type(make(name));
    CHECK(rep.type == "II_1");
    CHECK(rep.exact);
    CHECK(!rep.has_lambda);
  }
}

TEST_CASE("integral non-pointed ring gives an exact lambda") {
  TypeReport rep = classify_type(make("rep_s3"));
  CHECK(rep.type == "III_lambda");
  CHECK(rep.exact);
  REQUIRE(rep.has_lambda);
  CHECK(rep.lambda == Num(Rat(1, 2)));
  CHECK(rep.method == "integer-lattice");
  REQUIRE(rep.exponents.size() == 3);
  CHECK(rep.exponents[0] == 0);
  CHECK(rep.exponents[1] == 1);
  CHECK(rep.exponents[2] == 2);
}

TEST_CASE("golden ring lambda is the inverse golden ratio") {
  set_precision(50);
  TypeReport rep = classify_type(make("fib"));
  CHECK(rep.type == "III_lambda");
  CHECK(!rep.exact);
  CHECK(rep.method == "log-gcd");
  REQUIRE(rep.has_lambda);
  Real expect = Real(2) / (Real(1) + boost::multiprecision::sqrt(Real(5)));
  CHECK(boost::multiprecision::abs(rep.lambda.to_real() - expect) < pow10(-40));
  REQUIRE(rep.exponents.size() == 3);
  CHECK(rep.exponents[0] == 0);
  CHECK(rep.exponents[1] == 1);
  CHECK(rep.exponents[2] == 2);
}

TEST_CASE("ising lambda is one half through squared ratios") {
  set_precision(50);
  TypeReport rep = classify_type(make("ising"));
  CHECK(rep.type == "III_lambda");
  CHECK(!rep.exact);
  CHECK(rep.method == "squared-ratio-lattice");
  REQUIRE(rep.has_lambda);
  CHECK(boost::multiprecision::abs(rep.lambda.to_real() - Real(1) / 2) <
        pow10(-40));
  REQUIRE(rep.exponents.size() == 2);
  CHECK(rep.exponents[0] == 0);
  CHECK(rep.exponents[1] == 1);
}

TEST_CASE("rank two exact lattices are dense") {
  // ratios 2 and 3 generate a dense subgroup
  TypeReport rep =
      classify_ratio_set({Num(1), Num(2), Num(3)}, /*exact=*/true);
  CHECK(rep.type == "III_1");
  CHECK(rep.exact);
}

TEST_CASE("incommensurable float ratios are dense at this precision") {
  set_precision(50);
  Real e = boost::multiprecision::exp(Real(1));
  Real pi = Real(4) * boost::multiprecision::atan(Real(1));
  TypeReport rep = classify_ratio_set(
      {Num(Real(boost::multiprecision::exp(Real(1)))),
       Num(Real(boost::multiprecision::exp(pi)))},
      /*exact=*/false);
  (void)e;
  CHECK(rep.type == "III_1");
  CHECK(!rep.exact);
}

TEST_CASE("periods at the resolution edge are inconclusive") {
  set_precision(50);
  // logs 1 and 1 + 5e-21: candidate period 5e-21 sits between the noise
  // floor and the resolution band
  Real eps = pow10(-21) * 5;
  TypeReport rep = classify_ratio_set(
      {Num(Real(boost::multiprecision::exp(Real(1)))),
       Num(Real(boost::multiprecision::exp(Real(1) + eps)))},
      /*exact=*/false);
  CHECK(rep.type == "inconclusive");
}

TEST_CASE("trivial ratio set short circuits") {
  TypeReport rep = classify_ratio_set({Num(1), Num(1)}, true);
  CHECK(rep.type == "II_1");
  CHECK(rep.exact);
}

TEST_CASE("report serialization is stable") {
  auto rep_ring = make("rep_s3");
  TypeReport rep = classify_type(rep_ring);
  std::string a = type_report_json(*rep_ring, rep);
  std::string b = type_report_json(*rep_ring, classify_type(rep_ring));
  CHECK(a == b);
  CHECK(a.find("\"type\": \"III_lambda\"") != std::string::npos);
  CHECK(a.find("\"lambda\": \"1/2\"") != std::string::npos);
  CHECK(a.find("\"exact\": true") != std::string::npos);
}
