#include <doctest.h>

#include <cmath>

#include "pinch/verdicts.hpp"

using namespace pinch;

namespace {

ModelSpace sphere(int d, double kappa = 1.0) {
  ModelSpace m;
  m.factors.push_back(SphereFactor{d, kappa});
  return m;
}

}  // namespace

TEST_CASE("Betti tables by the Künneth rule") {
  ModelSpace s3s3 = sphere(3);
  s3s3.factors.push_back(SphereFactor{3, 1.0});
  BettiTable t = betti_of(s3s3);
  CHECK(t[0] == 1);
  CHECK(t[3] == 2);
  CHECK(t.poincare_dual());

  ModelSpace cp2;
  cp2.factors.push_back(ComplexProjectiveFactor{2, 4.0});
  BettiTable tc = betti_of(cp2);
  CHECK(tc[2] == 1);
  CHECK(tc.b2_plus == 1);

  ModelSpace s5s1 = sphere(5);
  s5s1.factors.push_back(CircleFactor{1.0});
  CHECK(betti_of(s5s1)[1] == 1);

  ModelSpace s2s2 = sphere(2);
  s2s2.factors.push_back(SphereFactor{2, 1.0});
  BettiTable t22 = betti_of(s2s2);
  CHECK(t22[2] == 2);
  CHECK(t22.b2_plus == 1);

  ModelSpace s3s1 = sphere(3);
  s3s1.factors.push_back(CircleFactor{2.0});
  CHECK(betti_of(s3s1).b2_plus == 0);
}

TEST_CASE("verdict classification") {
  CHECK(classify(1.0, 1.0, 1e-8) == Verdict::equality);
  CHECK(classify(0.5, 1.0, 1e-8) == Verdict::strict);
  CHECK(classify(1.1, 1.0, 1e-8) == Verdict::violated);
  CHECK(classify(1.0 + 5e-9, 1.0, 1e-8) == Verdict::equality);
}

TEST_CASE("theorem evaluation on the equality models") {
  SUBCASE("three-sphere product at degree three") {
    ModelSpace m = sphere(3);
    m.factors.push_back(SphereFactor{3, 1.0});
    PinchReport r = evaluate_theorem(TheoremId::degre3compact, m);
    CHECK(r.verdict == Verdict::equality);
    CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.betti == 2);
    CHECK(r.betti_consistent);
    CHECK(r.yamabe_provenance == "einstein_closed_form");
  }
  SUBCASE("projective plane at the middle degree") {
    ModelSpace m;
    m.factors.push_back(ComplexProjectiveFactor{2, 4.0});
    PinchReport g2 = evaluate_theorem(TheoremId::gursky2, m);
    CHECK(g2.verdict == Verdict::equality);
    CHECK(g2.betti == 1);
    PinchReport wp = evaluate_theorem(TheoremId::wplus4D, m);
    CHECK(wp.verdict == Verdict::equality);
    CHECK(wp.betti == 1);  // b2+
    PinchReport pc = evaluate_theorem(TheoremId::pinchingchang, m);
    CHECK(pc.verdict == Verdict::equality);
  }
  SUBCASE("sphere times circle at degree one") {
    ModelSpace m = sphere(3);
    m.factors.push_back(CircleFactor{1.0});
    PinchReport r = evaluate_theorem(TheoremId::degre1compactnorm, m);
    CHECK(r.verdict == Verdict::equality);
    CHECK(r.betti == 1);
    PinchReport g = evaluate_theorem(TheoremId::Gallot, m, 1);
    CHECK(g.verdict == Verdict::equality);
    PinchReport chang = evaluate_theorem(TheoremId::pinchingchang, m);
    CHECK(chang.verdict == Verdict::equality);  // conformally flat
    PinchReport complete = evaluate_theorem(TheoremId::degre1completeigen, m);
    CHECK(complete.verdict == Verdict::equality);
  }
  SUBCASE("round spheres are strict and topologically consistent") {
    PinchReport r4 = evaluate_theorem(TheoremId::pinchingchang, sphere(4));
    CHECK(r4.verdict == Verdict::strict);
    CHECK(r4.betti_consistent);
    PinchReport g = evaluate_theorem(TheoremId::Gallot, sphere(6), 0);
    CHECK(g.verdict == Verdict::strict);
    CHECK(g.betti_consistent);
  }
  SUBCASE("norm pinching without a Yamabe certificate reports pointwise data") {
    ModelSpace m = sphere(2, 2.0);  // n = 7 equality model, not Einstein
    m.factors.push_back(SphereFactor{5, 1.0});
    PinchReport r = evaluate_theorem(TheoremId::NormPinch, m, 2);
    CHECK(r.verdict == Verdict::yamabe_unavailable);
    REQUIRE(r.notes.size() >= 2);
  }
  SUBCASE("cylinder route for the complete-manifold inequality") {
    ModelSpace cyl = sphere(4);
    cyl.cosh_cylinder = true;
    cyl.alpha = 2.0;
    PinchReport r = evaluate_theorem(TheoremId::degre1completeigen, cyl);
    CHECK(r.verdict == Verdict::equality);
    CHECK(r.yamabe_provenance == "cylinder_closed_form");
  }
}

TEST_CASE("equality family sweep") {
  SUBCASE("n = 6, k = 3 contains the three-sphere product") {
    auto reports = sweep_equality_family(6, 3);
    REQUIRE(reports.size() >= 1);
    bool found = false;
    for (const auto& r : reports) {
      CHECK(r.verdict == Verdict::equality);
      CHECK(r.betti >= 1);
      if (r.model.find("S(3,") != std::string::npos) found = true;
    }
    CHECK(found);
  }
  SUBCASE("n = 4, k = 2 contains the two-sphere product and the projective plane") {
    auto reports = sweep_equality_family(4, 2);
    REQUIRE(reports.size() == 2);
    for (const auto& r : reports) {
      CHECK(r.verdict == Verdict::equality);
      CHECK(std::abs(r.ratio - 1.0) <= 1e-9);
    }
  }
  SUBCASE("the degree filter prunes models") {
    // 3 is not a partial dimension sum of S2 x S2 x S2
    for (const auto& r : sweep_equality_family(6, 3))
      CHECK(r.model.find("S(2,") == std::string::npos);
  }
}

TEST_CASE("verdicts are scale invariant") {
  // both sides of the four-dimensional quadratic pinching scale the same way
  double r0 = evaluate_theorem(TheoremId::pinchingchang, sphere(4, 1.0)).ratio;
  for (double kappa : {0.2, 3.0, 11.0}) {
    PinchReport rep = evaluate_theorem(TheoremId::pinchingchang, sphere(4, kappa));
    CHECK(rep.ratio == doctest::Approx(r0).epsilon(1e-12));
    CHECK(rep.verdict == Verdict::strict);
  }
  ModelSpace s2s2 = sphere(2);
  s2s2.factors.push_back(SphereFactor{2, 1.0});
  ModelSpace scaled = sphere(2, 5.0);
  scaled.factors.push_back(SphereFactor{2, 5.0});
  CHECK(evaluate_theorem(TheoremId::gursky2, scaled).ratio ==
        doctest::Approx(evaluate_theorem(TheoremId::gursky2, s2s2).ratio).epsilon(1e-12));
}

TEST_CASE("sweep models respect the Betti bound") {
  for (auto [n, k] : {std::pair{6, 2}, std::pair{8, 4}, std::pair{9, 3}}) {
    for (const auto& r : sweep_equality_family(n, k)) {
      CHECK(r.betti >= 1);
      CHECK(r.betti <= static_cast<long long>(binomial(n, k)));
    }
  }
}

TEST_CASE("report serialization round trips") {
  ModelSpace m = sphere(3);
  m.factors.push_back(SphereFactor{3, 1.0});
  PinchReport r = evaluate_theorem(TheoremId::degre3compact, m);
  PinchReport back = report_from_json(to_json(r));
  CHECK(back == r);
  CHECK(to_markdown(r).find("equality") != std::string::npos);
  CHECK(to_csv_row(r).find("equality") != std::string::npos);
}

TEST_CASE("model DSL") {
  SUBCASE("factors and products") {
    ModelSpace m = parse_model("S(3,1)xS(3,1)");
    CHECK(m.dimension() == 6);
    CHECK(m.describe() == "S(3,1)xS(3,1)");
    ModelSpace c = parse_model("CP(2,4)xCirc(2.5)");
    CHECK(c.dimension() == 5);
    ModelSpace cyl = parse_model("CoshCyl(S(5,1), alpha=2)");
    CHECK(cyl.cosh_cylinder);
    CHECK(cyl.alpha == 2.0);
    CHECK(cyl.dimension() == 6);
  }
  SUBCASE("whitespace is tolerated") {
    ModelSpace m = parse_model("  S( 3 , 1 ) x Circ( 1.0 ) ");
    CHECK(m.dimension() == 4);
  }
  SUBCASE("errors carry positions") {
    CHECK_THROWS_AS(parse_model("S(3,1)y"), ModelParseError);
    try {
      parse_model("S(3,1)xT(2)");
    } catch (const ModelParseError& e) {
      CHECK(e.position == 7);
    }
    CHECK_THROWS_AS(parse_model("CoshCyl(S(3,1))"), ModelParseError);
  }
}

TEST_CASE("pointwise quantities are frame independent") {
  ModelSpace m = sphere(2, 2.0);
  m.factors.push_back(SphereFactor{3, 1.0});
  CHECK(homogeneity_audit(m, 99) <= 1e-12);
  ModelSpace cp2;
  cp2.factors.push_back(ComplexProjectiveFactor{2, 4.0});
  CHECK(homogeneity_audit(cp2, 100) <= 1e-12);
}
