#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <random>

#include "oracles.hpp"
#include "wg/errors.hpp"
#include "wg/quadrature.hpp"

using wg::QuadRule;
using wg::Vec2;

namespace {

double integrate(const QuadRule& rule, const std::function<double(double, double)>& f) {
  double s = 0.0;
  for (Eigen::Index q = 0; q < rule.size(); ++q)
    s += rule.weights[q] * f(rule.points(0, q), rule.points(1, q));
  return s;
}

} // namespace

TEST_CASE("edge rule basics") {
  const QuadRule unit = wg::edge_rule(Vec2(0, 0), Vec2(1, 0), 4);
  CHECK(integrate(unit, [](double, double) { return 1.0; }) == doctest::Approx(1.0));
  CHECK(integrate(unit, [](double x, double) { return x * x; }) ==
        doctest::Approx(1.0 / 3.0));

  const QuadRule vertical = wg::edge_rule(Vec2(0, 0), Vec2(0, 2), 5);
  CHECK(integrate(vertical, [](double, double y) { return y * y * y; }) ==
        doctest::Approx(4.0));
}

TEST_CASE("edge rule weights are positive and sum to the length") {
  for (int d : {0, 3, 9, 17}) {
    const QuadRule rule = wg::edge_rule(Vec2(0.2, 0.4), Vec2(-0.3, 1.0), d);
    CHECK((rule.weights.array() > 0.0).all());
    CHECK(rule.weights.sum() == doctest::Approx((Vec2(0.2, 0.4) - Vec2(-0.3, 1.0)).norm()));
  }
}

TEST_CASE("triangle rule centroid check") {
  const QuadRule rule = wg::triangle_rule(Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), 3);
  CHECK(integrate(rule, [](double x, double) { return x; }) == doctest::Approx(1.0 / 6.0));
  CHECK((rule.weights.array() > 0.0).all());
  CHECK(rule.weights.sum() == doctest::Approx(0.5));
}

TEST_CASE("exactness audit on the reference triangle") {
  const int d = 20;
  const QuadRule rule = wg::triangle_rule(Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), d);
  for (int a = 0; a + 0 <= d; ++a)
    for (int b = 0; a + b <= d; ++b) {
      const double exact = oracles::reference_simplex_moment(a, b);
      const double got = integrate(rule, [a, b](double x, double y) {
        return std::pow(x, a) * std::pow(y, b);
      });
      CHECK(std::abs(got - exact) <= 1e-13 * std::abs(exact));
    }
}

TEST_CASE("exactness on a skewed triangle against the affine oracle") {
  const Vec2 p0(0.1, -0.2), p1(1.3, 0.4), p2(0.5, 1.1);
  const int d = 10;
  const QuadRule rule = wg::triangle_rule(p0, p1, p2, d);
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b) {
      const double exact = oracles::triangle_monomial_integral(p0, p1, p2, a, b);
      const double got = integrate(rule, [a, b](double x, double y) {
        return std::pow(x, a) * std::pow(y, b);
      });
      CHECK(got == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("ear clipping of the generator pentagons") {
  const wg::PolytopalMesh mesh = wg::gen_pentagonal(1);
  for (int t = 0; t < 2; ++t) {
    const auto loop = mesh.element_loop(t);
    const auto tris = wg::ear_clip(loop);
    REQUIRE(tris.size() == 3);
    double total = 0.0;
    for (const auto& tri : tris) {
      const Vec2 u = loop[tri[1]] - loop[tri[0]];
      const Vec2 v = loop[tri[2]] - loop[tri[0]];
      const double area = 0.5 * (u.x() * v.y() - u.y() * v.x());
      CHECK(area > 0.0);
      total += area;
    }
    CHECK(std::abs(total - mesh.elements[t].area) <= 1e-13);
  }
}

TEST_CASE("pentagon rule: partition of unity and monomial exactness") {
  const wg::PolytopalMesh mesh = wg::gen_pentagonal(1);
  double total = 0.0;
  for (int t = 0; t < 2; ++t)
    total += integrate(wg::cell_rule(mesh, t, 2), [](double, double) { return 1.0; });
  CHECK(total == doctest::Approx(1.0));

  const int d = 12;
  for (int t = 0; t < 2; ++t) {
    const auto loop = mesh.element_loop(t);
    const QuadRule rule = wg::polygon_rule(loop, d);
    CHECK((rule.weights.array() > 0.0).all());
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b) {
        const double exact = oracles::polygon_monomial_integral(loop, a, b);
        const double got = integrate(rule, [a, b](double x, double y) {
          return std::pow(x, a) * std::pow(y, b);
        });
        CHECK(std::abs(got - exact) <= 1e-13 * std::max(1e-6, std::abs(exact)));
      }
  }
}

TEST_CASE("pentagon integral matches a Monte Carlo estimate") {
  // level-1 pentagon containing (1, 0), integrand x^2 y^2
  const wg::PolytopalMesh mesh = wg::gen_pentagonal(1);
  const auto loop = mesh.element_loop(0);
  REQUIRE((mesh.vertices[mesh.elements[0].verts[1]] == Vec2(1.0, 0.0)));
  const double quad = integrate(wg::polygon_rule(loop, 8),
                                [](double x, double y) { return x * x * y * y; });

  auto inside = [&loop](const Vec2& p) {
    bool in = false;
    for (std::size_t i = 0, j = loop.size() - 1; i < loop.size(); j = i++) {
      if ((loop[i].y() > p.y()) != (loop[j].y() > p.y()) &&
          p.x() < (loop[j].x() - loop[i].x()) * (p.y() - loop[i].y()) /
                          (loop[j].y() - loop[i].y()) +
                      loop[i].x())
        in = !in;
    }
    return in;
  };
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = 1000000;
  double sum = 0.0, sum2 = 0.0;
  long hits = 0;
  for (int i = 0; i < n; ++i) {
    const Vec2 p(unit(rng), unit(rng));
    double v = 0.0;
    if (inside(p)) {
      v = p.x() * p.x() * p.y() * p.y();
      ++hits;
    }
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double stderr_mc = std::sqrt((sum2 / n - mean * mean) / n); // bbox area = 1
  REQUIRE(hits > 0);
  CHECK(std::abs(quad - mean) <= 3.0 * stderr_mc);
}

TEST_CASE("rules are deterministic") {
  const wg::PolytopalMesh mesh = wg::gen_pentagonal(2);
  const QuadRule a = wg::cell_rule(mesh, 3, 11);
  const QuadRule b = wg::cell_rule(mesh, 3, 11);
  REQUIRE(a.size() == b.size());
  CHECK(std::memcmp(a.points.data(), b.points.data(), sizeof(double) * 2 * a.size()) == 0);
  CHECK(std::memcmp(a.weights.data(), b.weights.data(), sizeof(double) * a.size()) == 0);
}

TEST_CASE("degenerate elements are rejected") {
  CHECK_THROWS_AS(wg::triangle_rule(Vec2(0, 0), Vec2(1, 0), Vec2(2, 0), 2), wg::MeshError);
  const std::vector<Vec2> line = {Vec2(0, 0), Vec2(1, 0), Vec2(2, 0), Vec2(3, 0)};
  CHECK_THROWS_AS(wg::polygon_rule(line, 2), wg::MeshError);
}
