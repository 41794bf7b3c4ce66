#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lpsched/quadrature.hpp"

using namespace lpsched;

TEST_SUITE("quadrature") {
  TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
    for (int n : {2, 5, 10, 20}) {
      const GaussLegendreRule& rule = gauss_legendre_rule(n);
      double wsum = 0.0;
      for (double w : rule.weights) wsum += w;
      CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
      // degree 2n - 1
      const int deg = 2 * n - 1;
      double acc = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], deg - 1);
      CHECK(acc == doctest::Approx(2.0 / deg).epsilon(1e-12));
    }
  }

  TEST_CASE("both schemes agree with closed forms") {
    for (auto scheme : {QuadratureSpec::Scheme::adaptive_simpson, QuadratureSpec::Scheme::gauss_legendre}) {
      QuadratureSpec q;
      q.scheme = scheme;
      q.rel_tol = 1e-10;
      CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 20.0, q) ==
            doctest::Approx(1.0 - std::exp(-20.0)).epsilon(1e-9));
      CHECK(integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, q) == doctest::Approx(2.0).epsilon(1e-9));
      CHECK(integrate([](double x) { return std::sqrt(x); }, 0.0, 4.0, q) == doctest::Approx(16.0 / 3.0).epsilon(1e-7));
    }
  }

  TEST_CASE("breaks handle kinks and jumps") {
    QuadratureSpec q;
    q.rel_tol = 1e-10;
    auto step = [](double x) { return x < 1.3 ? 1.0 : 3.0; };
    CHECK(integrate(step, 0.0, 2.0, q, {1.3}) == doctest::Approx(1.3 + 3.0 * 0.7).epsilon(1e-12));
    auto kink = [](double x) { return std::abs(x - 0.7); };
    CHECK(integrate(kink, 0.0, 1.0, q, {0.7}) == doctest::Approx(0.5 * (0.49 + 0.09)).epsilon(1e-12));
    // breaks outside the range are ignored
    CHECK(integrate(kink, 0.0, 1.0, q, {-5.0, 0.7, 9.0}) == doctest::Approx(0.29).epsilon(1e-12));
  }

  TEST_CASE("empty and reversed ranges give zero") {
    QuadratureSpec q;
    CHECK(integrate([](double) { return 1.0; }, 1.0, 1.0, q) == 0.0);
    CHECK(integrate([](double) { return 1.0; }, 2.0, 1.0, q) == 0.0);
  }

  TEST_CASE("spec validation") {
    QuadratureSpec q;
    CHECK_NOTHROW(q.validate());
    q.rel_tol = 0.0;
    CHECK_THROWS(q.validate());
    q = QuadratureSpec{};
    q.tail = 1.0;
    CHECK_THROWS(q.validate());
    q = QuadratureSpec{};
    q.upper = -1.0;
    CHECK_THROWS(q.validate());
    q = QuadratureSpec{};
    q.scheme = QuadratureSpec::Scheme::gauss_legendre;
    q.nodes = 1;
    CHECK_THROWS(q.validate());
  }
}
