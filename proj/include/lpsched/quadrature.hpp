#pragma once

// Adaptive 1-D quadrature used by the analytic evaluator.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace lpsched {

struct QuadratureSpec {
  enum class Scheme { adaptive_simpson, gauss_legendre };

  Scheme scheme = Scheme::adaptive_simpson;
  int nodes = 10;  // gauss_legendre only
  double rel_tol = 1e-6;
  double abs_tol = 1e-10;
  // Service sizes are integrated up to the quantile with this tail mass,
  // unless `upper` pins the limit explicitly.
  double tail = 1e-8;
  std::optional<double> upper;
  int max_depth = 40;

  void validate() const;
};

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre_rule(int n);

namespace detail {

template <typename F>
double simpson_step(F& f, double a, double fa, double m, double fm, double b, double fb, double whole, double eps,
                    int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth - 1) +
         simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth - 1);
}

template <typename F>
double gl_apply(F& f, const GaussLegendreRule& rule, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

template <typename F>
double gl_step(F& f, const GaussLegendreRule& rule, double a, double b, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double left = gl_apply(f, rule, a, m);
  const double right = gl_apply(f, rule, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= eps) return left + right;
  return gl_step(f, rule, a, m, left, 0.5 * eps, depth - 1) + gl_step(f, rule, m, b, right, 0.5 * eps, depth - 1);
}

// Plain integration over one smooth piece. The interval is first cut into a
// few panels so the relative tolerance is anchored to a sensible magnitude.
template <typename F>
double integrate_piece(F& f, double a, double b, const QuadratureSpec& spec) {
  constexpr int kPanels = 8;
  const double h = (b - a) / kPanels;
  if (spec.scheme == QuadratureSpec::Scheme::gauss_legendre) {
    const GaussLegendreRule& rule = gauss_legendre_rule(spec.nodes);
    double coarse[kPanels];
    double total = 0.0;
    for (int i = 0; i < kPanels; ++i) {
      coarse[i] = gl_apply(f, rule, a + i * h, i + 1 == kPanels ? b : a + (i + 1) * h);
      total += coarse[i];
    }
    const double eps = std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) / kPanels;
    double acc = 0.0;
    for (int i = 0; i < kPanels; ++i)
      acc += gl_step(f, rule, a + i * h, i + 1 == kPanels ? b : a + (i + 1) * h, coarse[i], eps, spec.max_depth);
    return acc;
  }

  double x[2 * kPanels + 1];
  double fx[2 * kPanels + 1];
  for (int i = 0; i <= 2 * kPanels; ++i) {
    x[i] = i == 2 * kPanels ? b : a + 0.5 * h * i;
    fx[i] = f(x[i]);
  }
  double coarse[kPanels];
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    coarse[i] = (x[2 * i + 2] - x[2 * i]) / 6.0 * (fx[2 * i] + 4.0 * fx[2 * i + 1] + fx[2 * i + 2]);
    total += coarse[i];
  }
  const double eps = std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) / kPanels;
  double acc = 0.0;
  for (int i = 0; i < kPanels; ++i)
    acc += simpson_step(f, x[2 * i], fx[2 * i], x[2 * i + 1], fx[2 * i + 1], x[2 * i + 2], fx[2 * i + 2], coarse[i],
                        eps, spec.max_depth);
  return acc;
}

}  // namespace detail

// Integral of f over [a, b]; `breaks` marks kinks or jumps of f and splits the
// range at every break strictly inside it. Returns 0 for b <= a.
template <typename F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec, std::span<const double> breaks = {}) {
  if (!(b > a)) return 0.0;
  std::vector<double> cuts{a};
  for (double c : breaks)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i]) acc += detail::integrate_piece(f, cuts[i], cuts[i + 1], spec);
  return acc;
}

template <typename F>
double integrate(F&& f, double a, double b, const QuadratureSpec& spec, std::initializer_list<double> breaks) {
  return integrate(std::forward<F>(f), a, b, spec, std::span<const double>(breaks.begin(), breaks.size()));
}

}  // namespace lpsched
