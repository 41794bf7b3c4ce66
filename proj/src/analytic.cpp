#include "lpsched/analytic.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>

namespace lpsched {

double DensityPair::max_prediction() const {
  if (kind == Kind::perfect) return x_upper;
  return y_upper ? y_upper(x_upper) : x_upper;
}

DensityPair DensityPair::from(const ServiceDist& service, const PredictorModel& predictor, const QuadratureSpec& quad) {
  service.validate();
  quad.validate();
  if (service.kind == ServiceDist::Kind::deterministic)
    throw std::invalid_argument("analytic evaluation needs a service density (exponential or bounded_pareto)");

  DensityPair pair;
  const ServiceDist dist = service;
  pair.f = [dist](double x) { return dist.pdf(x); };
  pair.x_lower = dist.kind == ServiceDist::Kind::bounded_pareto ? dist.lo : 0.0;
  pair.x_upper = quad.upper.value_or(dist.upper_quantile(quad.tail));
  if (!(pair.x_upper > pair.x_lower)) throw std::invalid_argument("truncation point lies below the service support");

  switch (predictor.kind) {
    case PredictorModel::Kind::perfect:
      pair.kind = Kind::perfect;
      break;
    case PredictorModel::Kind::exponential_noise: {
      pair.kind = Kind::conditional;
      pair.h = [](double y, double x) {
        if (y < 0.0 || x <= 0.0) return 0.0;
        return std::exp(-y / x) / x;
      };
      pair.H = [](double y, double x) {
        if (y <= 0.0) return 0.0;
        if (x <= 0.0) return 1.0;
        return -std::expm1(-y / x);
      };
      const double cut = -std::log(quad.tail);
      pair.y_upper = [cut](double x) { return x * cut; };
      break;
    }
    default:
      throw std::invalid_argument("analytic evaluation supports perfect and exponential_noise predictors only");
  }
  return pair;
}

namespace {

double power(double x, int m) { return m == 1 ? x : x * x; }

}  // namespace

double partial_moment(int m, double r, const DensityPair& pair, const QuadratureSpec& quad) {
  if (m != 1 && m != 2) throw std::invalid_argument("partial_moment supports m = 1, 2");
  if (!(r > 0.0)) return 0.0;
  if (pair.kind == DensityPair::Kind::perfect) {
    return integrate([&](double x) { return power(x, m) * pair.f(x); }, pair.x_lower, std::min(r, pair.x_upper), quad);
  }
  return integrate([&](double x) { return power(x, m) * pair.f(x) * pair.H(r, x); }, pair.x_lower, pair.x_upper, quad);
}

double partial_moment_2d(int m, double r, const DensityPair& pair, const QuadratureSpec& quad) {
  if (pair.kind != DensityPair::Kind::conditional) throw std::invalid_argument("partial_moment_2d needs a conditional pair");
  if (m != 1 && m != 2) throw std::invalid_argument("partial_moment_2d supports m = 1, 2");
  const double top = std::min(r, pair.max_prediction());
  return integrate(
      [&](double y) {
        return integrate([&](double x) { return power(x, m) * pair.g(x, y); }, pair.x_lower, pair.x_upper, quad);
      },
      0.0, top, quad);
}

double rho_prime(double r, const DensityPair& pair, double lambda, const QuadratureSpec& quad) {
  const double rho = lambda * partial_moment(1, r, pair, quad);
  if (rho >= 1.0) throw InstabilityError(fmt::format("rho'_r = {} >= 1 at r = {}", rho, r));
  return rho;
}

double moment_new(double r, double a, double a0, const DensityPair& pair, const QuadratureSpec& quad) {
  if (a >= a0) return 0.0;
  return partial_moment(1, r - a, pair, quad);
}

double moment_old0_sq(double r, const DensityPair& pair, const QuadratureSpec& quad) {
  return partial_moment(2, r, pair, quad);
}

double moment_old1_sq(double r, double a0, const DensityPair& pair, const QuadratureSpec& quad) {
  if (pair.kind == DensityPair::Kind::perfect) {
    // line mass: x = t, so (x - (t - r))^2 = r^2 over t > r + a0
    const double lo = std::max(r + a0, pair.x_lower);
    return r * r * integrate([&](double x) { return pair.f(x); }, lo, pair.x_upper, quad);
  }
  // swap the order: x outer, t in [r + a0, x + r] inner
  const double tlo = r + a0;
  return integrate(
      [&](double x) {
        const double thi = std::min(x + r, pair.y_upper(x));
        const double inner = integrate(
            [&](double t) {
              const double d = x - (t - r);
              return pair.h(t, x) * d * d;
            },
            tlo, thi, quad);
        return pair.f(x) * inner;
      },
      std::max(a0, pair.x_lower), pair.x_upper, quad);
}

double moment_old1_sq_own(double r, double C, const DensityPair& pair, const QuadratureSpec& quad) {
  if (!(r > 0.0)) r = 0.0;
  // re-entry age of an old job with prediction t > r
  auto entry = [&](double t) { return std::min(t - r, C * t); };
  const double kink = C < 1.0 ? r / (1.0 - C) : kInf;

  if (pair.kind == DensityPair::Kind::perfect) {
    return integrate(
        [&](double x) {
          const double d = x - entry(x);
          return pair.f(x) * d * d;
        },
        std::max(r, pair.x_lower), pair.x_upper, quad, {kink});
  }

  // x outer; t ranges over (r, tmax) where the job still has work left at re-entry
  auto tmax = [&](double x) {
    const double cap = pair.y_upper(x);
    if (x + r <= kink) return std::min(x + r, cap);
    return C > 0.0 ? std::min(x / C, cap) : cap;
  };
  const double xkink = std::isfinite(kink) ? kink - r : kInf;
  return integrate(
      [&](double x) {
        const double inner = integrate(
            [&](double t) {
              const double d = x - entry(t);
              return d > 0.0 ? pair.h(t, x) * d * d : 0.0;
            },
            r, tmax(x), quad, {kink});
        return pair.f(x) * inner;
      },
      pair.x_lower, pair.x_upper, quad, {xkink});
}

double recycled_moment(double r, double C, RecycledTerm term, const DensityPair& pair, const QuadratureSpec& quad) {
  if (term == RecycledTerm::verbatim) return moment_old1_sq(r, C * r, pair, quad);
  return moment_old1_sq_own(r, C, pair, quad);
}

double mean_response(double x, double r, double C, double lambda, const DensityPair& pair, const QuadratureSpec& quad,
                     RecycledTerm term) {
  const double rho = rho_prime(r, pair, lambda, quad);
  const double a0 = C * r;
  const double second = moment_old0_sq(r, pair, quad) + recycled_moment(r, C, term, pair, quad);
  const double waiting = lambda * second / (2.0 * (1.0 - rho) * (1.0 - rho));
  const double residence = integrate(
      [&](double a) { return 1.0 / (1.0 - lambda * partial_moment(1, r - a, pair, quad)); }, 0.0, std::min(a0, x), quad);
  return waiting + residence + std::max(0.0, x - a0);
}

namespace {

// Cubic Hermite interpolation on a fixed grid; clamps outside it.
struct Hermite {
  std::vector<double> x, y, d;

  double operator()(double v) const {
    if (v <= x.front()) return y.front();
    if (v >= x.back()) return y.back();
    const auto it = std::upper_bound(x.begin(), x.end(), v);
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    const double h = x[i + 1] - x[i];
    const double s = (v - x[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y[i] + (s3 - 2 * s2 + s) * h * d[i] + (-2 * s3 + 3 * s2) * y[i + 1] +
           (s3 - s2) * h * d[i + 1];
  }
};

// Derivatives by three-point differences on a nonuniform grid.
std::vector<double> finite_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      d[i] = (y[1] - y[0]) / (x[1] - x[0]);
    } else if (i + 1 == n) {
      d[i] = (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
    } else {
      const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
      d[i] = (h0 * h0 * (y[i + 1] - y[i]) + h1 * h1 * (y[i] - y[i - 1])) / (h0 * h1 * (h0 + h1));
    }
  }
  return d;
}

// d/dr of int x f(x) H(r | x) dx
double rho_slope(double r, const DensityPair& pair, const QuadratureSpec& quad) {
  if (pair.kind == DensityPair::Kind::perfect) {
    if (r < pair.x_lower || r > pair.x_upper) return 0.0;
    return r * pair.f(r);
  }
  return integrate([&](double x) { return x * pair.f(x) * pair.h(r, x); }, pair.x_lower, pair.x_upper, quad);
}

struct Tables {
  Hermite rho;  // rho'_y
  Hermite psi;  // int_0^y dv / (1 - rho'_v)
  Hermite wait;
  double ymax = 0.0;
};

constexpr int kTableNodes = 400;

std::optional<Tables> build_tables(double C, double lambda, const DensityPair& pair, const QuadratureSpec& quad,
                                   RecycledTerm term) {
  Tables tab;
  tab.ymax = pair.max_prediction();
  std::vector<double> ys(kTableNodes + 1);
  for (int i = 0; i <= kTableNodes; ++i) {
    const double s = static_cast<double>(i) / kTableNodes;
    ys[static_cast<std::size_t>(i)] = tab.ymax * s * s;
  }
  // keep the support edge of the perfect-predictor density on the grid
  if (pair.kind == DensityPair::Kind::perfect && pair.x_lower > 0.0) {
    ys.push_back(pair.x_lower);
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  }

  const std::size_t n = ys.size();
  std::vector<double> rho(n), drho(n), psi(n, 0.0), dpsi(n), second(n), wait(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] = lambda * partial_moment(1, ys[i], pair, quad);
    if (rho[i] >= 1.0) return std::nullopt;
    drho[i] = lambda * rho_slope(ys[i], pair, quad);
    dpsi[i] = 1.0 / (1.0 - rho[i]);
    second[i] = moment_old0_sq(ys[i], pair, quad) + recycled_moment(ys[i], C, term, pair, quad);
    wait[i] = lambda * second[i] / (2.0 * (1.0 - rho[i]) * (1.0 - rho[i]));
  }
  tab.rho = Hermite{ys, rho, drho};

  const GaussLegendreRule& rule = gauss_legendre_rule(8);
  auto inv = [&](double v) { return 1.0 / (1.0 - lambda * partial_moment(1, v, pair, quad)); };
  for (std::size_t i = 1; i < n; ++i) psi[i] = psi[i - 1] + detail::gl_apply(inv, rule, ys[i - 1], ys[i]);
  tab.psi = Hermite{ys, psi, dpsi};
  tab.wait = Hermite{ys, wait, finite_slopes(ys, wait)};
  return tab;
}

// E[T(x, y)] from the tables.
double tabulated_response(const Tables& tab, double C, double x, double y) {
  const double a0 = C * y;
  const double u = std::min(a0, x);
  return tab.wait(y) + tab.psi(y) - tab.psi(y - u) + std::max(0.0, x - a0);
}

}  // namespace

AggregateResponse mean_response_aggregate(double C, double lambda, const DensityPair& pair, const QuadratureSpec& quad,
                                          const std::vector<double>& x_grid, RecycledTerm term) {
  AggregateResponse out;
  const std::optional<Tables> tab = build_tables(C, lambda, pair, quad, term);
  if (!tab) {
    out.unstable = true;
    return out;
  }

  auto at_size = [&](double x) {
    if (pair.kind == DensityPair::Kind::perfect) return tabulated_response(*tab, C, x, x);
    const double breaks[] = {C > 0.0 ? x / C : kInf};
    return integrate([&](double y) { return pair.h(y, x) * tabulated_response(*tab, C, x, y); }, 0.0,
                     pair.y_upper(x), quad, std::span<const double>(breaks));
  };

  out.mean = integrate([&](double x) { return pair.f(x) * at_size(x); }, pair.x_lower, pair.x_upper, quad);
  for (double x : x_grid) out.curve.push_back({x, at_size(x)});
  return out;
}

double soap_mean_response(const SoapMoments& m, double lambda, double x, const QuadratureSpec& quad) {
  const double d1 = 1.0 - lambda * m.old0_mean;
  const double d2 = 1.0 - lambda * m.new_worst0_mean;
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw InstabilityError("SOAP waiting-time denominator is not positive");
  const double waiting = lambda * m.old_second_moment_sum / (2.0 * d1 * d2);
  if (!m.new_mean_at_age) return waiting + x;
  const double residence = integrate(
      [&](double a) {
        const double d = 1.0 - lambda * m.new_mean_at_age(a);
        if (!(d > 0.0)) throw InstabilityError("SOAP residence denominator is not positive");
        return 1.0 / d;
      },
      0.0, x, quad, std::span<const double>(m.age_breaks));
  return waiting + residence;
}

SoapMoments limited_preemption_moments(double r, double C, const DensityPair& pair, const QuadratureSpec& quad,
                                       RecycledTerm term) {
  SoapMoments m;
  const double a0 = C * r;
  m.old_second_moment_sum = moment_old0_sq(r, pair, quad) + recycled_moment(r, C, term, pair, quad);
  m.old0_mean = partial_moment(1, r, pair, quad);
  m.new_worst0_mean = m.old0_mean;
  m.new_mean_at_age = [r, a0, &pair, quad](double a) { return moment_new(r, a, a0, pair, quad); };
  m.age_breaks = {a0};
  return m;
}

SoapMoments fcfs_moments(const ServiceDist& service) {
  SoapMoments m;
  m.old_second_moment_sum = service.second_moment();
  m.old0_mean = service.expected();
  m.new_worst0_mean = 0.0;
  m.new_mean_at_age = [](double) { return 0.0; };
  return m;
}

double interval_work(double begin, double end, double size) {
  if (size < begin) return 0.0;
  if (size < end) return size - begin;
  return end - begin;
}

IntervalSet intervals(const std::vector<double>& trajectory, double r_max, double size) {
  IntervalSet out;
  const std::size_t n = trajectory.size();
  std::size_t a = 0;
  while (a < n) {
    while (a < n && !(trajectory[a] - static_cast<double>(a) < r_max)) ++a;
    if (a == n) break;
    const std::size_t b = a;
    while (a < n && !(trajectory[a] - static_cast<double>(a) > r_max)) ++a;
    const double begin = static_cast<double>(b);
    const double end = std::min(static_cast<double>(a), size);
    const double work = interval_work(begin, end, size);
    out.intervals.push_back({begin, end, work});
    out.total_work += work;
  }
  return out;
}

}  // namespace lpsched
