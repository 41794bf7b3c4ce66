#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lpsched/refine.hpp"

using namespace lpsched;

namespace {

// Hand-rolled update used as the reference: prior = T q, posterior proportional to prior * p.
std::vector<double> reference_update(const std::vector<std::vector<double>>& T, const std::vector<double>& q,
                                     const std::vector<double>& p) {
  const std::size_t k = q.size();
  std::vector<double> prior(k, 0.0), post(k, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) prior[i] += T[i][j] * q[j];
  double z = 0.0;
  for (std::size_t i = 0; i < k; ++i) z += prior[i] * p[i];
  for (std::size_t i = 0; i < k; ++i) post[i] = prior[i] * p[i] / z;
  return post;
}

Observation random_simplex(Rng& rng, std::size_t k) {
  Observation o{std::vector<double>(k)};
  double s = 0.0;
  for (double& v : o.q) s += (v = rng.uniform());
  for (double& v : o.q) v /= s;
  return o;
}

}  // namespace

TEST_SUITE("refine") {
  TEST_CASE("transition matrix on the standard bins") {
    const TransitionMatrix T = build_transition(Bins::standard());
    REQUIRE(T.size() == 10);
    for (std::size_t j = 1; j <= 10; ++j) {
      CHECK(T.at(j, j) == doctest::Approx(0.98046875).epsilon(1e-15));
      if (j > 1) CHECK(T.at(j - 1, j) == doctest::Approx(0.01953125).epsilon(1e-15));
    }
    CHECK(T.at(1, 1) == 1.0 - 1.0 / 51.2);
  }

  TEST_CASE("transition matrix small cases") {
    const TransitionMatrix T2 = build_transition(Bins({0.0, 2.0, 4.0, 6.0}));
    CHECK(T2.at(1, 1) == 0.5);
    CHECK(T2.at(1, 2) == 0.5);
    CHECK(T2.at(2, 1) == 0.0);
    const TransitionMatrix T1 = build_transition(Bins({0.0, 4.0}));
    REQUIRE(T1.size() == 1);
    CHECK(T1.at(1, 1) == 0.75);
    CHECK_THROWS_AS(build_transition(Bins({0.0, 0.5, 2.0})), std::domain_error);
  }

  TEST_CASE("transition columns have at most two nonzero entries") {
    const Bins bins({0.0, 1.0, 3.0, 7.5, 20.0, 100.0});
    const TransitionMatrix T = build_transition(bins);
    for (std::size_t j = 1; j <= bins.count(); ++j) {
      const double w = bins.width(j);
      int nonzero = 0;
      for (std::size_t i = 1; i <= bins.count(); ++i) {
        const double v = T.at(i, j);
        if (v == 0.0) continue;
        ++nonzero;
        CHECK((v == doctest::Approx(1.0 - 1.0 / w) || v == doctest::Approx(1.0 / w)));
        CHECK((i == j || i + 1 == j));
      }
      CHECK(nonzero <= 2);
    }
  }

  TEST_CASE("bayes update hand example") {
    const TransitionMatrix T = build_transition(Bins({0.0, 2.0, 4.0, 6.0}));
    const BeliefState q{{0.0, 0.0, 1.0}};
    const Observation p{{0.2, 0.5, 0.3}};
    const auto out = bayes_update(q, p, T);
    REQUIRE(out.has_value());
    CHECK(std::abs(out->q[0] - 0.0) <= 1e-12);
    CHECK(std::abs(out->q[1] - 0.625) <= 1e-12);
    CHECK(std::abs(out->q[2] - 0.375) <= 1e-12);
  }

  TEST_CASE("bayes update identity cases") {
    const TransitionMatrix I = TransitionMatrix::identity(4);
    const auto one = bayes_update(BeliefState{{0, 0, 1, 0}}, Observation{{0, 0, 1, 0}}, I);
    REQUIRE(one);
    CHECK(one->q == std::vector<double>{0, 0, 1, 0});

    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
      const Observation p = random_simplex(rng, 4);
      const auto out = bayes_update(BeliefState{{0.25, 0.25, 0.25, 0.25}}, p, I);
      REQUIRE(out);
      for (std::size_t i = 0; i < 4; ++i) CHECK(out->q[i] == doctest::Approx(p.q[i]).epsilon(1e-14));
    }
  }

  TEST_CASE("bayes update matches the reference and stays on the simplex") {
    const Bins bins = Bins::standard();
    const TransitionMatrix T = build_transition(bins);
    std::vector<std::vector<double>> dense(10, std::vector<double>(10));
    for (std::size_t i = 1; i <= 10; ++i)
      for (std::size_t j = 1; j <= 10; ++j) dense[i - 1][j - 1] = T.at(i, j);
    Rng rng(5);
    BeliefState q = random_simplex(rng, 10);
    for (int step = 0; step < 200; ++step) {
      const Observation p = random_simplex(rng, 10);
      const auto expect = reference_update(dense, q.q, p.q);
      const auto out = bayes_update(q, p, T);
      REQUIRE(out);
      CHECK(out->is_simplex(1e-12));
      for (std::size_t i = 0; i < 10; ++i) CHECK(out->q[i] == doctest::Approx(expect[i]).epsilon(1e-12));
      q = *out;
    }
  }

  TEST_CASE("zero evidence is signalled and falls back to the observation") {
    const TransitionMatrix I = TransitionMatrix::identity(3);
    const BeliefState q{{1, 0, 0}};
    const Observation p{{0, 0, 1}};
    CHECK_FALSE(bayes_update(q, p, I).has_value());
    CHECK(bayes_update_or_reset(q, p, I).q == p.q);
  }

  TEST_CASE("expected length") {
    const Bins bins = Bins::standard();
    for (std::size_t i = 1; i <= 10; ++i) {
      BeliefState q{std::vector<double>(10, 0.0)};
      q.q[i - 1] = 1.0;
      CHECK(expected_length(q, bins) == doctest::Approx(bins.midpoint(i)));
    }
    CHECK(expected_length(BeliefState{std::vector<double>(10, 0.1)}, bins) == 256.0);
    BeliefState half{std::vector<double>(10, 0.0)};
    half.q[0] = half.q[1] = 0.5;
    CHECK(expected_length(half, bins) == doctest::Approx(51.2).epsilon(1e-14));
  }

  TEST_CASE("noiseless observation is one-hot") {
    const ObservationModel sharp{kInf, 0.0};
    Rng rng(1);
    const Observation p = synth_observation(170.0, Bins::standard(), sharp, rng);
    CHECK(p.argmax() == 4);
    CHECK(p.q[3] == 1.0);
    CHECK(std::count(p.q.begin(), p.q.end(), 0.0) == 9);
  }

  TEST_CASE("observations are deterministic and sharpen with concentration") {
    Rng a(9), b(9);
    const ObservationModel m{2.0, 0.1};
    CHECK(synth_observation(300.0, Bins::standard(), m, a).q == synth_observation(300.0, Bins::standard(), m, b).q);

    Rng c(1), d(1);
    const Observation soft = synth_observation(300.0, Bins::standard(), {1.0, 0.0}, c);
    const Observation hard = synth_observation(300.0, Bins::standard(), {5.0, 0.0}, d);
    CHECK(soft.is_simplex());
    CHECK(hard.is_simplex());
    CHECK(hard.q[hard.argmax() - 1] > soft.q[soft.argmax() - 1]);
  }

  TEST_CASE("mislabel rate controls mode correctness") {
    const ObservationModel m{2.0, 0.1};
    const Bins bins = Bins::standard();
    Rng rng(2025);
    const std::size_t n = 100000;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) correct += synth_observation(250.0, bins, m, rng).argmax() == 5;
    const double sigma = std::sqrt(0.9 * 0.1 / n);
    CHECK(std::abs(static_cast<double>(correct) / n - 0.9) <= 3.0 * sigma);
  }

  TEST_CASE("noiseless refinement equals the raw quantization error") {
    const Bins bins = Bins::standard();
    const TransitionMatrix T = build_transition(bins);
    Rng rng(3);
    for (int size : {1, 7, 60, 200, 512}) {
      const RefinementTrace tr = refine_trajectory(size, bins, T, {kInf, 0.0}, rng);
      CHECK(tr.steps.size() == static_cast<std::size_t>(size));
      double quant = 0.0;
      for (int t = 0; t < size; ++t) {
        const double rem = size - t;
        quant += std::abs(bins.midpoint(bins.index_of(rem)) - rem);
      }
      CHECK(tr.raw_mae == doctest::Approx(quant / size).epsilon(1e-12));
      CHECK(tr.refined_mae == doctest::Approx(tr.raw_mae).epsilon(1e-12));
    }
  }

  TEST_CASE("single step refinement is the first observation") {
    const Bins bins = Bins::standard();
    const TransitionMatrix T = build_transition(bins);
    Rng a(44), b(44);
    const RefinementTrace tr = refine_trajectory(1, bins, T, {2.0, 0.1}, a);
    const Observation p0 = synth_observation(1.0, bins, {2.0, 0.1}, b);
    REQUIRE(tr.steps.size() == 1);
    CHECK(tr.steps[0].refined == expected_length(p0, bins));
    CHECK(tr.steps[0].raw == tr.steps[0].refined);
    CHECK(tr.steps[0].true_remaining == 1.0);
  }

  TEST_CASE("seeded ensemble: refinement lowers the mean absolute error") {
    const Bins bins = Bins::standard();
    const TransitionMatrix T = build_transition(bins);
    const SeedStreams seeds(20240601);
    Rng sizes = seeds.stream("sizes");
    double raw = 0.0, refined = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const int size = static_cast<int>(std::clamp(std::ceil(100.0 * sizes.exponential(1.0)), 1.0, 512.0));
      Rng rng = seeds.stream("trajectory", static_cast<std::uint64_t>(i));
      const RefinementTrace tr = refine_trajectory(size, bins, T, {2.0, 0.1}, rng);
      raw += tr.raw_mae;
      refined += tr.refined_mae;
    }
    CHECK(refined < raw);
  }

  TEST_CASE("every produced belief is on the simplex") {
    const Bins bins = Bins::uniform(0.0, 64.0, 8);
    const TransitionMatrix T = build_transition(bins);
    Rng rng(6);
    BeliefState q = synth_observation(64.0, bins, {1.5, 0.2}, rng);
    for (int t = 1; t < 64; ++t) {
      q = bayes_update_or_reset(q, synth_observation(64.0 - t, bins, {1.5, 0.2}, rng), T);
      CHECK(q.is_simplex(1e-12));
    }
  }
}
