#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "urnmise/logspace.hpp"
#include "urnmise/model.hpp"
#include "urnmise/normal.hpp"

using namespace urnmise;

namespace {

TrueDensity point_mass(double k = 1.0) { return TrueDensity{k, 1.0, 0.5, {{0.0, 1.0}}}; }

TrueDensity two_atoms(double k = 1.0) {
  return TrueDensity{k, 1.0, 0.5, {{-1.0, 0.5}, {1.0, 0.5}}};
}

}  // namespace

TEST_CASE("f0_eval matches its convolution form") {
  CHECK(f0_eval(point_mass(), 0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-9));
  // half mass at -1 and +1, unit kernel: f0(0) = phi(1)
  CHECK(f0_eval(two_atoms(), 0.0) == doctest::Approx(oracle::phi(1.0)).epsilon(1e-12));

  for (const TrueDensity& td :
       {point_mass(), two_atoms(), TrueDensity{0.3, 1.0, 0.5, {{1.2, 0.25}, {-0.4, 0.75}}}}) {
    const double mass =
        oracle::simpson_fixed([&](double y) { return f0_eval(td, y); }, -20.0, 20.0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    for (double y : {-3.0, -0.5, 0.0, 1.7}) CHECK(f0_eval(td, y) >= 0.0);
  }
}

TEST_CASE("TrueDensity validation") {
  TrueDensity bad = point_mass();
  bad.f0[0].weight = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = point_mass();
  bad.f0[0].location = 9.0;  // outside [-a-c, a+c]
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("f0_sample moments and degenerate kernel") {
  const TrueDensity tiny = TrueDensity{1e-9, 1.0, 0.5, {{0.0, 1.0}}};
  Rng rng(7);
  for (double v : f0_sample(tiny, 3, rng)) CHECK(std::abs(v) < 1e-6);

  const std::vector<double> draws = f0_sample(two_atoms(), 100000, 11);
  double mean = 0.0;
  for (double v : draws) mean += v;
  mean /= static_cast<double>(draws.size());
  CHECK(std::abs(mean) < 0.02);  // 3 sigma CLT bound, sd of the mean ~ 0.0045

  const std::vector<double> unit = f0_sample(point_mass(), 100000, 13);
  double m2 = 0.0, m1 = 0.0;
  for (double v : unit) m1 += v;
  m1 /= static_cast<double>(unit.size());
  for (double v : unit) m2 += (v - m1) * (v - m1);
  m2 /= static_cast<double>(unit.size());
  CHECK(std::abs(m2 - 1.0) < 0.03);

  Rng r2(1);
  CHECK_THROWS_AS(f0_sample(point_mass(), 0, r2), std::invalid_argument);
}

TEST_CASE("base_convolution equals the quadrature of its defining integral") {
  const BasePrior bp{0.0, 1.0};
  // quadrature oracle for mu0=0, sigma0=1, scale=1, y=0
  const double quad = oracle::integrate(
      [&](double th) {
        return oracle::normal_density(0.0, th, 1.0) * oracle::normal_density(th, 0.0, 1.0);
      },
      -14.0, 14.0);
  CHECK(quad == doctest::Approx(0.28209479177387814).epsilon(1e-10));
  CHECK(base_convolution(bp, 1.0, 0.0) == doctest::Approx(quad).epsilon(1e-10));

  const BasePrior collapsed{0.0, 1e-9};
  CHECK(base_convolution(collapsed, 1.0, 0.0) ==
        doctest::Approx(0.3989422804014327).epsilon(1e-6));

  Rng rng(101);
  for (int i = 0; i < 20; ++i) {
    const BasePrior rp{rng.uniform(-3.0, 3.0), rng.uniform(0.2, 2.5)};
    const double scale = rng.uniform(0.1, 3.0);
    const double y = rng.uniform(-5.0, 5.0);
    const double lo = std::min(y - 13.0 * scale, rp.mu0 - 13.0 * rp.sigma0);
    const double hi = std::max(y + 13.0 * scale, rp.mu0 + 13.0 * rp.sigma0);
    const double want = oracle::integrate(
        [&](double th) {
          return oracle::normal_density(y, th, scale) *
                 oracle::normal_density(th, rp.mu0, rp.sigma0);
        },
        lo, hi);
    CHECK(std::abs(base_convolution(rp, scale, y) - want) < 1e-10);
  }
  CHECK_THROWS_AS(base_convolution(bp, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("ew_density_eval") {
  const BasePrior bp{0.0, 1.0};
  // empty data: the estimator collapses to A_n
  CHECK(ew_density_eval({}, 0.5, 2.0, bp, 0.5, 0.3) ==
        doctest::Approx(base_convolution(bp, 1.0, 0.3)).epsilon(1e-15));

  // alpha=1, n=1, theta=0, sigma+k=1, y=0: (A_n + phi(0)) / 2
  const std::vector<double> theta{0.0};
  const double a_n = base_convolution(bp, 1.0, 0.0);
  const double want = 0.5 * a_n + 0.5 * oracle::phi(0.0);
  CHECK(want == doctest::Approx(0.34051853608765542).epsilon(1e-12));
  CHECK(ew_density_eval(theta, 0.0, 1.0, bp, 1.0, 0.0) == doctest::Approx(want).epsilon(1e-12));

  const std::vector<double> atoms{-1.0, 0.4, 2.0};
  const double mass = oracle::simpson_fixed(
      [&](double y) { return ew_density_eval(atoms, 0.3, 2.5, bp, 1.0, y); }, -30.0, 30.0);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(ew_density_eval(theta, 0.0, 0.0, bp, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("sb_density_eval: plain, weighted, and their exact agreement") {
  const std::vector<double> one{0.0};
  CHECK(sb_density_eval(one, {}, 0.0, 1.0, 0.0) ==
        doctest::Approx(0.3989422804014327).epsilon(1e-9));

  const std::vector<double> two{0.0, 2.0};
  const double want = 0.5 * (oracle::phi(0.0) + oracle::phi(2.0));
  CHECK(want == doctest::Approx(0.22646662345731038).epsilon(1e-12));
  CHECK(sb_density_eval(two, {}, 0.0, 1.0, 0.0) == doctest::Approx(want).epsilon(1e-12));

  const std::vector<double> degenerate{1.0, 0.0};
  CHECK(sb_density_eval(two, degenerate, 0.0, 1.0, 0.0) ==
        doctest::Approx(0.3989422804014327).epsilon(1e-9));

  // uniform weights run the same code path as explicit 1/M weights, bit for bit
  const std::vector<double> uniform{0.5, 0.5};
  for (double y : {-2.0, -0.3, 0.0, 1.1, 4.0})
    CHECK(sb_density_eval(two, {}, 0.2, 1.0, y) == sb_density_eval(two, uniform, 0.2, 1.0, y));

  const std::vector<double> short_w{1.0};
  CHECK_THROWS_AS(sb_density_eval(two, short_w, 0.0, 1.0, 0.0), std::invalid_argument);

  const double mass = oracle::simpson_fixed(
      [&](double y) { return sb_density_eval(two, {}, 0.4, 1.0, y); }, -30.0, 30.0);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("mv_product_density_eval") {
  const std::vector<std::vector<double>> m1{{0.0, 0.0}};
  CHECK(mv_product_density_eval(m1, 0.0, 1.0, std::vector<double>{0.0, 0.0}) ==
        doctest::Approx(0.15915494309189535).epsilon(1e-12));

  const std::vector<std::vector<double>> far{{0.0, 0.0}, {10.0, 10.0}};
  CHECK(mv_product_density_eval(far, 0.0, 1.0, std::vector<double>{0.0, 0.0}) ==
        doctest::Approx(0.5 * 0.15915494309189535).epsilon(1e-7));

  // p = 1 reduces to the SB evaluator exactly
  const std::vector<std::vector<double>> cols{{-1.0}, {0.4}, {2.0}};
  const std::vector<double> flat{-1.0, 0.4, 2.0};
  for (double y : {-2.0, 0.0, 0.7, 3.0})
    CHECK(mv_product_density_eval(cols, 0.3, 1.0, std::vector<double>{y}) ==
          sb_density_eval(flat, {}, 0.3, 1.0, y));

  CHECK_THROWS_AS(mv_product_density_eval(m1, 0.0, 1.0, std::vector<double>{0.0}),
                  std::invalid_argument);
}

TEST_CASE("polya urn limits and distinct-count expectation") {
  const BasePrior bp{2.0, 1.0};
  CHECK(count_distinct(polya_urn_sample(1e12, bp, 100, 5)) >= 99);
  CHECK(count_distinct(polya_urn_sample(1e-12, bp, 100, 5)) == 1);

  // E[#distinct] = sum_j alpha/(alpha+j); alpha=1, m=50 gives H_50 ~ 4.4992
  for (double alpha : {0.5, 1.0, 10.0}) {
    const std::size_t reps = 10000, m = 50;
    double want = 0.0;
    for (std::size_t j = 0; j < m; ++j) want += alpha / (alpha + static_cast<double>(j));
    double sum = 0.0, sumsq = 0.0;
    Rng rng(42);
    for (std::size_t repi = 0; repi < reps; ++repi) {
      const double d = static_cast<double>(count_distinct(polya_urn_sample(alpha, bp, m, rng)));
      sum += d;
      sumsq += d * d;
    }
    const double mean = sum / reps;
    const double se = std::sqrt((sumsq / reps - mean * mean) / reps);
    CHECK(std::abs(mean - want) < 3.0 * se + 1e-9);
    if (alpha == 1.0) {
      CHECK(want == doctest::Approx(4.499205338329425).epsilon(1e-12));
      CHECK(std::abs(mean - want) < 0.1);
    }
  }
}

TEST_CASE("log10_sum bounds") {
  Rng rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> terms;
    const int k = 1 + static_cast<int>(rng.uniform01() * 6);
    for (int i = 0; i < k; ++i)
      terms.push_back(rng.uniform01() < 0.2 ? kNegInf : rng.uniform(-60.0, 10.0));
    const double s = log10_sum(terms);
    double mx = kNegInf;
    for (double x : terms) mx = std::max(mx, x);
    if (mx == kNegInf) {
      CHECK(s == kNegInf);
      continue;
    }
    for (double x : terms) CHECK(s >= x - 1e-12);
    CHECK(s <= mx + std::log10(static_cast<double>(terms.size())) + 1e-12);
  }
}
