#include <doctest.h>

#include <cmath>
#include <numeric>

#include "arns/cglmp.hpp"
#include "arns/error.hpp"
#include "arns/noise.hpp"

using namespace arns;

TEST_CASE("noise configuration is validated") {
  CHECK_NOTHROW(NoiseConfig{}.validate());
  CHECK_THROWS_AS((NoiseConfig{0.0, 100, 1}.validate()), Error);
  CHECK_THROWS_AS((NoiseConfig{1e4, 1, 1}.validate()), Error);
}

TEST_CASE("zero intensity draws zero counts") {
  const std::vector<double> zeros(1000, 0.0);
  for (double v : poissonize(zeros, NoiseConfig{1e6, 2, 5})) CHECK(v == 0.0);
}

TEST_CASE("large count scale converges to the mean") {
  const std::vector<double> in{0.1, 0.5, 1.0, 0.02};
  const auto out = poissonize(in, NoiseConfig{1e8, 2, 9});
  for (std::size_t i = 0; i < in.size(); ++i) CHECK(std::abs(out[i] / in[i] - 1.0) < 1e-3);
}

TEST_CASE("fixed seed reproduces every draw") {
  const std::vector<double> in{0.3, 0.7, 0.25};
  CHECK(poissonize(in, NoiseConfig{100.0, 2, 42}) == poissonize(in, NoiseConfig{100.0, 2, 42}));
  CHECK(poissonize(in, NoiseConfig{100.0, 2, 42}) != poissonize(in, NoiseConfig{100.0, 2, 43}));
  const auto a = estimate_sigma(Quantity::CglmpS, make_mes(3), {1e4, 50, 7});
  const auto b = estimate_sigma(Quantity::CglmpS, make_mes(3), {1e4, 50, 7});
  CHECK(a.samples == b.samples);
  CHECK(a.mean == b.mean);
  CHECK(a.sigma == b.sigma);
}

TEST_CASE("resample i depends only on the seed and its index") {
  const NoiseConfig cfg{1e4, 40, 123};
  const auto est = estimate_sigma(Quantity::CglmpS, make_mes(4), cfg);
  const auto r = cglmp_s(make_mes(4));
  for (std::size_t i : {0u, 17u, 39u}) {
    auto engine = resample_engine(cfg.seed, i);
    std::vector<JointProbabilityTable> noisy = r.tables;
    for (auto& t : noisy) {
      const auto drawn = poissonize(t.entries(), cfg.scale, engine);
      const double total = std::accumulate(drawn.begin(), drawn.end(), 0.0);
      for (std::size_t k = 0; k < drawn.size(); ++k) t.entries()[k] = drawn[k] / total;
    }
    CHECK(cglmp_from_tables(noisy).S == doctest::Approx(est.samples[i]).epsilon(1e-14));
  }
}

TEST_CASE("MES d=2 resampled S centres on 2 sqrt 2") {
  const auto est = estimate_sigma(Quantity::CglmpS, make_mes(2), {1e4, 1000, 20190601});
  CHECK(est.n == 1000);
  CHECK(est.noiseless == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(est.mean - 2.0 * std::sqrt(2.0)) < 3.0 * est.sigma / std::sqrt(1000.0));
}

SigmaOptions physical() {
  SigmaOptions o;
  o.decomposition = PhysicalModel{};
  return o;
}

TEST_CASE("quadrupling the scale halves sigma") {
  for (Quantity q : {Quantity::CglmpS, Quantity::Visibility, Quantity::PowerVisibility}) {
    const auto state = make_mes(3);
    const double s1 = estimate_sigma(q, state, {1e4, 1000, 1}, physical()).sigma;
    const double s4 = estimate_sigma(q, state, {4e4, 1000, 1}, physical()).sigma;
    CHECK(s1 > 0.0);
    CHECK(std::abs(s4 / s1 - 0.5) < 0.1);
  }
}

TEST_CASE("sigma does not grow across a decade of scales") {
  double prev = INFINITY;
  for (double scale : {1e3, 2e3, 5e3, 1e4}) {
    const double s = estimate_sigma(Quantity::CglmpS, make_mes(5), {scale, 1000, 77}).sigma;
    CHECK(s <= prev);
    prev = s;
  }
}

TEST_CASE("resampled means stay within three standard errors") {
  for (Quantity q : {Quantity::CglmpS, Quantity::Visibility, Quantity::PowerVisibility}) {
    const auto est = estimate_sigma(q, make_eps_state(0.5, 0.3), {1e4, 1000, 3}, physical());
    CHECK(std::abs(est.mean - est.noiseless) < 3.0 * est.sigma / std::sqrt(1000.0) + 1e-12);
  }
}

TEST_CASE("noiseless visibility comes from the exact fringe") {
  const auto est = estimate_sigma(Quantity::Visibility, make_mes(7), {1e4, 2, 1});
  CHECK(est.noiseless == doctest::Approx(1.0).epsilon(1e-9));
  const auto pv = estimate_sigma(Quantity::PowerVisibility, make_mes(3), {1e4, 2, 1});
  CHECK(pv.noiseless == 1.0);
}

TEST_CASE("sigma CSV layout") {
  const auto est = estimate_sigma(Quantity::CglmpS, make_mes(2), {1e4, 3, 8});
  const auto csv = sigma_csv(est);
  CHECK(csv.rfind("resample_index,value\n0,", 0) == 0);
  CHECK(csv.find("# mean,sigma,n,seed\n") != std::string::npos);
  CHECK(csv.find(",3,8\n") != std::string::npos);
}
