#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gwimm/limit.hpp"
#include "gwimm/random.hpp"

using namespace gwimm;

namespace {

ShotNoiseSpec spec_with(double slope, std::vector<Atom> atoms, double horizon = 2.0) {
  return {slope, AtomSet{std::move(atoms), PrmParams{1.0, 1.0, horizon, 1e-3}}};
}

// Two-sample Kolmogorov-Smirnov statistic.
double ks_two_sample(std::vector<double> x, std::vector<double> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::size_t i = 0, j = 0;
  double worst = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    worst = std::max(worst, std::abs(double(i) / x.size() - double(j) / y.size()));
  }
  return worst;
}

}  // namespace

TEST_CASE("parameter validation and expected count") {
  CHECK(PrmParams{1.0, 1.0, 1.0, 1.0}.expected_count() == 1.0);
  CHECK(PrmParams{2.0, 2.0, 3.0, 0.5}.expected_count() == doctest::Approx(24.0));
  CHECK_THROWS(PrmParams{1.0, 1.0, 1.0, 0.0}.validate());
  CHECK_THROWS(PrmParams{0.0, 1.0, 1.0, 1.0}.validate());
  CHECK_THROWS(PrmParams{1.0, 1.0, -1.0, 1.0}.validate());
}

TEST_CASE("atom counts are Poisson with the right mean and marks exceed delta") {
  const PrmParams params{1.0, 1.0, 1.0, 1.0};
  Stream root(1, 0);
  const int draws = 100'000;
  double total = 0.0;
  for (int i = 0; i < draws; ++i) {
    Stream rng = root.substream(i);
    const auto set = sample_atoms(params, rng);
    total += static_cast<double>(set.atoms.size());
    for (const auto& a : set.atoms) {
      REQUIRE(a.mark > params.delta);
      REQUIRE(a.time >= 0.0);
      REQUIRE(a.time <= params.horizon);
    }
  }
  CHECK(std::abs(total / draws - 1.0) <= 3.0 * std::sqrt(1.0 / draws) * 1.5);

  Stream rng(2, 0);
  for (int i = 0; i < 100; ++i) CHECK(sample_atoms(PrmParams{1.0, 1.0, 0.0, 1e-3}, rng).atoms.empty());
}

TEST_CASE("shot noise values") {
  CHECK(shot_noise_value(spec_with(-std::numbers::ln2, {}), 1.0) == 0.0);
  CHECK(shot_noise_value(spec_with(0.0, {}), 1.0) == 0.0);
  CHECK(shot_noise_value(spec_with(std::numbers::ln2, {}), 1.0) == doctest::Approx(std::numbers::ln2));
  const auto one = spec_with(-std::numbers::ln2, {{0.5, 3.0}});
  CHECK(shot_noise_value(one, 1.5) == doctest::Approx(3.0 - std::numbers::ln2));
  CHECK(shot_noise_value(one, 1.5) == doctest::Approx(2.3069).epsilon(1e-4));
  CHECK(shot_noise_value(one, 0.4) == 0.0);
  CHECK_THROWS(shot_noise_value(one, 2.5));
}

TEST_CASE("extremal path is a nondecreasing step function") {
  const auto spec = spec_with(0.0, {{0.6, 2.0}, {0.2, 1.0}}, 1.0);
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const auto path = shot_noise_path(spec, grid);
  CHECK(path.value(0.1) == 0.0);
  CHECK(path.left_limit(0.2) == 0.0);
  CHECK(path.value(0.2) == 1.0);
  CHECK(path.value(0.59) == 1.0);
  CHECK(path.value(0.6) == 2.0);
  CHECK(path.value(1.0) == 2.0);
}

TEST_CASE("sampled paths have the right shape and agree with pointwise values") {
  Stream root(3, 0);
  std::vector<double> grid;
  for (int i = 0; i <= 40; ++i) grid.push_back(i * 0.05);
  for (double slope : {-1.0, 0.0, 0.7}) {
    for (int r = 0; r < 200; ++r) {
      Stream rng = root.substream(r);
      const ShotNoiseSpec spec{slope, sample_atoms(PrmParams{1.0, 1.0, 2.0, 0.05}, rng)};
      const auto path = shot_noise_path(spec, grid);
      const auto& segs = path.segments();
      for (std::size_t i = 0; i < segs.size(); ++i) {
        const double t = segs[i].start;
        REQUIRE(path.value(t) == doctest::Approx(shot_noise_value(spec, t)).epsilon(1e-12));
        if (slope == 0.0) {
          REQUIRE(segs[i].slope == 0.0);
          if (i > 0) REQUIRE(segs[i].value >= path.left_limit(t));
        } else if (slope < 0.0) {
          REQUIRE((segs[i].slope == slope || (segs[i].slope == 0.0 && segs[i].value == 0.0)));
        } else {
          REQUIRE(segs[i].value >= t * slope - 1e-12);
        }
      }
      for (double t : grid) REQUIRE(path.value(t) == doctest::Approx(shot_noise_value(spec, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("refining the truncation level moves values by at most delta") {
  const PrmParams params{1.0, 1.0, 2.0, 0.1};
  Stream root(4, 0);
  for (double slope : {-std::numbers::ln2, 0.0, std::numbers::ln2}) {
    for (int r = 0; r < 1000; ++r) {
      Stream rng = root.substream(r);
      ShotNoiseSpec coarse{slope, sample_atoms(params, rng)};
      ShotNoiseSpec fine = coarse;
      const auto layer = sample_refinement_layer(params, 0.01, rng);
      for (const auto& a : layer.atoms) {
        REQUIRE(a.mark > 0.01);
        REQUIRE(a.mark <= 0.1);
      }
      fine.atoms.atoms.insert(fine.atoms.atoms.end(), layer.atoms.begin(), layer.atoms.end());
      fine.atoms.params.delta = 0.01;
      for (int k = 0; k <= 20; ++k) {
        const double t = 0.1 * k;
        REQUIRE(std::abs(shot_noise_value(coarse, t) - shot_noise_value(fine, t)) <= params.delta);
      }
    }
  }
}

TEST_CASE("closed-form marginals") {
  CHECK(marginal_cdf_negslope(1.0, 1.0, 1.0, 1.0) == doctest::Approx(0.5));
  CHECK(marginal_cdf_negslope(1.0, std::numbers::ln2, 0.0, 0.0) == 1.0);
  CHECK(marginal_cdf_negslope(1.0, std::numbers::ln2, 0.0, 3.0) == 1.0);
  CHECK(std::abs(marginal_cdf_negslope(1.0, 1e-9, 1.0, 1.0) - std::exp(-1.0)) <= 1e-6);
  CHECK(marginal_cdf_extremal(1.0, 1.0, 1.0, 1.0) == doctest::Approx(0.367879).epsilon(1e-6));
  CHECK(marginal_cdf_extremal(1.0, 1.0, 0.0, 1.0) == 1.0);
  CHECK(marginal_cdf_posslope(1.0, std::numbers::ln2, 1.0, 0.5) == 0.0);
  CHECK(marginal_cdf_posslope(1.0, std::numbers::ln2, 1.0, std::numbers::ln2) == 0.0);
  CHECK(marginal_cdf_posslope(1.0, std::numbers::ln2, 1.0, 2.0 * std::numbers::ln2) ==
        doctest::Approx(std::pow(0.5, 1.0 / std::numbers::ln2)));
  CHECK(marginal_cdf_posslope(1.0, std::numbers::ln2, 1.0, 2.0 * std::numbers::ln2) == doctest::Approx(0.3679).epsilon(1e-4));
  CHECK(marginal_cdf_posslope(1.0, std::numbers::ln2, 0.0, 0.0) == 1.0);
}

TEST_CASE("joint cdf by hand integration") {
  const std::vector<double> u{1.0, 2.0};
  // Equal thresholds collapse to the single window [0, 2].
  CHECK(fdd_cdf(1.0, 1.0, 0.0, u, std::vector<double>{1.0, 1.0}) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  // On [0, 1] the lower threshold 1 binds, so Lambda = 1 + 1 = 2.
  CHECK(fdd_cdf(1.0, 1.0, 0.0, u, std::vector<double>{2.0, 1.0}) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  // Lambda = int_0^1 1 dt + int_1^2 1/2 dt = 1.5.
  CHECK(fdd_cdf(1.0, 1.0, 0.0, u, std::vector<double>{1.0, 2.0}) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
  // Decaying slope, single time: reduces to the closed form.
  const double t1[] = {1.0};
  const double x1[] = {0.8};
  CHECK(fdd_cdf(1.0, 1.0, -0.5, t1, x1) == doctest::Approx(marginal_cdf_negslope(1.0, 0.5, 1.0, 0.8)).epsilon(1e-12));
  const double bad[] = {0.3};
  CHECK_THROWS(fdd_cdf(1.0, 1.0, 1.0, t1, bad));
}

TEST_CASE("time reversal leaves the marginal law unchanged") {
  const double s = -std::numbers::ln2, u = 1.0;
  const PrmParams params{1.0, 1.0, u, 0.01};
  Stream root(5, 0);
  const int draws = 100'000;
  std::vector<double> forward(draws), reversed(draws);
  for (int i = 0; i < draws; ++i) {
    Stream rng = root.substream(i);
    const auto a = sample_atoms(params, rng);
    const auto b = sample_atoms(params, rng);
    double f = 0.0, g = 0.0;
    for (const auto& atom : a.atoms) f = std::max(f, atom.mark + s * (u - atom.time));
    for (const auto& atom : b.atoms) g = std::max(g, atom.mark + s * atom.time);
    forward[i] = f;
    reversed[i] = g;
  }
  CHECK(ks_two_sample(forward, reversed) <= 0.01);
}
