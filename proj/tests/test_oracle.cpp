#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "nies/doppler.hpp"
#include "nies/oracle.hpp"

using namespace nies;

TEST_SUITE("oracle") {

TEST_CASE("maxwell weight is normalized") {
  Ensemble e;
  e.v_bar = 1.7;
  QuadratureSpec spec;
  const Estimate one = maxwell_average([](double) { return 1.0; }, e, spec);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(one.error >= 0.0);
}

TEST_CASE("odd integrands average to zero") {
  Ensemble e;
  e.v_bar = 1.0;
  QuadratureSpec spec;
  const Estimate odd = maxwell_average([](double v) { return v * v * v; }, e, spec);
  CHECK(std::abs(odd.value) < 1e-10);
}

TEST_CASE("second moment of the weight") {
  Ensemble e;
  e.v_bar = 2.0;
  QuadratureSpec spec;
  const Estimate m2 = maxwell_average([](double v) { return v * v; }, e, spec);
  CHECK(m2.value == doctest::Approx(0.5 * e.v_bar * e.v_bar).epsilon(1e-8));
}

TEST_CASE("seeded Lorentzian average matches a tighter reference run") {
  Ensemble e;
  e.v_bar = 1.0;
  const double gamma = 2e-3, v0 = 0.4;
  auto lor = [&](double v) {
    return gamma * gamma / (gamma * gamma + (v - v0) * (v - v0));
  };
  QuadratureSpec spec;
  QuadratureSpec tight = spec;
  tight.rel_tol = 1e-12;
  tight.max_subdivisions = 40000;
  const Estimate a = maxwell_average(lor, e, spec, {v0});
  const Estimate b = maxwell_average(lor, e, tight, {v0});
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-6));
  // Analytic scale: pi gamma * weight at the peak, narrow-line limit.
  CHECK(a.value == doctest::Approx(M_PI * gamma * e.maxwell(v0)).epsilon(2e-3));
}

TEST_CASE("error estimates are conservative on random narrow lines") {
  Ensemble e;
  e.v_bar = 1.0;
  std::mt19937_64 rng(20260819u);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  QuadratureSpec spec;
  spec.rel_tol = 1e-6;
  QuadratureSpec tight = spec;
  tight.rel_tol = 1e-12;
  tight.max_subdivisions = 40000;

  int conservative = 0;
  const int draws = 40;
  for (int i = 0; i < draws; ++i) {
    const double gamma = niestest::log_uniform(rng, 1e-3, 1.0);
    const double v0 = -2.0 + 4.0 * u(rng);
    auto lor = [&](double v) {
      return gamma * gamma / (gamma * gamma + (v - v0) * (v - v0));
    };
    const Estimate got = maxwell_average(lor, e, spec, {v0});
    const Estimate truth = maxwell_average(lor, e, tight, {v0});
    if (std::abs(got.value - truth.value) <= got.error + 1e-14 * std::abs(truth.value))
      ++conservative;
  }
  CHECK(conservative >= 38);  // at least 95%
}

TEST_CASE("starved subdivision budget reports failure instead of a bad number") {
  Ensemble e;
  e.v_bar = 1.0;
  QuadratureSpec spec;
  spec.rel_tol = 1e-10;
  spec.max_subdivisions = 2;
  const double gamma = 1e-7;
  auto spike = [&](double v) {
    return gamma * gamma / (gamma * gamma + (v - 0.37) * (v - 0.37));
  };
  // Seeding puts a panel edge on the spike, so the engine sees it and the
  // budget runs out before the tolerance is met.
  CHECK_THROWS_AS(maxwell_average(spike, e, spec, {0.37}), ToleranceNotMet);
}

TEST_CASE("raw integral engine handles seeded breakpoints") {
  QuadratureSpec spec;
  const Estimate val = integrate([](double x) { return std::abs(x); }, -1.0, 2.0, spec, {0.0});
  CHECK(val.value == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("free-atom average reproduces the closed-form envelope") {
  Config c = niestest::doppler_limit_config();
  c.strong.G = 0.0;
  QuadratureSpec spec;
  const AveragedKernel av = average_lineshape(0.0, c, spec);
  const LineshapeSample cl = lineshape(0.0, c);
  CHECK(av.total == doctest::Approx(cl.total).epsilon(3e-2));
  CHECK(av.coh_part == 0.0);
}

TEST_CASE("angle zero and pi reduce to the collinear paths") {
  Config c = niestest::doppler_limit_config();
  QuadratureSpec spec;
  const double Om = c.strong.Omega + 0.7;

  const AveragedKernel par = average_lineshape(Om, c, spec);
  const AveragedKernel a0 = average_lineshape_angle(Om, c, 0.0, spec);
  CHECK(a0.total == doctest::Approx(par.total).epsilon(1e-12));

  Config anti = c;
  anti.probe.direction = Direction::antiparallel;
  const AveragedKernel apar = average_lineshape(Om, anti, spec);
  const AveragedKernel api = average_lineshape_angle(Om, c, M_PI, spec);
  CHECK(api.total == doctest::Approx(apar.total).epsilon(1e-12));
}

TEST_CASE("perpendicular probe washes out the velocity-selective structure") {
  Config c = niestest::doppler_limit_config();
  QuadratureSpec spec;
  spec.rel_tol = 1e-5;
  spec.v_cut = 5.0;
  const double Om = c.strong.Omega;  // on the narrow structure for sigma = +

  Config off = c;
  off.strong.G = 0.0;

  const double corr_par =
      average_lineshape(Om, c, spec).total - average_lineshape(Om, off, spec).total;
  const double corr_perp = average_lineshape_angle(Om, c, M_PI / 2.0, spec).total -
                           average_lineshape_angle(Om, off, M_PI / 2.0, spec).total;
  REQUIRE(corr_par != 0.0);
  CHECK(std::abs(corr_perp / corr_par) <= 0.05);
}

TEST_CASE("scan comparison: exact, perturbed, floored, mismatched") {
  const std::vector<double> grid{0.0, 1.0, 2.0};
  const std::vector<double> ref{1.0, 2.0, -4.0};

  CHECK(compare(grid, ref, ref).max_rel_err == 0.0);

  std::vector<double> off = ref;
  off[1] = 2.0 * (1.0 + 1e-3);
  const CompareReport rep = compare(grid, off, ref);
  CHECK(rep.max_rel_err == doctest::Approx(1e-3).epsilon(1e-10));
  CHECK(rep.arg_max == 1.0);
  CHECK(rep.sup_rel_err == doctest::Approx(2e-3 / 4.0).epsilon(1e-10));
  REQUIRE(rep.table.size() == 3);
  CHECK(rep.table[0].rel_err == 0.0);

  // Points where both scans sit under the floor never count.
  const std::vector<double> tiny_a{1e-6, 1.0}, tiny_b{2e-6, 1.0}, g2{0.0, 1.0};
  CHECK(compare(g2, tiny_a, tiny_b, 1e-3).max_rel_err == 0.0);

  CHECK_THROWS_AS(compare(grid, ref, std::vector<double>{1.0}), GridMismatch);
}

}  // TEST_SUITE
