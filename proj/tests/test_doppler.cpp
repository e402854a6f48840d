#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "nies/doppler.hpp"

using namespace nies;

namespace {

// Fixed saturation context for pure root-algebra tests; the physical link
// between G and ae is exercised separately.
SaturationState flat_sat() {
  SaturationState s;
  s.tau_sq = 0.0;
  s.ae = 0.0;
  s.gamma_B = 1.0;
  s.Gamma = 1.0;
  return s;
}

int count_local_maxima(const std::vector<double>& y) {
  int n = 0;
  for (size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] > y[i - 1] && y[i] > y[i + 1]) ++n;
  return n;
}

}  // namespace

TEST_SUITE("doppler") {

TEST_CASE("effective widths on the workhorse numbers") {
  Config c = niestest::desk_config();
  const SaturationState sat = saturation(c.rates, c.strong);

  const EffectiveWidths wp = effective_widths(c.rates, c.strong, c.probe, sat);
  CHECK(wp.gamma0 == doctest::Approx(0.7 + sat.gamma_B).epsilon(1e-14));
  CHECK(wp.gamma_pm == doctest::Approx(0.9 + 2.0 * sat.gamma_B).epsilon(1e-14));
  CHECK(wp.sigma == +1);

  c.probe.direction = Direction::antiparallel;
  const EffectiveWidths wm = effective_widths(c.rates, c.strong, c.probe, sat);
  CHECK(wm.gamma0 == doctest::Approx(0.7 + sat.gamma_B).epsilon(1e-14));
  CHECK(wm.gamma_pm == doctest::Approx(0.9).epsilon(1e-14));  // matched wavenumbers
  CHECK(wm.sigma == -1);
}

TEST_CASE("closed forms cover only transitions off the lower strong level") {
  const Config c = niestest::desk_config();
  const SaturationState sat = saturation(c.rates, c.strong);
  const TransitionBundle ml = substitute(TransitionSelector::ml, base_bundle());
  CHECK_THROWS_AS(effective_widths(c.rates, c.strong, c.probe, sat, ml), UnknownTransition);
  CHECK_THROWS_AS(lineshape(0.0, c, ml), UnknownTransition);
}

TEST_CASE("root classification across the branch point") {
  const EffectiveWidths w{2.0, 1.0, -1};

  const RootPair off = roots(w, 0.0);
  CHECK(off.branch == RootBranch::real);
  CHECK(off.z1 == 2.0);
  CHECK(off.z2 == 1.0);

  const RootPair conf = roots(w, 0.5);  // G = |gamma0 - gamma_pm| / 2
  CHECK(conf.branch == RootBranch::confluent);
  CHECK(conf.z1 == conf.z2);
  CHECK(conf.z1 == doctest::Approx(1.5).epsilon(1e-15));

  const RootPair cx = roots(w, 2.0);
  CHECK(cx.branch == RootBranch::complex_pair);
  CHECK(cx.z0 == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(cx.zeta == doctest::Approx(0.5 * std::sqrt(16.0 - 1.0)).epsilon(1e-15));
}

TEST_CASE("roots satisfy the sum and product identities") {
  std::mt19937_64 rng(7101u);
  for (int i = 0; i < 2000; ++i) {
    const double g0 = niestest::log_uniform(rng, 1e-2, 1e2);
    const double gp = niestest::log_uniform(rng, 1e-2, 1e2);
    const double G = niestest::log_uniform(rng, 1e-3, 1e2);
    const EffectiveWidths w{g0, gp, +1};
    const RootPair r = roots(w, G);
    const double sum = g0 + gp;
    const double prod = g0 * gp + G * G;
    if (r.branch == RootBranch::complex_pair) {
      CHECK(2.0 * r.z0 == doctest::Approx(sum).epsilon(1e-12));
      CHECK(r.z0 * r.z0 + r.zeta * r.zeta == doctest::Approx(prod).epsilon(1e-12));
    } else {
      CHECK(r.z1 + r.z2 == doctest::Approx(sum).epsilon(1e-12));
      CHECK(r.z1 * r.z2 == doctest::Approx(prod).epsilon(1e-12));
    }
  }
}

TEST_CASE("partial fractions agree with the rational forms on every branch") {
  const Config c = niestest::desk_config();
  const SaturationState sat = flat_sat();
  const AtomicRates& rates = c.rates;
  ProbeField probe = c.probe;
  const EffectiveWidths w{2.0, 0.7, -1};

  for (double G : {0.2, 0.65, 3.0}) {  // real, confluent, complex
    StrongField strong{G, 0.0, 1.0};
    const RootPair r = roots(w, G);
    for (double z : {0.0, 0.31, -1.4, 2.9, -7.7}) {
      const double f = f_interference(z, w, r, sat, strong, probe);
      const double fu = unified_f(z, w, sat, strong, probe).real();
      CHECK(f == doctest::Approx(fu).epsilon(1e-12));
      const double F = F_bennett(z, w, r, sat, rates, strong, probe);
      const double Fu = unified_F(z, w, sat, rates, strong, probe).real();
      CHECK(F == doctest::Approx(Fu).epsilon(1e-12));
    }
  }
}

TEST_CASE("line values cross the branch point continuously") {
  const Config c = niestest::desk_config();
  const SaturationState sat = flat_sat();
  const EffectiveWidths w{2.0, 1.0, -1};
  const double Gc = 0.5;

  for (double z : {0.0, 0.4, -1.2, 2.5}) {
    StrongField lo{Gc * (1.0 - 1e-9), 0.0, 1.0};
    StrongField hi{Gc * (1.0 + 1e-9), 0.0, 1.0};
    const RootPair rlo = roots(w, lo.G);
    const RootPair rhi = roots(w, hi.G);
    CHECK(rlo.branch == RootBranch::real);
    CHECK(rhi.branch == RootBranch::complex_pair);

    const double flo = f_interference(z, w, rlo, sat, lo, c.probe);
    const double fhi = f_interference(z, w, rhi, sat, hi, c.probe);
    CHECK(flo == doctest::Approx(fhi).epsilon(1e-8));
    const double Flo = F_bennett(z, w, rlo, sat, c.rates, lo, c.probe);
    const double Fhi = F_bennett(z, w, rhi, sat, c.rates, hi, c.probe);
    CHECK(Flo == doctest::Approx(Fhi).epsilon(1e-8));
  }
}

TEST_CASE("center amplitudes match the curve values on the real branch") {
  Config c = niestest::desk_config();
  c.probe.direction = Direction::antiparallel;
  c.strong.G = 0.2;  // keeps |gamma0 - gamma_pm| > 2G
  const SaturationState sat = saturation(c.rates, c.strong);
  const EffectiveWidths w = effective_widths(c.rates, c.strong, c.probe, sat);
  const RootPair r = roots(w, c.strong.G);
  REQUIRE(r.branch == RootBranch::real);

  const CenterAmplitudes amp = amplitudes_at_center(w, r, sat, c.rates, c.strong, c.probe);
  CHECK(amp.f0 ==
        doctest::Approx(f_interference(0.0, w, r, sat, c.strong, c.probe)).epsilon(1e-13));
  const double both = F_bennett(0.0, w, r, sat, c.rates, c.strong, c.probe) +
                      f_interference(0.0, w, r, sat, c.strong, c.probe);
  CHECK(amp.F0_plus_f0 == doctest::Approx(both).epsilon(1e-13));
  CHECK(amp.ae_eff ==
        doctest::Approx(c.strong.G * c.strong.G / (w.gamma0 * w.gamma_pm)).epsilon(1e-14));
  CHECK(amp.ae_ratio == doctest::Approx(sat.ae / amp.ae_eff).epsilon(1e-12));

  const EffectiveWidths wc{1.0, 1.0, -1};
  const RootPair rc = roots(wc, 3.0);
  CHECK_THROWS_AS(amplitudes_at_center(wc, rc, sat, c.rates, c.strong, c.probe),
                  BranchMismatch);
}

TEST_CASE("the effective atom saturates harder than the strong pair alone") {
  std::mt19937_64 rng(40917u);
  int checked = 0;
  while (checked < 100) {
    Config c = niestest::desk_config();
    c.rates = niestest::random_spontaneous(rng, 0.9);
    c.strong.G = niestest::log_uniform(rng, 1e-2, 2.0);
    const SaturationState sat = saturation(c.rates, c.strong);
    const EffectiveWidths w = effective_widths(c.rates, c.strong, c.probe, sat);
    const RootPair r = roots(w, c.strong.G);
    if (r.branch != RootBranch::real) continue;
    const CenterAmplitudes amp = amplitudes_at_center(w, r, sat, c.rates, c.strong, c.probe);
    CHECK(amp.ae_ratio > 1.0);
    ++checked;
  }
}

TEST_CASE("interference term signs at the structure center") {
  std::mt19937_64 rng(52203u);
  for (int i = 0; i < 100; ++i) {
    Config c = niestest::desk_config();
    c.rates = niestest::random_spontaneous(rng);
    c.strong.G = niestest::log_uniform(rng, 1e-2, 10.0);
    const SaturationState sat = saturation(c.rates, c.strong);

    c.probe.direction = Direction::antiparallel;
    EffectiveWidths w = effective_widths(c.rates, c.strong, c.probe, sat);
    CHECK(f_interference(0.0, w, roots(w, c.strong.G), sat, c.strong, c.probe) > 0.0);

    c.probe.direction = Direction::parallel;
    w = effective_widths(c.rates, c.strong, c.probe, sat);
    CHECK(f_interference(0.0, w, roots(w, c.strong.G), sat, c.strong, c.probe) < 0.0);
  }
}

TEST_CASE("series roots reproduce the exact ones in their regime") {
  AtomicRates r;
  r.level = {{Level::m, 1.8}, {Level::n, 0.2}, {Level::j, 0.5}};
  r.pair[LevelPair(Level::m, Level::n)] = 1.0;
  r.pair[LevelPair(Level::n, Level::j)] = 1.0;
  r.pair[LevelPair(Level::m, Level::j)] = 0.01;
  StrongField strong{0.0, 0.0, 1.0};
  ProbeField probe{0.0, 0.0, 1.0, Direction::antiparallel};

  SaturationState sat0 = saturation(r, strong);
  strong.G = std::sqrt(0.5 / sat0.tau_sq);  // ae = 0.5
  const SaturationState sat = saturation(r, strong);
  const EffectiveWidths w = effective_widths(r, strong, probe, sat);
  const RootPair exact = roots(w, strong.G);
  REQUIRE(exact.branch == RootBranch::real);
  const SeriesRoots ser = series_roots(w, sat, r, strong, probe);
  CHECK(ser.preconditions_ok);
  CHECK(std::abs(ser.z1 - exact.z1) <= 0.05 * exact.z1);
  CHECK(std::abs(ser.z2 - exact.z2) <= 0.05 * exact.z2);

  // Short burn time breaks the expansion and the gate reports it.
  AtomicRates fast;
  fast.level = {{Level::m, 8.0}, {Level::n, 8.0}, {Level::j, 0.5}};
  fast.pair[LevelPair(Level::m, Level::n)] = 1.0;
  fast.pair[LevelPair(Level::n, Level::j)] = 1.0;
  fast.pair[LevelPair(Level::m, Level::j)] = 0.01;
  const SaturationState satf = saturation(fast, strong);
  const EffectiveWidths wf = effective_widths(fast, strong, probe, satf);
  CHECK(!series_roots(wf, satf, fast, strong, probe).preconditions_ok);
}

TEST_CASE("full branching to the lower strong level erases the Bennett term") {
  Config c = niestest::desk_config();
  c.rates.branch[{Level::m, Level::n}] = 1.2;
  const SaturationState sat = saturation(c.rates, c.strong);
  const EffectiveWidths w = effective_widths(c.rates, c.strong, c.probe, sat);
  const RootPair r = roots(w, c.strong.G);
  for (double z : {0.0, 0.5, -2.0, 8.0}) {
    CHECK(F_bennett(z, w, r, sat, c.rates, c.strong, c.probe) == 0.0);
    CHECK(f_interference(z, w, r, sat, c.strong, c.probe) != 0.0);
  }
}

TEST_CASE("averaged line: decomposition, envelope, and resonance variable") {
  Config c = niestest::desk_config();
  const double Om = 1.3;
  const LineshapeSample s = lineshape(Om, c);

  CHECK(s.z == doctest::Approx(Om - c.strong.Omega).epsilon(1e-15));
  CHECK(s.population_term == doctest::Approx(0.5).epsilon(1e-15));  // N_n - N_j
  const double arg = Om / (c.probe.k_mu * c.ensemble.v_bar);
  CHECK(s.gaussian == doctest::Approx(std::sqrt(M_PI) / (c.strong.k * c.ensemble.v_bar) *
                                      std::exp(-arg * arg)).epsilon(1e-14));
  const double scale = 2.0 * c.prefactor * c.probe.G_mu * c.probe.G_mu;
  CHECK(s.total == doctest::Approx(scale * s.gaussian *
                                   (s.population_term + 1.0 * (s.F + s.f))).epsilon(1e-14));

  c.probe.direction = Direction::antiparallel;
  CHECK(lineshape(Om, c).z == doctest::Approx(Om + c.strong.Omega).epsilon(1e-15));

  c.envelope = EnvelopeWavenumber::probe_k;
  c.probe.k_mu = 0.5;
  c.strong.G = 0.05;  // keep the off-axis path within its gate
  const LineshapeSample sp = lineshape(Om, c);
  const double arg2 = Om / (c.probe.k_mu * c.ensemble.v_bar);
  CHECK(sp.gaussian == doctest::Approx(std::sqrt(M_PI) / (0.5 * c.ensemble.v_bar) *
                                       std::exp(-arg2 * arg2)).epsilon(1e-14));
}

TEST_CASE("switched-off field leaves only the population line") {
  Config c = niestest::desk_config();
  c.strong.G = 0.0;
  const LineshapeSample s = lineshape(0.7, c);
  CHECK(s.F == 0.0);
  CHECK(s.f == 0.0);
  const double scale = 2.0 * c.prefactor * c.probe.G_mu * c.probe.G_mu;
  CHECK(s.total == doctest::Approx(scale * s.gaussian * 0.5).epsilon(1e-15));
}

TEST_CASE("partner fed by the probed level rescales the Bennett term only") {
  Config base = niestest::desk_config();
  Config fed = base;
  fed.rates.branch[{Level::n, Level::j}] = 0.2;
  const LineshapeSample a = lineshape(0.9, base);
  const LineshapeSample b = lineshape(0.9, fed);
  CHECK(b.F == doctest::Approx(a.F * (1.0 - 0.2 / 0.6)).epsilon(1e-14));
  CHECK(b.f == a.f);
  CHECK(b.population_term == a.population_term);
}

TEST_CASE("mismatched-wavenumber antiparallel path: gate and seam") {
  Config c = niestest::desk_config();
  c.probe.direction = Direction::antiparallel;
  c.probe.k_mu = 0.5;
  CHECK_THROWS_AS(lineshape(0.2, c), OffAxisSaturationTooLarge);  // ae = 1.275

  // At tiny saturation the substitution rule joins the matched-wavenumber
  // form continuously.
  const SaturationState bare = saturation(c.rates, StrongField{0.0, 3.0, 1.0});
  c.strong.G = std::sqrt(1e-5 / bare.tau_sq);
  c.probe.k_mu = 1.0 - 1e-9;
  const LineshapeSample off = lineshape(0.2, c);
  c.probe.k_mu = 1.0;
  const LineshapeSample on = lineshape(0.2, c);
  CHECK(off.F == doctest::Approx(on.F).epsilon(1e-3));
  CHECK(off.f == doctest::Approx(on.f).epsilon(1e-3));
}

TEST_CASE("standing wave sums both components and subtracts the double-counted line") {
  Config c = niestest::desk_config();
  c.strong.Omega = 30.0;
  const double Om = 0.4;
  const StandingWaveSample s = standing_wave(Om, c);

  Config cp = c;
  cp.probe.direction = Direction::parallel;
  Config ca = c;
  ca.probe.direction = Direction::antiparallel;
  CHECK(s.parallel.total == lineshape(Om, cp).total);
  CHECK(s.antiparallel.total == lineshape(Om, ca).total);

  const double scale = 2.0 * c.prefactor * c.probe.G_mu * c.probe.G_mu;
  CHECK(s.total == doctest::Approx(s.parallel.total + s.antiparallel.total -
                                   scale * s.parallel.gaussian * s.parallel.population_term)
                       .epsilon(1e-14));
  CHECK(!s.overlap_warning);  // detuning far above both widths

  CHECK(standing_wave(Om, niestest::desk_config()).overlap_warning);  // Omega = 3
}

TEST_CASE("normalized narrow-structure curve, real roots") {
  CHECK(normalized_f_real(0.0, 5.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(normalized_f_real(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normalized_f_real(0.7, 2.5) == doctest::Approx(normalized_f_real(-0.7, 2.5))
                                           .epsilon(1e-14));
  CHECK(normalized_f_real(5.0, 5.0) < 0.0);  // emission wings
  CHECK_THROWS_AS(normalized_f_real(0.0, 0.8), RatioOutOfRange);

  std::vector<double> y;
  for (double x = -6.0; x <= 6.0; x += 1e-3) y.push_back(normalized_f_real(x, 5.0));
  CHECK(count_local_maxima(y) == 1);
}

TEST_CASE("normalized narrow-structure curve, complex roots") {
  CHECK(normalized_f_complex(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normalized_f_complex(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normalized_f_complex(0.5, 0.0) == doctest::Approx(0.48).epsilon(1e-14));
  CHECK(normalized_f_complex(0.5, 1.0) == doctest::Approx(3.5 / 4.0625).epsilon(1e-14));
  CHECK(normalized_f_complex(0.5, std::sqrt(3.0)) ==
        doctest::Approx(15.0 / 15.0625).epsilon(1e-13));
  CHECK_THROWS_AS(normalized_f_complex(0.0, 1.8), RatioOutOfRange);
  CHECK_THROWS_AS(normalized_f_complex(0.0, -0.1), RatioOutOfRange);

  // The center flattens as zeta grows but never splits within the domain:
  // interior maxima require zeta > sqrt(3) z0.
  for (double h : {0.0, 1.0, std::sqrt(3.0)}) {
    std::vector<double> y;
    for (double x = -4.0; x <= 4.0; x += 1e-3) y.push_back(normalized_f_complex(x, h));
    CHECK(count_local_maxima(y) == 1);
  }
}

TEST_CASE("normalized broad-structure curve, real roots") {
  const double s = 0.3, R = 2.0;
  const double d = (R - 1.0) / (R + 1.0);
  CHECK(normalized_F_real(0.0, s, R) ==
        doctest::Approx(2.0 * (1.0 - s) / (1.0 - d * d)).epsilon(1e-13));
  CHECK(normalized_F_real(1.1, s, R) == doctest::Approx(normalized_F_real(-1.1, s, R))
                                            .epsilon(1e-13));
  CHECK(normalized_F_real(0.0, 1.0, R) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(normalized_F_real(0.0, 1.2, R), FactorOutOfRange);
  CHECK_THROWS_AS(normalized_F_real(0.0, 0.5, 0.9), RatioOutOfRange);
}

TEST_CASE("normalized broad-structure curve, complex roots") {
  CHECK(normalized_F_complex(0.0, -1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(normalized_F_complex(0.0, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(normalized_F_complex(0.0, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(normalized_F_complex(0.8, 0.4, 1.2) ==
        doctest::Approx(normalized_F_complex(-0.8, 0.4, 1.2)).epsilon(1e-13));
  CHECK_THROWS_AS(normalized_F_complex(0.0, -1.3, 1.0), FactorOutOfRange);
  CHECK_THROWS_AS(normalized_F_complex(0.0, 0.0, 2.0), RatioOutOfRange);

  // Fully saturated factor: dip to zero at center, emission humps at the
  // sides.
  CHECK(normalized_F_complex(1.0, 1.0, 1.0) > 0.0);
}

TEST_CASE("combined curve factor from physical parameters") {
  Config c = niestest::desk_config();
  c.probe.direction = Direction::antiparallel;
  const SaturationState sat = saturation(c.rates, c.strong);
  const EffectiveWidths w = effective_widths(c.rates, c.strong, c.probe, sat);

  const double sum = w.gamma0 + w.gamma_pm;
  const double expected = (w.gamma0 - w.gamma_pm) / sum -
                          (0.8 / sum) / (1.0 - 0.3 / 1.2) *
                              (1.0 + std::sqrt(1.0 + sat.ae));
  CHECK(combined_factor(w, sat, c.rates) == doctest::Approx(expected).epsilon(1e-13));

  Config full = niestest::desk_config();
  full.rates.branch[{Level::m, Level::n}] = 1.2;
  const SaturationState satf = saturation(full.rates, full.strong);
  const EffectiveWidths wf = effective_widths(full.rates, full.strong, full.probe, satf);
  CHECK_THROWS_AS(combined_factor(wf, satf, full.rates), FactorOutOfRange);
}

}  // TEST_SUITE
