#pragma once

#include <cmath>
#include <random>

#include "nies/core.hpp"
#include "nies/generation.hpp"
#include "nies/steady_state.hpp"

namespace niestest {

using namespace nies;

// Three-level workhorse: strong pair m-n, probe partner j below, one decay
// branch m -> n, radiative widths.
inline Config desk_config() {
  Config c;
  c.rates = AtomicRates::spontaneous(
      {{Level::m, 1.2}, {Level::n, 0.8}, {Level::j, 0.6}},
      {{{Level::m, Level::n}, 0.3}});
  c.strong = StrongField{0.6, 3.0, 1.0};
  c.probe = ProbeField{0.02, 0.0, 1.0, Direction::parallel};
  c.ensemble.v_bar = 100.0;
  c.ensemble.N = {{Level::m, 2.0}, {Level::n, 1.0}, {Level::j, 0.5}};
  return c;
}

// Same set pushed into the Doppler limit k v_bar = 100 gamma_B.
inline Config doppler_limit_config() {
  Config c = desk_config();
  const SaturationState s = saturation(c.rates, c.strong);
  c.ensemble.v_bar = 100.0 * s.gamma_B / c.strong.k;
  return c;
}

// Slow upper level g over the strong pair: the generation workhorse.
// Radiative-consistent pair widths, detuning far outside the homogeneous
// widths but deep inside the Doppler profile.
inline Config generation_config() {
  Config c;
  c.rates.level = {{Level::m, 0.04}, {Level::n, 1.0}, {Level::g, 0.02}};
  c.rates.pair[LevelPair(Level::n, Level::m)] = 0.52;
  c.rates.pair[LevelPair(Level::g, Level::n)] = 0.51;
  c.rates.pair[LevelPair(Level::g, Level::m)] = 0.03;
  c.strong = StrongField{0.15, 30.0, 1.0};
  c.probe.k_mu = 1.0;
  c.ensemble.v_bar = 3000.0;
  c.ensemble.N = {{Level::m, 1.5}, {Level::n, 1.0}, {Level::g, 3.0}};
  return c;
}

inline Resonator generation_resonator() {
  Resonator r;
  r.delta_omega_r = 0.2;
  r.l_over_lr = 1.0;
  r.Delta_N = 0.8;
  return r;
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return lo * std::pow(hi / lo, u(rng));
}

// Random radiative-relaxation rate set for the m, n, j scheme.
inline AtomicRates random_spontaneous(std::mt19937_64& rng, double branch_cap = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double Gm = log_uniform(rng, 0.05, 20.0);
  const double Gn = log_uniform(rng, 0.05, 20.0);
  const double Gj = log_uniform(rng, 0.05, 20.0);
  const double gmn = branch_cap * u(rng) * Gm;
  const double gnj = branch_cap * u(rng) * Gn;
  return AtomicRates::spontaneous({{Level::m, Gm}, {Level::n, Gn}, {Level::j, Gj}},
                                  {{{Level::m, Level::n}, gmn}, {{Level::n, Level::j}, gnj}});
}

}  // namespace niestest
