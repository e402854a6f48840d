#pragma once

#include <complex>

#include "nies/core.hpp"
#include "nies/steady_state.hpp"

namespace nies {

// Widths of the "effective atom" left behind by the velocity average: the
// group of atoms selected by the strong field responds like a stationary
// atom whose one-quantum and two-quantum lines carry Doppler-broadened
// widths.
struct EffectiveWidths {
  double gamma0 = 0.0;    // one-quantum (step-wise) width
  double gamma_pm = 0.0;  // two-quantum width for the chosen direction
  int sigma = +1;
};

enum class RootBranch { real, complex_pair, confluent };

struct RootPair {
  RootBranch branch = RootBranch::real;
  // Real branch: z1 >= z2. Confluent: z1 == z2.
  double z1 = 0.0;
  double z2 = 0.0;
  // Complex branch: z_{1,2} = z0 +/- i zeta.
  double z0 = 0.0;
  double zeta = 0.0;
};

struct BranchMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

struct OffAxisSaturationTooLarge : std::domain_error {
  using std::domain_error::domain_error;
};

struct RatioOutOfRange : std::domain_error {
  using std::domain_error::domain_error;
};

struct FactorOutOfRange : std::domain_error {
  using std::domain_error::domain_error;
};

EffectiveWidths effective_widths(const AtomicRates& rates, const StrongField& strong,
                                 const ProbeField& probe, const SaturationState& sat,
                                 const TransitionBundle& bundle = base_bundle());

// Resonance roots of D(z) = (gamma0 + i z)(gamma_pm + i z) + G^2, classified
// by the sign of the discriminant (gamma0 - gamma_pm)^2 - 4 G^2 within a
// relative band eps = 1e-12.
RootPair roots(const EffectiveWidths& w, double G);

// Interference term Re f(z) and its complex amplitude. The real/complex/
// confluent branches use the partial-fraction forms; unified_f uses the
// rational form C/D(z) directly and must agree with f_interference to
// rounding (cross-check in tests).
double f_interference(double z, const EffectiveWidths& w, const RootPair& r,
                      const SaturationState& sat, const StrongField& strong,
                      const ProbeField& probe);
std::complex<double> unified_f(double z, const EffectiveWidths& w,
                               const SaturationState& sat, const StrongField& strong,
                               const ProbeField& probe);

// Bennett term Re F(z): response of the nonequilibrium velocity
// distribution, carrying the branching factor (1 - gamma_mn/Gamma_m).
double F_bennett(double z, const EffectiveWidths& w, const RootPair& r,
                 const SaturationState& sat, const AtomicRates& rates,
                 const StrongField& strong, const ProbeField& probe);
std::complex<double> unified_F(double z, const EffectiveWidths& w,
                               const SaturationState& sat, const AtomicRates& rates,
                               const StrongField& strong, const ProbeField& probe);

// Closed-form center values (z = 0) and the effective-atom saturation
// parameter; real branch only.
struct CenterAmplitudes {
  double f0 = 0.0;        // interference term at center
  double F0_plus_f0 = 0.0;
  double ae_eff = 0.0;    // G^2 / (gamma0 gamma_pm)
  double ae_ratio = 0.0;  // ae / ae_eff
};

CenterAmplitudes amplitudes_at_center(const EffectiveWidths& w, const RootPair& r,
                                      const SaturationState& sat, const AtomicRates& rates,
                                      const StrongField& strong, const ProbeField& probe);

// Series approximations of the roots, valid when the one-quantum width
// dominates the two-quantum one and the probe runs nearly along the strong
// wave. Used only to cross-check `roots`.
struct SeriesRoots {
  double z1 = 0.0;
  double z2 = 0.0;
  bool preconditions_ok = true;
};

SeriesRoots series_roots(const EffectiveWidths& w, const SaturationState& sat,
                         const AtomicRates& rates, const StrongField& strong,
                         const ProbeField& probe);

// One decomposed point of the averaged line.
struct LineshapeSample {
  double z = 0.0;
  double F = 0.0;
  double f = 0.0;
  double population_term = 0.0;  // N_n - N_j
  double gaussian = 0.0;         // Doppler envelope including sqrt(pi)/(k v_bar)
  double total = 0.0;
};

// Closed-form averaged line at one probe detuning. The antiparallel k_mu < k
// geometry uses the small-saturation substitution rule and is gated at
// ae <= 0.3 (OffAxisSaturationTooLarge beyond).
LineshapeSample lineshape(double Omega_mu, const Config& cfg,
                          const TransitionBundle& bundle = base_bundle());

// Both travelling-wave components of a standing wave, evaluated
// independently and summed; meaningful when the two velocity structures do
// not overlap (|Omega| above the effective widths), flagged otherwise.
struct StandingWaveSample {
  LineshapeSample parallel;
  LineshapeSample antiparallel;
  double total = 0.0;
  bool overlap_warning = false;
};

StandingWaveSample standing_wave(double Omega_mu, const Config& cfg,
                                 const TransitionBundle& bundle = base_bundle());

// Dimensionless single-parameter curves of the interference term.
// Real branch: x = z/z1, parameter R = z1/z2 >= 1, normalized to remove the
// common coefficient; value at x = 0 equals R.
double normalized_f_real(double x, double R);
// Complex branch: x = z/z0, parameter h = zeta/z0 in [0, sqrt(3)];
// normalized so the center value is 1.
double normalized_f_complex(double x, double h);

// Dimensionless Bennett/combined curves.
// Real branch: x = z/z0 with z0 = (z1+z2)/2 and d = (z1-z2)/(z1+z2) from the
// root ratio; the numerator factor s = 1 - gamma_pm/z0 is independent
// (d = |s| only at G = 0).
double normalized_F_real(double x, double s_factor, double root_ratio);
// Complex branch: x = z/z0, h = zeta/z0, factor c in [-1, 1] (combined curve
// uses c, pure Bennett curve uses s).
double normalized_F_complex(double x, double c_factor, double h);

// Combined-curve factor c from physical parameters; refuses gamma_mn =
// Gamma_m, where the Bennett normalizer vanishes and c is undefined.
double combined_factor(const EffectiveWidths& w, const SaturationState& sat,
                       const AtomicRates& rates);

}  // namespace nies
