#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nies {

// Level labels of the scheme: m-n is the strong-field transition, the probe
// couples one of {m,n} to a partner level j, l, f, or g.
enum class Level { m, n, j, l, f, g };

const char* level_name(Level lv);
std::optional<Level> level_from_name(std::string_view s);

// Unordered level pair, normalized so (a,b) == (b,a).
struct LevelPair {
  Level a;
  Level b;
  LevelPair(Level x, Level y) : a(x), b(y) {
    if (static_cast<int>(a) > static_cast<int>(b)) std::swap(a, b);
  }
  bool operator<(const LevelPair& o) const {
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
  bool operator==(const LevelPair& o) const { return a == o.a && b == o.b; }
};

// Relaxation constants: level widths Gamma_i, transition widths Gamma_ik,
// and directed decay rates gamma_ik (rate of i feeding k).
struct AtomicRates {
  std::map<Level, double> level;               // Gamma_i
  std::map<LevelPair, double> pair;            // Gamma_ik
  std::map<std::pair<Level, Level>, double> branch;  // gamma_ik, i -> k

  double level_width(Level i) const;
  double transition_width(Level i, Level k) const;
  // 0 when the channel is absent.
  double branch_rate(Level from, Level to) const;
  bool has_level(Level i) const { return level.count(i) != 0; }
  bool has_pair(Level i, Level k) const { return pair.count(LevelPair(i, k)) != 0; }

  // Radiative-decay-only rates: every transition width is the mean of the
  // level widths, Gamma_ik = (Gamma_i + Gamma_k)/2.
  static AtomicRates spontaneous(std::map<Level, double> level_widths,
                                 std::map<std::pair<Level, Level>, double> branch_rates);
};

struct StrongField {
  double G = 0.0;      // Rabi half-amplitude
  double Omega = 0.0;  // detuning from the m-n resonance
  double k = 1.0;      // wavenumber magnitude
};

// Probe direction relative to the strong wave.
enum class Direction { parallel, antiparallel };

inline int sigma_of(Direction d) { return d == Direction::parallel ? +1 : -1; }

struct ProbeField {
  double G_mu = 0.0;
  double Omega_mu = 0.0;  // detuning from the probed transition
  double k_mu = 1.0;
  Direction direction = Direction::parallel;
};

// Maxwellian ensemble: n_i(v) = N_i exp(-v^2/v_bar^2) / (sqrt(pi) v_bar).
struct Ensemble {
  double v_bar = 1.0;
  std::map<Level, double> N;  // velocity-integrated unsaturated populations

  double maxwell(double v) const;
  double n_of(Level i, double v) const;
  // 0 when the level is not listed.
  double population(Level i) const;
};

// The Gaussian envelope of the averaged line carries 1/(k v_bar) in one
// convention and 1/(k_mu v_bar) in the other; identical when k_mu = k.
enum class EnvelopeWavenumber { strong_k, probe_k };

struct Config {
  AtomicRates rates;
  StrongField strong;
  ProbeField probe;
  Ensemble ensemble;
  double prefactor = 1.0;  // overall power scale in front of |G_mu|^2
  EnvelopeWavenumber envelope = EnvelopeWavenumber::strong_k;
};

enum class IssueCode {
  NegativeWidth,
  BranchingExceedsWidth,
  MissingRequiredRate,
  NonpositiveField,
  NonpositiveEnsemble,
};

struct Issue {
  IssueCode code;
  std::string message;
};

// Returns every violation found, not just the first.
std::vector<Issue> validate(const AtomicRates& rates, const StrongField& strong,
                            const ProbeField& probe, const Ensemble& ens);
inline std::vector<Issue> validate(const Config& c) {
  return validate(c.rates, c.strong, c.probe, c.ensemble);
}

// Probe transition selector. The base formulas are written for n-j; the other
// three follow by index relabeling.
enum class TransitionSelector { nj, ml, fm, gn };

// Symbolic shape of a probe transition: which strong-coupled level is probed,
// the partner level, whether the partner sits below the probed level (and is
// then radiatively fed by it), and the sign carried by the strong-field
// detuning in the relabeled formulas.
struct TransitionBundle {
  Level probed = Level::n;
  Level partner = Level::j;
  bool partner_below = true;
  int omega_prime_sign = +1;

  bool operator==(const TransitionBundle& o) const = default;
};

inline TransitionBundle base_bundle() { return TransitionBundle{}; }

struct UnknownTransition : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Applies the label map of the selector to the bundle. Each map is a product
// of 2-cycles, so applying it twice returns the input.
TransitionBundle substitute(TransitionSelector sel, const TransitionBundle& base);

}  // namespace nies
