#include "nies/core.hpp"

#include <cmath>
#include <sstream>

namespace nies {

const char* level_name(Level lv) {
  switch (lv) {
    case Level::m: return "m";
    case Level::n: return "n";
    case Level::j: return "j";
    case Level::l: return "l";
    case Level::f: return "f";
    case Level::g: return "g";
  }
  return "?";
}

std::optional<Level> level_from_name(std::string_view s) {
  if (s == "m") return Level::m;
  if (s == "n") return Level::n;
  if (s == "j") return Level::j;
  if (s == "l") return Level::l;
  if (s == "f") return Level::f;
  if (s == "g") return Level::g;
  return std::nullopt;
}

double AtomicRates::level_width(Level i) const {
  auto it = level.find(i);
  if (it == level.end())
    throw std::out_of_range(std::string("no level width for ") + level_name(i));
  return it->second;
}

double AtomicRates::transition_width(Level i, Level k) const {
  auto it = pair.find(LevelPair(i, k));
  if (it == pair.end())
    throw std::out_of_range(std::string("no transition width for ") + level_name(i) +
                            "-" + level_name(k));
  return it->second;
}

double AtomicRates::branch_rate(Level from, Level to) const {
  auto it = branch.find({from, to});
  return it == branch.end() ? 0.0 : it->second;
}

AtomicRates AtomicRates::spontaneous(std::map<Level, double> level_widths,
                                     std::map<std::pair<Level, Level>, double> branch_rates) {
  AtomicRates r;
  r.level = std::move(level_widths);
  r.branch = std::move(branch_rates);
  for (auto i = r.level.begin(); i != r.level.end(); ++i)
    for (auto k = std::next(i); k != r.level.end(); ++k)
      r.pair[LevelPair(i->first, k->first)] = 0.5 * (i->second + k->second);
  return r;
}

double Ensemble::maxwell(double v) const {
  const double x = v / v_bar;
  return std::exp(-x * x) / (std::sqrt(M_PI) * v_bar);
}

double Ensemble::n_of(Level i, double v) const { return population(i) * maxwell(v); }

double Ensemble::population(Level i) const {
  auto it = N.find(i);
  return it == N.end() ? 0.0 : it->second;
}

namespace {

void require_positive(std::vector<Issue>& out, double value, const std::string& what) {
  if (!(value > 0.0))
    out.push_back({IssueCode::NegativeWidth, what + " must be positive, got " +
                                                 std::to_string(value)});
}

}  // namespace

std::vector<Issue> validate(const AtomicRates& rates, const StrongField& strong,
                            const ProbeField& probe, const Ensemble& ens) {
  std::vector<Issue> out;

  for (const auto& [lv, w] : rates.level)
    require_positive(out, w, std::string("level width of ") + level_name(lv));
  for (const auto& [pr, w] : rates.pair)
    require_positive(out, w, std::string("transition width ") + level_name(pr.a) + "-" +
                                 level_name(pr.b));

  if (!rates.has_pair(Level::m, Level::n))
    out.push_back({IssueCode::MissingRequiredRate,
                   "transition width m-n is required (it sets the unit scale)"});

  // Total decay out of a level bounds every branch rate from it.
  for (const auto& [pr, g] : rates.branch) {
    if (g < 0.0) {
      out.push_back({IssueCode::BranchingExceedsWidth,
                     std::string("branch rate ") + level_name(pr.first) + "->" +
                         level_name(pr.second) + " is negative"});
      continue;
    }
    if (rates.has_level(pr.first) && g > rates.level_width(pr.first) * (1.0 + 1e-15))
      out.push_back({IssueCode::BranchingExceedsWidth,
                     std::string("branch rate ") + level_name(pr.first) + "->" +
                         level_name(pr.second) + " exceeds the level width of " +
                         level_name(pr.first)});
  }

  if (strong.G < 0.0)
    out.push_back({IssueCode::NonpositiveField, "strong-field amplitude G is negative"});
  if (!(strong.k > 0.0))
    out.push_back({IssueCode::NonpositiveField, "strong-field wavenumber k must be positive"});
  if (probe.G_mu < 0.0)
    out.push_back({IssueCode::NonpositiveField, "probe amplitude G_mu is negative"});
  if (!(probe.k_mu > 0.0))
    out.push_back({IssueCode::NonpositiveField, "probe wavenumber k_mu must be positive"});

  if (!(ens.v_bar > 0.0))
    out.push_back({IssueCode::NonpositiveEnsemble, "thermal velocity v_bar must be positive"});
  for (const auto& [lv, n] : ens.N)
    if (n < 0.0)
      out.push_back({IssueCode::NonpositiveEnsemble,
                     std::string("population of level ") + level_name(lv) + " is negative"});

  return out;
}

namespace {

// Label maps, each its own inverse.
Level relabel(TransitionSelector sel, Level x) {
  switch (sel) {
    case TransitionSelector::nj:
      return x;
    case TransitionSelector::ml:
      if (x == Level::m) return Level::n;
      if (x == Level::n) return Level::m;
      if (x == Level::j) return Level::l;
      if (x == Level::l) return Level::j;
      return x;
    case TransitionSelector::fm:
      if (x == Level::m) return Level::n;
      if (x == Level::n) return Level::m;
      if (x == Level::j) return Level::f;
      if (x == Level::f) return Level::j;
      return x;
    case TransitionSelector::gn:
      if (x == Level::j) return Level::g;
      if (x == Level::g) return Level::j;
      return x;
  }
  throw UnknownTransition("unknown transition selector");
}

bool swaps_strong_levels(TransitionSelector sel) {
  return sel == TransitionSelector::ml || sel == TransitionSelector::fm;
}

}  // namespace

TransitionBundle substitute(TransitionSelector sel, const TransitionBundle& base) {
  TransitionBundle out;
  out.probed = relabel(sel, base.probed);
  out.partner = relabel(sel, base.partner);
  // Probing the upper strong level flips the sign the strong detuning carries.
  out.omega_prime_sign = swaps_strong_levels(sel) ? -base.omega_prime_sign
                                                  : base.omega_prime_sign;
  // j and l sit below the strong pair and collect its decay; f and g sit above.
  out.partner_below = (out.partner == Level::j || out.partner == Level::l);
  return out;
}

}  // namespace nies
