#include "nies/config_io.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace nies {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool to_double(const std::string& s, double& out) {
  const char* c = s.c_str();
  char* end = nullptr;
  out = std::strtod(c, &end);
  return end != c && *end == '\0';
}

bool to_int(const std::string& s, int& out) {
  const char* c = s.c_str();
  char* end = nullptr;
  long v = std::strtol(c, &end, 10);
  if (end == c || *end != '\0') return false;
  out = static_cast<int>(v);
  return out == v;
}

bool to_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "1") return out = true, true;
  if (s == "false" || s == "0") return out = false, true;
  return false;
}

bool levels_of(const std::string& suffix, std::vector<Level>& out) {
  for (char c : suffix) {
    auto lv = level_from_name(std::string(1, c));
    if (!lv) return false;
    out.push_back(*lv);
  }
  return !out.empty() && out.size() <= 2;
}

enum class Sec { none, rates, strong, probe, ensemble, resonator, scan, skip };

}  // namespace

ParsedConfig parse_config(const std::string& text) {
  ParsedConfig pc;

  std::map<Level, double> levels;
  std::map<LevelPair, double> pairs;
  std::map<std::pair<Level, Level>, double> branches;
  bool spontaneous = false;

  auto err = [&](int ln, std::string msg) {
    pc.errors.push_back(ParseIssue{ln, std::move(msg)});
  };

  Sec sec = Sec::none;
  int lineno = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        err(lineno, "unterminated section header");
        sec = Sec::skip;
        continue;
      }
      std::string name = trim(line.substr(1, line.size() - 2));
      if (name == "rates") sec = Sec::rates;
      else if (name == "strong") sec = Sec::strong;
      else if (name == "probe") sec = Sec::probe;
      else if (name == "ensemble") sec = Sec::ensemble;
      else if (name == "resonator") sec = Sec::resonator;
      else if (name == "scan") sec = Sec::scan;
      else {
        err(lineno, "unknown section [" + name + "]");
        sec = Sec::skip;
      }
      continue;
    }

    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      err(lineno, "expected key = value");
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) {
      err(lineno, "empty key");
      continue;
    }
    if (val.empty()) {
      err(lineno, "empty value for '" + key + "'");
      continue;
    }
    if (sec == Sec::skip) continue;
    if (sec == Sec::none) {
      err(lineno, "key '" + key + "' outside any [section]");
      continue;
    }

    double x = 0.0;
    auto num = [&]() {
      if (to_double(val, x)) return true;
      err(lineno, "bad number '" + val + "' for '" + key + "'");
      return false;
    };

    switch (sec) {
      case Sec::rates: {
        if (key == "spontaneous") {
          bool b = false;
          if (!to_bool(val, b)) err(lineno, "bad boolean '" + val + "' for 'spontaneous'");
          else spontaneous = b;
          break;
        }
        std::vector<Level> lv;
        if (key.rfind("Gamma_", 0) == 0 && levels_of(key.substr(6), lv)) {
          if (!num()) break;
          if (lv.size() == 1) levels[lv[0]] = x;
          else pairs[LevelPair(lv[0], lv[1])] = x;
        } else if (key.rfind("gamma_", 0) == 0 && levels_of(key.substr(6), lv) && lv.size() == 2) {
          if (!num()) break;
          branches[{lv[0], lv[1]}] = x;
        } else {
          err(lineno, "unknown key '" + key + "' in [rates]");
        }
        break;
      }
      case Sec::strong: {
        if (key == "G") { if (num()) pc.config.strong.G = x; }
        else if (key == "Omega") { if (num()) pc.config.strong.Omega = x; }
        else if (key == "k") { if (num()) pc.config.strong.k = x; }
        else err(lineno, "unknown key '" + key + "' in [strong]");
        break;
      }
      case Sec::probe: {
        if (key == "G_mu") { if (num()) pc.config.probe.G_mu = x; }
        else if (key == "Omega_mu") { if (num()) pc.config.probe.Omega_mu = x; }
        else if (key == "k_mu") { if (num()) pc.config.probe.k_mu = x; }
        else if (key == "direction") {
          if (val == "parallel" || val == "+") pc.config.probe.direction = Direction::parallel;
          else if (val == "antiparallel" || val == "-") pc.config.probe.direction = Direction::antiparallel;
          else err(lineno, "direction must be parallel|antiparallel|+|-");
        } else if (key == "transition") {
          if (val == "nj") pc.transition = TransitionSelector::nj;
          else if (val == "ml") pc.transition = TransitionSelector::ml;
          else if (val == "fm") pc.transition = TransitionSelector::fm;
          else if (val == "gn") pc.transition = TransitionSelector::gn;
          else err(lineno, "transition must be nj|ml|fm|gn");
        } else err(lineno, "unknown key '" + key + "' in [probe]");
        break;
      }
      case Sec::ensemble: {
        if (key == "v_bar") { if (num()) pc.config.ensemble.v_bar = x; }
        else if (key.rfind("N_", 0) == 0) {
          auto lv = level_from_name(key.substr(2));
          if (!lv) { err(lineno, "unknown key '" + key + "' in [ensemble]"); break; }
          if (num()) pc.config.ensemble.N[*lv] = x;
        } else err(lineno, "unknown key '" + key + "' in [ensemble]");
        break;
      }
      case Sec::resonator: {
        if (key == "delta_omega_r") { if (num()) pc.resonator.delta_omega_r = x; }
        else if (key == "l_over_lr") { if (num()) pc.resonator.l_over_lr = x; }
        else if (key == "omega_r") { if (num()) pc.resonator.omega_r = x; }
        else if (key == "Delta_N") { if (num()) pc.resonator.Delta_N = x; }
        else err(lineno, "unknown key '" + key + "' in [resonator]");
        break;
      }
      case Sec::scan: {
        if (key == "from") { if (num()) pc.scan.from = x; }
        else if (key == "to") { if (num()) pc.scan.to = x; }
        else if (key == "points") {
          int p = 0;
          if (!to_int(val, p)) err(lineno, "bad integer '" + val + "' for 'points'");
          else pc.scan.points = p;
        } else if (key == "gate") { if (num()) pc.scan.gate = x; }
        else if (key == "unit_scale") { if (num()) pc.scan.unit_scale = x; }
        else if (key == "prefactor") { if (num()) pc.config.prefactor = x; }
        else if (key == "envelope") {
          if (val == "strong_k") pc.config.envelope = EnvelopeWavenumber::strong_k;
          else if (val == "probe_k") pc.config.envelope = EnvelopeWavenumber::probe_k;
          else err(lineno, "envelope must be strong_k|probe_k");
        } else err(lineno, "unknown key '" + key + "' in [scan]");
        break;
      }
      default:
        break;
    }
  }

  pc.config.rates.level = levels;
  pc.config.rates.branch = branches;
  if (spontaneous) {
    // Radiative widths from the level widths; explicit pair entries win.
    AtomicRates sp = AtomicRates::spontaneous(levels, branches);
    for (auto& [lp, w] : pairs) sp.pair[lp] = w;
    pc.config.rates.pair = sp.pair;
  } else {
    pc.config.rates.pair = pairs;
  }

  for (const Issue& is : validate(pc.config)) pc.errors.push_back(ParseIssue{0, is.message});
  return pc;
}

ParsedConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on config file '" + path + "'");
  return parse_config(buf.str());
}

}  // namespace nies
