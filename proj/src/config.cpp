#include "starknls/config.hpp"

#include "starknls/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace starknls {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Known schema: section -> keys.
const std::map<std::string, std::vector<std::string>>& schema() {
  static const std::map<std::string, std::vector<std::string>> s = {
      {"experiment", {"kind", "tolerance", "negative_control", "lemma_times"}},
      {"grid", {"n", "N", "L"}},
      {"problem",
       {"epsilon", "lambda", "sigma", "E", "stark_on", "hartree_mu", "hartree_gamma"}},
      {"initial_data", {"kind", "amplitude", "center", "width", "p", "custom_path"}},
      {"scheme", {"dt", "T", "sample_every"}},
      {"outputs", {"csv_path", "snapshot_dir", "snapshot_every"}},
      {"guards", {"boundary_mass_max", "spectral_tail_max", "grad_threshold_factor"}},
  };
  return s;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string suggestion(const std::string& section, const std::string& key) {
  std::string best;
  std::size_t best_d = 3;  // suggest only close matches
  const auto it = schema().find(section);
  if (it == schema().end()) return "";
  for (const auto& k : it->second) {
    const std::size_t d = edit_distance(key, k);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

[[noreturn]] void syntax_error(int line, const std::string& msg) {
  throw ConfigSyntaxError("config error at line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void validity_error(const std::string& key, const std::string& msg) {
  throw ConfigValidityError("config error: " + key + ": " + msg);
}

double parse_double(const std::string& v, int line, const std::string& key) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || trim(std::string(end)) != "")
    syntax_error(line, key + ": expected a number, got '" + v + "'");
  return x;
}

long parse_int(const std::string& v, int line, const std::string& key) {
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || trim(std::string(end)) != "")
    syntax_error(line, key + ": expected an integer, got '" + v + "'");
  return x;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  syntax_error(line, key + ": expected true or false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& v, int line, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) syntax_error(line, key + ": empty list entry");
    out.push_back(parse_double(item, line, key));
  }
  if (out.empty()) syntax_error(line, key + ": expected at least one value");
  return out;
}

ExperimentKind parse_kind(const std::string& v, int line) {
  if (v == "run") return ExperimentKind::run;
  if (v == "compare") return ExperimentKind::compare;
  if (v == "lemma-check") return ExperimentKind::lemma_check;
  if (v == "blowup") return ExperimentKind::blowup;
  if (v == "scatter") return ExperimentKind::scatter;
  syntax_error(line, "experiment.kind: unknown kind '" + v +
                         "' (expected run | compare | lemma-check | blowup | scatter)");
}

bool power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::run: return "run";
    case ExperimentKind::compare: return "compare";
    case ExperimentKind::lemma_check: return "lemma-check";
    case ExperimentKind::blowup: return "blowup";
    case ExperimentKind::scatter: return "scatter";
  }
  return "unknown";
}

ExperimentConfig parse_config(const std::string& text, ExperimentKind kind) {
  ExperimentConfig cfg;
  cfg.kind = kind;

  std::map<std::string, std::map<std::string, std::pair<std::string, int>>> raw;
  std::string section;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') syntax_error(lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (schema().find(section) == schema().end())
        syntax_error(lineno, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) syntax_error(lineno, "expected key = value");
    if (section.empty()) syntax_error(lineno, "key outside of any [section]");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& keys = schema().at(section);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      const std::string s = suggestion(section, key);
      std::string msg = "unknown key '" + key + "' in [" + section + "]";
      if (!s.empty()) msg += "; did you mean '" + s + "'?";
      syntax_error(lineno, msg);
    }
    if (raw[section].count(key)) syntax_error(lineno, "duplicate key '" + key + "'");
    raw[section][key] = {value, lineno};
  }

  auto take = [&](const std::string& sec, const std::string& key) -> const std::pair<std::string, int>* {
    auto si = raw.find(sec);
    if (si == raw.end()) return nullptr;
    auto ki = si->second.find(key);
    if (ki == si->second.end()) return nullptr;
    return &ki->second;
  };

  if (const auto* v = take("experiment", "kind")) {
    const ExperimentKind file_kind = parse_kind(v->first, v->second);
    if (file_kind != kind)
      validity_error("experiment.kind", std::string("config kind '") + to_string(file_kind) +
                                            "' does not match subcommand '" + to_string(kind) + "'");
  }
  if (const auto* v = take("experiment", "tolerance"))
    cfg.tolerance = parse_double(v->first, v->second, "experiment.tolerance");
  if (const auto* v = take("experiment", "negative_control"))
    cfg.negative_control = parse_bool(v->first, v->second, "experiment.negative_control");
  if (const auto* v = take("experiment", "lemma_times"))
    cfg.lemma_times = parse_list(v->first, v->second, "experiment.lemma_times");

  if (const auto* v = take("grid", "n")) cfg.dim = static_cast<int>(parse_int(v->first, v->second, "grid.n"));
  if (cfg.dim != 1 && cfg.dim != 2) validity_error("grid.n", "dimension must be 1 or 2");

  if (const auto* v = take("grid", "N")) {
    const auto list = parse_list(v->first, v->second, "grid.N");
    if (list.size() != 1 && list.size() != static_cast<std::size_t>(cfg.dim))
      validity_error("grid.N", "expected 1 or n values");
    for (int a = 0; a < cfg.dim; ++a) {
      const double val = list[std::min<std::size_t>(static_cast<std::size_t>(a), list.size() - 1)];
      if (val != std::floor(val)) validity_error("grid.N", "must be an integer");
      cfg.points[static_cast<std::size_t>(a)] = static_cast<int>(val);
    }
  }
  for (int a = 0; a < cfg.dim; ++a) {
    if (!power_of_two(cfg.points[static_cast<std::size_t>(a)]) || cfg.points[static_cast<std::size_t>(a)] < 8)
      validity_error("grid.N", "must be a power of two >= 8");
  }
  if (const auto* v = take("grid", "L")) {
    const auto list = parse_list(v->first, v->second, "grid.L");
    if (list.size() != 1 && list.size() != static_cast<std::size_t>(cfg.dim))
      validity_error("grid.L", "expected 1 or n values");
    for (int a = 0; a < cfg.dim; ++a)
      cfg.lengths[static_cast<std::size_t>(a)] = list[std::min<std::size_t>(static_cast<std::size_t>(a), list.size() - 1)];
  }
  for (int a = 0; a < cfg.dim; ++a) {
    if (!(cfg.lengths[static_cast<std::size_t>(a)] > 0.0)) validity_error("grid.L", "must be positive");
  }

  if (const auto* v = take("problem", "epsilon"))
    cfg.problem.epsilon = parse_double(v->first, v->second, "problem.epsilon");
  if (!(cfg.problem.epsilon > 0.0) || cfg.problem.epsilon > 1.0)
    validity_error("problem.epsilon", "must lie in (0, 1]");
  if (const auto* v = take("problem", "lambda"))
    cfg.problem.lambda = parse_double(v->first, v->second, "problem.lambda");
  if (const auto* v = take("problem", "sigma"))
    cfg.problem.sigma = parse_double(v->first, v->second, "problem.sigma");
  if (!(cfg.problem.sigma > 0.0)) validity_error("problem.sigma", "must be positive");
  if (const auto* v = take("problem", "E")) {
    const auto list = parse_list(v->first, v->second, "problem.E");
    if (list.size() != static_cast<std::size_t>(cfg.dim))
      validity_error("problem.E", "expected n components");
    for (int a = 0; a < cfg.dim; ++a) cfg.problem.field_strength[static_cast<std::size_t>(a)] = list[static_cast<std::size_t>(a)];
  }
  if (const auto* v = take("problem", "stark_on"))
    cfg.problem.stark_on = parse_bool(v->first, v->second, "problem.stark_on");
  {
    const auto* mu = take("problem", "hartree_mu");
    const auto* gamma = take("problem", "hartree_gamma");
    if ((mu == nullptr) != (gamma == nullptr))
      validity_error("problem.hartree_mu", "hartree_mu and hartree_gamma must be given together");
    if (mu && gamma) {
      HartreeTerm h;
      h.mu = parse_double(mu->first, mu->second, "problem.hartree_mu");
      h.gamma = parse_double(gamma->first, gamma->second, "problem.hartree_gamma");
      if (!(h.gamma > 0.0) || !(h.gamma < static_cast<double>(cfg.dim)))
        validity_error("problem.hartree_gamma", "must lie in (0, n)");
      cfg.problem.hartree = h;
    }
  }

  if (const auto* v = take("initial_data", "kind")) {
    const std::string& k = v->first;
    if (k == "gaussian") cfg.initial.kind = InitialData::Kind::gaussian;
    else if (k == "gaussian_boosted") cfg.initial.kind = InitialData::Kind::gaussian_boosted;
    else if (k == "soliton_like") cfg.initial.kind = InitialData::Kind::soliton_like;
    else if (k == "custom") cfg.initial.kind = InitialData::Kind::custom;
    else
      syntax_error(v->second, "initial_data.kind: unknown kind '" + k + "'");
  }
  if (const auto* v = take("initial_data", "amplitude"))
    cfg.initial.amplitude = parse_double(v->first, v->second, "initial_data.amplitude");
  if (const auto* v = take("initial_data", "width"))
    cfg.initial.width = parse_double(v->first, v->second, "initial_data.width");
  if (!(cfg.initial.width > 0.0)) validity_error("initial_data.width", "must be positive");
  if (const auto* v = take("initial_data", "center")) {
    const auto list = parse_list(v->first, v->second, "initial_data.center");
    if (list.size() != static_cast<std::size_t>(cfg.dim))
      validity_error("initial_data.center", "expected n components");
    for (int a = 0; a < cfg.dim; ++a) cfg.initial.center[static_cast<std::size_t>(a)] = list[static_cast<std::size_t>(a)];
  }
  if (const auto* v = take("initial_data", "p")) {
    const auto list = parse_list(v->first, v->second, "initial_data.p");
    if (list.size() != static_cast<std::size_t>(cfg.dim))
      validity_error("initial_data.p", "expected n components");
    for (int a = 0; a < cfg.dim; ++a) cfg.initial.phase_slope[static_cast<std::size_t>(a)] = list[static_cast<std::size_t>(a)];
  }
  if (const auto* v = take("initial_data", "custom_path")) cfg.custom_path = v->first;
  if (cfg.initial.kind == InitialData::Kind::custom && cfg.custom_path.empty())
    validity_error("initial_data.custom_path", "required for kind = custom");

  if (const auto* v = take("scheme", "dt"))
    cfg.scheme.dt = parse_double(v->first, v->second, "scheme.dt");
  if (!(cfg.scheme.dt > 0.0)) validity_error("scheme.dt", "must be positive");
  if (const auto* v = take("scheme", "T"))
    cfg.t_final = parse_double(v->first, v->second, "scheme.T");
  if (!std::isfinite(cfg.t_final)) validity_error("scheme.T", "must be finite");
  if (const auto* v = take("scheme", "sample_every"))
    cfg.sample_every = static_cast<int>(parse_int(v->first, v->second, "scheme.sample_every"));
  if (cfg.sample_every < 1) validity_error("scheme.sample_every", "must be >= 1");

  if (const auto* v = take("outputs", "csv_path")) cfg.csv_path = v->first;
  if (const auto* v = take("outputs", "snapshot_dir")) cfg.snapshot_dir = v->first;
  if (const auto* v = take("outputs", "snapshot_every"))
    cfg.snapshot_every = static_cast<int>(parse_int(v->first, v->second, "outputs.snapshot_every"));
  if (cfg.snapshot_every < 1) validity_error("outputs.snapshot_every", "must be >= 1");

  if (const auto* v = take("guards", "boundary_mass_max"))
    cfg.guards.boundary_mass_max = parse_double(v->first, v->second, "guards.boundary_mass_max");
  if (const auto* v = take("guards", "spectral_tail_max"))
    cfg.guards.spectral_tail_max = parse_double(v->first, v->second, "guards.spectral_tail_max");
  if (const auto* v = take("guards", "grad_threshold_factor"))
    cfg.guards.grad_threshold_factor = parse_double(v->first, v->second, "guards.grad_threshold_factor");
  if (!(cfg.guards.boundary_mass_max > 0.0)) validity_error("guards.boundary_mass_max", "must be positive");
  if (!(cfg.guards.spectral_tail_max > 0.0)) validity_error("guards.spectral_tail_max", "must be positive");
  if (!(cfg.guards.grad_threshold_factor > 1.0)) validity_error("guards.grad_threshold_factor", "must exceed 1");
  if (!(cfg.tolerance > 0.0)) validity_error("experiment.tolerance", "must be positive");

  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path, ExperimentKind kind) {
  std::ifstream is(path);
  if (!is) throw ConfigSyntaxError("config error: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), kind);
}

std::string render_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "[experiment]\n";
  os << "kind = " << to_string(cfg.kind) << "\n";
  os << "tolerance = " << cfg.tolerance << "\n";
  os << "negative_control = " << (cfg.negative_control ? "true" : "false") << "\n";
  os << "lemma_times = ";
  for (std::size_t i = 0; i < cfg.lemma_times.size(); ++i)
    os << (i ? ", " : "") << cfg.lemma_times[i];
  os << "\n\n[grid]\n";
  os << "n = " << cfg.dim << "\n";
  os << "N = ";
  for (int a = 0; a < cfg.dim; ++a) os << (a ? ", " : "") << cfg.points[static_cast<std::size_t>(a)];
  os << "\nL = ";
  for (int a = 0; a < cfg.dim; ++a) os << (a ? ", " : "") << cfg.lengths[static_cast<std::size_t>(a)];
  os << "\n\n[problem]\n";
  os << "epsilon = " << cfg.problem.epsilon << "\n";
  os << "lambda = " << cfg.problem.lambda << "\n";
  os << "sigma = " << cfg.problem.sigma << "\n";
  os << "E = ";
  for (int a = 0; a < cfg.dim; ++a) os << (a ? ", " : "") << cfg.problem.field_strength[static_cast<std::size_t>(a)];
  os << "\nstark_on = " << (cfg.problem.stark_on ? "true" : "false") << "\n";
  if (cfg.problem.hartree) {
    os << "hartree_mu = " << cfg.problem.hartree->mu << "\n";
    os << "hartree_gamma = " << cfg.problem.hartree->gamma << "\n";
  }
  os << "\n[initial_data]\n";
  switch (cfg.initial.kind) {
    case InitialData::Kind::gaussian: os << "kind = gaussian\n"; break;
    case InitialData::Kind::gaussian_boosted: os << "kind = gaussian_boosted\n"; break;
    case InitialData::Kind::soliton_like: os << "kind = soliton_like\n"; break;
    case InitialData::Kind::custom: os << "kind = custom\n"; break;
  }
  os << "amplitude = " << cfg.initial.amplitude << "\n";
  os << "center = ";
  for (int a = 0; a < cfg.dim; ++a) os << (a ? ", " : "") << cfg.initial.center[static_cast<std::size_t>(a)];
  os << "\nwidth = " << cfg.initial.width << "\n";
  os << "p = ";
  for (int a = 0; a < cfg.dim; ++a) os << (a ? ", " : "") << cfg.initial.phase_slope[static_cast<std::size_t>(a)];
  os << "\n";
  if (!cfg.custom_path.empty()) os << "custom_path = " << cfg.custom_path << "\n";
  os << "\n[scheme]\n";
  os << "dt = " << cfg.scheme.dt << "\n";
  os << "T = " << cfg.t_final << "\n";
  os << "sample_every = " << cfg.sample_every << "\n";
  os << "\n[outputs]\n";
  os << "csv_path = " << cfg.csv_path << "\n";
  if (!cfg.snapshot_dir.empty()) os << "snapshot_dir = " << cfg.snapshot_dir << "\n";
  os << "snapshot_every = " << cfg.snapshot_every << "\n";
  os << "\n[guards]\n";
  os << "boundary_mass_max = " << cfg.guards.boundary_mass_max << "\n";
  os << "spectral_tail_max = " << cfg.guards.spectral_tail_max << "\n";
  os << "grad_threshold_factor = " << cfg.guards.grad_threshold_factor << "\n";
  return os.str();
}

}  // namespace starknls
