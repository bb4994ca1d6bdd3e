#include "tailwave/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "tailwave/errors.hpp"

namespace tailwave {

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> k = {
      {"model", {"kind", "a", "q", "e"}},
      {"grid", {"n_r", "r_max", "cfl"}},
      {"data", {"family", "center", "width", "amplitude_re", "amplitude_im", "velocity_re",
                "velocity_im", "ell", "m", "delta", "lambda", "table"}},
      {"null", {"mode", "u0", "u_max", "v_max", "h", "r0"}},
      {"run", {"t_end", "snapshot_stride", "output_dir", "seed"}},
  };
  return k;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw ConfigError(where + ": '" + s + "' is not a number");
  return v;
}

// Accepts decimal text or a fraction "1/256".
double parse_number(const std::string& s, const std::string& where) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_double(s, where);
  const double num = parse_double(trim(s.substr(0, slash)), where);
  const double den = parse_double(trim(s.substr(slash + 1)), where);
  if (den == 0.0) throw ConfigError(where + ": zero denominator");
  return num / den;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& source) {
  RunConfig cfg;
  cfg.source = source;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!known_keys().count(section)) throw ConfigError(where + ": unknown section [" + section + "]");
      cfg.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    if (section.empty()) throw ConfigError(where + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    if (!known_keys().at(section).count(key))
      throw ConfigError(where + ": unknown key '" + key + "' in [" + section + "]");
    cfg.sections[section][key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

bool RunConfig::has(const std::string& s, const std::string& k) const {
  auto it = sections.find(s);
  return it != sections.end() && it->second.count(k);
}

std::string RunConfig::get(const std::string& s, const std::string& k, const std::string& def) const {
  return has(s, k) ? sections.at(s).at(k) : def;
}

double RunConfig::get_double(const std::string& s, const std::string& k, double def) const {
  return has(s, k) ? parse_number(sections.at(s).at(k), "[" + s + "] " + k) : def;
}

int RunConfig::get_int(const std::string& s, const std::string& k, int def) const {
  if (!has(s, k)) return def;
  const double v = parse_double(sections.at(s).at(k), "[" + s + "] " + k);
  if (v != static_cast<double>(static_cast<long long>(v))) throw ConfigError("[" + s + "] " + k + " must be an integer");
  return static_cast<int>(v);
}

void RunConfig::set(const std::string& s, const std::string& k, const std::string& v) {
  if (!known_keys().count(s) || !known_keys().at(s).count(k))
    throw ConfigError("unknown key [" + s + "] " + k);
  sections[s][k] = v;
}

ModelParams RunConfig::model() const {
  const Kind kind = parse_kind(get("model", "kind", "isp"));
  ModelParams m;
  m.kind = kind;
  if (kind == Kind::ISP) {
    m.a = get_double("model", "a", 0.0);
  } else {
    m.q = get_double("model", "q", 0.0);
    m.e = get_double("model", "e", 1.0);
  }
  return validate_params(m);
}

GridSettings RunConfig::grid() const {
  GridSettings g;
  g.n_r = get_int("grid", "n_r", g.n_r);
  g.r_max = get_double("grid", "r_max", g.r_max);
  g.cfl = get_double("grid", "cfl", g.cfl);
  if (g.n_r < 8) throw ConfigError("[grid] n_r must be at least 8");
  if (!(g.r_max > 0.0)) throw ConfigError("[grid] r_max must be positive");
  return g;
}

DataFamily RunConfig::data() const {
  DataFamily d;
  d.family = parse_family(get("data", "family", "bump"));
  d.center = get_double("data", "center", d.center);
  d.width = get_double("data", "width", d.width);
  d.amplitude = cplx(get_double("data", "amplitude_re", 1.0), get_double("data", "amplitude_im", 0.0));
  d.velocity = cplx(get_double("data", "velocity_re", 0.0), get_double("data", "velocity_im", 0.0));
  d.ell = get_int("data", "ell", 0);
  d.m = get_int("data", "m", 0);
  d.delta = get_double("data", "delta", 0.0);
  d.lambda = get_double("data", "lambda", 0.0);
  if (d.ell < 0 || std::abs(d.m) > d.ell) throw ConfigError("[data] needs ell >= 0 and |m| <= ell");
  if (d.family == Family::CustomTable) {
    if (!has("data", "table")) throw ConfigError("[data] custom_table needs a table path");
    d.table = read_table_csv(get("data", "table", ""));
  }
  return d;
}

NullSettings RunConfig::null_settings() const {
  NullSettings s;
  const std::string mode = get("null", "mode", "compactified");
  if (mode == "compactified") s.domain.mode = NullMode::Compactified;
  else if (mode == "physical") s.domain.mode = NullMode::Physical;
  else throw ConfigError("[null] mode must be compactified or physical");
  s.domain.h = get_double("null", "h", s.domain.mode == NullMode::Physical ? 1.0 / 16.0 : 1.0 / 512.0);
  s.domain.u0 = get_double("null", "u0", 1.0);
  s.domain.u_max = get_double("null", "u_max", 1000.0);
  s.domain.v_max = get_double("null", "v_max", 4000.0);
  s.r0 = get_double("null", "r0", 1.0);
  return s;
}

RunSettings RunConfig::run() const {
  RunSettings r;
  r.t_end = get_double("run", "t_end", 0.0);
  r.snapshot_stride = get_int("run", "snapshot_stride", 0);
  r.output_dir = get("run", "output_dir", r.output_dir);
  r.seed = static_cast<std::uint64_t>(get_int("run", "seed", 1));
  if (const char* env = std::getenv("TAILWAVE_OUTPUT"); env && *env) r.output_dir = env;
  return r;
}

std::string RunConfig::echo() const {
  std::ostringstream os;
  for (auto& [s, kv] : sections) {
    os << '[' << s << "]\n";
    for (auto& [k, v] : kv) os << k << " = " << v << '\n';
  }
  return os.str();
}

}  // namespace tailwave
