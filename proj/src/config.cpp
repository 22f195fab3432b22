#include "ferris/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ferris/errors.hpp"

namespace ferris {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

double to_double(const std::string& v, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0' || errno == ERANGE)
    throw_config(where + ": cannot parse number '" + v + "'");
  return x;
}

int to_int(const std::string& v, const std::string& where) {
  const double x = to_double(v, where);
  const int i = static_cast<int>(x);
  if (static_cast<double>(i) != x) throw_config(where + ": expected an integer, got '" + v + "'");
  return i;
}

bool to_bool(const std::string& v, const std::string& where) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw_config(where + ": cannot parse boolean '" + v + "'");
}

std::vector<int> to_int_list(const std::string& v, const std::string& where) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(to_int(item, where));
  }
  if (out.empty()) throw_config(where + ": empty list");
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

struct KeyEntry {
  const char* section;
  const char* key;
  Setter set;
};

#define NUM_KEY(sec, key, member)                                        \
  {sec, key, [](RunConfig& c, const std::string& v, const std::string& w) { \
     c.member = to_double(v, w);                                         \
   }}
#define INT_KEY(sec, key, member)                                        \
  {sec, key, [](RunConfig& c, const std::string& v, const std::string& w) { \
     c.member = to_int(v, w);                                            \
   }}
#define STR_KEY(sec, key, member)                                        \
  {sec, key, [](RunConfig& c, const std::string& v, const std::string&) { c.member = v; }}
#define BOOL_KEY(sec, key, member)                                       \
  {sec, key, [](RunConfig& c, const std::string& v, const std::string& w) { \
     c.member = to_bool(v, w);                                           \
   }}

const std::vector<KeyEntry>& key_table() {
  static const std::vector<KeyEntry> table = {
      INT_KEY("grid", "nx", nx),
      INT_KEY("grid", "ny", ny),
      NUM_KEY("grid", "half_extent_x", half_extent_x),
      NUM_KEY("grid", "half_extent_y", half_extent_y),
      INT_KEY("lg_beam", "ell", ell),
      INT_KEY("lg_beam", "p", p),
      NUM_KEY("lg_beam", "w0", lg_w0),
      NUM_KEY("lg_beam", "lambda", lg_lambda),
      NUM_KEY("lg_beam", "power", lg_power),
      NUM_KEY("lg_beam", "amplitude", lg_amplitude),
      NUM_KEY("gaussian_beam", "w0", g_w0),
      NUM_KEY("gaussian_beam", "lambda", g_lambda),
      NUM_KEY("gaussian_beam", "power", g_power),
      NUM_KEY("gaussian_beam", "amplitude", g_amplitude),
      NUM_KEY("lens", "n", lens_n),
      NUM_KEY("lens", "d", lens_d),
      NUM_KEY("lens", "f", lens_f),
      NUM_KEY("atom", "lambda0", atom_lambda0),
      NUM_KEY("atom", "gamma", atom_gamma),
      NUM_KEY("atom", "mass", atom_mass),
      NUM_KEY("atom", "I_sat", atom_I_sat),
      NUM_KEY("packet", "sigma", packet_sigma),
      NUM_KEY("packet", "k_dB", packet_k_dB),
      NUM_KEY("rabi", "omega_g0", omega_g0),
      NUM_KEY("rabi", "omega_gl0", omega_gl0),
      NUM_KEY("rabi", "detuning", detuning),
      NUM_KEY("rabi", "tau", tau),
      NUM_KEY("propagation", "z_start", z_start),
      NUM_KEY("propagation", "z_end", z_end),
      INT_KEY("propagation", "n_planes", n_planes),
      NUM_KEY("propagation", "apodization", apodization),
      {"propagation", "orders",
       [](RunConfig& c, const std::string& v, const std::string& w) {
         c.scan_orders = to_int_list(v, w);
       }},
      STR_KEY("second_imprint", "mode", imprint_mode),
      INT_KEY("second_imprint", "s", s),
      NUM_KEY("second_imprint", "delta0", delta0),
      NUM_KEY("second_imprint", "omega_prime0", omega_prime0),
      NUM_KEY("second_imprint", "dt", dt),
      NUM_KEY("second_imprint", "r_core", r_core),
      STR_KEY("output", "format", format),
      NUM_KEY("output", "gamma", render_gamma),
      STR_KEY("output", "colormap", colormap),
      NUM_KEY("output", "z", mask_z),
      BOOL_KEY("output", "saturation_units", saturation_units),
      INT_KEY("output", "m", ferris_m),
  };
  return table;
}

#undef NUM_KEY
#undef INT_KEY
#undef STR_KEY
#undef BOOL_KEY

const KeyEntry* find_key(const std::string& section, const std::string& key) {
  for (const auto& e : key_table())
    if (section == e.section && key == e.key) return &e;
  return nullptr;
}

bool known_section(const std::string& section) {
  for (const auto& e : key_table())
    if (section == e.section) return true;
  return false;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& source, RunConfig base) {
  RunConfig cfg = base;
  std::istringstream is(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw_config(where + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!known_section(section)) throw_config(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw_config(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw_config(where + ": key outside any section");
    const KeyEntry* entry = find_key(section, key);
    if (entry == nullptr) throw_config(where + ": unknown key '" + key + "' in [" + section + "]");
    entry->set(cfg, value, where);
  }
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream is(path);
  if (!is) throw_io("cannot open config file " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str(), path.string(), base);
}

void apply_env_overrides(RunConfig& cfg) {
  for (const auto& e : key_table()) {
    const std::string var = "FERRIS_" + upper(e.section) + "_" + upper(e.key);
    if (const char* v = std::getenv(var.c_str())) e.set(cfg, v, "env " + var);
  }
}

GridSpec RunConfig::grid() const {
  GridSpec g{nx, ny, half_extent_x, half_extent_y};
  g.validate();
  return g;
}

LGBeamParams RunConfig::lg() const {
  LGBeamParams b;
  b.ell = ell;
  b.p = p;
  b.w0 = lg_w0;
  b.lambda = lg_lambda;
  if (lg_amplitude >= 0.0) {
    b.amplitude = lg_amplitude;
    b.power = -1.0;
  } else {
    b.power = lg_power;
  }
  b.validate();
  return b;
}

GaussianBeamParams RunConfig::gauss() const {
  GaussianBeamParams b;
  b.w0 = g_w0;
  b.lambda = g_lambda;
  if (g_amplitude >= 0.0) {
    b.amplitude = g_amplitude;
    b.power = -1.0;
  } else {
    b.power = g_power;
  }
  b.validate();
  return b;
}

ThinLens RunConfig::lens() const {
  ThinLens l{lens_n, lens_d, lens_f};
  l.validate();
  return l;
}

TwoLevelAtom RunConfig::atom() const {
  TwoLevelAtom a{atom_lambda0, atom_gamma, atom_mass, atom_I_sat};
  a.validate();
  return a;
}

WavePacket RunConfig::packet() const {
  WavePacket p{packet_sigma, packet_k_dB};
  p.validate();
  return p;
}

RabiConfig RunConfig::rabi() const {
  RabiConfig r = RabiConfig::gamma_units(atom_gamma, omega_g0, omega_gl0, detuning, ell, p, lg_w0,
                                         lg_lambda, lens());
  r.validate();
  return r;
}

ImprintParams RunConfig::imprint() const { return ImprintParams::from(rabi(), tau_seconds()); }

PropagationPlan RunConfig::plan() const {
  PropagationPlan pl{packet_k_dB, z_start, z_end, n_planes, apodization};
  pl.validate();
  return pl;
}

}  // namespace ferris
