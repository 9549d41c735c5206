#include "visco2d/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace visco2d {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line, const std::string& key) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in value for '" + key + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "expected a number for '" + key + "', got '" + v + "'");
  }
}

long parse_int(const std::string& v, int line, const std::string& key) {
  try {
    size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in value for '" + key + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "expected an integer for '" + key + "', got '" + v + "'");
  }
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(line, "expected a boolean for '" + key + "', got '" + v + "'");
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
  return n == o.n && length == o.length && mu == o.mu && scheme.kind == o.scheme.kind &&
         scheme.dt == o.scheme.dt && scheme.cfl_safety == o.scheme.cfl_safety &&
         scheme.adaptive == o.scheme.adaptive &&
         scheme.hyperviscosity == o.scheme.hyperviscosity && t_final == o.t_final &&
         record_every == o.record_every && formulation == o.formulation &&
         init.kind == o.init.kind && init.amplitude == o.init.amplitude &&
         init.warm_time == o.init.warm_time && init.warm_stream == o.init.warm_stream &&
         init.warm_amp == o.init.warm_amp && init.seed == o.init.seed &&
         out_dir == o.out_dir && snapshot_every == o.snapshot_every && preset == o.preset;
}

std::string to_string(Formulation f) {
  switch (f) {
    case Formulation::oldroyd: return "oldroyd";
    case Formulation::strain: return "strain";
    case Formulation::rotstrain: return "rotstrain";
    case Formulation::both: return "both";
  }
  return "?";
}

std::string to_string(SchemeKind k) {
  return k == SchemeKind::if_rk4 ? "if_rk4" : "rk4_explicit";
}

std::string to_string(InitKind k) {
  switch (k) {
    case InitKind::trivial: return "trivial";
    case InitKind::taylor_green: return "taylor_green";
    case InitKind::warm_start: return "warm_start";
  }
  return "?";
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const size_t hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    if (val.empty()) fail(lineno, "empty value for '" + key + "'");

    if (key == "n") {
      const long n = parse_int(val, lineno, key);
      if (n < 8 || n % 2 != 0) fail(lineno, "n must be even and >= 8, got " + val);
      cfg.n = static_cast<int>(n);
    } else if (key == "length") {
      cfg.length = parse_double(val, lineno, key);
      if (!(cfg.length > 0.0)) fail(lineno, "length must be positive");
    } else if (key == "mu") {
      cfg.mu = parse_double(val, lineno, key);
      if (!(cfg.mu > 0.0)) fail(lineno, "mu must be positive");
    } else if (key == "scheme") {
      if (val == "if_rk4")
        cfg.scheme.kind = SchemeKind::if_rk4;
      else if (val == "rk4_explicit")
        cfg.scheme.kind = SchemeKind::rk4_explicit;
      else
        fail(lineno, "unknown scheme '" + val + "'");
    } else if (key == "dt") {
      cfg.scheme.dt = parse_double(val, lineno, key);
      if (!(cfg.scheme.dt > 0.0)) fail(lineno, "dt must be positive");
    } else if (key == "cfl_safety") {
      cfg.scheme.cfl_safety = parse_double(val, lineno, key);
      if (!(cfg.scheme.cfl_safety > 0.0 && cfg.scheme.cfl_safety <= 1.0))
        fail(lineno, "cfl_safety must be in (0, 1]");
    } else if (key == "adaptive") {
      cfg.scheme.adaptive = parse_bool(val, lineno, key);
    } else if (key == "hyperviscosity") {
      cfg.scheme.hyperviscosity = parse_double(val, lineno, key);
      if (cfg.scheme.hyperviscosity < 0.0) fail(lineno, "hyperviscosity must be >= 0");
    } else if (key == "t_final") {
      cfg.t_final = parse_double(val, lineno, key);
      if (cfg.t_final < 0.0) fail(lineno, "t_final must be >= 0");
    } else if (key == "record_every") {
      const long r = parse_int(val, lineno, key);
      if (r < 1) fail(lineno, "record_every must be >= 1");
      cfg.record_every = static_cast<int>(r);
    } else if (key == "formulation") {
      if (val == "oldroyd")
        cfg.formulation = Formulation::oldroyd;
      else if (val == "strain")
        cfg.formulation = Formulation::strain;
      else if (val == "rotstrain")
        cfg.formulation = Formulation::rotstrain;
      else if (val == "both")
        cfg.formulation = Formulation::both;
      else
        fail(lineno, "unknown formulation '" + val + "'");
    } else if (key == "init") {
      if (val == "trivial")
        cfg.init.kind = InitKind::trivial;
      else if (val == "taylor_green")
        cfg.init.kind = InitKind::taylor_green;
      else if (val == "warm_start")
        cfg.init.kind = InitKind::warm_start;
      else
        fail(lineno, "unknown init '" + val + "'");
    } else if (key == "amplitude") {
      cfg.init.amplitude = parse_double(val, lineno, key);
      if (cfg.init.amplitude < 0.0) fail(lineno, "amplitude must be >= 0");
    } else if (key == "warm_time") {
      cfg.init.warm_time = parse_double(val, lineno, key);
      if (cfg.init.warm_time < 0.0) fail(lineno, "warm_time must be >= 0");
    } else if (key == "warm_stream") {
      if (val != "basic" && val != "rich") fail(lineno, "unknown warm_stream '" + val + "'");
      cfg.init.warm_stream = val;
    } else if (key == "warm_amp") {
      cfg.init.warm_amp = parse_double(val, lineno, key);
    } else if (key == "seed") {
      cfg.init.seed = static_cast<std::uint64_t>(parse_int(val, lineno, key));
    } else if (key == "out_dir") {
      cfg.out_dir = val;
    } else if (key == "snapshot_every") {
      const long r = parse_int(val, lineno, key);
      if (r < 0) fail(lineno, "snapshot_every must be >= 0");
      cfg.snapshot_every = static_cast<int>(r);
    } else if (key == "preset") {
      cfg.preset = val;
    } else {
      fail(lineno, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "n = " << cfg.n << "\n";
  out << "length = " << fmt(cfg.length) << "\n";
  out << "mu = " << fmt(cfg.mu) << "\n";
  out << "scheme = " << to_string(cfg.scheme.kind) << "\n";
  out << "dt = " << fmt(cfg.scheme.dt) << "\n";
  out << "cfl_safety = " << fmt(cfg.scheme.cfl_safety) << "\n";
  out << "adaptive = " << (cfg.scheme.adaptive ? "true" : "false") << "\n";
  out << "hyperviscosity = " << fmt(cfg.scheme.hyperviscosity) << "\n";
  out << "t_final = " << fmt(cfg.t_final) << "\n";
  out << "record_every = " << cfg.record_every << "\n";
  out << "formulation = " << to_string(cfg.formulation) << "\n";
  out << "init = " << to_string(cfg.init.kind) << "\n";
  out << "amplitude = " << fmt(cfg.init.amplitude) << "\n";
  out << "warm_time = " << fmt(cfg.init.warm_time) << "\n";
  out << "warm_stream = " << cfg.init.warm_stream << "\n";
  out << "warm_amp = " << fmt(cfg.init.warm_amp) << "\n";
  out << "seed = " << cfg.init.seed << "\n";
  out << "out_dir = " << cfg.out_dir << "\n";
  out << "snapshot_every = " << cfg.snapshot_every << "\n";
  if (!cfg.preset.empty()) out << "preset = " << cfg.preset << "\n";
  return out.str();
}

}  // namespace visco2d
