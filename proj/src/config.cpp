#include "levypf/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <type_traits>

namespace levypf {

namespace {

std::string trim(const std::string& s) {
  const std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0') {
    throw ConfigError("config: bad numeric value for '" + key + "': " + value);
  }
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0') {
    throw ConfigError("config: bad integer value for '" + key + "': " + value);
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw ConfigError("config: bad boolean value for '" + key + "': " + value);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(key, item));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(static_cast<int>(parse_int(key, item)));
  }
  return out;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ",";
    if constexpr (std::is_same_v<T, double>) {
      out += fmt(xs[i]);
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out;
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.c == b.c && a.phi == b.phi && a.xstar == b.xstar && a.one_sided == b.one_sided &&
         a.sigma == b.sigma && a.drift == b.drift && a.y0 == b.y0 &&
         a.coeff_scale == b.coeff_scale && a.constant_coeff == b.constant_coeff &&
         a.s0 == b.s0 && a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma &&
         a.c_level == b.c_level && a.c_samples == b.c_samples &&
         a.ess_threshold == b.ess_threshold && a.levels == b.levels &&
         a.epsilons == b.epsilons && a.particles == b.particles && a.horizon == b.horizon &&
         a.uniform_potential == b.uniform_potential &&
         a.pf_c_samples == b.pf_c_samples && a.strike == b.strike &&
         a.lower == b.lower && a.upper == b.upper && a.barrier_horizon == b.barrier_horizon &&
         a.smooth_floor == b.smooth_floor && a.seed == b.seed && a.threads == b.threads &&
         a.replicates == b.replicates && a.samples == b.samples &&
         a.estimator == b.estimator && a.data_path == b.data_path && a.out_dir == b.out_dir &&
         a.test_function == b.test_function && a.ref_level == b.ref_level &&
         a.ref_particles == b.ref_particles && a.ref_replicates == b.ref_replicates;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "c") cfg.c = parse_double(key, value);
  else if (key == "phi") cfg.phi = parse_double(key, value);
  else if (key == "xstar") cfg.xstar = parse_double(key, value);
  else if (key == "one_sided") cfg.one_sided = parse_bool(key, value);
  else if (key == "sigma") cfg.sigma = parse_double(key, value);
  else if (key == "drift") cfg.drift = parse_double(key, value);
  else if (key == "y0") cfg.y0 = parse_double(key, value);
  else if (key == "coeff_scale") cfg.coeff_scale = parse_double(key, value);
  else if (key == "constant_coeff") cfg.constant_coeff = parse_bool(key, value);
  else if (key == "s0") cfg.s0 = static_cast<int>(parse_int(key, value));
  else if (key == "alpha") cfg.alpha = parse_double(key, value);
  else if (key == "beta") cfg.beta = parse_double(key, value);
  else if (key == "gamma") cfg.gamma = parse_double(key, value);
  else if (key == "c_level") cfg.c_level = parse_double(key, value);
  else if (key == "c_samples") cfg.c_samples = parse_double(key, value);
  else if (key == "ess_threshold") cfg.ess_threshold = parse_double(key, value);
  else if (key == "levels") cfg.levels = static_cast<int>(parse_int(key, value));
  else if (key == "epsilons") cfg.epsilons = parse_double_list(key, value);
  else if (key == "particles") cfg.particles = parse_int_list(key, value);
  else if (key == "horizon") cfg.horizon = static_cast<int>(parse_int(key, value));
  else if (key == "uniform_potential") cfg.uniform_potential = parse_bool(key, value);
  else if (key == "pf_c_samples") cfg.pf_c_samples = parse_double(key, value);
  else if (key == "strike") cfg.strike = parse_double(key, value);
  else if (key == "lower") cfg.lower = parse_double(key, value);
  else if (key == "upper") cfg.upper = parse_double(key, value);
  else if (key == "barrier_horizon") cfg.barrier_horizon = static_cast<int>(parse_int(key, value));
  else if (key == "smooth_floor") cfg.smooth_floor = parse_double(key, value);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::strtoull(value.c_str(), nullptr, 10));
  else if (key == "threads") cfg.threads = static_cast<int>(parse_int(key, value));
  else if (key == "replicates") cfg.replicates = static_cast<int>(parse_int(key, value));
  else if (key == "samples") cfg.samples = static_cast<int>(parse_int(key, value));
  else if (key == "estimator") cfg.estimator = value;
  else if (key == "data_path") cfg.data_path = value;
  else if (key == "out_dir") cfg.out_dir = value;
  else if (key == "test_function") cfg.test_function = value;
  else if (key == "ref_level") cfg.ref_level = static_cast<int>(parse_int(key, value));
  else if (key == "ref_particles") cfg.ref_particles = static_cast<int>(parse_int(key, value));
  else if (key == "ref_replicates") cfg.ref_replicates = static_cast<int>(parse_int(key, value));
  else throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig parse_config_text(const std::string& text, const std::string& source_name) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source_name + ":" + std::to_string(line_no) +
                        ": expected 'key = value', got '" + t + "'");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    try {
      apply_config_entry(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(source_name + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string serialize_config(const RunConfig& cfg) {
  std::string out;
  const auto kv = [&out](const std::string& k, const std::string& v) {
    out += k + " = " + v + "\n";
  };
  kv("c", fmt(cfg.c));
  kv("phi", fmt(cfg.phi));
  kv("xstar", fmt(cfg.xstar));
  kv("one_sided", cfg.one_sided ? "1" : "0");
  kv("sigma", fmt(cfg.sigma));
  kv("drift", fmt(cfg.drift));
  kv("y0", fmt(cfg.y0));
  kv("coeff_scale", fmt(cfg.coeff_scale));
  kv("constant_coeff", cfg.constant_coeff ? "1" : "0");
  kv("s0", std::to_string(cfg.s0));
  kv("alpha", fmt(cfg.alpha));
  kv("beta", fmt(cfg.beta));
  kv("gamma", fmt(cfg.gamma));
  kv("c_level", fmt(cfg.c_level));
  kv("c_samples", fmt(cfg.c_samples));
  kv("ess_threshold", fmt(cfg.ess_threshold));
  kv("levels", std::to_string(cfg.levels));
  kv("epsilons", join(cfg.epsilons));
  kv("particles", join(cfg.particles));
  kv("horizon", std::to_string(cfg.horizon));
  kv("uniform_potential", cfg.uniform_potential ? "1" : "0");
  kv("pf_c_samples", fmt(cfg.pf_c_samples));
  kv("strike", fmt(cfg.strike));
  kv("lower", fmt(cfg.lower));
  kv("upper", fmt(cfg.upper));
  kv("barrier_horizon", std::to_string(cfg.barrier_horizon));
  kv("smooth_floor", fmt(cfg.smooth_floor));
  kv("seed", std::to_string(cfg.seed));
  kv("threads", std::to_string(cfg.threads));
  kv("replicates", std::to_string(cfg.replicates));
  kv("samples", std::to_string(cfg.samples));
  kv("estimator", cfg.estimator);
  kv("data_path", cfg.data_path);
  kv("out_dir", cfg.out_dir);
  kv("test_function", cfg.test_function);
  kv("ref_level", std::to_string(cfg.ref_level));
  kv("ref_particles", std::to_string(cfg.ref_particles));
  kv("ref_replicates", std::to_string(cfg.ref_replicates));
  return out;
}

std::string provenance_block(const RunConfig& cfg) {
  const std::string plain = serialize_config(cfg);
  std::string out;
  std::stringstream ss(plain);
  std::string line;
  while (std::getline(ss, line)) out += "# " + line + "\n";
  out += "# end config\n";
  return out;
}

RunConfig parse_provenance_block(const std::string& text) {
  // Reads "# key = value" lines up to the "# end config" terminator, so
  // result lines a report appends after the block are not mistaken for
  // configuration.
  std::string plain;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const std::string t = trim(line);
    if (t == "# end config") break;
    if (t.rfind("# ", 0) == 0 && t.find('=') != std::string::npos) {
      plain += t.substr(2) + "\n";
    }
  }
  return parse_config_text(plain, "<provenance>");
}

}  // namespace levypf
