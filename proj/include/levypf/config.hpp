#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Run configuration shared by all CLI commands: flat key=value text files,
// full-precision serialization for provenance blocks in reports, and exact
// round-tripping (parse(serialize(cfg)) == cfg).

namespace levypf {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  // driving process and SDE
  double c = 1.0;
  double phi = 0.5;
  double xstar = 1.0;
  bool one_sided = false;
  double sigma = 0.0;
  double drift = 0.0;
  double y0 = 1.0;
  double coeff_scale = 1.0;
  bool constant_coeff = false;  // a(y) = coeff_scale instead of coeff_scale * y

  // discretization and multilevel allocation
  int s0 = 2;
  double alpha = 1.5;
  double beta = 3.0;
  double gamma = 1.0;
  double c_level = 1.0;
  double c_samples = 1.0;

  // filtering
  double ess_threshold = 0.5;
  int levels = -1;  // command-specific level count; -1 = command default
  std::vector<double> epsilons = {0.25, 0.125, 0.0625, 0.03125, 0.015625};
  std::vector<int> particles;  // explicit N (PF) or N_0..N_L (MLPF) override
  int horizon = 10;            // synthetic observation count
  bool uniform_potential = false;
  double pf_c_samples = 1.0;   // single-level sweep arm: N = ceil(c * eps^-2)

  // barrier option
  double strike = 1.25;
  double lower = 0.0;
  double upper = 5.0;
  int barrier_horizon = 100;
  double smooth_floor = 0.0;

  // execution
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = leave the OpenMP default
  int replicates = 50;
  int samples = 100000;  // rate-estimation samples per level
  std::string estimator = "mlpf";
  std::string data_path;
  std::string out_dir = "out";
  std::string test_function = "exp_clipped";
  int ref_level = -1;      // -1: derived from the sweep grid
  int ref_particles = -1;  // -1: command default
  int ref_replicates = 10;
};

bool operator==(const RunConfig& a, const RunConfig& b);
inline bool operator!=(const RunConfig& a, const RunConfig& b) { return !(a == b); }

// Applies one key=value assignment; key names equal field names above.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

RunConfig parse_config_text(const std::string& text, const std::string& source_name);
RunConfig parse_config_file(const std::string& path);

// Every field as "key = value" lines, full precision.
std::string serialize_config(const RunConfig& cfg);

// serialize_config with each line prefixed by "# " for embedding in reports.
std::string provenance_block(const RunConfig& cfg);

// Re-parses a provenance block (lines starting with "# key = value").
RunConfig parse_provenance_block(const std::string& text);

}  // namespace levypf
