#include <string>
#include <vector>

#include "doctest.h"
#include "levypf/config.hpp"

using namespace levypf;

namespace {

RunConfig mutated_config() {
  RunConfig cfg;
  cfg.c = 2.5;
  cfg.phi = 0.75;
  cfg.xstar = 0.5;
  cfg.one_sided = true;
  cfg.sigma = 0.25;
  cfg.drift = -0.125;
  cfg.y0 = 3.0;
  cfg.coeff_scale = 0.5;
  cfg.constant_coeff = true;
  cfg.s0 = 3;
  cfg.alpha = 1.25;
  cfg.beta = 2.5;
  cfg.gamma = 1.5;
  cfg.c_level = 0.75;
  cfg.c_samples = 8.0;
  cfg.ess_threshold = 0.625;
  cfg.levels = 6;
  cfg.epsilons = {0.5, 0.03125};
  cfg.particles = {100, 50, 25};
  cfg.horizon = 42;
  cfg.uniform_potential = true;
  cfg.pf_c_samples = 2.0;
  cfg.strike = 1.5;
  cfg.lower = -1.0;
  cfg.upper = 7.5;
  cfg.barrier_horizon = 64;
  cfg.smooth_floor = 0.01;
  cfg.seed = 987654321123456789ULL;
  cfg.threads = 3;
  cfg.replicates = 17;
  cfg.samples = 12345;
  cfg.estimator = "pf";
  cfg.data_path = "some/data.txt";
  cfg.out_dir = "runs/x";
  cfg.test_function = "square";
  cfg.ref_level = 9;
  cfg.ref_particles = 2048;
  cfg.ref_replicates = 5;
  return cfg;
}

}  // namespace

TEST_CASE("serialization round-trips the defaults exactly") {
  const RunConfig cfg;
  const RunConfig back = parse_config_text(serialize_config(cfg), "mem");
  CHECK(back == cfg);
}

TEST_CASE("serialization round-trips every field exactly") {
  const RunConfig cfg = mutated_config();
  const RunConfig back = parse_config_text(serialize_config(cfg), "mem");
  CHECK(back == cfg);
  CHECK(back.epsilons == cfg.epsilons);
  CHECK(back.particles == cfg.particles);
  CHECK(back.seed == cfg.seed);
}

TEST_CASE("provenance blocks re-parse to the same configuration") {
  const RunConfig cfg = mutated_config();
  const std::string block = provenance_block(cfg);
  for (char ch : block) REQUIRE(ch != '\t');
  CHECK(block.rfind("# ", 0) == 0);
  CHECK(parse_provenance_block(block) == cfg);
}

TEST_CASE("comments, blanks, and spacing are tolerated") {
  const std::string text =
      "# a comment\n"
      "\n"
      "  phi   =  0.75 \n"
      "epsilons = 0.5, 0.25 ,0.125\n"
      "estimator = pf\n";
  const RunConfig cfg = parse_config_text(text, "mem");
  CHECK(cfg.phi == 0.75);
  REQUIRE(cfg.epsilons.size() == 3);
  CHECK(cfg.epsilons[0] == 0.5);
  CHECK(cfg.epsilons[1] == 0.25);
  CHECK(cfg.epsilons[2] == 0.125);
  CHECK(cfg.estimator == "pf");
}

TEST_CASE("unknown keys are rejected by name") {
  try {
    parse_config_text("frobnicate = 1\n", "mem");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("frobnicate") != std::string::npos);
  }
}

TEST_CASE("bad values are rejected with their location") {
  try {
    parse_config_text("phi = 0.5\n\nsigma = banana\n", "conf.txt");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("conf.txt") != std::string::npos);
    CHECK(msg.find("3") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config_text("just a line without equals\n", "mem"), ConfigError);
  CHECK_THROWS_AS(parse_config_file("levypf_no_such_config.txt"), ConfigError);
}

TEST_CASE("single entries apply directly") {
  RunConfig cfg;
  apply_config_entry(cfg, "threads", "8");
  CHECK(cfg.threads == 8);
  apply_config_entry(cfg, "one_sided", "true");
  CHECK(cfg.one_sided);
  apply_config_entry(cfg, "one_sided", "0");
  CHECK_FALSE(cfg.one_sided);
  CHECK_THROWS_AS(apply_config_entry(cfg, "threads", "x"), ConfigError);
}
