#include <set>
#include <string>

#include <gtest/gtest.h>

#include "plcp_cli/config.hpp"

namespace plcp::cli {
namespace {

std::string failing_key(const std::string& text, const RawConfig& overrides = {}) {
  try {
    parse_config(text, overrides);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return {};
}

TEST(Config, ParsesKeysCommentsAndWhitespace) {
  const ExperimentConfig c = parse_config(
      "# nearest neighbour run\n"
      "experiment = nn-cdf\n"
      "lambda_l=0.5\n"
      "mu = 2   # trailing comment\n"
      "\n"
      "n=200\n"
      "grid_min=0\ngrid_max=2\ngrid_count=5\n");
  EXPECT_EQ(c.experiment, "nn-cdf");
  EXPECT_DOUBLE_EQ(c.params.lambda_l, 0.5);
  EXPECT_DOUBLE_EQ(c.params.mu, 2.0);
  EXPECT_EQ(c.n, 200u);
  EXPECT_EQ(c.grid.count, 5);
  EXPECT_FALSE(c.buffer.has_value());
  EXPECT_EQ(c.out_dir, ".");
}

TEST(Config, OverridesWin) {
  const ExperimentConfig c =
      parse_config("experiment=sample\nlambda_l=1\nmu=2\nseed=3\n", {{"seed", "99"}, {"mu", "7"}});
  EXPECT_EQ(c.seed, 99u);
  EXPECT_DOUBLE_EQ(c.params.mu, 7.0);
}

TEST(Config, ErrorsNameTheKey) {
  const std::string base = "experiment=sample\nlambda_l=1\n";
  EXPECT_EQ(failing_key(base + "mu=-1\n"), "mu");
  EXPECT_EQ(failing_key(base + "mu=abc\n"), "mu");
  EXPECT_EQ(failing_key(base), "mu");
  EXPECT_EQ(failing_key(base + "mu=1\nbogus=3\n"), "bogus");
  EXPECT_EQ(failing_key(base + "mu=1\n", {{"lambda_l", "0"}}), "lambda_l");
  EXPECT_EQ(failing_key("experiment=fly\nlambda_l=1\nmu=1\n"), "experiment");
  EXPECT_EQ(failing_key(base + "mu=1\nn=0\n"), "n");
  EXPECT_EQ(failing_key(base + "mu=1\nmu_sweep=10,5\n"), "mu_sweep");
  EXPECT_EQ(failing_key(base + "mu=1\nalpha=2\n"), "alpha");
  EXPECT_EQ(failing_key(base + "mu=1\ngrid_min=2\ngrid_max=1\n"), "grid_max");
  EXPECT_EQ(failing_key(base + "mu=1\nno equals sign\n"), "line 4");
}

TEST(Config, BufferAutoAndExplicit) {
  const std::string base = "experiment=sample\nlambda_l=1\nmu=4\nobs_radius=3\n";
  EXPECT_FALSE(parse_config(base + "buffer=auto\n").buffer.has_value());
  const ExperimentConfig c = parse_config(base + "buffer=0.5\n");
  ASSERT_TRUE(c.buffer.has_value());
  EXPECT_DOUBLE_EQ(c.resolved_buffer(), 0.5);
  EXPECT_DOUBLE_EQ(parse_config(base).resolved_buffer(), default_buffer({1.0, 4.0}, 0.0));
}

TEST(Config, MetadataRoundTrip) {
  const ExperimentConfig c = parse_config(
      "experiment=typical-cell\nlambda_l=0.25\nmu=3.5\norientation=manhattan\nbuffer=1.5\n"
      "mu_sweep=5,50\nlength_law=hull\nseed=42\nout_dir=/tmp/x\n");
  const Metadata md = config_metadata(c);
  bool has_out_dir = false, has_seed = false, has_version = false;
  for (const auto& [k, v] : md) {
    has_out_dir |= k == "out_dir";
    has_seed |= k == "master_seed" && v == "42";
    has_version |= k == "toolkit_version" && v == kToolkitVersion;
  }
  EXPECT_FALSE(has_out_dir);
  EXPECT_TRUE(has_seed);
  EXPECT_TRUE(has_version);

  const ExperimentConfig back = config_from_metadata(md);
  EXPECT_EQ(config_metadata(back), md);
  EXPECT_EQ(back.params.orientation, Orientation::kManhattan);
  EXPECT_EQ(back.mu_sweep, (std::vector<double>{5.0, 50.0}));
  EXPECT_EQ(back.out_dir, ".");
}

TEST(Config, EveryKeyIsListedOnce) {
  const auto& keys = config_keys();
  std::set<std::string> unique(keys.begin(), keys.end());
  EXPECT_EQ(unique.size(), keys.size());
  EXPECT_TRUE(unique.contains("experiment"));
  EXPECT_TRUE(unique.contains("length_law"));
}

}  // namespace
}  // namespace plcp::cli
