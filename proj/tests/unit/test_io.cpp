#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <json.hpp>

#include "sinrg/error.hpp"
#include "sinrg/io.hpp"

using namespace sinrg;

TEST(RunConfig, DefaultsValidate) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.get("alpha"), "1");
  EXPECT_EQ(c.source("alpha"), ValueSource::Default);
}

TEST(RunConfig, UnknownKeyIsNamed) {
  RunConfig c;
  try {
    merge_config_text(c, R"({"alpha": 1, "gamma_hat": 3})", ValueSource::File);
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("gamma_hat"), std::string::npos);
  }
}

TEST(RunConfig, ConstraintsAreNamed) {
  RunConfig c;
  c.set("shape", "disk", ValueSource::Flag);
  c.set("alpha", "2.5", ValueSource::Flag);
  try {
    c.validate();
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha < d"), std::string::npos);
  }
  EXPECT_NO_THROW(c.validate(false));
  c.set("alpha", "1", ValueSource::Flag);
  c.set("c", "-1", ValueSource::Flag);
  EXPECT_THROW(c.validate(), UsageError);
  c.set("c", "1", ValueSource::Flag);
  c.set("lambda", "10,5", ValueSource::Flag);
  EXPECT_THROW(c.validate(), UsageError);
  c.set("lambda", "0", ValueSource::Flag);
  EXPECT_THROW(c.validate(), UsageError);
  c.set("lambda", "5", ValueSource::Flag);
  c.set("schema_version", "2", ValueSource::Flag);
  EXPECT_THROW(c.validate(), UsageError);
}

TEST(RunConfig, FlagsOverrideFileAndEchoSources) {
  RunConfig c;
  merge_config_text(c, R"({"alpha": 0.5, "lambda": [25, 50, 100], "seed": 9})", ValueSource::File);
  c.set("alpha", "1.5", ValueSource::Flag);
  EXPECT_EQ(c.number("alpha"), 1.5);
  EXPECT_EQ(c.numbers("lambda"), (std::vector<double>{25, 50, 100}));
  const auto echo = nlohmann::json::parse(c.effective_json());
  EXPECT_EQ(echo["values"]["alpha"], "1.5");
  EXPECT_EQ(echo["sources"]["alpha"], "flag");
  EXPECT_EQ(echo["sources"]["seed"], "file");
  EXPECT_EQ(echo["sources"]["c"], "default");
  EXPECT_EQ(echo["config_digest"], c.digest());
}

TEST(RunConfig, DigestIgnoresOutputLocation) {
  RunConfig a, b;
  b.set("output_dir", "elsewhere", ValueSource::Flag);
  b.set("workers", "3", ValueSource::Flag);
  EXPECT_EQ(a.digest(), b.digest());
  b.set("seed", "2", ValueSource::Flag);
  EXPECT_NE(a.digest(), b.digest());
}

TEST(RunConfig, MissingFile) {
  RunConfig c;
  EXPECT_THROW(merge_config_file(c, "/nonexistent/config.json"), UsageError);
}

TEST(RunConfig, OutputDirEnvironmentOverride) {
  RunConfig c;
  setenv("SINRG_OUT_DIR", "/tmp/sinrg-env-out", 1);
  EXPECT_EQ(c.output_dir(), std::filesystem::path("/tmp/sinrg-env-out"));
  unsetenv("SINRG_OUT_DIR");
  EXPECT_EQ(c.output_dir(), std::filesystem::path("sinrg-out"));
}

TEST(RunConfig, PlanMapping) {
  RunConfig c;
  c.set("test_marks", "0.5,2", ValueSource::Flag);
  c.set("lambda", "10,20", ValueSource::Flag);
  const ExperimentPlan p = c.plan(Suite::Connectivity);
  EXPECT_FALSE(p.random_test_marks);
  EXPECT_EQ(p.test_mark_x, 0.5);
  EXPECT_EQ(p.test_mark_y, 2.0);
  EXPECT_EQ(p.lambdas, (std::vector<double>{10, 20}));
  EXPECT_TRUE(std::isnan(p.epsilon_l1));
}

TEST(Csv, ConfigurationRoundTrip) {
  for (const DeviceDomain& d : {DeviceDomain::unit_area_disk(), DeviceDomain::box(3, 2.0, Boundary::Periodic)}) {
    const auto c = sample_configuration(d, 200.0, MarkLaw(1.3), StreamSeed{4, 2});
    const std::string text = configuration_csv(c, {{"seed", "4"}});
    EXPECT_EQ(parse_configuration_csv(text), c);
    EXPECT_EQ(configuration_csv(parse_configuration_csv(text), {{"seed", "4"}}), text);
  }
}

TEST(Csv, EdgesRoundTrip) {
  const auto c = sample_configuration(DeviceDomain::box(2, 1.0), 100.0, MarkLaw(1.0), StreamSeed{5, 0});
  SinrParams p;
  p.beta0 = BaseBeta::constant(0.5);
  p.lambda = 100.0;
  const SinrGraph g = build_graph(c, p);
  EXPECT_EQ(parse_edges_csv(edges_csv(g)), g);
  EXPECT_EQ(parse_edges_csv(edges_csv(SinrGraph{})), SinrGraph{});
}

TEST(Csv, MeasuresRoundTrip) {
  const auto part = make_partition(DeviceDomain::box(2, 1.0), 3, 2, MarkLaw(1.0));
  const auto c = sample_configuration(DeviceDomain::box(2, 1.0), 100.0, MarkLaw(1.0), StreamSeed{6, 0});
  SinrParams p;
  p.lambda = 100.0;
  p.beta0 = BaseBeta::constant(0.2);
  const BinnedMeasure l1 = empirical_mark_measure(c, part);
  const BinnedPairMeasure l2 = empirical_pair_measure(c, build_graph(c, p), part);
  EXPECT_EQ(parse_measure_csv(measure_csv(l1)), l1);
  EXPECT_EQ(parse_pair_measure_csv(pair_measure_csv(l2)), l2);
  EXPECT_EQ(parse_measure_csv(measure_csv(l1)).layout(), part->signature());
}

TEST(Csv, RejectsMalformedInput) {
  EXPECT_THROW(parse_edges_csv("# vertices=3\ni,j\n2,1\n"), UsageError);
  EXPECT_THROW(parse_measure_csv("bin,mass\n0,0.5\n"), UsageError);
  EXPECT_THROW(parse_pair_measure_csv("# layout=x\n# bins=2\na,b,mass\n0,0,1\n"), UsageError);
}

TEST(Report, JsonAndCsvCarrySeedAndDigest) {
  ExperimentReport r;
  r.suite = "aep";
  r.seed = 7;
  r.config_digest = "00ff";
  r.columns = {"lambda", "mean"};
  r.rows = {{25.0, 0.5}, {50.0, NAN}};
  r.checks = {{"gap", true, ""}};
  const auto j = nlohmann::json::parse(report_json(r));
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["config_digest"], "00ff");
  EXPECT_EQ(j["rows"][1]["mean"], "nan");
  EXPECT_TRUE(j["passed"].get<bool>());
  const std::string csv = report_csv(r);
  EXPECT_NE(csv.find("# seed=7"), std::string::npos);
  EXPECT_NE(csv.find("# config_digest=00ff"), std::string::npos);
  EXPECT_NE(csv.find("lambda,mean\n25,0.5\n50,nan\n"), std::string::npos);
}
