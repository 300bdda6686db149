#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kslab/harness/suite.hpp"

using namespace kslab;
using namespace kslab::harness;

namespace {

std::string config_path(const std::string& name) { return std::string(KSLAB_CONFIG_DIR) + "/" + name + ".json"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse_config_text("{"), ConfigError);
  EXPECT_THROW(parse_config_text("[]"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"bogus": 1})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"entries": [{"space": "x"}]})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"entries": [{"op": "einstein", "space": "nowhere"}]})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"entries": [{"op": "einstein", "tolerance": -1}]})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"entries": [{"op": "einstein", "samples": 0}]})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"entries": [{"op": "einstein", "colour": "red"}]})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"spaces": {"a": {"dim": 3}}})"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/suite.json"), ConfigError);
}

TEST(Config, DefaultsAndIds) {
  const SuiteConfig cfg = parse_config_text(R"({"entries": [{"op": "clifford_relations"}, {"op": "clifford_relations", "id": "x"}]})");
  ASSERT_EQ(cfg.entries.size(), 2u);
  EXPECT_EQ(cfg.entries[0].id, "clifford_relations#0");
  EXPECT_EQ(cfg.entries[1].id, "x");
  EXPECT_EQ(cfg.entries[0].samples, 1);
  EXPECT_GT(cfg.entries[0].tolerance, 0.0);
}

TEST(Config, UnknownSpaceFamily) {
  EXPECT_THROW(run_suite(parse_config_text(R"({"spaces": {"a": {"family": "torus"}}})")), ConfigError);
  EXPECT_THROW(run_suite(parse_config_text(R"({"spaces": {"a": {"family": "warped_flat", "nu": -1}}})")), ConfigError);
}

TEST(Report, Classification) {
  EXPECT_EQ(classify(1e-9, 1e-12, 1e-8), Status::kPass);
  EXPECT_EQ(classify(1e-7, 1e-12, 1e-8), Status::kFail);
  EXPECT_EQ(classify(1e-9, 1e-6, 1e-8), Status::kInconclusive);
  EXPECT_EQ(classify(std::nan(""), 0.0, 1e-8), Status::kFail);
  EXPECT_EQ(classify(1e-9, std::nan(""), 1e-8), Status::kFail);
}

TEST(Report, CanonicalJson) {
  const Json j = {{"b", 1.0}, {"a", {{"z", 0.1}, {"y", "s"}}}, {"c", std::nan("")}};
  EXPECT_EQ(canonical_json(j), R"({"a":{"y":"s","z":0.10000000000000001},"b":1,"c":null})");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Suite, EmptyConfig) {
  const Report r = run_suite(config_path("empty"));
  EXPECT_TRUE(r.entries.empty());
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(report_csv_text(r), "id,space,op,field,status,residual,tolerance,fd_error,reason\n");
}

TEST(Suite, UnknownOpFailsOnlyThatEntry) {
  const Report r = run_suite(parse_config_text(R"({"entries": [{"op": "no_such_op"}, {"op": "clifford_relations"}]})"));
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.summary().fail, 1);
  EXPECT_EQ(r.summary().pass, 1);
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Suite, NegativeControlFailsExactlyOne) {
  const Report r = run_suite(config_path("negative_control"));
  ASSERT_EQ(r.summary().fail, 1);
  for (const auto& e : r.entries) {
    if (e.status == Status::kFail) {
      EXPECT_EQ(e.id, "killing.warped2.wrong_mu");
    }
  }
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Suite, DefaultPassesAndIsDeterministic) {
  const Report a = run_suite(config_path("default"));
  const Report b = run_suite(config_path("default"));
  EXPECT_EQ(a.summary().fail, 0);
  EXPECT_EQ(a.summary().inconclusive, 0);
  EXPECT_EQ(report_json_text(a), report_json_text(b));
  EXPECT_EQ(report_csv_text(a), report_csv_text(b));
  EXPECT_TRUE(std::is_sorted(a.entries.begin(), a.entries.end(), [](const ReportEntry& x, const ReportEntry& y) {
    return std::tie(x.space, x.op, x.id) < std::tie(y.space, y.op, y.id);
  }));
}

TEST(Suite, ToleranceOverrideAndWallTime) {
  RunOptions opts;
  opts.tolerance_override = 1e-300;
  opts.record_wall_time = true;
  const Report r = run_suite(config_path("negative_control"), opts);
  for (const auto& e : r.entries) {
    EXPECT_EQ(e.tolerance, 1e-300);
    EXPECT_TRUE(e.wall_time.has_value());
  }
  // Only the exact backend entry has zero residual and zero FD error.
  EXPECT_EQ(r.summary().pass, 1);
  EXPECT_EQ(r.summary().inconclusive, 3);
  const Report plain = run_suite(config_path("negative_control"));
  EXPECT_EQ(report_json_text(plain).find("wall_time"), std::string::npos);
}

TEST(Suite, InconclusiveWhenFdErrorExceedsTolerance) {
  const Report r = run_suite(parse_config_text(R"({
    "spaces": {"s": {"family": "round_sphere", "dim": 2}},
    "entries": [{"op": "constant_curvature", "space": "s", "samples": 2, "tolerance": 1e-15, "params": {"kappa": 1.0}}]})"));
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_EQ(r.entries[0].status, Status::kInconclusive);
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Emit, CsvRowsAndJsonFile) {
  const Report r = run_suite(config_path("negative_control"));
  const auto dir = std::filesystem::temp_directory_path() / "kslab_test_harness";
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "r.csv").string();
  const std::string json = (dir / "r.json").string();
  emit_report(r, Format::kCsv, csv);
  emit_report(r, Format::kJson, json);
  const std::string text = read_file(csv);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), r.entries.size() + 1);
  EXPECT_EQ(read_file(json), report_json_text(r));
  const Json parsed = Json::parse(read_file(json));
  EXPECT_EQ(parsed.at("entries").size(), r.entries.size());
  EXPECT_EQ(parsed.at("catalog_hash").get<std::string>().size(), 16u);
}

TEST(Emit, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
}

TEST(HomogeneousIntegral, VolumeOfUnitSphere) {
  const Space s3 = build_space("s", Json{{"family", "su2"}, {"radius", 1.0}});
  const double vol = homogeneous_integral(s3, 1.0);
  EXPECT_NEAR(vol, 2.0 * std::numbers::pi * std::numbers::pi, 1e-12);
  EXPECT_EQ(homogeneous_integral(s3, 0.0), 0.0);
  EXPECT_NEAR(homogeneous_integral(s3, 3.5), 3.5 * vol, 1e-12);
  const Space big = build_space("b", Json{{"family", "su2"}, {"radius", 2.0}});
  EXPECT_NEAR(homogeneous_integral(big, 1.0), 8.0 * vol, 1e-11);

  // |S³| = 4 |B⁴|, with |B⁴| estimated by Monte Carlo in [−1, 1]⁴.
  SplitMix64 rng(2024);
  const int n = 400000;
  int inside = 0;
  for (int i = 0; i < n; ++i)
    if (rng.uniform_vector(4, -1.0, 1.0).squaredNorm() <= 1.0) ++inside;
  const double mc = 4.0 * 16.0 * static_cast<double>(inside) / n;
  EXPECT_NEAR(mc / vol, 1.0, 0.01);

  const Space flat = build_space("f", Json{{"family", "flat"}, {"dim", 3}});
  EXPECT_THROW(homogeneous_integral(flat, 1.0), PreconditionError);
}

TEST(Registry, ListsEveryOpAndFamily) {
  EXPECT_GE(op_registry().size(), 30u);
  for (const auto& [name, info] : op_registry()) EXPECT_FALSE(info.description.empty()) << name;
  EXPECT_EQ(space_families().size(), 6u);
  SplitMix64 rng(1);
  EXPECT_THROW(make_field("nonsense", 3, 3, rng), PreconditionError);
  EXPECT_THROW(make_field("product_direction", 3, 3, rng), PreconditionError);
}
