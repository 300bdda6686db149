// kslab: run verification suites, list the catalog, print the instability
// certificate and write reports.
//
// Exit codes: 0 no failing entry, 1 at least one failing entry, 2 usage or
// configuration error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kslab/harness/suite.hpp"

#ifndef KSLAB_CONFIG_DIR
#define KSLAB_CONFIG_DIR "configs"
#endif

namespace fs = std::filesystem;
using namespace kslab;
using namespace kslab::harness;

namespace {

constexpr int kUsageError = 2;

std::string resolve_suite(const std::string& suite) {
  if (fs::exists(suite)) return suite;
  const fs::path named = fs::path(KSLAB_CONFIG_DIR) / (suite + ".json");
  if (fs::exists(named)) return named.string();
  throw ConfigError("no suite file or named suite '" + suite + "'");
}

void print_table(const Report& report, std::ostream& os) {
  for (const auto& e : report.entries) {
    char line[512];
    std::snprintf(line, sizeof line, "%-13s %-34s %-26s residual=%-12.4g tol=%-8.1g fd=%.2g", to_string(e.status), e.id.c_str(),
                  e.op.c_str(), e.residual, e.tolerance, e.fd_error);
    os << line;
    if (!e.reason.empty()) os << "  (" << e.reason << ")";
    os << '\n';
  }
  const Summary s = report.summary();
  os << "summary: " << s.pass << " pass, " << s.fail << " fail, " << s.inconclusive << " inconclusive, " << s.total()
     << " total\n";
}

Format parse_format(const std::string& f) { return f == "csv" ? Format::kCsv : Format::kJson; }

Json certificate_json(const InstabilityCertificate& c) {
  Json j = {{"p1", c.p1},
            {"p2", c.p2},
            {"base_value", c.base_value},
            {"lifted_value", c.lifted_value},
            {"h_norm_sq", c.h_norm_sq},
            {"rayleigh_quotient", c.rayleigh_quotient},
            {"verdict", c.verdict()},
            {"numeric_checked", c.numeric_checked}};
  if (c.numeric_checked) {
    j["numeric"] = {{"samples", c.samples},
                    {"base_max_relative_error", c.numeric_base_max_error},
                    {"lifted_max_relative_error", c.numeric_lifted_max_error},
                    {"h_norm_error", c.numeric_h_norm_error},
                    {"hj_error", c.numeric_hj_error},
                    {"lifted_trace", c.lifted_trace},
                    {"lifted_divergence", c.lifted_divergence},
                    {"fd_error", c.fd_error},
                    {"lifted_values", c.lifted_values}};
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Killing-spinor and Sasaki-Einstein stability identities"};
  app.require_subcommand(1);

  std::string suite;
  std::optional<double> tol;
  std::string format = "json";
  std::string out_path;
  bool wall_time = false;
  bool quiet = false;

  auto* verify = app.add_subcommand("verify", "Run a suite (config path or shipped name) and print one line per entry");
  verify->add_option("suite", suite, "Suite config path or name in the configs directory")->required();
  verify->add_option("--tol", tol, "Override every entry tolerance");
  verify->add_option("--out", out_path, "Also write the report to this path");
  verify->add_option("--format", format, "Report format for --out")->check(CLI::IsMember({"json", "csv"}));
  verify->add_flag("--wall-time", wall_time, "Record per-entry wall time (reports are then not byte-stable)");
  verify->add_flag("-q,--quiet", quiet, "Only print the summary line");

  auto* report = app.add_subcommand("report", "Run a suite and write the machine-readable report");
  report->add_option("suite", suite, "Suite config path or name in the configs directory")->required();
  report->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  report->add_option("--out", out_path, "Output path (stdout when omitted)");
  report->add_option("--tol", tol, "Override every entry tolerance");
  report->add_flag("--wall-time", wall_time, "Record per-entry wall time");

  std::string what;
  auto* list = app.add_subcommand("list", "List catalog spaces, field families or operations");
  list->add_option("what", what, "catalog | fields | ops")->required()->check(CLI::IsMember({"catalog", "fields", "ops"}));

  int p1 = 1;
  int p2 = 1;
  int samples = 20;
  std::uint64_t seed = 13;
  auto* cert = app.add_subcommand("certificate", "Instability certificate for a product Kähler–Einstein base");
  cert->add_option("--p1", p1, "Complex dimension of the first factor")->check(CLI::PositiveNumber);
  cert->add_option("--p2", p2, "Complex dimension of the second factor")->check(CLI::PositiveNumber);
  cert->add_option("--samples", samples, "Sample points for the numerical cross-check")->check(CLI::PositiveNumber);
  cert->add_option("--seed", seed, "Seed for the sample points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*list) {
      if (what == "catalog") {
        for (const auto& f : space_families()) std::cout << f << '\n';
        std::cout << "sasaki bases: S2, S2xS2, CP2\n";
      } else if (what == "fields") {
        for (const auto& f : field_families()) std::cout << f << '\n';
      } else {
        for (const auto& [name, info] : op_registry()) std::cout << name << "  " << info.description << '\n';
      }
      return 0;
    }
    if (*cert) {
      const InstabilityCertificate c = instability_certificate(p1, p2, samples, seed);
      std::cout << canonical_json(certificate_json(c)) << '\n';
      return c.unstable ? 0 : 1;
    }

    RunOptions opts;
    opts.tolerance_override = tol;
    opts.record_wall_time = wall_time;
    const Report r = run_suite(resolve_suite(suite), opts);
    if (*report) {
      const std::string text = format == "csv" ? report_csv_text(r) : report_json_text(r);
      if (out_path.empty()) std::cout << text;
      else emit_report(r, parse_format(format), out_path);
    } else {
      if (quiet) {
        const Summary s = r.summary();
        std::cout << "summary: " << s.pass << " pass, " << s.fail << " fail, " << s.inconclusive << " inconclusive, "
                  << s.total() << " total\n";
      } else {
        print_table(r, std::cout);
      }
      if (!out_path.empty()) emit_report(r, parse_format(format), out_path);
    }
    return r.exit_code();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
