#pragma once

// Verification reports and their canonical JSON / CSV encodings.
// Objects are written with sorted keys and floating point values with 17
// significant digits, so identical runs produce identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kslab/harness/config.hpp"

namespace kslab::harness {

enum class Status { kPass, kFail, kInconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kPass:
      return "pass";
    case Status::kFail:
      return "fail";
    case Status::kInconclusive:
      return "inconclusive";
  }
  return "fail";
}

struct ReportEntry {
  std::string id;
  std::string space;
  std::string op;
  std::string field;
  double residual = 0.0;
  double tolerance = 0.0;
  double fd_error = 0.0;
  Status status = Status::kFail;
  std::string reason;
  std::optional<Expected> expected;
  std::map<std::string, double> values;
  std::optional<double> wall_time;
};

/// Pass iff residual ≤ tolerance and the FD error estimate does not exceed it.
inline Status classify(double residual, double fd_error, double tolerance) {
  if (!std::isfinite(residual) || !std::isfinite(fd_error)) return Status::kFail;
  if (fd_error > tolerance) return Status::kInconclusive;
  return residual <= tolerance ? Status::kPass : Status::kFail;
}

struct Summary {
  int pass = 0;
  int fail = 0;
  int inconclusive = 0;
  int total() const { return pass + fail + inconclusive; }
};

struct Report {
  std::vector<ReportEntry> entries;
  std::string catalog_hash;

  void sort() {
    std::stable_sort(entries.begin(), entries.end(), [](const ReportEntry& a, const ReportEntry& b) {
      return std::tie(a.space, a.op, a.id) < std::tie(b.space, b.op, b.id);
    });
  }

  Summary summary() const {
    Summary s;
    for (const auto& e : entries) {
      if (e.status == Status::kPass) ++s.pass;
      else if (e.status == Status::kFail) ++s.fail;
      else ++s.inconclusive;
    }
    return s;
  }

  int exit_code() const { return summary().fail == 0 ? 0 : 1; }
};

/// FNV-1a, 64 bit, as 16 hex digits.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_canonical(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {  // std::map ordering: sorted keys
        if (!first) out += ',';
        first = false;
        out += Json(k).dump();
        out += ':';
        write_canonical(v, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write_canonical(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// Compact canonical JSON text.
inline std::string canonical_json(const Json& j) {
  std::string out;
  detail::write_canonical(j, out);
  return out;
}

inline Json entry_to_json(const ReportEntry& e) {
  Json j = {{"id", e.id},
            {"space", e.space},
            {"op", e.op},
            {"field", e.field},
            {"residual", e.residual},
            {"tolerance", e.tolerance},
            {"fd_error", e.fd_error},
            {"status", to_string(e.status)},
            {"values", Json::object()}};
  for (const auto& [k, v] : e.values) j["values"][k] = v;
  if (!e.reason.empty()) j["reason"] = e.reason;
  if (e.expected) j["expected"] = {{"value", e.expected->value}, {"provenance", e.expected->provenance}};
  if (e.wall_time) j["wall_time"] = *e.wall_time;
  return j;
}

inline Json report_to_json(const Report& r) {
  const Summary s = r.summary();
  Json j = {{"catalog_hash", r.catalog_hash},
            {"summary", {{"pass", s.pass}, {"fail", s.fail}, {"inconclusive", s.inconclusive}, {"total", s.total()}}},
            {"entries", Json::array()}};
  for (const auto& e : r.entries) j["entries"].push_back(entry_to_json(e));
  return j;
}

inline std::string report_json_text(const Report& r) { return canonical_json(report_to_json(r)) + "\n"; }

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string report_csv_text(const Report& r) {
  std::string out = "id,space,op,field,status,residual,tolerance,fd_error,reason\n";
  for (const auto& e : r.entries) {
    out += csv_field(e.id) + ',' + csv_field(e.space) + ',' + csv_field(e.op) + ',' + csv_field(e.field) + ',' +
           to_string(e.status) + ',' + format_double(e.residual) + ',' + format_double(e.tolerance) + ',' +
           format_double(e.fd_error) + ',' + csv_field(e.reason) + '\n';
  }
  return out;
}

enum class Format { kJson, kCsv };

inline void emit_report(const Report& r, Format format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report: cannot open '" + path + "' for writing");
  out << (format == Format::kJson ? report_json_text(r) : report_csv_text(r));
  if (!out) throw std::runtime_error("report: write failed for '" + path + "'");
}

}  // namespace kslab::harness
