#include "hobody/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hobody {

namespace {

/// Shortest representation that round-trips, so equal doubles print equal bytes.
std::string number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') cur += '"', ++i;
      else if (c == '"') quoted = false;
      else cur += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Provenance provenance_from(const std::string& s) {
  for (Provenance p : {Provenance::paper_constant, Provenance::derived_closed_form,
                       Provenance::derived_oracle, Provenance::mc_reference})
    if (to_string(p) == s) return p;
  throw InputError("unknown provenance tag '" + s + "'");
}

}  // namespace

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::paper_constant: return "paper-constant";
    case Provenance::derived_closed_form: return "derived-closed-form";
    case Provenance::derived_oracle: return "derived-oracle";
    case Provenance::mc_reference: return "mc-reference";
  }
  return "unknown";
}

bool SuiteReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.pass; });
}

std::size_t SuiteReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.pass; }));
}

std::string format_report(const SuiteReport& report, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    os << "suite,body,n,m,value,std_error,reference,provenance,pass,wall_ms\n";
    for (const ReportRow& r : report.rows) {
      os << csv_field(r.suite) << ',' << csv_field(r.body) << ',' << r.n << ',' << r.m << ','
         << number(r.value) << ',' << number(r.std_error) << ',' << number(r.reference) << ','
         << to_string(r.provenance) << ',' << (r.pass ? "true" : "false") << ','
         << number(std::round(r.wall_ms * 1000.0) / 1000.0) << '\n';
    }
    return os.str();
  }
  if (format == "json") {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ReportRow& r : report.rows) {
      rows.push_back({{"suite", r.suite},
                      {"body", r.body},
                      {"n", r.n},
                      {"m", r.m},
                      {"value", r.value},
                      {"std_error", r.std_error},
                      {"reference", r.reference},
                      {"provenance", to_string(r.provenance)},
                      {"pass", r.pass},
                      {"wall_ms", r.wall_ms}});
    }
    nlohmann::ordered_json doc = {{"passed", report.passed()},
                                  {"failures", report.failures()},
                                  {"rows", rows}};
    return doc.dump(2) + "\n";
  }
  throw UsageError("unknown report format '" + format + "'");
}

void emit_report(const SuiteReport& report, const std::string& format, const std::string& path) {
  const std::string text = format_report(report, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write report to " + path);
  out << text;
  out.close();
  if (!out) throw InputError("failed while writing report to " + path);
}

std::vector<ReportRow> parse_csv_report(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "suite,body,n,m,value,std_error,reference,provenance,pass,wall_ms")
    throw InputError("report header is missing or wrong");
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 10) throw InputError("report row has " + std::to_string(f.size()) + " fields");
    ReportRow r;
    r.suite = f[0];
    r.body = f[1];
    r.n = std::stoi(f[2]);
    r.m = std::stoi(f[3]);
    r.value = std::stod(f[4]);
    r.std_error = std::stod(f[5]);
    r.reference = std::stod(f[6]);
    r.provenance = provenance_from(f[7]);
    r.pass = f[8] == "true";
    r.wall_ms = std::stod(f[9]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hobody
