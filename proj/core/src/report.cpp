#include "nielsen/report.hpp"

#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "nielsen/errors.hpp"

namespace nielsen {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string count_text(const ClassCount& c) {
  std::string s = std::to_string(c.count);
  if (!c.exact) s += "+";  // lower bound
  return s;
}

ordered_json record_json(const GenusRecord& r) {
  ordered_json j;
  j["group"] = r.group;
  j["fingerprint"] = hex16(r.fingerprint);
  j["mu"] = r.mu;
  if (r.ell) j["ell"] = *r.ell;
  else j["ell"] = nullptr;
  j["psi"] = r.psi;
  j["rows"] = ordered_json::array();
  for (const GenusRow& row : r.rows) {
    ordered_json e;
    e["k"] = row.k;
    e["n"] = row.n;
    e["genus"] = row.genus;
    e["e"] = row.e.count;
    e["w"] = row.w.count;
    e["e_exact"] = row.e.exact;
    e["w_exact"] = row.w.exact;
    j["rows"].push_back(std::move(e));
  }
  return j;
}

void genus_csv(std::ostream& os, const std::vector<GenusRecord>& records) {
  os << "group,mu,ell,psi,k,genus,e,w,e_exact,w_exact\n";
  for (const GenusRecord& r : records)
    for (const GenusRow& row : r.rows) {
      os << csv_field(r.group) << ',' << r.mu << ',';
      if (r.ell) os << *r.ell;
      os << ',' << r.psi << ',' << row.k << ',' << row.genus << ',' << row.e.count << ','
         << row.w.count << ',' << (row.e.exact ? "true" : "false") << ','
         << (row.w.exact ? "true" : "false") << '\n';
    }
}

void genus_text(std::ostream& os, const std::vector<GenusRecord>& records) {
  for (const GenusRecord& r : records) {
    os << r.group << "  (fingerprint " << hex16(r.fingerprint) << ")\n";
    os << "  mu = " << r.mu << "   ell = ";
    if (r.ell) os << *r.ell;
    else os << "not computed";
    os << "   psi = " << r.psi << "\n";
    os << "    k   n      genus  e          w\n";
    for (const GenusRow& row : r.rows) {
      os << "  " << std::setw(3) << row.k << std::setw(4) << row.n << std::setw(11) << row.genus
         << "  " << std::left << std::setw(11) << count_text(row.e) << std::setw(11)
         << count_text(row.w) << std::right << "\n";
    }
  }
  os << "(a trailing + marks a lower bound, not an exact count)\n";
}

std::string seconds_text(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

}  // namespace

const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::pass: return "pass";
    case ClaimStatus::fail: return "fail";
    case ClaimStatus::skip: return "skip";
  }
  return "?";
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "text") return ReportFormat::text;
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw ArgumentError("unknown format: " + name + " (expected text, json, or csv)");
}

void write_genus_records(std::ostream& os, const std::vector<GenusRecord>& records,
                         ReportFormat format) {
  switch (format) {
    case ReportFormat::csv:
      genus_csv(os, records);
      break;
    case ReportFormat::json: {
      ordered_json j = ordered_json::array();
      for (const GenusRecord& r : records) j.push_back(record_json(r));
      os << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::text:
      genus_text(os, records);
      break;
  }
}

void write_claims(std::ostream& os, const ClaimsReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::csv:
      os << "criterion,id,status,seconds,detail\n";
      for (const ClaimRow& c : report.claims)
        os << c.criterion << ',' << csv_field(c.id) << ',' << to_string(c.status) << ','
           << seconds_text(c.seconds) << ',' << csv_field(c.detail) << '\n';
      break;
    case ReportFormat::json: {
      ordered_json j;
      j["claims"] = ordered_json::array();
      for (const ClaimRow& c : report.claims) {
        ordered_json e;
        e["criterion"] = c.criterion;
        e["id"] = c.id;
        e["status"] = to_string(c.status);
        e["seconds"] = c.seconds;
        e["detail"] = c.detail;
        j["claims"].push_back(std::move(e));
      }
      j["records"] = ordered_json::array();
      for (const GenusRecord& r : report.records) j["records"].push_back(record_json(r));
      j["all_pass"] = report.all_pass;
      os << j.dump(2) << '\n';
      break;
    }
    case ReportFormat::text: {
      for (const ClaimRow& c : report.claims) {
        std::ostringstream head;
        head << "[" << to_string(c.status) << "] " << c.criterion << " " << c.id;
        os << std::left << std::setw(40) << head.str() << std::right << std::setw(9)
           << seconds_text(c.seconds) << "  " << c.detail << "\n";
      }
      os << (report.all_pass ? "all claims passed" : "CLAIM FAILURES PRESENT") << "\n";
      break;
    }
  }
}

}  // namespace nielsen
