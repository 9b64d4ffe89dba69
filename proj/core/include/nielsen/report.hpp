#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nielsen/atlas.hpp"

namespace nielsen {

enum class ReportFormat { text, json, csv };

ReportFormat parse_report_format(const std::string& name);  // ArgumentError on junk

// CSV header: group,mu,ell,psi,k,genus,e,w,e_exact,w_exact with one row per
// genus row; ell stays blank when it was not computed. JSON is an array of
// records with stable field order. Text is an aligned table.
void write_genus_records(std::ostream& os, const std::vector<GenusRecord>& records,
                         ReportFormat format);

// Pass/fail table. CSV header: criterion,id,status,seconds,detail. JSON
// bundles the claim rows, the genus records, and the overall verdict.
void write_claims(std::ostream& os, const ClaimsReport& report, ReportFormat format);

}  // namespace nielsen
