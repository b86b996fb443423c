#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "rspdc/ensemble/campaign.hpp"
#include "rspdc/ensemble/search.hpp"

namespace rspdc::ensemble {

/// Angles are stored in degrees, bins in nm. Unknown keys are rejected.
nlohmann::json config_to_json(const EnsembleConfig& config);
EnsembleConfig config_from_json(const nlohmann::json& doc);

nlohmann::json record_to_json(const StructureRecord& record);
StructureRecord record_from_json(const nlohmann::json& doc);

/// Aggregate view: config, digest and per-cell statistics (no records).
nlohmann::json report_to_json(const EnsembleReport& report);

/// One record per line.
void write_records_jsonl(const EnsembleReport& report, std::ostream& out);
/// Rebuilds a report from a config and its JSON-lines records.
EnsembleReport read_report(const EnsembleConfig& config, std::istream& records);

/// Writes <dir>/config.json, <dir>/records.jsonl and <dir>/report.json.
void write_campaign(const EnsembleReport& report, const std::string& dir);
EnsembleReport read_campaign(const std::string& dir);

/// Header: n_elem,theta_deg,bin_lo_nm,bin_hi_nm,count,probability
void write_histogram_csv(const EnsembleReport& report, std::ostream& out);

nlohmann::json search_to_json(const SearchResult& result);

}  // namespace rspdc::ensemble
