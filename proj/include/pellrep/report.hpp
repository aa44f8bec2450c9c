#pragma once

// Serializable record of a run. Numeric bounds are kept as decimal strings
// (upper endpoints rounded up) so that a report round-trips exactly.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pellrep/bounds.hpp"
#include "pellrep/campaign.hpp"
#include "pellrep/search.hpp"
#include "pellrep/theorem.hpp"

namespace pellrep {

inline constexpr int kReportSchema = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct ReportMeta {
  std::string tool = "pellrep";
  std::string version = kToolVersion;
  std::string timestamp;
  long precision_bits = kDefaultPrecision;
  bool partial = false;
  friend bool operator==(const ReportMeta&, const ReportMeta&) = default;
};

struct TraceEntry {
  std::string problem;
  long index = -1;
  std::string q;
  std::string margin;
  std::string bound;
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct SmallKEntry {
  int k = 0;
  std::string x0;
  long l_bound = 0;
  long m_bound = 0;
  long n_bound = 0;
  std::string l_max;
  std::string m_max;
  TraceEntry l_worst;
  TraceEntry m_worst;
  int pairs_attempted = 0;
  long full_form_problems = 0;
  long max_index = 0;
  std::vector<std::string> failures;
  std::string provenance;
  friend bool operator==(const SmallKEntry&, const SmallKEntry&) = default;
};

struct LargeKPassEntry {
  int pass = 0;
  std::string x0;
  std::string lambda_max;
  TraceEntry lambda_worst;
  long k_case1 = 0;
  long l_bound = 0;
  std::string full_form_max;
  TraceEntry full_form_worst;
  long k_bound = 0;
  std::optional<long> reference_k_bound;
  std::string next_x0;
  long problems = 0;
  std::vector<std::string> failures;
  std::string provenance;
  friend bool operator==(const LargeKPassEntry&, const LargeKPassEntry&) = default;
};

struct LargeKEntry {
  std::string start_x0_provenance;
  bool contradiction = false;
  std::vector<LargeKPassEntry> passes;
  friend bool operator==(const LargeKEntry&, const LargeKEntry&) = default;
};

struct HitEntry {
  int k = 0;
  long n = 0;
  std::string value;
  std::vector<std::string> decompositions;
  bool inside_window = true;
  friend bool operator==(const HitEntry&, const HitEntry&) = default;
};

struct SearchEntry {
  int k_min = 0;
  int k_max = 0;
  long n_min = 0;
  long n_max = 0;
  std::vector<HitEntry> hits;
  friend bool operator==(const SearchEntry&, const SearchEntry&) = default;
};

struct TheoremRowEntry {
  std::string id;
  long n = 0;
  std::string k_range;
  std::string status;
  std::vector<std::string> details;
  friend bool operator==(const TheoremRowEntry&, const TheoremRowEntry&) = default;
};

struct ConstantEntry {
  std::string name;
  std::string provenance;
  std::string computed;
  std::string printed;
  std::string status;
  std::string used;
  friend bool operator==(const ConstantEntry&, const ConstantEntry&) = default;
};

struct CheckEntry {
  std::string name;
  bool holds = false;
  friend bool operator==(const CheckEntry&, const CheckEntry&) = default;
};

struct ChainEntry {
  std::string mode;
  int k = 0;
  std::optional<std::string> l_bound;
  std::optional<std::string> m_bound;
  std::optional<std::string> n_bound;
  std::optional<std::string> k_bound;
  std::optional<std::string> fixed_point;
  std::vector<ConstantEntry> constants;
  std::vector<CheckEntry> checks;
  friend bool operator==(const ChainEntry&, const ChainEntry&) = default;
};

struct DiscrepancyEntry {
  std::string kind;  // match, value-typo, range-mismatch, missing, extra, constant, ledger, note
  std::string subject;
  std::string detail;
  friend bool operator==(const DiscrepancyEntry&, const DiscrepancyEntry&) = default;
};

struct CampaignReport {
  int schema = kReportSchema;
  ReportMeta meta;
  std::vector<ChainEntry> chains;
  std::vector<SmallKEntry> small_k;
  std::optional<LargeKEntry> large_k;
  std::optional<SearchEntry> search;
  std::vector<TheoremRowEntry> theorem;
  std::vector<DiscrepancyEntry> discrepancies;
  friend bool operator==(const CampaignReport&, const CampaignReport&) = default;
};

// Builders from computed results.
TraceEntry to_entry(const ReductionTrace& t);
SmallKEntry to_entry(const SmallKOutcome& o);
LargeKEntry to_entry(const LargeKResult& r);
SearchEntry to_entry(const std::vector<SolutionRecord>& hits, const SearchRange& range);
ChainEntry to_entry(const BoundChainResult& chain);
std::vector<TheoremRowEntry> to_entries(const TheoremComparison& cmp);

/// Published k-bounds per large-k pass (3494, 683, 634).
std::optional<long> reference_k_bound(int pass);

/// Adds discrepancy rows for theorem issues, undercut/conservative constants
/// and large-k passes that miss the published ledger.
void collect_discrepancies(CampaignReport& report, const TheoremComparison* cmp);

std::string to_json(const CampaignReport& report, int indent = 2);
CampaignReport report_from_json(const std::string& text);
/// One row per small-k entry and per large-k pass.
std::string to_csv(const CampaignReport& report);

/// Writes text to path; throws std::runtime_error if the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// ISO-8601 UTC timestamp.
std::string utc_timestamp();

}  // namespace pellrep
