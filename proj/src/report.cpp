#include "pellrep/report.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "detail/memo.hpp"

namespace nlohmann {
template <typename T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& v) {
    if (v) j = *v; else j = nullptr;
  }
  static void from_json(const json& j, std::optional<T>& v) {
    if (j.is_null()) v.reset(); else v = j.get<T>();
  }
};
}  // namespace nlohmann

namespace pellrep {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ReportMeta, tool, version, timestamp, precision_bits, partial)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TraceEntry, problem, index, q, margin, bound)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SmallKEntry, k, x0, l_bound, m_bound, n_bound, l_max, m_max, l_worst, m_worst,
                                   pairs_attempted, full_form_problems, max_index, failures, provenance)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LargeKPassEntry, pass, x0, lambda_max, lambda_worst, k_case1, l_bound,
                                   full_form_max, full_form_worst, k_bound, reference_k_bound, next_x0, problems,
                                   failures, provenance)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(LargeKEntry, start_x0_provenance, contradiction, passes)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(HitEntry, k, n, value, decompositions, inside_window)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SearchEntry, k_min, k_max, n_min, n_max, hits)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TheoremRowEntry, id, n, k_range, status, details)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ConstantEntry, name, provenance, computed, printed, status, used)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CheckEntry, name, holds)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ChainEntry, mode, k, l_bound, m_bound, n_bound, k_bound, fixed_point,
                                   constants, checks)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(DiscrepancyEntry, kind, subject, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CampaignReport, schema, meta, chains, small_k, large_k, search, theorem,
                                   discrepancies)

namespace {

std::string sci(const CertifiedReal& x) { return x.upper_sci(8); }

std::optional<std::string> sci(const std::optional<CertifiedReal>& x) {
  if (!x) return std::nullopt;
  return sci(*x);
}

}  // namespace

TraceEntry to_entry(const ReductionTrace& t) {
  if (t.index < 0) return {};
  return {t.problem, t.index, t.q, t.margin, sci(t.y_bound)};
}

SmallKEntry to_entry(const SmallKOutcome& o) {
  SmallKEntry e;
  e.k = o.k;
  e.x0 = o.x0.get_str();
  e.l_bound = o.l_bound;
  e.m_bound = o.m_bound;
  e.n_bound = o.n_bound;
  e.l_max = o.l_worst.index >= 0 ? sci(o.l_max) : "";
  e.m_max = o.m_worst.index >= 0 ? sci(o.m_max) : "";
  e.l_worst = to_entry(o.l_worst);
  e.m_worst = to_entry(o.m_worst);
  e.pairs_attempted = o.pairs_attempted;
  e.full_form_problems = o.full_form_problems;
  e.max_index = o.max_index;
  e.failures = o.failures;
  e.provenance =
      "X0 = floor(5.1e29 k^9 log^5 k); l from the small-k leading reduction (c=20.22), m from small-k full (c=21.1) for "
      "l <= l-bound, n from the lower edge 0.3n - 0.3 < l + m";
  return e;
}

std::optional<long> reference_k_bound(int pass) {
  switch (pass) {
    case 1: return 3494;
    case 2: return 683;
    case 3: return 634;
    default: return std::nullopt;
  }
}

LargeKEntry to_entry(const LargeKResult& r) {
  LargeKEntry e;
  e.start_x0_provenance = r.start_x0_provenance;
  e.contradiction = r.contradiction;
  for (const auto& p : r.passes) {
    LargeKPassEntry pe;
    pe.pass = p.pass;
    pe.x0 = detail::integer_sci(p.x0, 6);
    pe.lambda_max = p.lambda_worst.index >= 0 ? sci(p.lambda_max) : "";
    pe.lambda_worst = to_entry(p.lambda_worst);
    pe.k_case1 = p.k_case1;
    pe.l_bound = p.l_bound;
    pe.full_form_max = p.full_form_worst.index >= 0 ? sci(p.full_form_max) : "";
    pe.full_form_worst = to_entry(p.full_form_worst);
    pe.k_bound = p.k_bound;
    pe.reference_k_bound = reference_k_bound(p.pass);
    pe.next_x0 = detail::integer_sci(p.next_x0, 6);
    pe.problems = p.problems;
    pe.failures = p.failures;
    pe.provenance =
        "lambda from the large-k leading reduction (c=606); k <= max(2 lambda, large-k full bound (c=22.12) over l <= lambda/theta); "
        "next X0 = 5.1e29 k^9 log^5 k";
    e.passes.push_back(std::move(pe));
  }
  return e;
}

SearchEntry to_entry(const std::vector<SolutionRecord>& hits, const SearchRange& range) {
  SearchEntry e{range.k_min, range.k_max, range.n_min, range.n_max, {}};
  for (const auto& h : hits) {
    HitEntry he{h.k, h.n, h.value.get_str(), {}, h.inside_window};
    for (const auto& d : h.decompositions) he.decompositions.push_back(d.to_string());
    e.hits.push_back(std::move(he));
  }
  return e;
}

ChainEntry to_entry(const BoundChainResult& chain) {
  ChainEntry e;
  e.mode = chain.mode;
  e.k = chain.k;
  e.l_bound = sci(chain.l_bound);
  e.m_bound = sci(chain.m_bound);
  e.n_bound = sci(chain.n_bound);
  e.k_bound = sci(chain.k_bound);
  if (chain.fixed_point) {
    e.fixed_point = sci(chain.fixed_point->value) + " after " + std::to_string(chain.fixed_point->iterations) +
                    " iterations" + (chain.fixed_point->converged ? "" : " (not converged)");
  }
  for (const auto& c : chain.constants) {
    e.constants.push_back({c.name, c.provenance, sci(c.computed), c.printed, to_string(c.status), sci(c.used)});
  }
  for (const auto& c : chain.checks) e.checks.push_back({c.name, c.holds});
  return e;
}

std::vector<TheoremRowEntry> to_entries(const TheoremComparison& cmp) {
  std::vector<TheoremRowEntry> out;
  for (const auto& r : cmp.rows) {
    TheoremRowEntry e{r.id, r.n, r.k_range, to_string(r.status()), {}};
    for (const auto& i : r.issues) e.details.push_back(to_string(i.status) + ": " + i.detail);
    out.push_back(std::move(e));
  }
  for (const auto& x : cmp.extras) {
    TheoremRowEntry e{"extra", x.n, "k=" + std::to_string(x.k), "extra", {}};
    for (const auto& d : x.decompositions) e.details.push_back(d.to_string());
    out.push_back(std::move(e));
  }
  return out;
}

void collect_discrepancies(CampaignReport& report, const TheoremComparison* cmp) {
  if (cmp) {
    for (const auto& r : cmp->rows) {
      for (const auto& i : r.issues) report.discrepancies.push_back({to_string(i.status), r.id, i.detail});
    }
    for (const auto& x : cmp->extras) {
      report.discrepancies.push_back({"extra", "k=" + std::to_string(x.k) + " n=" + std::to_string(x.n),
                                      x.value.get_str()});
    }
  }
  for (const auto& chain : report.chains) {
    for (const auto& c : chain.constants) {
      if (c.status == "undercut") {
        report.discrepancies.push_back(
            {"constant", c.name, "printed " + c.printed + " is below the computed " + c.computed + "; using " + c.used});
      }
    }
  }
  if (report.large_k) {
    for (const auto& p : report.large_k->passes) {
      if (!p.reference_k_bound) continue;
      const double ref = static_cast<double>(*p.reference_k_bound);
      const double rel = (static_cast<double>(p.k_bound) - ref) / ref;
      if (std::abs(rel) > 0.02) {
        std::ostringstream os;
        os << "k-bound " << p.k_bound << " vs published " << *p.reference_k_bound << " (" << std::showpos
           << std::fixed << std::setprecision(1) << 100 * rel << "%)";
        report.discrepancies.push_back({"ledger", "pass " + std::to_string(p.pass), os.str()});
      }
    }
  }
}

std::string to_json(const CampaignReport& report, int indent) {
  return nlohmann::json(report).dump(indent) + "\n";
}

CampaignReport report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("schema").get<int>() != kReportSchema) throw std::runtime_error("unsupported report schema");
  CampaignReport r;
  from_json(j, r);
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const CampaignReport& report) {
  std::ostringstream os;
  os << "section,k_or_pass,x0,l_bound,m_bound,n_bound,k_bound,max_index,failures\n";
  for (const auto& e : report.small_k) {
    os << "small-k," << e.k << ',' << e.x0 << ',' << e.l_bound << ',' << e.m_bound << ',' << e.n_bound << ",,"
       << e.max_index << ',' << e.failures.size() << '\n';
  }
  if (report.large_k) {
    for (const auto& p : report.large_k->passes) {
      os << "large-k," << p.pass << ',' << csv_field(p.x0) << ',' << p.l_bound << ",,," << p.k_bound << ','
         << std::max(p.lambda_worst.index, p.full_form_worst.index) << ',' << p.failures.size() << '\n';
    }
  }
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out.flush()) throw std::runtime_error("write failed for " + path.string());
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace pellrep
