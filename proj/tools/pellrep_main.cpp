#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "pellrep/bounds.hpp"
#include "pellrep/campaign.hpp"
#include "pellrep/gamma_cache.hpp"
#include "pellrep/realalg.hpp"
#include "pellrep/report.hpp"
#include "pellrep/search.hpp"
#include "pellrep/theorem.hpp"

using namespace pellrep;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDiscrepancy = 2;

struct Options {
  SearchRange search;
  int small_k_min = 3;
  int small_k_max = 100;
  bool full_small_range = false;
  int max_passes = 10;
  long precision = kDefaultPrecision;
  unsigned threads = 0;
  bool sharp_rho = false;
  bool strict_x0 = false;
  int gamma_k = 3;
  std::string format = "json";
  std::string out;
  std::string emit;
  bool skip_small = false;
  bool skip_large = false;
};

CampaignConfig campaign_config(const Options& o) {
  CampaignConfig c;
  c.precision = static_cast<Precision>(o.precision);
  c.ladder = {static_cast<Precision>(o.precision), kPrecisionCap};
  c.threads = o.threads;
  c.sharp_rho = o.sharp_rho;
  c.strict_x0 = o.strict_x0;
  return c;
}

CampaignReport new_report(const Options& o) {
  CampaignReport r;
  r.meta.timestamp = utc_timestamp();
  r.meta.precision_bits = o.precision;
  return r;
}

void emit_if_requested(const CampaignReport& r, const std::string& path) {
  if (!path.empty()) write_text_file(path, to_json(r));
}

void print_theorem(const TheoremComparison& cmp) {
  for (const auto& row : cmp.rows) {
    std::cout << row.id << " (" << row.k_range << "): " << to_string(row.status()) << '\n';
    for (const auto& i : row.issues) std::cout << "  " << to_string(i.status) << ": " << i.detail << '\n';
  }
  for (const auto& x : cmp.extras) std::cout << "extra: k=" << x.k << " n=" << x.n << " " << x.value << '\n';
}

int run_search(const Options& o) {
  const auto hits = exhaustive_search(o.search, o.threads);
  for (const auto& h : hits) {
    std::cout << "k=" << h.k << " n=" << h.n << " Q=" << h.value << " :";
    for (const auto& d : h.decompositions) std::cout << ' ' << d.to_string();
    if (!h.inside_window) std::cout << " (outside window)";
    std::cout << '\n';
  }
  std::cout << hits.size() << " hits\n";
  auto r = new_report(o);
  r.search = to_entry(hits, o.search);
  emit_if_requested(r, o.emit);
  return kExitOk;
}

std::vector<SmallKOutcome> run_small(const Options& o) {
  SmallKConfig cfg;
  cfg.k_min = o.full_small_range ? 3 : o.small_k_min;
  cfg.k_max = o.full_small_range ? 640 : o.small_k_max;
  cfg.base = campaign_config(o);
  return small_k_campaign(cfg);
}

int reduce_small(const Options& o) {
  const auto rows = run_small(o);
  long l = 0, m = 0, n = 0;
  bool flagged = false;
  for (const auto& row : rows) {
    std::cout << "k=" << row.k << " X0=" << row.x0.get_str().size() << " digits l<=" << row.l_bound
              << " m<=" << row.m_bound << " n<=" << row.n_bound << " max index " << row.max_index;
    if (row.flagged()) std::cout << " FLAGGED (" << row.failures.size() << " failures)";
    std::cout << '\n';
    l = std::max(l, row.l_bound);
    m = std::max(m, row.m_bound);
    n = std::max(n, row.n_bound);
    flagged = flagged || row.flagged();
  }
  std::cout << "max l<=" << l << " m<=" << m << " n<=" << n << '\n';
  auto r = new_report(o);
  for (const auto& row : rows) r.small_k.push_back(to_entry(row));
  r.meta.partial = !o.full_small_range;
  emit_if_requested(r, o.emit);
  return flagged ? kExitDiscrepancy : kExitOk;
}

LargeKResult run_large(const Options& o) {
  LargeKConfig cfg;
  cfg.max_passes = o.max_passes;
  cfg.base = campaign_config(o);
  return large_k_campaign(cfg);
}

int reduce_large(const Options& o) {
  const auto res = run_large(o);
  for (const auto& p : res.passes) {
    std::cout << "pass " << p.pass << ": X0 ~ " << CertifiedReal::from_integer(p.x0, 2048).upper_sci(4)
              << " lambda<" << p.lambda_max.upper_sci(6) << " (q index " << p.lambda_worst.index << ")"
              << " l<=" << p.l_bound << " k<=" << p.k_bound << " (large-k full index " << p.full_form_worst.index << ")";
    if (auto ref = reference_k_bound(p.pass)) std::cout << " [published " << *ref << "]";
    std::cout << '\n';
  }
  std::cout << (res.contradiction ? "contradiction: k < 641\n" : "no contradiction\n");
  auto r = new_report(o);
  r.large_k = to_entry(res);
  emit_if_requested(r, o.emit);
  return res.contradiction ? kExitOk : kExitDiscrepancy;
}

int verify(const Options& o) {
  const auto hits = exhaustive_search(o.search, o.threads);
  const auto cmp = verify_theorem(hits, o.search);
  print_theorem(cmp);
  std::cout << cmp.issue_count() << " issue(s)\n";
  auto r = new_report(o);
  r.search = to_entry(hits, o.search);
  r.theorem = to_entries(cmp);
  collect_discrepancies(r, &cmp);
  emit_if_requested(r, o.emit);
  return cmp.issue_count() == 0 ? kExitOk : kExitDiscrepancy;
}

int gamma(const Options& o) {
  const auto ctx = AlgebraicContext::build(o.gamma_k, static_cast<Precision>(o.precision));
  const int digits = static_cast<int>(o.precision * 0.30103 / 2);
  std::cout << "gamma  = " << ctx.gamma.to_string(std::max(digits, 10)) << '\n';
  std::cout << "g(gamma) = " << ctx.g_gamma.to_string(20) << '\n';
  std::cout << "width  = 2^" << ctx.gamma.log2_width() << '\n';
  if (auto path = GammaCache::default_path()) GammaCache::shared().save(*path);
  return kExitOk;
}

int report(const Options& o) {
  auto r = new_report(o);
  r.chains.push_back(to_entry(small_k_chain(3, static_cast<Precision>(o.precision))));
  r.chains.push_back(to_entry(large_k_chain(LargeCase::LambdaHalfK, static_cast<Precision>(o.precision))));
  r.chains.push_back(to_entry(large_k_chain(LargeCase::LambdaThetaL, static_cast<Precision>(o.precision))));

  const auto hits = exhaustive_search(o.search, o.threads);
  const auto cmp = verify_theorem(hits, o.search);
  r.search = to_entry(hits, o.search);
  r.theorem = to_entries(cmp);

  if (!o.skip_small) {
    for (const auto& row : run_small(o)) r.small_k.push_back(to_entry(row));
  }
  if (!o.skip_large) r.large_k = to_entry(run_large(o));
  r.meta.partial = o.skip_small || o.skip_large || !o.full_small_range;
  collect_discrepancies(r, &cmp);

  const std::string text = o.format == "csv" ? to_csv(r) : to_json(r);
  if (o.out.empty()) std::cout << text; else write_text_file(o.out, text);
  for (const auto& d : r.discrepancies) std::cerr << d.kind << ": " << d.subject << ": " << d.detail << '\n';
  return r.discrepancies.empty() ? kExitOk : kExitDiscrepancy;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Products of two repdigits in k-Pell-Lucas sequences: search, reductions and report"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--precision-bits", o.precision, "starting MPFR precision")->check(CLI::Range(64L, 16384L));
    sub->add_option("--threads", o.threads, "worker threads (0 = hardware)");
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--k-min", o.search.k_min)->check(CLI::Range(2, 100000));
    sub->add_option("--k-max", o.search.k_max)->check(CLI::Range(2, 100000));
    sub->add_option("--n-min", o.search.n_min)->check(CLI::NonNegativeNumber);
    sub->add_option("--n-max", o.search.n_max)->check(CLI::NonNegativeNumber);
  };

  auto* s = app.add_subcommand("search", "decompose Q_n over a (k, n) box");
  add_search(s);
  add_common(s);
  s->add_option("--emit", o.emit, "write a JSON report fragment");

  auto* rs = app.add_subcommand("reduce-small", "reductions for k in [3, 640]");
  rs->add_option("--k-min", o.small_k_min)->check(CLI::Range(3, 640));
  rs->add_option("--k-max", o.small_k_max)->check(CLI::Range(3, 640));
  rs->add_flag("--full", o.full_small_range, "run all k in [3, 640]");
  rs->add_flag("--sharp-rho", o.sharp_rho, "use log 10 instead of 2.3");
  rs->add_option("--emit", o.emit, "write a JSON report fragment");
  add_common(rs);

  auto* rl = app.add_subcommand("reduce-large", "iterated reductions for k > 640");
  rl->add_option("--max-passes", o.max_passes)->check(CLI::Range(1, 100));
  rl->add_flag("--sharp-rho", o.sharp_rho, "use log phi and log(phi)/2");
  rl->add_flag("--strict-x0", o.strict_x0, "take 2 X0 + 1 so X0 also covers 2n + 1");
  rl->add_option("--emit", o.emit, "write a JSON report fragment");
  add_common(rl);

  auto* vt = app.add_subcommand("verify-theorem", "compare the published table against a search");
  add_search(vt);
  add_common(vt);
  vt->add_option("--emit", o.emit, "write a JSON report fragment");

  auto* g = app.add_subcommand("gamma", "certified dominant root");
  g->add_option("--k", o.gamma_k)->required()->check(CLI::Range(2, 1000000));
  add_common(g);

  auto* rp = app.add_subcommand("report", "run everything at desk scale and write a report");
  rp->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
  rp->add_option("--out", o.out, "output path (stdout if omitted)");
  rp->add_option("--small-k-min", o.small_k_min)->check(CLI::Range(3, 640));
  rp->add_option("--small-k-max", o.small_k_max)->check(CLI::Range(3, 640));
  rp->add_flag("--full", o.full_small_range, "small-k reductions over all of [3, 640]");
  rp->add_flag("--skip-small", o.skip_small);
  rp->add_flag("--skip-large", o.skip_large);
  rp->add_option("--max-passes", o.max_passes)->check(CLI::Range(1, 100));
  add_search(rp);
  add_common(rp);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*s) return run_search(o);
    if (*rs) return reduce_small(o);
    if (*rl) return reduce_large(o);
    if (*vt) return verify(o);
    if (*g) return gamma(o);
    if (*rp) return report(o);
  } catch (const CampaignFailure& e) {
    std::cerr << "campaign failure: " << e.what() << '\n';
    return kExitDiscrepancy;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
