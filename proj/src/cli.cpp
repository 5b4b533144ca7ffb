#include "erdos/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "erdos/basis.hpp"
#include "erdos/binomial.hpp"
#include "erdos/equidist.hpp"
#include "erdos/errors.hpp"

namespace erdos::cli {

namespace {

using report::Cell;
using report::Report;
using Json = nlohmann::ordered_json;

struct Outcome {
  Report rep;
  int code = kVerified;
};

Natural parse_natural(const std::string& text, const std::string& flag) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw ContractError(flag + " expects a non-negative integer, got '" + text + "'");
  return Natural(text);
}

std::string join(const std::vector<std::uint64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  for (auto& t : pool) t.join();
}

void describe_alpha(Json& meta, const equidist::Alpha& alpha, unsigned precision) {
  meta["alpha"] = alpha.to_decimal(40);
  meta["alpha_exact"] = alpha.to_fraction();
  meta["precision_bits"] = precision;
}

// ---- binomial -------------------------------------------------------------

Outcome binomial_f(const std::string& n_text, bool trace) {
  const Natural n = parse_natural(n_text, "--n");
  if (n < 1) throw ContractError("--n must be >= 1");
  std::vector<binomial::ScanRow> rows;
  const binomial::ThresholdResult r = binomial::f_threshold(n, trace ? &rows : nullptr);
  Outcome o;
  o.rep.meta["command"] = "binomial f";
  o.rep.meta["check"] = "least k <= n with u(n,k) > n^2; near-ties re-decided in exact arithmetic";
  o.rep.meta["guard_band"] = binomial::kGuardBand;
  const double log_n = log_natural(n);
  if (trace) {
    o.rep.columns = {"n", "k", "log_u", "exact", "exceeds"};
    for (const auto& row : rows) o.rep.add_row({n.str(), row.k, row.log_u, row.exact, row.exceeds});
  } else {
    o.rep.columns = {"n", "f", "log_u", "decided_exactly", "exact_fallbacks", "f_over_log2"};
    o.rep.add_row({n.str(), r.f ? std::to_string(*r.f) : std::string("none"), r.log_u, r.decided_exactly,
                   r.exact_fallbacks,
                   r.f && log_n > 0 ? static_cast<double>(*r.f) / (log_n * log_n) : 0.0});
  }
  o.rep.verdict = "computed";
  return o;
}

Outcome binomial_f_scan(std::uint64_t from, std::uint64_t to, std::uint64_t stride, unsigned threads) {
  if (from < 1) throw ContractError("--from must be >= 1");
  if (to < from) throw ContractError("--to must be >= --from");
  if (stride < 1) throw ContractError("--stride must be >= 1");
  std::vector<std::uint64_t> ns;
  for (std::uint64_t n = from; n <= to; n += stride) {
    ns.push_back(n);
    if (to - n < stride) break;
  }
  std::vector<binomial::ThresholdResult> results(ns.size());
  parallel_for(ns.size(), threads, [&](std::size_t i) { results[i] = binomial::f_threshold(ns[i]); });

  Outcome o;
  o.rep.meta["command"] = "binomial f-scan";
  o.rep.meta["check"] = "least k <= n with u(n,k) > n^2 over a range of n";
  o.rep.columns = {"n", "f", "log_u", "decided_exactly", "f_over_log2"};
  double worst = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto& r = results[i];
    const double log_n = std::log(static_cast<double>(ns[i]));
    const double ratio = r.f && log_n > 0 ? static_cast<double>(*r.f) / (log_n * log_n) : 0.0;
    worst = std::max(worst, ratio);
    o.rep.add_row({ns[i], r.f ? std::to_string(*r.f) : std::string("none"), r.log_u, r.decided_exactly, ratio});
  }
  o.rep.meta["max_f_over_log2"] = worst;
  o.rep.verdict = "computed";
  return o;
}

Outcome binomial_certificate(const std::string& n_text, double C) {
  const Natural n = parse_natural(n_text, "--n");
  const binomial::CertificateReport c = binomial::certificate_average(n, C);
  Outcome o;
  o.rep.meta["command"] = "binomial certificate";
  o.rep.meta["check"] = "average of log u(n,k) over k <= Y = floor(C (log n)^2) above 2 log n implies f(n) <= Y";
  Json terms = Json::array();
  for (const auto& t : c.terms)
    terms.push_back({{"j", t.j}, {"prime_bound", t.prime_bound}, {"theta", t.theta},
                     {"weighted_gap", t.weighted_gap}, {"block_count", t.block_count}});
  o.rep.meta["terms"] = std::move(terms);

  std::string f_text = "not-checked";
  bool confirmed = true;
  if (c.certifies) {
    const auto r = binomial::f_threshold(n);
    f_text = r.f ? std::to_string(*r.f) : "none";
    confirmed = r.f && *r.f <= c.Y;
  }
  o.rep.columns = {"n", "C", "Y", "average", "target", "certifies", "argmax_k", "max_log_u", "f", "confirmed"};
  o.rep.add_row({n.str(), c.C, c.Y, c.average, c.target, c.certifies, c.argmax_k, c.max_log_u, f_text, confirmed});
  o.code = confirmed ? kVerified : kVerificationFailure;
  o.rep.verdict = !confirmed ? "failed" : c.certifies ? "verified" : "not-certified";
  return o;
}

Outcome binomial_witness(std::uint64_t K) {
  const binomial::WitnessMK w = binomial::lower_bound_witness(K);
  Outcome o;
  o.rep.meta["command"] = "binomial witness";
  o.rep.meta["check"] = "u(M_K - 1, k) = 1 for 0 <= k <= K, so f(M_K - 1) > K";
  o.rep.meta["K"] = K;
  o.rep.meta["M_K"] = w.M.str();
  o.rep.meta["log_ratio"] = w.log_ratio;
  Json ex = Json::object();
  for (auto [p, e] : w.exponents) ex[std::to_string(p)] = e;
  o.rep.meta["exponents"] = std::move(ex);
  o.rep.columns = {"K", "k", "u"};
  const Natural n = w.M - 1;
  for (std::uint64_t k = 0; k <= K; ++k) o.rep.add_row({K, k, binomial::u_profile(n, k).exact_u().str()});
  o.rep.verdict = "verified";
  return o;
}

// ---- basis ------------------------------------------------------------------

Outcome basis_cover(unsigned k) {
  const basis::CoverReport r = basis::sumset_cover_check(k);
  Outcome o;
  o.rep.meta["command"] = "basis cover";
  o.rep.meta["check"] = "[4, 6*5^k] is contained in A_k + A_k";
  o.rep.columns = {"k", "check", "pass", "lo", "hi"};
  o.rep.add_row({std::uint64_t{k}, std::string("cover"), r.pass, r.target.lo, r.target.hi});
  o.rep.verdict = "verified";
  return o;
}

Outcome basis_rigidity(unsigned k) {
  const basis::RigidityReport r = basis::rigidity_check(k);
  Outcome o;
  o.rep.meta["command"] = "basis rigidity";
  o.rep.meta["check"] = "every n in J_k is only c_k + b with b in B_k";
  o.rep.columns = {"k", "check", "pass", "lo", "hi", "checked"};
  o.rep.add_row({std::uint64_t{k}, std::string("rigidity"), r.pass, r.J.lo, r.J.hi, r.checked});
  o.rep.verdict = "verified";
  return o;
}

Outcome basis_gaps(const basis::PartitionRule& rule, unsigned k) {
  const basis::GapReport g = basis::gap_witness(rule, k);
  Outcome o;
  o.rep.meta["command"] = "basis gaps";
  o.rep.meta["check"] = "the colour class without c_k has no sum in J_k";
  o.rep.meta["truncation"] = g.truncation;
  o.rep.columns = {"rule", "k", "check", "pass", "lo", "hi", "gap_length", "c_color", "gapped_color",
                   "gapped_hits", "c_color_hits"};
  o.rep.add_row({rule.name, std::uint64_t{k}, std::string("gap"), g.pass, g.J.lo, g.J.hi, g.J.length(),
                 std::int64_t{g.c_color}, std::int64_t{g.gapped_color}, g.gapped_hits, g.c_color_hits});
  o.code = g.pass ? kVerified : kVerificationFailure;
  o.rep.verdict = g.pass ? "verified" : "failed";
  return o;
}

Outcome basis_reps(std::uint64_t n) {
  const auto reps = basis::representations(n);
  Outcome o;
  o.rep.meta["command"] = "basis reps";
  o.rep.meta["check"] = "all n = a + b with a <= b, a and b in A";
  o.rep.columns = {"n", "a", "b", "kind_a", "stage_a", "kind_b", "stage_b"};
  for (const auto& r : reps) {
    const auto ca = basis::classify(r.a), cb = basis::classify(r.b);
    o.rep.add_row({n, r.a, r.b, basis::to_string(ca.kind), std::uint64_t{ca.stage}, basis::to_string(cb.kind),
                   std::uint64_t{cb.stage}});
  }
  o.rep.meta["count"] = reps.size();
  o.rep.verdict = "computed";
  return o;
}

// ---- equidist ---------------------------------------------------------------

PrimeTable table_with_primes(std::uint64_t count) {
  // p_n < n (log n + log log n) for n >= 6
  const double n = static_cast<double>(std::max<std::uint64_t>(count, 6));
  auto bound = static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n)))) + 16;
  return sieve_primes(bound);
}

Outcome equidist_scan(const std::string& alpha_text, unsigned precision, std::uint64_t k, std::uint64_t limit,
                      std::uint64_t stride, unsigned threads) {
  if (k < 1) throw ContractError("--k must be >= 1");
  if (stride < 1) throw ContractError("--stride must be >= 1");
  const auto alpha = equidist::Alpha::parse(alpha_text, precision);
  const PrimeTable table = table_with_primes(limit + k);
  const auto s = equidist::well_distribution_statistic(alpha, k, limit, stride, table, threads);
  Outcome o;
  o.rep.meta["command"] = "equidist scan";
  o.rep.meta["check"] = "max over scanned n of the interval discrepancy of {alpha p_m}, n < m <= n + k";
  describe_alpha(o.rep.meta, alpha, precision);
  o.rep.columns = {"k", "limit", "stride", "windows", "max_discrepancy", "argmax_n"};
  o.rep.add_row({k, limit, stride, s.windows, s.max_discrepancy, s.argmax_start});
  o.rep.verdict = "computed";
  return o;
}

Outcome equidist_approx(const std::string& alpha_text, unsigned precision, std::uint64_t Q) {
  const auto alpha = equidist::Alpha::parse(alpha_text, precision);
  const auto ap = equidist::dirichlet_approx(alpha, Q);
  const bool ok = equidist::satisfies_dirichlet(alpha, ap);
  Outcome o;
  o.rep.meta["command"] = "equidist approx";
  o.rep.meta["check"] = "gcd(a,q) = 1, q <= Q, |alpha - a/q| <= 1/(qQ)";
  describe_alpha(o.rep.meta, alpha, precision);
  o.rep.columns = {"a", "q", "Q", "err", "pass"};
  o.rep.add_row({ap.a.str(), ap.q, ap.Q, ap.err, ok});
  o.code = ok ? kVerified : kVerificationFailure;
  o.rep.verdict = ok ? "verified" : "failed";
  return o;
}

Outcome equidist_string(std::uint64_t q, std::uint64_t a, std::uint64_t m, std::uint64_t limit) {
  const PrimeTable table = sieve_primes(limit);
  const auto s = equidist::find_prime_string(q, a, m, limit, table);
  Outcome o;
  o.rep.meta["command"] = "equidist string";
  o.rep.meta["check"] = "first run of m consecutive primes all congruent to a mod q";
  o.rep.columns = {"q", "a", "m", "r", "primes", "diameter"};
  if (!s) {
    o.code = kHorizonExhausted;
    o.rep.meta["horizon"] = limit;
    o.rep.verdict = "horizon-exhausted";
    return o;
  }
  o.rep.add_row({q, s->a, m, s->r, join(s->primes), s->diameter});
  o.rep.verdict = "found";
  return o;
}

Outcome equidist_cluster(const std::string& alpha_text, unsigned precision, double delta, std::uint64_t m,
                         std::uint64_t limit, std::optional<std::uint64_t> C) {
  const auto alpha = equidist::Alpha::parse(alpha_text, precision);
  const PrimeTable table = sieve_primes(limit);
  const auto r = equidist::cluster_verify(alpha, delta, m, limit, table, C);
  Outcome o;
  o.rep.meta["command"] = "equidist cluster";
  o.rep.meta["check"] =
      "m consecutive primes = a mod q with diameter <= qC give ||alpha (p - p')|| <= C/Q <= delta and a "
      "window discrepancy >= 1 - delta";
  describe_alpha(o.rep.meta, alpha, precision);
  Json attempts = Json::array();
  for (const auto& a : r.attempts)
    attempts.push_back({{"C", a.C}, {"Q", a.Q}, {"a", a.approx.a.str()}, {"q", a.approx.q}, {"found", a.found}});
  o.rep.meta["attempts"] = std::move(attempts);
  o.rep.columns = {"delta", "m", "C", "Q", "a", "q", "r", "primes", "diameter", "max_pair_distance",
                   "window_discrepancy", "verified"};
  if (!r.found) {
    o.code = kHorizonExhausted;
    o.rep.meta["horizon"] = limit;
    o.rep.verdict = "horizon-exhausted";
    return o;
  }
  const equidist::Alpha pair_dist(r.max_pair_numerator, alpha.den());
  o.rep.meta["max_pair_distance_exact"] = pair_dist.to_fraction();
  o.rep.meta["max_pair_distance_long_double"] = report::format_double(static_cast<double>(r.max_pair_distance_ld));
  o.rep.add_row({delta, m, r.used.C, r.used.Q, r.used.approx.a.str(), r.used.approx.q, r.string->r,
                 join(r.string->primes), r.string->diameter, pair_dist.to_decimal(30), r.window_discrepancy,
                 r.verified});
  o.code = r.verified ? kVerified : kVerificationFailure;
  o.rep.verdict = r.verified ? "verified" : "failed";
  return o;
}

}  // namespace

unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag) return std::max(1u, *flag);
  if (const char* env = std::getenv("ERDOS_TRIO_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite verifications for binomial thresholds, a rigid additive basis, and {alpha p} clustering",
               "erdos_trio"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "table";
  std::optional<unsigned> threads;
  app.add_option("--format", format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--output", cfg.output, "write the report to this file");
  app.add_option("--seed", cfg.seed, "seed for randomized partition rules");
  app.add_option("--precision", cfg.precision, "bits used when rounding a decimal alpha")->check(CLI::Range(16, 8192));
  app.add_option("--threads", threads, "worker threads (default: ERDOS_TRIO_THREADS or 1)")->check(CLI::Range(1, 1024));
  app.add_flag("--timing", cfg.timing, "add elapsed seconds to the metadata");

  // binomial
  auto* binomial = app.add_subcommand("binomial", "small prime parts of binomial coefficients");
  binomial->require_subcommand(1);
  std::string n_text;
  bool trace = false;
  auto* b_f = binomial->add_subcommand("f", "least k with u(n,k) > n^2");
  b_f->add_option("--n", n_text)->required();
  b_f->add_flag("--trace", trace, "emit one row per scanned k");
  std::uint64_t from = 1, to = 1, stride = 1;
  auto* b_scan = binomial->add_subcommand("f-scan", "f(n) over a range of n");
  b_scan->add_option("--from", from)->required();
  b_scan->add_option("--to", to)->required();
  b_scan->add_option("--stride", stride);
  double C = binomial::default_certificate_constant();
  auto* b_cert = binomial->add_subcommand("certificate", "averaging certificate for f(n) <= C (log n)^2");
  b_cert->add_option("--n", n_text)->required();
  b_cert->add_option("--C", C);
  std::uint64_t K = 0;
  auto* b_wit = binomial->add_subcommand("witness", "u(M_K - 1, k) = 1 for all k <= K");
  b_wit->add_option("--K", K)->required();

  // basis
  auto* basis_cmd = app.add_subcommand("basis", "the staged order-2 basis A");
  basis_cmd->require_subcommand(1);
  unsigned stage = 0;
  std::string rule_text;
  std::uint64_t n_value = 0;
  auto* a_cover = basis_cmd->add_subcommand("cover", "[4, 6*5^k] inside A_k + A_k");
  a_cover->add_option("--k", stage)->required();
  auto* a_rig = basis_cmd->add_subcommand("rigidity", "J_k only from c_k + B_k");
  a_rig->add_option("--k", stage)->required();
  auto* a_gaps = basis_cmd->add_subcommand("gaps", "gap of length 5^(k-1) in one colour class");
  a_gaps->add_option("--rule", rule_text, "all-c-to-1, alternating, random (uses --seed) or random:<seed>")
      ->required();
  a_gaps->add_option("--k", stage)->required();
  auto* a_reps = basis_cmd->add_subcommand("reps", "all representations n = a + b");
  a_reps->add_option("--n", n_value)->required();

  // equidist
  auto* eq = app.add_subcommand("equidist", "windowed discrepancy of {alpha p_n}");
  eq->require_subcommand(1);
  std::string alpha_text;
  std::uint64_t k = 0, limit = 0, Q = 0, q = 0, a = 0, m = 0;
  double delta = 0.0;
  std::optional<std::uint64_t> C_target;
  std::uint64_t scan_stride = 1;
  auto* e_scan = eq->add_subcommand("scan", "max window discrepancy over scanned starts");
  e_scan->add_option("--alpha", alpha_text)->required();
  e_scan->add_option("--k", k)->required();
  e_scan->add_option("--limit", limit)->required();
  e_scan->add_option("--stride", scan_stride);
  auto* e_approx = eq->add_subcommand("approx", "Dirichlet approximant with q <= Q");
  e_approx->add_option("--alpha", alpha_text)->required();
  e_approx->add_option("--Q", Q)->required();
  auto* e_string = eq->add_subcommand("string", "consecutive primes in one residue class");
  e_string->add_option("--q", q)->required();
  e_string->add_option("--a", a)->required();
  e_string->add_option("--m", m)->required();
  e_string->add_option("--limit", limit)->required();
  auto* e_cluster = eq->add_subcommand("cluster", "m consecutive primes with {alpha p} within delta");
  e_cluster->add_option("--alpha", alpha_text)->required();
  e_cluster->add_option("--delta", delta)->required();
  e_cluster->add_option("--m", m)->required();
  e_cluster->add_option("--limit", limit)->required();
  e_cluster->add_option("--C", C_target, "fixed stand-in for the string-diameter constant");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  cfg.format = format == "csv" ? report::Format::csv : format == "json" ? report::Format::json : report::Format::table;
  cfg.threads = resolve_threads(threads);

  Outcome outcome;
  const auto started = std::chrono::steady_clock::now();
  try {
    if (b_f->parsed()) outcome = binomial_f(n_text, trace);
    else if (b_scan->parsed()) outcome = binomial_f_scan(from, to, stride, cfg.threads);
    else if (b_cert->parsed()) outcome = binomial_certificate(n_text, C);
    else if (b_wit->parsed()) outcome = binomial_witness(K);
    else if (a_cover->parsed()) outcome = basis_cover(stage);
    else if (a_rig->parsed()) outcome = basis_rigidity(stage);
    else if (a_gaps->parsed()) {
      const std::string text = rule_text == "random" ? "random:" + std::to_string(cfg.seed) : rule_text;
      const auto rule = basis::parse_rule(text);
      if (!rule) throw ContractError("unknown --rule '" + rule_text + "'");
      outcome = basis_gaps(*rule, stage);
    } else if (a_reps->parsed()) outcome = basis_reps(n_value);
    else if (e_scan->parsed()) outcome = equidist_scan(alpha_text, cfg.precision, k, limit, scan_stride, cfg.threads);
    else if (e_approx->parsed()) outcome = equidist_approx(alpha_text, cfg.precision, Q);
    else if (e_string->parsed()) outcome = equidist_string(q, a, m, limit);
    else if (e_cluster->parsed()) outcome = equidist_cluster(alpha_text, cfg.precision, delta, m, limit, C_target);
    else {
      err << app.help();
      return kUsage;
    }
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailure;
  }

  if (cfg.timing)
    outcome.rep.meta["seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  if (cfg.output.empty()) {
    report::write(outcome.rep, cfg.format, out);
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.output << '\n';
      return kUsage;
    }
    report::write(outcome.rep, cfg.format, file);
  }
  return outcome.code;
}

}  // namespace erdos::cli
