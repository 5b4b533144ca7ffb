#pragma once

// Small-prime parts of binomial coefficients.
//
// u(n, k) is the part of C(n, k) built from primes p <= k, and f(n) is the
// least k in [0, n] with u(n, k) > n^2. Valuations are computed from
// residues n mod p^t only, so n may be astronomically large.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "erdos/primes.hpp"

namespace erdos::binomial {

/// Width of the log-space band in which u(n,k) > n^2 is re-decided exactly.
inline constexpr double kGuardBand = 1e-6;

/// 24 / (pi^2 - 6) + 0.01, the certificate constant with a little slack.
double default_certificate_constant();

/// v_p(C(n,k)) as #{t >= 1 : n mod p^t < k mod p^t}.
std::uint32_t valuation_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t p);
std::uint32_t valuation_binomial(const Natural& n, std::uint64_t k, std::uint64_t p);

/// v_p(C(n,k)) = sum_t floor(n/p^t) - floor((n-k)/p^t) - floor(k/p^t).
std::uint32_t valuation_binomial_legendre(std::uint64_t n, std::uint64_t k, std::uint64_t p);

struct ValuationProfile {
  Natural n;
  std::uint64_t k = 0;
  std::map<std::uint64_t, std::uint32_t> valuations;  // every prime p <= k
  double log_u = 0.0;

  /// prod p^v_p over the profile.
  Natural exact_u() const;
};

ValuationProfile u_profile(const Natural& n, std::uint64_t k);

struct ThresholdResult {
  Natural n;
  std::optional<std::uint64_t> f;
  /// The comparison that decided f (or the last one, for "none") was exact.
  bool decided_exactly = false;
  /// How many comparisons in the scan fell inside the guard band.
  std::uint64_t exact_fallbacks = 0;
  /// log u(n, f) when f exists.
  double log_u = 0.0;
};

/// One step of the threshold scan, kept for reporting.
struct ScanRow {
  std::uint64_t k = 0;
  double log_u = 0.0;
  bool exact = false;   // decided by big-integer comparison
  bool exceeds = false; // u(n,k) > n^2
};

ThresholdResult f_threshold(const Natural& n, std::vector<ScanRow>* trace = nullptr);

/// Per-j quantities from the averaging argument for the upper bound.
struct CertificateTerm {
  std::uint64_t j = 0;
  std::uint64_t prime_bound = 0;  // floor(Y / j)
  double theta = 0.0;             // sum of log p over p <= Y/j
  double weighted_gap = 0.0;      // sum of (p - n mod p) log p
  std::uint64_t block_count = 0;  // floor(Y / (j log n))
};

struct CertificateReport {
  Natural n;
  double C = 0.0;
  std::uint64_t Y = 0;
  double average = 0.0;      // (1/Y) sum_{k=1..Y} log u(n,k)
  double target = 0.0;       // 2 log n
  bool certifies = false;    // average > target, hence f(n) <= Y
  std::uint64_t argmax_k = 0;
  double max_log_u = 0.0;
  std::vector<CertificateTerm> terms;
};

CertificateReport certificate_average(const Natural& n, double C);

struct WitnessMK {
  std::uint64_t K = 0;
  Natural M;
  std::map<std::uint64_t, unsigned> exponents;  // p -> floor(log_p K) + 1
  double log_ratio = 0.0;                       // log(M_K) / K
};

/// Builds M_K and verifies u(M_K - 1, k) == 1 for all k <= K together with
/// the residue inequalities that force it. Throws VerificationError if any
/// check fails.
WitnessMK lower_bound_witness(std::uint64_t K);

}  // namespace erdos::binomial
