#include "erdos/binomial.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "erdos/errors.hpp"

namespace erdos::binomial {

namespace {

void require_k_le_n(const Natural& n, std::uint64_t k) {
  if (n < k) throw ContractError("binomial needs k <= n (k = " + std::to_string(k) + ")");
}

bool fits_u64(const Natural& n) {
  return n >= 0 && n <= std::numeric_limits<std::uint64_t>::max();
}

}  // namespace

double default_certificate_constant() {
  return 24.0 / (std::numbers::pi * std::numbers::pi - 6.0) + 0.01;
}

std::uint32_t valuation_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (k > n) throw ContractError("binomial needs k <= n (k = " + std::to_string(k) + ")");
  if (p < 2) throw ContractError("valuation base must be prime");
  std::uint32_t v = 0;
  for (std::uint64_t pt = p;; pt *= p) {
    if (n % pt < k % pt) ++v;
    if (pt > n / p) break;  // next p^t exceeds n
  }
  return v;
}

std::uint32_t valuation_binomial(const Natural& n, std::uint64_t k, std::uint64_t p) {
  require_k_le_n(n, k);
  if (fits_u64(n)) return valuation_binomial(static_cast<std::uint64_t>(n), k, p);
  if (p < 2) throw ContractError("valuation base must be prime");

  // Below the first p^T > k every residue fits in 64 bits: p^T <= k * p.
  std::uint64_t top = p;
  unsigned T = 1;
  while (top <= k) {
    top *= p;
    ++T;
  }
  const std::uint64_t r = residue(n, top);
  std::uint32_t v = 0;
  std::uint64_t pt = p;
  for (unsigned t = 1; t <= T; ++t, pt *= p)
    if (r % pt < k % pt) ++v;
  if (r >= k) return v;

  // Past p^T, n mod p^t only grows, and stays below k exactly while the
  // corresponding base-p digits of n are zero.
  Natural rest = n / top;
  while (rest > 0) {
    if (rest % p != 0) break;
    ++v;
    rest /= p;
  }
  return v;
}

std::uint32_t valuation_binomial_legendre(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (k > n) throw ContractError("binomial needs k <= n (k = " + std::to_string(k) + ")");
  if (p < 2) throw ContractError("valuation base must be prime");
  std::uint64_t v = 0;
  for (std::uint64_t pt = p;; pt *= p) {
    v += n / pt - (n - k) / pt - k / pt;
    if (pt > n / p) break;
  }
  return static_cast<std::uint32_t>(v);
}

Natural ValuationProfile::exact_u() const {
  Natural u = 1;
  for (auto [p, v] : valuations) u *= boost::multiprecision::pow(Natural(p), v);
  return u;
}

ValuationProfile u_profile(const Natural& n, std::uint64_t k) {
  require_k_le_n(n, k);
  ValuationProfile prof{n, k, {}, 0.0};
  if (k < 2) return prof;
  auto table = shared_primes(k);
  for (std::uint64_t p : *table) {
    if (p > k) break;
    const std::uint32_t v = valuation_binomial(n, k, p);
    prof.valuations.emplace(p, v);
    prof.log_u += v * std::log(static_cast<double>(p));
  }
  return prof;
}

ThresholdResult f_threshold(const Natural& n, std::vector<ScanRow>* trace) {
  if (n < 1) throw ContractError("f(n) needs n >= 1");
  ThresholdResult res{n, std::nullopt, false, 0, 0.0};
  const double target = 2.0 * log_natural(n);
  const Natural n_squared = n * n;

  for (std::uint64_t k = 0; k <= n; ++k) {
    const ValuationProfile prof = u_profile(n, k);
    bool exact = false;
    bool exceeds;
    if (std::abs(prof.log_u - target) < kGuardBand) {
      exact = true;
      ++res.exact_fallbacks;
      exceeds = prof.exact_u() > n_squared;
    } else {
      exceeds = prof.log_u > target;
    }
    if (trace) trace->push_back({k, prof.log_u, exact, exceeds});
    res.decided_exactly = exact;
    if (exceeds) {
      res.f = k;
      res.log_u = prof.log_u;
      break;
    }
  }
  return res;
}

CertificateReport certificate_average(const Natural& n, double C) {
  if (n < 3) throw ContractError("certificate needs n >= 3");
  if (!(C > 0.0)) throw ContractError("certificate constant must be positive");
  const double log_n = log_natural(n);
  const double y_real = std::floor(C * log_n * log_n);
  if (y_real < 1.0) throw ContractError("Y = floor(C (log n)^2) is below 1");
  const auto Y = static_cast<std::uint64_t>(y_real);
  if (n < Y) throw ContractError("Y = floor(C (log n)^2) exceeds n");

  CertificateReport rep;
  rep.n = n;
  rep.C = C;
  rep.Y = Y;
  rep.target = 2.0 * log_n;

  auto table = shared_primes(std::max<std::uint64_t>(Y, 2));
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> residues;
  for (std::uint64_t p : *table) {
    if (p > Y) break;
    primes.push_back(p);
    residues.push_back(residue(n, p));
  }

  double total = 0.0;
  for (std::uint64_t k = 1; k <= Y; ++k) {
    double log_u = 0.0;
    for (std::uint64_t p : primes) {
      if (p > k) break;
      log_u += valuation_binomial(n, k, p) * std::log(static_cast<double>(p));
    }
    total += log_u;
    if (log_u > rep.max_log_u) {
      rep.max_log_u = log_u;
      rep.argmax_k = k;
    }
  }
  rep.average = total / static_cast<double>(Y);
  rep.certifies = rep.average > rep.target;

  for (std::uint64_t j = 2; Y / j >= 2; ++j) {
    CertificateTerm term;
    term.j = j;
    term.prime_bound = Y / j;
    term.block_count = static_cast<std::uint64_t>(
        std::floor(static_cast<double>(Y) / (static_cast<double>(j) * log_n)));
    for (std::size_t i = 0; i < primes.size() && primes[i] <= term.prime_bound; ++i) {
      const double lp = std::log(static_cast<double>(primes[i]));
      term.theta += lp;
      term.weighted_gap += static_cast<double>(primes[i] - residues[i]) * lp;
    }
    rep.terms.push_back(term);
  }
  return rep;
}

WitnessMK lower_bound_witness(std::uint64_t K) {
  if (K < 2) throw ContractError("witness needs K >= 2");
  WitnessMK w;
  w.K = K;
  w.M = 1;
  auto table = shared_primes(K);
  for (std::uint64_t p : *table) {
    if (p > K) break;
    const unsigned e = floor_log(K, p) + 1;
    w.exponents.emplace(p, e);
    w.M *= boost::multiprecision::pow(Natural(p), e);
  }
  const Natural n = w.M - 1;

  for (auto [p, e] : w.exponents) {
    const Natural pe = boost::multiprecision::pow(Natural(p), e);
    if (!(pe / p <= K && K < pe))
      throw VerificationError("exponent bound fails at p = " + std::to_string(p));
    // Residue inequalities for p^a, a <= e + 1; larger a follow from a = e.
    Natural pa = p;
    for (unsigned a = 1; a <= e + 1; ++a, pa *= p) {
      const Natural r = n % pa;
      for (std::uint64_t k = 0; k <= K; ++k) {
        if (r < Natural(k) % pa)
          throw VerificationError("(M_K - 1) mod " + pa.str() + " < " + std::to_string(k) +
                                  " mod " + pa.str());
      }
    }
  }
  for (std::uint64_t k = 0; k <= K; ++k) {
    const ValuationProfile prof = u_profile(n, k);
    if (prof.exact_u() != 1)
      throw VerificationError("u(M_K - 1, " + std::to_string(k) + ") != 1 for K = " +
                              std::to_string(K));
  }
  w.log_ratio = log_natural(w.M) / static_cast<double>(K);
  return w;
}

}  // namespace erdos::binomial
