#pragma once

// Windowed discrepancy of {alpha p_n}, Dirichlet approximation, runs of
// consecutive primes in one residue class, and the clustering argument that
// combines them.
//
// alpha is carried as an exact rational. Decimal input is rounded once, at a
// chosen binary precision, and every fractional part {alpha p} afterwards is
// exact integer arithmetic.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "erdos/primes.hpp"

namespace erdos::equidist {

using Integer = boost::multiprecision::cpp_int;

inline constexpr unsigned kDefaultPrecisionBits = 192;

/// An exact real num / den with den >= 1 and gcd(num, den) = 1.
class Alpha {
 public:
  Alpha() = default;
  Alpha(Integer num, Integer den);

  static Alpha from_double(double x);
  /// Accepts "p/q" (exact), or a decimal like "-1.25e-3" rounded to the
  /// nearest multiple of 2^-precision_bits. Throws ContractError on junk.
  static Alpha parse(const std::string& text, unsigned precision_bits = kDefaultPrecisionBits);

  const Integer& num() const noexcept { return num_; }
  const Integer& den() const noexcept { return den_; }

  /// r with {alpha * x} = r / den, 0 <= r < den.
  Integer frac_numerator(const Integer& x) const;
  /// {alpha * x} rounded to double.
  double frac_of_multiple(std::uint64_t x) const;
  /// ||alpha * x||, the distance to the nearest integer, as an exact
  /// numerator over den().
  Integer dist_to_integer_numerator(const Integer& x) const;

  double to_double() const;
  /// Decimal with `digits` digits after the point (truncated).
  std::string to_decimal(unsigned digits) const;
  /// "num/den".
  std::string to_fraction() const;

  friend bool operator==(const Alpha&, const Alpha&) = default;

 private:
  Integer num_ = 0;
  Integer den_ = 1;
};

/// r / den as the nearest-below double (0 <= r < den).
double ratio_to_double(const Integer& r, const Integer& den);

struct WindowSample {
  std::uint64_t start = 0;  // n; the window holds p_{n+1}, ..., p_{n+k}
  std::uint64_t size = 0;   // k
  std::vector<double> points;  // {alpha p_m}, ascending
};

WindowSample window_sample(const Alpha& alpha, std::uint64_t n, std::uint64_t k,
                           const PrimeTable& table);

/// sup over closed I in [0,1] of |#{x in I} - |I| k| / k for ascending points,
/// in O(k). Degenerate intervals [a,a] are included, so one point gives 1.
///
/// With sentinels x_0 = 0 and x_{k+1} = 1 the supremum is the larger of
///   excess:  (j - i + 1)/k - (x_j - x_i),  1 <= i <= j <= k   (I = [x_i, x_j])
///   deficit: (x_j - x_i) - (j - i - 1)/k,  0 <= i < j <= k+1  (I -> (x_i, x_j))
/// The deficit value is a supremum, approached but not attained by closed
/// intervals. Both maxima split into prefix maxima, hence one pass.
/// Works for any ordered field type (double, cpp_rational, ...).
template <typename Real>
Real interval_discrepancy_of(std::span<const Real> x) {
  const std::size_t k = x.size();
  if (k == 0) return Real(0);
  const Real kr(static_cast<long long>(k));
  auto at = [&](std::size_t j) -> Real {  // sentinel-extended, 0..k+1
    if (j == 0) return Real(0);
    if (j == k + 1) return Real(1);
    return x[j - 1];
  };
  auto frac = [&](long long num) { return Real(num) / kr; };

  Real best(0);
  // excess: max_j (j/k - x_j) + max_{1<=i<=j} (x_i - (i-1)/k)
  Real lead = at(1) - frac(0);
  for (std::size_t j = 1; j <= k; ++j) {
    const Real cand = at(j) - frac(static_cast<long long>(j) - 1);
    if (cand > lead) lead = cand;
    const Real v = frac(static_cast<long long>(j)) - at(j) + lead;
    if (v > best) best = v;
  }
  // deficit: max_j (x_j - (j-1)/k) + max_{0<=i<j} (i/k - x_i)
  Real trail = frac(0) - at(0);
  for (std::size_t j = 1; j <= k + 1; ++j) {
    const Real v = at(j) - frac(static_cast<long long>(j) - 1) + trail;
    if (v > best) best = v;
    const Real cand = frac(static_cast<long long>(j)) - at(j);
    if (cand > trail) trail = cand;
  }
  if (best > Real(1)) best = Real(1);
  return best;
}

double interval_discrepancy(std::span<const double> sorted_points);
inline double interval_discrepancy(const WindowSample& s) { return interval_discrepancy(s.points); }

/// The same supremum as the maximum of the two pairwise families, O(k^2).
double interval_discrepancy_pairwise(std::span<const double> sorted_points);

/// Star discrepancy over anchored intervals [0, x).
double star_discrepancy(std::span<const double> sorted_points);

struct WindowStatistic {
  double max_discrepancy = 0.0;
  std::uint64_t argmax_start = 0;  // smallest n attaining the max
  std::uint64_t windows = 0;
};

/// max over n in {0, stride, ..., <= scan_limit} of the window discrepancy.
/// A lower bound for the sup over all n. `threads` only affects speed.
WindowStatistic well_distribution_statistic(const Alpha& alpha, std::uint64_t k,
                                            std::uint64_t scan_limit, std::uint64_t stride,
                                            const PrimeTable& table, unsigned threads = 1);

struct Approximant {
  Integer a = 0;
  std::uint64_t q = 1;
  std::uint64_t Q = 1;
  double err = 0.0;  // |alpha - a/q|
};

/// Reduced a/q with q <= Q and |alpha - a/q| <= 1/(qQ), from continued
/// fraction convergents (falls back to dirichlet_exhaustive).
Approximant dirichlet_approx(const Alpha& alpha, std::uint64_t Q);
/// Smallest q <= Q admitting such an a, by direct search.
Approximant dirichlet_exhaustive(const Alpha& alpha, std::uint64_t Q);
/// Checks the three guarantees exactly.
bool satisfies_dirichlet(const Alpha& alpha, const Approximant& approx);

struct PrimeString {
  std::uint64_t q = 1;
  std::uint64_t a = 0;
  std::uint64_t m = 0;
  std::uint64_t r = 0;  // primes are p_{r+1}, ..., p_{r+m}
  std::vector<std::uint64_t> primes;
  std::uint64_t diameter = 0;
};

/// First (minimal r) run of m consecutive primes, all <= limit and all
/// congruent to a mod q; optionally also with diameter <= max_diameter.
std::optional<PrimeString> find_prime_string(std::uint64_t q, std::uint64_t a, std::uint64_t m,
                                             std::uint64_t limit, const PrimeTable& table,
                                             std::optional<std::uint64_t> max_diameter = {});

struct ClusterAttempt {
  std::uint64_t C = 0;  // stand-in for the string-diameter constant
  std::uint64_t Q = 0;
  Approximant approx;
  bool found = false;
};

struct ClusterReport {
  Alpha alpha;
  double delta = 0.0;
  std::uint64_t m = 0;
  std::uint64_t limit = 0;
  std::vector<ClusterAttempt> attempts;
  bool found = false;
  std::optional<PrimeString> string;
  ClusterAttempt used;
  /// max over pairs of ||alpha (p - p')||, exact numerator over alpha.den().
  Integer max_pair_numerator = 0;
  double max_pair_distance = 0.0;
  /// The same maximum recomputed in long double from the decimal value.
  long double max_pair_distance_ld = 0.0L;
  bool pairs_within_delta = false;  // exact comparison
  bool bound_certified = false;     // diameter <= q C and C <= delta Q
  double window_discrepancy = 0.0;
  WindowSample window;
  bool verified = false;
};

/// Searches for m consecutive primes whose {alpha p} lie within delta of each
/// other: for C = 1, 2, 4, ... (or just c_target when given) take
/// Q = ceil(C / delta), the Dirichlet approximant a/q, and the first string of
/// m consecutive primes = a mod q with diameter <= qC. A hit is re-verified
/// pair by pair and through the window discrepancy.
ClusterReport cluster_verify(const Alpha& alpha, double delta, std::uint64_t m, std::uint64_t limit,
                             const PrimeTable& table, std::optional<std::uint64_t> c_target = {});

}  // namespace erdos::equidist
