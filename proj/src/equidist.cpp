#include "erdos/equidist.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "erdos/errors.hpp"

namespace erdos::equidist {

namespace mp = boost::multiprecision;
using Rational = mp::cpp_rational;

namespace {

// floor(a / b) for b > 0
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

Integer mod_nonneg(const Integer& a, const Integer& b) {
  Integer r = a % b;
  if (r < 0) r += b;
  return r;
}

Integer parse_integer(const std::string& s) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  if (i == s.size()) throw ContractError("not an integer: '" + s + "'");
  Integer v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ContractError("not an integer: '" + s + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? Integer(-v) : v;
}

Rational exact_double(double x) {
  const Alpha a = Alpha::from_double(x);
  return Rational(a.num(), a.den());
}

}  // namespace

Alpha::Alpha(Integer num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw ContractError("zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const Integer g = mp::gcd(mp::abs(num_), den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Alpha Alpha::from_double(double x) {
  if (!std::isfinite(x)) throw ContractError("alpha must be finite");
  if (x == 0.0) return Alpha(0, 1);
  int exp = 0;
  const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5, 1)
  const auto bits = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Integer num = bits;
  Integer den = 1;
  if (exp >= 0)
    num <<= exp;
  else
    den <<= -exp;
  return Alpha(num, den);
}

Alpha Alpha::parse(const std::string& raw, unsigned precision_bits) {
  if (precision_bits < 16 || precision_bits > 8192)
    throw ContractError("precision must be between 16 and 8192 bits");
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  if (text.empty()) throw ContractError("empty alpha");

  if (const auto slash = text.find('/'); slash != std::string::npos)
    return Alpha(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));

  // [sign] digits [. digits] [e [sign] digits]
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') neg = text[i++] == '-';
  Integer mantissa = 0;
  long long scale = 0;  // value = mantissa * 10^scale
  bool any_digit = false;
  for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
    mantissa = mantissa * 10 + (text[i] - '0');
    any_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    for (++i; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
      mantissa = mantissa * 10 + (text[i] - '0');
      --scale;
      any_digit = true;
    }
  }
  if (!any_digit) throw ContractError("not a number: '" + raw + "'");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    const std::string e = text.substr(i + 1);
    if (e.empty() || e.size() > 6) throw ContractError("bad exponent in '" + raw + "'");
    scale += static_cast<long long>(parse_integer(e));
    i = text.size();
  }
  if (i != text.size()) throw ContractError("not a number: '" + raw + "'");

  Integer num = mantissa;
  Integer den = 1;
  if (scale >= 0)
    num *= mp::pow(Integer(10), static_cast<unsigned>(scale));
  else
    den = mp::pow(Integer(10), static_cast<unsigned>(-scale));
  // Round |value| to the nearest multiple of 2^-precision_bits.
  const Integer two_p = Integer(1) << precision_bits;
  Integer rounded = (2 * num * two_p + den) / (2 * den);
  if (neg) rounded = -rounded;
  return Alpha(rounded, two_p);
}

Integer Alpha::frac_numerator(const Integer& x) const { return mod_nonneg(num_ * x, den_); }

double Alpha::frac_of_multiple(std::uint64_t x) const {
  return ratio_to_double(frac_numerator(Integer(x)), den_);
}

Integer Alpha::dist_to_integer_numerator(const Integer& x) const {
  const Integer r = frac_numerator(x);
  return std::min(r, Integer(den_ - r));
}

double Alpha::to_double() const {
  const Integer whole = floor_div(num_, den_);
  return static_cast<double>(whole) + ratio_to_double(num_ - whole * den_, den_);
}

std::string Alpha::to_decimal(unsigned digits) const {
  const bool neg = num_ < 0;
  const Integer mag = mp::abs(num_);
  const Integer whole = mag / den_;
  Integer scaled = (mag % den_) * mp::pow(Integer(10), digits) / den_;
  std::string frac = scaled.str();
  if (frac.size() < digits) frac.insert(0, digits - frac.size(), '0');
  std::string out = (neg ? "-" : "") + whole.str();
  if (digits > 0) out += "." + frac;
  return out;
}

std::string Alpha::to_fraction() const { return num_.str() + "/" + den_.str(); }

double ratio_to_double(const Integer& r, const Integer& den) {
  // floor(r * 2^53 / den) is exactly representable, so the result is the
  // nearest double at or below r / den and stays inside [0, 1).
  const Integer scaled = (r << 53) / den;
  return std::ldexp(static_cast<double>(static_cast<std::uint64_t>(scaled)), -53);
}

WindowSample window_sample(const Alpha& alpha, std::uint64_t n, std::uint64_t k,
                           const PrimeTable& table) {
  if (k == 0) throw ContractError("window size must be >= 1");
  if (n + k > table.size())
    throw ContractError("prime table holds " + std::to_string(table.size()) + " primes, window needs " +
                        std::to_string(n + k));
  WindowSample s{n, k, {}};
  s.points.reserve(k);
  for (std::uint64_t m = n + 1; m <= n + k; ++m) s.points.push_back(alpha.frac_of_multiple(table.nth(m)));
  std::sort(s.points.begin(), s.points.end());
  return s;
}

double interval_discrepancy(std::span<const double> sorted_points) {
  if (sorted_points.empty()) throw ContractError("discrepancy of an empty sample");
  return interval_discrepancy_of<double>(sorted_points);
}

double interval_discrepancy_pairwise(std::span<const double> x) {
  const std::size_t k = x.size();
  if (k == 0) throw ContractError("discrepancy of an empty sample");
  const double kd = static_cast<double>(k);
  auto at = [&](std::size_t j) { return j == 0 ? 0.0 : j == k + 1 ? 1.0 : x[j - 1]; };
  double best = 0.0;
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = i; j <= k; ++j)
      best = std::max(best, static_cast<double>(j - i + 1) / kd - (at(j) - at(i)));
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = i + 1; j <= k + 1; ++j)
      best = std::max(best, (at(j) - at(i)) - static_cast<double>(j - i - 1) / kd);
  return std::min(best, 1.0);
}

double star_discrepancy(std::span<const double> x) {
  const std::size_t k = x.size();
  if (k == 0) throw ContractError("discrepancy of an empty sample");
  const double kd = static_cast<double>(k);
  double best = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    best = std::max(best, static_cast<double>(i) / kd - x[i - 1]);
    best = std::max(best, x[i - 1] - static_cast<double>(i - 1) / kd);
  }
  return best;
}

WindowStatistic well_distribution_statistic(const Alpha& alpha, std::uint64_t k,
                                            std::uint64_t scan_limit, std::uint64_t stride,
                                            const PrimeTable& table, unsigned threads) {
  if (k == 0) throw ContractError("window size must be >= 1");
  if (stride == 0) throw ContractError("stride must be >= 1");
  const std::uint64_t needed = scan_limit + k;
  if (needed > table.size())
    throw ContractError("scan needs " + std::to_string(needed) + " primes, table holds " +
                        std::to_string(table.size()));
  threads = std::max(1u, threads);

  std::vector<double> fracs(needed);
  std::vector<std::uint64_t> starts;
  for (std::uint64_t n = 0; n <= scan_limit; n += stride) starts.push_back(n);
  std::vector<double> scores(starts.size());

  auto run_parallel = [&](std::size_t count, auto&& body) {
    const std::size_t workers = std::min<std::size_t>(threads, std::max<std::size_t>(count, 1));
    if (workers <= 1) {
      body(0, count);
      return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk, hi = std::min(count, lo + chunk);
      if (lo < hi) pool.emplace_back([&, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
  };

  const auto primes = table.primes();
  run_parallel(needed, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) fracs[i] = alpha.frac_of_multiple(primes[i]);
  });
  run_parallel(starts.size(), [&](std::size_t lo, std::size_t hi) {
    std::vector<double> window(k);
    for (std::size_t w = lo; w < hi; ++w) {
      const auto first = fracs.begin() + static_cast<std::ptrdiff_t>(starts[w]);
      std::copy(first, first + static_cast<std::ptrdiff_t>(k), window.begin());
      std::sort(window.begin(), window.end());
      scores[w] = interval_discrepancy_of<double>(window);
    }
  });

  WindowStatistic out;
  out.windows = starts.size();
  for (std::size_t w = 0; w < starts.size(); ++w) {
    if (w == 0 || scores[w] > out.max_discrepancy) {
      out.max_discrepancy = scores[w];
      out.argmax_start = starts[w];
    }
  }
  return out;
}

bool satisfies_dirichlet(const Alpha& alpha, const Approximant& ap) {
  if (ap.q < 1 || ap.q > ap.Q) return false;
  if (mp::gcd(mp::abs(ap.a), Integer(ap.q)) != 1) return false;
  const Integer gap = mp::abs(alpha.num() * ap.q - ap.a * alpha.den());
  return gap * ap.Q <= alpha.den();
}

namespace {

Approximant make_approximant(const Alpha& alpha, Integer a, std::uint64_t q, std::uint64_t Q) {
  const Integer gap = mp::abs(alpha.num() * q - a * alpha.den());
  const double err = static_cast<double>(Rational(gap, alpha.den() * q));
  return {std::move(a), q, Q, err};
}

}  // namespace

Approximant dirichlet_exhaustive(const Alpha& alpha, std::uint64_t Q) {
  if (Q == 0) throw ContractError("Q must be >= 1");
  for (std::uint64_t q = 1; q <= Q; ++q) {
    const Integer a = floor_div(2 * alpha.num() * q + alpha.den(), 2 * alpha.den());
    const Integer gap = mp::abs(alpha.num() * q - a * alpha.den());
    if (gap * Q <= alpha.den()) return make_approximant(alpha, a, q, Q);
  }
  throw VerificationError("no Dirichlet approximant found for Q = " + std::to_string(Q));
}

Approximant dirichlet_approx(const Alpha& alpha, std::uint64_t Q) {
  if (Q == 0) throw ContractError("Q must be >= 1");
  // Convergents h_i / k_i; keep the last with k_i <= Q.
  Integer h_prev = 1, h_prev2 = 0;
  Integer k_prev = 0, k_prev2 = 1;
  Integer num = alpha.num(), den = alpha.den();
  Integer best_h = 0;
  std::uint64_t best_k = 0;
  while (true) {
    const Integer a = floor_div(num, den);
    const Integer h = a * h_prev + h_prev2;
    const Integer k = a * k_prev + k_prev2;
    if (k > Q) break;
    best_h = h;
    best_k = static_cast<std::uint64_t>(k);
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    const Integer rem = num - a * den;
    if (rem == 0) break;
    num = den;
    den = rem;
  }
  if (best_k >= 1) {
    Approximant ap = make_approximant(alpha, best_h, best_k, Q);
    if (satisfies_dirichlet(alpha, ap)) return ap;
  }
  return dirichlet_exhaustive(alpha, Q);
}

std::optional<PrimeString> find_prime_string(std::uint64_t q, std::uint64_t a, std::uint64_t m,
                                             std::uint64_t limit, const PrimeTable& table,
                                             std::optional<std::uint64_t> max_diameter) {
  if (q == 0) throw ContractError("modulus must be >= 1");
  if (m == 0) throw ContractError("string length must be >= 1");
  if (std::gcd(a % q, q) != 1)
    throw ContractError("residue " + std::to_string(a) + " is not coprime to " + std::to_string(q));
  if (limit > table.limit())
    throw ContractError("search limit " + std::to_string(limit) + " exceeds prime table limit " +
                        std::to_string(table.limit()));
  const std::uint64_t cls = a % q;
  const auto primes = table.primes();
  std::size_t run_len = 0;
  for (std::size_t i = 0; i < primes.size() && primes[i] <= limit; ++i) {
    if (primes[i] % q != cls) {
      run_len = 0;
      continue;
    }
    ++run_len;
    if (run_len < m) continue;
    const std::size_t s = i + 1 - m;
    const std::uint64_t diameter = primes[i] - primes[s];
    if (max_diameter && diameter > *max_diameter) continue;
    PrimeString out{q, cls, m, s, {primes.begin() + static_cast<std::ptrdiff_t>(s),
                                  primes.begin() + static_cast<std::ptrdiff_t>(i + 1)},
                    diameter};
    return out;
  }
  return std::nullopt;
}

ClusterReport cluster_verify(const Alpha& alpha, double delta, std::uint64_t m, std::uint64_t limit,
                             const PrimeTable& table, std::optional<std::uint64_t> c_target) {
  if (!(delta > 0.0 && delta < 0.5)) throw ContractError("delta must lie in (0, 1/2)");
  if (m < 2) throw ContractError("string length m must be >= 2");
  if (limit > table.limit()) throw ContractError("search limit exceeds prime table limit");
  if (c_target && *c_target == 0) throw ContractError("C must be >= 1");

  const Rational delta_exact = exact_double(delta);
  ClusterReport rep;
  rep.alpha = alpha;
  rep.delta = delta;
  rep.m = m;
  rep.limit = limit;

  std::vector<std::uint64_t> schedule;
  if (c_target) {
    schedule.push_back(*c_target);
  } else {
    for (std::uint64_t C = 1; C <= std::max<std::uint64_t>(limit, 1); C *= 2) schedule.push_back(C);
  }

  for (std::uint64_t C : schedule) {
    // Q = ceil(C / delta)
    const Rational ratio = Rational(Integer(C)) / delta_exact;
    Integer Q = mp::numerator(ratio) / mp::denominator(ratio);
    if (Q * mp::denominator(ratio) < mp::numerator(ratio)) ++Q;
    if (Q > std::numeric_limits<std::uint32_t>::max()) break;
    ClusterAttempt attempt{C, static_cast<std::uint64_t>(Q), dirichlet_approx(alpha, static_cast<std::uint64_t>(Q)), false};
    const std::uint64_t q = attempt.approx.q;
    const auto cls = static_cast<std::uint64_t>(mod_nonneg(attempt.approx.a, Integer(q)));
    auto found = find_prime_string(q, cls, m, limit, table, q * C);
    attempt.found = found.has_value();
    rep.attempts.push_back(attempt);
    if (found) {
      rep.found = true;
      rep.string = std::move(found);
      rep.used = attempt;
      break;
    }
  }
  if (!rep.found) return rep;

  const PrimeString& s = *rep.string;
  const long double alpha_ld = std::strtold(alpha.to_decimal(40).c_str(), nullptr);
  for (std::size_t i = 0; i < s.primes.size(); ++i) {
    for (std::size_t j = i + 1; j < s.primes.size(); ++j) {
      const std::uint64_t d = s.primes[j] - s.primes[i];
      const Integer dist = alpha.dist_to_integer_numerator(Integer(d));
      rep.max_pair_numerator = std::max(rep.max_pair_numerator, dist);
      const long double x = alpha_ld * static_cast<long double>(d);
      rep.max_pair_distance_ld = std::max(rep.max_pair_distance_ld, std::fabs(x - std::nearbyint(x)));
    }
  }
  rep.max_pair_distance = ratio_to_double(rep.max_pair_numerator, alpha.den());
  rep.pairs_within_delta = Rational(rep.max_pair_numerator, alpha.den()) <= delta_exact;
  rep.bound_certified = satisfies_dirichlet(alpha, rep.used.approx) &&
                        s.diameter <= rep.used.approx.q * rep.used.C &&
                        Rational(Integer(rep.used.C)) <= delta_exact * Integer(rep.used.Q);

  rep.window = window_sample(alpha, s.r, m, table);
  std::vector<Rational> exact_points;
  for (std::uint64_t p : s.primes) exact_points.emplace_back(alpha.frac_numerator(Integer(p)), alpha.den());
  std::sort(exact_points.begin(), exact_points.end());
  const Rational disc = interval_discrepancy_of<Rational>(exact_points);
  rep.window_discrepancy = static_cast<double>(disc);
  rep.verified = rep.pairs_within_delta && rep.bound_certified && disc >= Rational(1) - delta_exact;
  return rep;
}

}  // namespace erdos::equidist
