#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace erdos {

using Natural = boost::multiprecision::cpp_int;

struct SieveConfig;

/// Immutable table of all primes up to `limit`, ascending.
///
/// Ranks are 1-based: `nth(1) == 2`, matching the usual p_1 = 2 convention.
class PrimeTable {
 public:
  PrimeTable() = default;

  std::uint64_t limit() const noexcept { return limit_; }
  std::size_t size() const noexcept { return primes_.size(); }
  bool empty() const noexcept { return primes_.empty(); }

  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  auto begin() const noexcept { return primes_.begin(); }
  auto end() const noexcept { return primes_.end(); }

  /// p_n for 1 <= n <= size(); throws ContractError otherwise.
  std::uint64_t nth(std::size_t n) const;

  /// Rank n with p_n == p, or nullopt when p is not a tabulated prime.
  std::optional<std::size_t> index_of(std::uint64_t p) const noexcept;

  /// Membership for 0 <= x <= limit(); throws ContractError beyond.
  bool is_prime(std::uint64_t x) const;

  /// Number of primes <= x (x may exceed limit only if x <= limit()).
  std::size_t count_up_to(std::uint64_t x) const;

 private:
  friend PrimeTable sieve_primes(std::uint64_t limit, const SieveConfig& config);
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
};

struct SieveConfig {
  /// Largest limit accepted; beyond it sieve_primes throws ResourceError.
  std::uint64_t max_limit = 4'000'000'000ULL;
  /// Limits above this use the segmented sieve.
  std::uint64_t segment_threshold = 1ULL << 22;
  /// Odd numbers per segment.
  std::uint64_t segment_size = 1ULL << 18;
};

PrimeTable sieve_primes(std::uint64_t limit);
PrimeTable sieve_primes(std::uint64_t limit, const SieveConfig& config);

/// Shared table covering at least `limit`. Grows on demand, thread-safe.
std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit);

/// Deterministic primality for 64-bit inputs (trial division by the cached
/// table; intended for argument validation, not for big searches).
bool is_prime_u64(std::uint64_t x);

/// n mod m in [0, m). m == 0 throws ContractError.
std::uint64_t residue(const Natural& n, std::uint64_t m);

/// v_p(n!) by Legendre's sum of floor(n / p^t).
std::uint64_t factorial_valuation(std::uint64_t n, std::uint64_t p);

/// Base-`base` digits of a natural number, least significant first.
struct DigitExpansion {
  std::uint64_t base = 10;
  std::vector<std::uint64_t> digits;

  Natural value() const;
};

DigitExpansion to_digits(const Natural& n, std::uint64_t base);

/// floor(log_p(x)) for x >= 1, p >= 2, computed in integers.
unsigned floor_log(std::uint64_t x, std::uint64_t p);

/// Natural logarithm of an arbitrary-precision natural (n >= 1).
double log_natural(const Natural& n);

}  // namespace erdos
