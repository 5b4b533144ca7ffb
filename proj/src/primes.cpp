#include "erdos/primes.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "erdos/errors.hpp"

namespace erdos {

namespace {

std::uint64_t isqrt(std::uint64_t x) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Odd-only occupancy sieve: slot i stands for 2i + 1.
std::vector<std::uint64_t> sieve_flat(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  out.push_back(2);
  const std::uint64_t slots = (limit - 1) / 2 + 1;  // odd numbers 1..limit
  std::vector<bool> composite(slots, false);
  composite[0] = true;  // 1
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = (p * p) / 2; j < slots; j += p) composite[j] = true;
  }
  for (std::uint64_t i = 1; i < slots; ++i)
    if (!composite[i]) out.push_back(2 * i + 1);
  return out;
}

std::vector<std::uint64_t> sieve_segmented(std::uint64_t limit,
                                           std::uint64_t segment_size) {
  const std::vector<std::uint64_t> base = sieve_flat(isqrt(limit));
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(
      1.1 * static_cast<double>(limit) / std::log(static_cast<double>(limit))));
  out.push_back(2);

  const std::uint64_t slots = (limit - 1) / 2 + 1;
  std::vector<char> seg(segment_size);
  // next[j] is the next slot to strike for base[j + 1] (odd primes only).
  std::vector<std::uint64_t> next;
  next.reserve(base.size());
  for (std::size_t j = 1; j < base.size(); ++j) next.push_back(base[j] * base[j] / 2);

  for (std::uint64_t lo = 0; lo < slots; lo += segment_size) {
    const std::uint64_t hi = std::min(slots, lo + segment_size);
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(hi - lo), 0);
    if (lo == 0) seg[0] = 1;
    for (std::size_t j = 0; j < next.size(); ++j) {
      const std::uint64_t p = base[j + 1];
      std::uint64_t s = next[j];
      for (; s < hi; s += p) seg[s - lo] = 1;
      next[j] = s;
    }
    for (std::uint64_t i = lo; i < hi; ++i)
      if (!seg[i - lo]) out.push_back(2 * i + 1);
  }
  return out;
}

}  // namespace

std::uint64_t PrimeTable::nth(std::size_t n) const {
  if (n == 0 || n > primes_.size())
    throw ContractError("prime rank " + std::to_string(n) + " outside table of " +
                        std::to_string(primes_.size()));
  return primes_[n - 1];
}

std::optional<std::size_t> PrimeTable::index_of(std::uint64_t p) const noexcept {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - primes_.begin()) + 1;
}

bool PrimeTable::is_prime(std::uint64_t x) const {
  if (x > limit_) throw ContractError("is_prime beyond table limit");
  return std::binary_search(primes_.begin(), primes_.end(), x);
}

std::size_t PrimeTable::count_up_to(std::uint64_t x) const {
  if (x > limit_) throw ContractError("count_up_to beyond table limit");
  return static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

PrimeTable sieve_primes(std::uint64_t limit) { return sieve_primes(limit, SieveConfig{}); }

PrimeTable sieve_primes(std::uint64_t limit, const SieveConfig& config) {
  if (limit > config.max_limit)
    throw ResourceError("sieve limit " + std::to_string(limit) +
                        " exceeds memory budget " + std::to_string(config.max_limit));
  if (limit <= config.segment_threshold) return PrimeTable(limit, sieve_flat(limit));
  return PrimeTable(limit, sieve_segmented(limit, std::max<std::uint64_t>(config.segment_size, 1024)));
}

std::shared_ptr<const PrimeTable> shared_primes(std::uint64_t limit) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeTable> cached;
  std::lock_guard lock(mu);
  if (!cached || cached->limit() < limit) {
    const std::uint64_t grown = std::max<std::uint64_t>(limit, cached ? 2 * cached->limit() : 1 << 16);
    cached = std::make_shared<const PrimeTable>(sieve_primes(grown));
  }
  return cached;
}

bool is_prime_u64(std::uint64_t x) {
  if (x < 2) return false;
  if (x < 4) return true;
  if (x % 2 == 0) return false;
  const std::uint64_t r = isqrt(x);
  if (r <= (1u << 20)) {
    auto table = shared_primes(std::max<std::uint64_t>(r, 2));
    if (x <= table->limit()) return table->is_prime(x);
    for (std::uint64_t p : *table) {
      if (p > r) break;
      if (x % p == 0) return false;
    }
    return true;
  }
  for (std::uint64_t d = 3; d <= r; d += 2)
    if (x % d == 0) return false;
  return true;
}

std::uint64_t residue(const Natural& n, std::uint64_t m) {
  if (m == 0) throw ContractError("residue modulo zero");
  if (n < 0) throw ContractError("residue of a negative number");
  return static_cast<std::uint64_t>(n % m);
}

std::uint64_t factorial_valuation(std::uint64_t n, std::uint64_t p) {
  if (!is_prime_u64(p)) throw ContractError(std::to_string(p) + " is not prime");
  std::uint64_t v = 0;
  for (std::uint64_t q = n / p; q > 0; q /= p) v += q;
  return v;
}

Natural DigitExpansion::value() const {
  Natural v = 0;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) v = v * base + *it;
  return v;
}

DigitExpansion to_digits(const Natural& n, std::uint64_t base) {
  if (base < 2) throw ContractError("digit base must be >= 2");
  if (n < 0) throw ContractError("digits of a negative number");
  DigitExpansion out{base, {}};
  Natural rest = n;
  while (rest > 0) {
    out.digits.push_back(static_cast<std::uint64_t>(rest % base));
    rest /= base;
  }
  if (out.digits.empty()) out.digits.push_back(0);
  return out;
}

unsigned floor_log(std::uint64_t x, std::uint64_t p) {
  if (x == 0 || p < 2) throw ContractError("floor_log needs x >= 1 and p >= 2");
  unsigned e = 0;
  while (x >= p) {
    x /= p;
    ++e;
  }
  return e;
}

double log_natural(const Natural& n) {
  if (n <= 0) throw ContractError("log of a non-positive number");
  const std::size_t bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 64) return std::log(static_cast<double>(static_cast<std::uint64_t>(n)));
  const std::size_t shift = bits - 64;
  const auto top = static_cast<std::uint64_t>(n >> shift);
  return std::log(static_cast<double>(top)) + static_cast<double>(shift) * std::log(2.0);
}

}  // namespace erdos
