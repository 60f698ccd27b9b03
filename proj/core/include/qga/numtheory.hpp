#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace qga::nt {

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t powmod(std::int64_t base, std::int64_t e, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t result = 1;
  base = mod(base, m);
  while (e > 0) {
    if (e & 1) result = static_cast<std::int64_t>((__int128)result * base % m);
    base = static_cast<std::int64_t>((__int128)base * base % m);
    e >>= 1;
  }
  return result;
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (auto p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

/// p-adic valuation; returns a large sentinel for n == 0.
inline int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) return 1 << 20;
  int v = 0;
  n = n < 0 ? -n : n;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Multiplicative order of a modulo m (gcd(a, m) must be 1); 1 for m == 1.
inline std::int64_t mult_order(std::int64_t a, std::int64_t m) {
  if (m == 1) return 1;
  a = mod(a, m);
  std::int64_t x = a, k = 1;
  while (x != 1) {
    x = static_cast<std::int64_t>((__int128)x * a % m);
    ++k;
  }
  return k;
}

inline bool is_power_of(std::int64_t n, std::int64_t p) {
  if (n < 1) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

/// Exponent e with p^e == n, or -1.
inline int log_exact(std::int64_t n, std::int64_t p) {
  if (n < 1) return -1;
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return n == 1 ? e : -1;
}

inline std::int64_t two_part(std::int64_t n) {
  std::int64_t t = 1;
  while (n % 2 == 0) {
    n /= 2;
    t *= 2;
  }
  return t;
}

}  // namespace qga::nt
