#pragma once

// Exact integer utilities: 64-bit modular arithmetic, deterministic
// Miller-Rabin, square roots mod p, primitive roots. Everything here is
// plain number theory shared by the character-table pipeline.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "vanish/errors.hpp"

namespace vanish {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  if (s >= m || s < a) s -= m;
  return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

inline u64 invmod(u64 a, u64 m) {
  // extended Euclid; m need not be prime but gcd(a,m) must be 1
  i64 t = 0, new_t = 1;
  i64 r = i64(m), new_r = i64(a % m);
  while (new_r != 0) {
    i64 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw GroupError("invmod: not invertible");
  return u64(t < 0 ? t + i64(m) : t);
}

inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  // deterministic base set for all 64-bit integers
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

inline std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> fs;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      fs.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

inline u64 euler_phi(u64 n) {
  u64 r = n;
  for (u64 p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

// Smallest primitive root mod prime p (needs full factorization of p-1,
// so keep p within trial-division reach; Dixon primes are < 2^31).
inline u64 smallest_primitive_root(u64 p) {
  if (p == 2) return 1;
  std::vector<u64> fs = prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 q : fs) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw GroupError("no primitive root found");
}

// Smallest x >= 2 whose image x^((p-1)/e) has exact multiplicative order e.
// Avoids factoring p-1; only e's factorization is needed.
inline u64 element_of_order(u64 e, u64 p) {
  if (e == 1) return 1;
  std::vector<u64> fs = prime_factors(e);
  for (u64 x = 2; x < p; ++x) {
    u64 y = powmod(x, (p - 1) / e, p);
    if (y == 1) continue;
    bool exact = true;
    for (u64 q : fs) {
      if (powmod(y, e / q, p) == 1) {
        exact = false;
        break;
      }
    }
    if (exact) return y;
  }
  throw GroupError("no element of requested order");
}

// Tonelli-Shanks square root mod odd prime p; returns r with r*r == a,
// throws if a is not a residue.
inline u64 sqrtmod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (powmod(a, (p - 1) / 2, p) != 1) throw GroupError("sqrtmod: non-residue");
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) q >>= 1, ++s;
  u64 z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = s, c = powmod(z, q, p), t = powmod(a, q, p),
      r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
    }
    u64 b = powmod(c, u64(1) << (m - i - 1), p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

inline u64 isqrt_u64(u64 n) {
  if (n == 0) return 0;
  u64 r = u64(std::sqrt(double(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline bool is_prime_power(u64 n, u64* base = nullptr) {
  if (n < 2) return false;
  std::vector<u64> fs = prime_factors(n);
  if (fs.size() != 1) return false;
  if (base) *base = fs[0];
  return true;
}

inline bool is_square_free(u64 n) {
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

inline std::vector<u64> prime_set(u64 n) { return prime_factors(n); }

// pi-part of n: largest divisor with all prime factors in pi.
inline u64 part_for_primes(u64 n, const std::vector<u64>& pi) {
  u64 part = 1;
  for (u64 p : pi) {
    while (n % p == 0) {
      n /= p;
      part *= p;
    }
  }
  return part;
}

}  // namespace vanish
