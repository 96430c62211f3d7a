#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library: each oracle takes the slow, obvious route.

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using BigInt = boost::multiprecision::cpp_int;

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Set of nonzero squares mod p, by squaring everything.
inline std::set<std::int64_t> squares(std::int64_t p) {
  std::set<std::int64_t> s;
  for (std::int64_t x = 1; x < p; ++x) s.insert(x * x % p);
  return s;
}

inline int legendre(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  return squares(p).count(a) ? 1 : -1;
}

inline std::int64_t smallest_nonresidue(std::int64_t p) {
  const auto sq = squares(p);
  for (std::int64_t a = 2; a < p; ++a) {
    if (!sq.count(a)) return a;
  }
  return -1;
}

// F_{p^2} = F_p[t]/(t^2 - n), elements (x, y) <-> x + y t.
struct Fp2 {
  std::int64_t p;
  std::int64_t n;
  explicit Fp2(std::int64_t p_) : p(p_), n(smallest_nonresidue(p_)) {}

  using E = std::pair<std::int64_t, std::int64_t>;
  E add(E a, E b) const { return {(a.first + b.first) % p, (a.second + b.second) % p}; }
  E sub(E a, E b) const { return {mod(a.first - b.first, p), mod(a.second - b.second, p)}; }
  E mul(E a, E b) const {
    return {(a.first * b.first + n * (a.second * b.second % p)) % p, (a.first * b.second + a.second * b.first) % p};
  }
  E scalar(std::int64_t c) const { return {mod(c, p), 0}; }
  std::vector<E> elements() const {
    std::vector<E> out;
    for (std::int64_t y = 0; y < p; ++y) {
      for (std::int64_t x = 0; x < p; ++x) out.push_back({x, y});
    }
    return out;
  }
  // Number of z with z^2 = v.
  std::vector<int> sqrt_counts() const {
    std::vector<int> c(static_cast<std::size_t>(p * p), 0);
    for (const E& z : elements()) {
      const E s = mul(z, z);
      ++c[static_cast<std::size_t>(s.first + p * s.second)];
    }
    return c;
  }
  static std::size_t index(E v, std::int64_t p) { return static_cast<std::size_t>(v.first + p * v.second); }
};

// Frobenius data from point counts: a1 = q + 1 - N1, and for genus 2
// a2 = (a1^2 - s2)/2 with s2 = q^2 + 1 - N2.
inline std::pair<std::int64_t, std::int64_t> frob_from_counts(std::int64_t n1, std::int64_t n2, std::int64_t q) {
  const std::int64_t s1 = q + 1 - n1;
  const std::int64_t s2 = q * q + 1 - n2;
  return {s1, (s1 * s1 - s2) / 2};
}

// Elliptic histogram a1 -> model count over F_p by counting (x, y) pairs.
inline std::map<std::int64_t, std::int64_t> elliptic_brute(std::int64_t p) {
  std::vector<int> roots(static_cast<std::size_t>(p), 0);
  for (std::int64_t y = 0; y < p; ++y) ++roots[static_cast<std::size_t>(y * y % p)];
  std::map<std::int64_t, std::int64_t> hist;
  for (std::int64_t a = 0; a < p; ++a) {
    for (std::int64_t b = 0; b < p; ++b) {
      for (std::int64_t c = 0; c < p; ++c) {
        // Squarefree iff the discriminant of x^3 + a x^2 + b x + c is nonzero.
        const std::int64_t disc = mod(a * a % p * b % p * b - 4 * b % p * b % p * b - 4 * a % p * a % p * a % p * c -
                                          27 * c % p * c + 18 * a % p * b % p * c,
                                      p);
        if (disc == 0) continue;
        std::int64_t points = 1;
        for (std::int64_t x = 0; x < p; ++x) {
          points += roots[static_cast<std::size_t>(((x * x % p + a * x) % p * x + b * x + c) % p)];
        }
        ++hist[p + 1 - points];
      }
    }
  }
  return hist;
}

// Elliptic histogram over F_{p^2}: trace of Frob_{p^2} -> model count, over
// monic squarefree cubics with coefficients in F_{p^2}.
inline std::map<std::int64_t, std::int64_t> elliptic_brute_quadratic(std::int64_t p) {
  const Fp2 F(p);
  const auto els = F.elements();
  const auto roots = F.sqrt_counts();
  std::map<std::int64_t, std::int64_t> hist;
  for (const auto& a : els) {
    for (const auto& b : els) {
      for (const auto& c : els) {
        // disc = a^2 b^2 - 4 b^3 - 4 a^3 c - 27 c^2 + 18 abc
        auto m = [&](auto x, auto y) { return F.mul(x, y); };
        auto d = F.sub(m(m(a, a), m(b, b)), m(F.scalar(4), m(b, m(b, b))));
        d = F.sub(d, m(F.scalar(4), m(m(a, m(a, a)), c)));
        d = F.sub(d, m(F.scalar(27), m(c, c)));
        d = F.add(d, m(F.scalar(18), m(a, m(b, c))));
        if (d.first == 0 && d.second == 0) continue;
        std::int64_t points = 1;
        for (const auto& x : els) {
          const auto v = F.add(m(F.add(m(F.add(x, a), x), b), x), c);
          points += roots[Fp2::index(v, p)];
        }
        ++hist[p * p + 1 - points];
      }
    }
  }
  return hist;
}

// Genus-2 histogram (a1, a2) -> model count over F_p for y^2 = f, f squarefree
// of degree 5 or 6, counting points on the smooth model directly.
inline std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> genus2_brute(std::int64_t p) {
  const Fp2 F(p);
  const auto els = F.elements();
  const auto roots2 = F.sqrt_counts();
  std::vector<int> roots1(static_cast<std::size_t>(p), 0);
  for (std::int64_t y = 0; y < p; ++y) ++roots1[static_cast<std::size_t>(y * y % p)];

  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> hist;
  std::vector<std::int64_t> f(7, 0);
  std::int64_t total = 1;
  for (int i = 0; i < 7; ++i) total *= p;
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code;
    for (int i = 0; i < 7; ++i) {
      f[static_cast<std::size_t>(i)] = c % p;
      c /= p;
    }
    int deg = 6;
    while (deg >= 0 && f[static_cast<std::size_t>(deg)] == 0) --deg;
    if (deg < 5) continue;
    // Squarefree iff gcd(f, f') is a unit; plain Euclid over F_p.
    std::vector<std::int64_t> a(f.begin(), f.begin() + deg + 1), b;
    for (int i = 1; i <= deg; ++i) b.push_back(mod(i * f[static_cast<std::size_t>(i)], p));
    auto trim = [](std::vector<std::int64_t>& v) {
      while (!v.empty() && v.back() == 0) v.pop_back();
    };
    auto inv = [p](std::int64_t x) {
      for (std::int64_t y = 1; y < p; ++y) {
        if (x * y % p == 1) return y;
      }
      return std::int64_t{0};
    };
    trim(b);
    while (!b.empty()) {
      while (a.size() >= b.size() && !a.empty()) {
        const std::int64_t k = a.back() * inv(b.back()) % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = mod(a[i + shift] - k * b[i], p);
        trim(a);
      }
      std::swap(a, b);
    }
    if (a.size() != 1) continue;

    std::int64_t n1 = deg == 5 ? 1 : 1 + legendre(f[6], p);
    for (std::int64_t x = 0; x < p; ++x) {
      std::int64_t v = 0;
      for (int i = deg; i >= 0; --i) v = (v * x + f[static_cast<std::size_t>(i)]) % p;
      n1 += roots1[static_cast<std::size_t>(v)];
    }
    std::int64_t n2 = deg == 5 ? 1 : 2;  // every element of F_p is a square in F_{p^2}
    for (const auto& x : els) {
      Fp2::E v{0, 0};
      for (int i = deg; i >= 0; --i) v = F.add(F.mul(v, x), F.scalar(f[static_cast<std::size_t>(i)]));
      n2 += roots2[Fp2::index(v, p)];
    }
    ++hist[frob_from_counts(n1, n2, p)];
  }
  return hist;
}

// Delta = q prod (1 - q^n)^24, coefficients 0..prec-1.
inline std::vector<BigInt> delta_product(int prec) {
  std::vector<BigInt> s(static_cast<std::size_t>(prec), 0);
  if (prec > 1) s[1] = 1;
  for (int n = 1; n < prec; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int i = prec - 1; i >= n; --i) s[static_cast<std::size_t>(i)] -= s[static_cast<std::size_t>(i - n)];
    }
  }
  return s;
}

inline BigInt sigma(int n, int e) {
  BigInt s = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) s += boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(e));
  }
  return s;
}

// Number of standard Young tableaux, by filling boxes one at a time.
inline std::uint64_t syt_recursive(std::vector<int> shape) {
  static std::map<std::vector<int>, std::uint64_t> memo;
  while (!shape.empty() && shape.back() == 0) shape.pop_back();
  if (shape.empty()) return 1;
  if (auto it = memo.find(shape); it != memo.end()) return it->second;
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < shape.size(); ++r) {
    // Remove a corner box from row r.
    if (r + 1 < shape.size() && shape[r + 1] == shape[r]) continue;
    auto smaller = shape;
    --smaller[r];
    total += syt_recursive(smaller);
  }
  memo[shape] = total;
  return total;
}

// Weyl dimension of the Sp4 representation (l, m) from the positive roots.
inline std::int64_t sp4_dim(int l, int m) {
  // rho = (2, 1); positive roots e1-e2, e1+e2, 2e1, 2e2.
  const std::int64_t x = l + 2, y = m + 1;
  return (x - y) * (x + y) * x * y / ((2 - 1) * (2 + 1) * 2 * 1);
}

}  // namespace oracle
