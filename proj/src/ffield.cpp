#include "taut2/ffield.hpp"

#include <string>

#include "taut2/exact.hpp"

namespace taut2::ffield {

PrimeField::PrimeField(std::int64_t p) : p_(p) {
  if (p == 2) throw DomainError("prime field: characteristic 2 is not supported");
  if (p < 3 || p >= (std::int64_t{1} << 61) || !is_prime(p)) {
    throw DomainError("prime field: " + std::to_string(p) + " is not an odd prime");
  }
  if (p <= kTableLimit) {
    table_.assign(static_cast<std::size_t>(p), -1);
    table_[0] = 0;
    for (std::int64_t a = 1; a <= p / 2; ++a) {
      table_[static_cast<std::size_t>(a * a % p)] = 1;
    }
  }
  for (Elem a = 2; a < p; ++a) {
    if (character(a) == -1) {
      nonresidue_ = a;
      break;
    }
  }
}

Elem PrimeField::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  Elem b = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, b);
    b = mul(b, b);
    e >>= 1U;
  }
  return result;
}

Elem PrimeField::inv(Elem a) const { return pow(a, static_cast<std::uint64_t>(p_ - 2)); }

int PrimeField::euler_character(Elem a) const {
  if (a == 0) return 0;
  return pow(a, static_cast<std::uint64_t>((p_ - 1) / 2)) == 1 ? 1 : -1;
}

int quadratic_character(const PrimeField& field, Elem c) {
  return field.character(field.reduce(c));
}

int quadratic_character(const QuadExtField& field, QuadElem c) { return field.character(c); }

Elem find_nonresidue(std::int64_t p) { return PrimeField(p).smallest_nonresidue(); }

Elem eval(const PrimeField& field, std::span<const Elem> f, Elem x) {
  Elem acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = field.add(field.mul(acc, x), *it);
  return acc;
}

QuadElem ext_eval(const QuadExtField& field, std::span<const Elem> f, QuadElem x) {
  QuadElem acc{};
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = field.add(field.mul(acc, x), field.embed(*it));
  }
  return acc;
}

namespace {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of a modulo b (b nonzero, trimmed).
Poly poly_mod(const PrimeField& field, Poly a, const Poly& b) {
  trim(a);
  const Elem lead_inv = field.inv(b.back());
  while (a.size() >= b.size()) {
    const Elem c = field.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = field.sub(a[shift + i], field.mul(c, b[i]));
    }
    trim(a);
  }
  return a;
}

}  // namespace

Poly derivative(const PrimeField& field, std::span<const Elem> f) {
  Poly d;
  for (std::size_t i = 1; i < f.size(); ++i) {
    d.push_back(field.mul(field.reduce(static_cast<std::int64_t>(i)), f[i]));
  }
  trim(d);
  return d;
}

Poly poly_gcd(const PrimeField& field, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(field, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_squarefree(const PrimeField& field, std::span<const Elem> f) {
  Poly g(f.begin(), f.end());
  trim(g);
  if (g.empty()) throw DomainError("is_squarefree: zero polynomial");
  return poly_gcd(field, g, derivative(field, g)).size() == 1;
}

}  // namespace taut2::ffield
