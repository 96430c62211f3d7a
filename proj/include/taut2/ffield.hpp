#pragma once

// Prime fields F_p (p odd) and their quadratic extensions F_{p^2}.
// Both field types are immutable after construction and may be shared
// across threads.

#include <cstdint>
#include <span>
#include <vector>

namespace taut2::ffield {

using Elem = std::int64_t;

class PrimeField {
 public:
  // Residue tables are built for p up to this bound; larger fields fall back
  // to Euler's criterion.
  static constexpr std::int64_t kTableLimit = std::int64_t{1} << 20;

  // Throws DomainError unless p is an odd prime below 2^61.
  explicit PrimeField(std::int64_t p);

  std::int64_t p() const { return p_; }

  Elem reduce(std::int64_t a) const {
    const std::int64_t r = a % p_;
    return r < 0 ? r + p_ : r;
  }
  Elem add(Elem a, Elem b) const {
    const Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>(static_cast<__int128>(a) * b % p_);
  }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem inv(Elem a) const;  // a != 0

  // Legendre symbol of a (already reduced): 0, +1 or -1.
  int character(Elem a) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a)];
    return euler_character(a);
  }

  Elem smallest_nonresidue() const { return nonresidue_; }

  // a^((p-1)/2), folded to -1/0/+1; used directly above the table limit.
  int euler_character(Elem a) const;

 private:
  std::int64_t p_;
  Elem nonresidue_ = 0;
  std::vector<std::int8_t> table_;
};

// x + y*sqrt(n) with n the smallest nonresidue of the base field.
struct QuadElem {
  Elem x = 0;
  Elem y = 0;
  friend bool operator==(const QuadElem&, const QuadElem&) = default;
};

class QuadExtField {
 public:
  explicit QuadExtField(const PrimeField& base)
      : base_(base), nonresidue_(base.smallest_nonresidue()) {}

  const PrimeField& base() const { return base_; }
  Elem nonresidue() const { return nonresidue_; }
  std::int64_t order() const { return base_.p() * base_.p(); }

  QuadElem embed(Elem a) const { return {a, 0}; }
  QuadElem add(QuadElem a, QuadElem b) const {
    return {base_.add(a.x, b.x), base_.add(a.y, b.y)};
  }
  QuadElem mul(QuadElem a, QuadElem b) const {
    const Elem x = base_.add(base_.mul(a.x, b.x),
                             base_.mul(nonresidue_, base_.mul(a.y, b.y)));
    const Elem y = base_.add(base_.mul(a.x, b.y), base_.mul(a.y, b.x));
    return {x, y};
  }
  Elem norm(QuadElem a) const {
    return base_.sub(base_.mul(a.x, a.x),
                     base_.mul(nonresidue_, base_.mul(a.y, a.y)));
  }
  // z is a square in F_{p^2} iff its norm is a square in F_p.
  int character(QuadElem a) const { return base_.character(norm(a)); }

  // Enumerates x + y*sqrt(n) in the order index = x + p*y.
  QuadElem from_index(std::int64_t index) const {
    return {index % base_.p(), index / base_.p()};
  }

 private:
  PrimeField base_;
  Elem nonresidue_;
};

// Quadratic character of an element of either field.
int quadratic_character(const PrimeField& field, Elem c);
int quadratic_character(const QuadExtField& field, QuadElem c);

// Smallest positive quadratic nonresidue mod p. Throws DomainError for p = 2
// or composite p.
Elem find_nonresidue(std::int64_t p);

// Horner evaluation of f (coefficients low to high, reduced mod p) at x.
Elem eval(const PrimeField& field, std::span<const Elem> f, Elem x);
QuadElem ext_eval(const QuadExtField& field, std::span<const Elem> f, QuadElem x);

// Polynomials over F_p as coefficient vectors, low to high, no trailing zeros.
using Poly = std::vector<Elem>;

Poly derivative(const PrimeField& field, std::span<const Elem> f);
Poly poly_gcd(const PrimeField& field, Poly a, Poly b);
// True iff gcd(f, f') is constant. f must be nonzero.
bool is_squarefree(const PrimeField& field, std::span<const Elem> f);

}  // namespace taut2::ffield
