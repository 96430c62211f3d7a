#pragma once

// Characters of Sp4 (and Sp2): Weyl characters as Laurent polynomials in the
// torus coordinates x1, x2, peeling decompositions, Frobenius evaluation of
// V_lambda on genus-2 Frobenius data, branching to (Sp2 x Sp2) x| S2 and the
// Kunneth multiplicities of V_lambda in H^*(X^n).

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "taut2/exact.hpp"
#include "taut2/pointcount.hpp"

namespace taut2::symchar {

// Highest weight lambda = (l >= m >= 0).
struct HighestWeight {
  int l = 0;
  int m = 0;

  HighestWeight() = default;
  // Throws DomainError unless l >= m >= 0.
  HighestWeight(int l_, int m_);

  int size() const { return l + m; }
  bool regular() const { return l > m && m > 0; }
  std::string str() const;

  friend auto operator<=>(const HighestWeight&, const HighestWeight&) = default;
};

HighestWeight parse_weight(const std::string& text);  // "L,M"

// Finite Laurent polynomial sum c_{ij} x1^i x2^j.
class LaurentChar {
 public:
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, std::int64_t>;

  LaurentChar() = default;
  explicit LaurentChar(Terms terms);
  static LaurentChar monomial(int i, int j, std::int64_t c = 1);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::int64_t coeff(int i, int j) const;
  // Value at x1 = x2 = 1.
  std::int64_t at_identity() const;
  // Invariant under x_k -> 1/x_k and x1 <-> x2.
  bool weyl_invariant() const;

  LaurentChar& operator+=(const LaurentChar& other);
  LaurentChar& operator-=(const LaurentChar& other);
  LaurentChar& scale(std::int64_t c);
  friend LaurentChar operator+(LaurentChar a, const LaurentChar& b) { return a += b; }
  friend LaurentChar operator-(LaurentChar a, const LaurentChar& b) { return a -= b; }
  friend LaurentChar operator*(const LaurentChar& a, const LaurentChar& b);
  friend bool operator==(const LaurentChar&, const LaurentChar&) = default;

 private:
  void add_term(int i, int j, std::int64_t c);
  Terms terms_;
};

// Exact quotient num / den; throws IntegrityError if den does not divide num.
LaurentChar exact_divide(LaurentChar num, const LaurentChar& den);

std::int64_t weyl_dim(const HighestWeight& lambda);

// Weyl character of V_lambda; |lambda| <= 40.
const LaurentChar& irr_char(const HighestWeight& lambda);

// Character of the standard representation V and its tensor powers.
LaurentChar standard_char();
const LaurentChar& standard_power(int m);

using IrrepDecomp = std::map<HighestWeight, std::int64_t>;

// Peels off irreducible characters starting from the lexicographically
// largest dominant monomial. With allow_virtual = false a negative
// multiplicity raises IntegrityError.
IrrepDecomp decompose(const LaurentChar& c, bool allow_virtual = false);

std::int64_t decomposition_dim(const IrrepDecomp& d);

// Trace of Frobenius on the stalk of V_lambda at a genus-2 (or abelian
// surface) Frobenius class, with the symplectic form of weight q.
Integer eval_frobenius(const HighestWeight& lambda, const pointcount::FrobClass& cls);
// Same for the Sp2 local system V_n at an elliptic Frobenius class (a1 only).
Integer eval_frobenius_sp2(int n, const pointcount::FrobClass& cls);

// Sum c_{ij} a1^i a2^j q^{(|lambda|-i-j)/2}: the character of V_lambda at a
// Frobenius with eigenvalues (a1, q/a1, a2, q/a2).
Rational evaluate_at_eigenvalues(const HighestWeight& lambda, const Rational& alpha1,
                                 const Rational& alpha2, const Rational& q);

// Restriction of V_lambda to (Sp2 x Sp2) x| S2.
struct BranchDecomp {
  HighestWeight lambda;
  // {a, b} with a > b -> multiplicity of (V_a [x] V_b) + (V_b [x] V_a).
  std::map<std::pair<int, int>, std::int64_t> off_diag;
  // a -> multiplicity of (V_a [x] V_a) with the factor swap acting by +1 / -1.
  std::map<int, std::int64_t> diag_plus;
  std::map<int, std::int64_t> diag_minus;

  std::int64_t plus(int a) const;
  std::int64_t minus(int a) const;
  std::int64_t dimension() const;
  // Tate twist exponent carried by the pieces V_a [x] V_b.
  int twist(int a, int b) const { return (lambda.size() - a - b) / 2; }
};

BranchDecomp branch_a11(const HighestWeight& lambda);

// Multiplicity of V_lambda in V^{(x) m}.
std::int64_t multiplicity_in_tensor_power(const HighestWeight& lambda, int m);

// Multiplicity of V_lambda in H^k(X^n) for a genus-2 curve X; n <= 20.
std::int64_t multiplicity_in_cohomology(const HighestWeight& lambda, int n, int k);

// Dimensions of the Sp4-invariant part of H^k(X^n), k = 0..2n; n <= 8.
std::vector<std::int64_t> invariant_poincare(int n);

}  // namespace taut2::symchar
