#pragma once

// Integer combinations of the basis motives L^j, S[k] L^j, Sym^2 S[k] L^j,
// Lambda^2 S[k] L^j and S[k1] (x) S[k2] L^j, with trace-of-Frobenius
// semantics supplied by Hecke traces.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "taut2/exact.hpp"

namespace taut2::motives {

struct MotiveBasisElem {
  enum class Kind { tate, cusp, sym2, alt2, prod };

  Kind kind = Kind::tate;
  int k1 = 0;  // unused for tate
  int k2 = 0;  // prod only; k1 <= k2
  int j = 0;   // Tate twist

  static MotiveBasisElem Tate(int j);
  static MotiveBasisElem Cusp(int k, int j = 0);
  static MotiveBasisElem Sym2Cusp(int k, int j = 0);
  static MotiveBasisElem Alt2Cusp(int k, int j = 0);
  static MotiveBasisElem Prod(int k1, int k2, int j = 0);

  // Weight of the pure motive: 2j, k-1+2j, 2(k-1)+2j, k1+k2-2+2j.
  int weight() const;
  MotiveBasisElem twisted(int extra) const;

  // "tate:J", "cusp:K:J", "sym2:K:J", "alt2:K:J", "prod:K1:K2:J".
  std::string tag() const;
  // Human-readable: L^3, S[12], Sym2 S[12] L^2, ...
  std::string pretty() const;

  friend auto operator<=>(const MotiveBasisElem&, const MotiveBasisElem&) = default;
};

MotiveBasisElem parse_basis_elem(const std::string& tag);
std::vector<MotiveBasisElem> parse_basis_spec(const std::string& spec);  // comma separated tags

// Trace of Frob_p^r on one basis element. S[k] with dim S_k = 0 evaluates to
// -1 - p^{r(k-1)}. Composite elements only support r = 1.
Rational trace(const MotiveBasisElem& e, std::int64_t p, int r);

class MotiveExpr {
 public:
  using Terms = std::map<MotiveBasisElem, Integer>;

  MotiveExpr() = default;
  MotiveExpr(const MotiveBasisElem& e, Integer coeff = 1);  // NOLINT(google-explicit-constructor)

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coeff(const MotiveBasisElem& e) const;
  // Sum of coefficients; the dimension when every element is a Tate motive.
  Integer coefficient_sum() const;

  MotiveExpr& add(const MotiveBasisElem& e, const Integer& c);
  MotiveExpr& operator+=(const MotiveExpr& other);
  MotiveExpr& operator-=(const MotiveExpr& other);
  MotiveExpr& operator*=(const Integer& c);
  friend MotiveExpr operator+(MotiveExpr a, const MotiveExpr& b) { return a += b; }
  friend MotiveExpr operator-(MotiveExpr a, const MotiveExpr& b) { return a -= b; }
  friend MotiveExpr operator*(MotiveExpr a, const Integer& c) { return a *= c; }
  friend MotiveExpr operator-(MotiveExpr a) { return a *= -1; }
  friend bool operator==(const MotiveExpr&, const MotiveExpr&) = default;

  // Multiplies by L^extra.
  MotiveExpr twisted(int extra) const;
  // The part of pure weight w.
  MotiveExpr weight_slice(int w) const;

  Rational trace(std::int64_t p, int r = 1) const;
  std::string pretty() const;

 private:
  Terms terms_;
};

// Formal Sym^2 S[k] and Lambda^2 S[k].
std::pair<MotiveExpr, MotiveExpr> sym2_alt2(int k);

struct TraceSample {
  std::int64_t p = 0;
  int r = 1;
  Rational value;
};

class FitError : public DomainError {
 public:
  enum class Kind { underdetermined, inconsistent, non_integral };
  FitError(Kind kind, const std::string& what) : DomainError(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Exact rational solve of trace(sum c_i e_i, p, r) = value over the samples.
// Throws FitError when the system is rank deficient, inconsistent, or has a
// non-integral solution.
MotiveExpr fit(const std::vector<TraceSample>& samples, const std::vector<MotiveBasisElem>& basis);

}  // namespace taut2::motives
