#include "taut2/symchar.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace taut2::symchar {

namespace {

constexpr int kMaxWeight = 40;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw IntegrityError("character arithmetic overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw IntegrityError("character arithmetic overflow");
  return r;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// x^e - x^{-e} in the first (which = 0) or second coordinate.
LaurentChar antisym(int e, int which) {
  if (which == 0) return LaurentChar::monomial(e, 0) - LaurentChar::monomial(-e, 0);
  return LaurentChar::monomial(0, e) - LaurentChar::monomial(0, -e);
}

// det [[x1^a - x1^-a, x2^a - x2^-a], [x1^b - x1^-b, x2^b - x2^-b]]
LaurentChar alternant(int a, int b) {
  return antisym(a, 0) * antisym(b, 1) - antisym(a, 1) * antisym(b, 0);
}

void check_guard(const HighestWeight& lambda, const char* what) {
  if (lambda.size() > kMaxWeight) {
    throw DomainError(std::string(what) + ": |lambda| = " + std::to_string(lambda.size()) +
                      " exceeds the supported bound 40");
  }
}

}  // namespace

HighestWeight::HighestWeight(int l_, int m_) : l(l_), m(m_) {
  if (!(l_ >= m_ && m_ >= 0)) {
    throw DomainError("highest weight (" + std::to_string(l_) + "," + std::to_string(m_) +
                      ") must satisfy l >= m >= 0");
  }
}

std::string HighestWeight::str() const { return std::to_string(l) + "," + std::to_string(m); }

HighestWeight parse_weight(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw DomainError("lambda must be given as L,M (got '" + text + "')");
  try {
    std::size_t u1 = 0;
    std::size_t u2 = 0;
    const int l = std::stoi(text.substr(0, comma), &u1);
    const std::string rest = text.substr(comma + 1);
    const int m = std::stoi(rest, &u2);
    if (u1 != comma || u2 != rest.size()) throw std::invalid_argument("trailing characters");
    return HighestWeight(l, m);
  } catch (const std::logic_error&) {
    throw DomainError("lambda must be given as L,M (got '" + text + "')");
  }
}

LaurentChar::LaurentChar(Terms terms) {
  for (const auto& [key, c] : terms) add_term(key.first, key.second, c);
}

LaurentChar LaurentChar::monomial(int i, int j, std::int64_t c) {
  LaurentChar r;
  r.add_term(i, j, c);
  return r;
}

void LaurentChar::add_term(int i, int j, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t LaurentChar::coeff(int i, int j) const {
  const auto it = terms_.find({i, j});
  return it == terms_.end() ? 0 : it->second;
}

std::int64_t LaurentChar::at_identity() const {
  std::int64_t s = 0;
  for (const auto& [key, c] : terms_) s = checked_add(s, c);
  return s;
}

bool LaurentChar::weyl_invariant() const {
  for (const auto& [key, c] : terms_) {
    const auto [i, j] = key;
    if (coeff(-i, j) != c || coeff(i, -j) != c || coeff(j, i) != c) return false;
  }
  return true;
}

LaurentChar& LaurentChar::operator+=(const LaurentChar& other) {
  for (const auto& [key, c] : other.terms_) add_term(key.first, key.second, c);
  return *this;
}

LaurentChar& LaurentChar::operator-=(const LaurentChar& other) {
  for (const auto& [key, c] : other.terms_) add_term(key.first, key.second, checked_mul(c, -1));
  return *this;
}

LaurentChar& LaurentChar::scale(std::int64_t c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v = checked_mul(v, c);
  return *this;
}

LaurentChar operator*(const LaurentChar& a, const LaurentChar& b) {
  LaurentChar r;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      r.add_term(ka.first + kb.first, ka.second + kb.second, checked_mul(ca, cb));
    }
  }
  return r;
}

LaurentChar exact_divide(LaurentChar num, const LaurentChar& den) {
  if (den.empty()) throw IntegrityError("exact_divide: division by zero");
  const auto [lead_key, lead_c] = *den.terms().rbegin();
  // An exact remainder (true quotient - partial) * den never leads below the
  // lowest term of num; Laurent long division would otherwise run forever.
  const LaurentChar::Key floor = num.empty() ? LaurentChar::Key{} : num.terms().begin()->first;
  LaurentChar quotient;
  while (!num.empty()) {
    const auto [key, c] = *num.terms().rbegin();
    if (c % lead_c != 0 || key < floor) throw IntegrityError("exact_divide: inexact division");
    const LaurentChar term =
        LaurentChar::monomial(key.first - lead_key.first, key.second - lead_key.second, c / lead_c);
    quotient += term;
    num -= term * den;
    if (!num.empty() && num.terms().rbegin()->first >= key) {
      throw IntegrityError("exact_divide: leading term did not decrease");
    }
  }
  return quotient;
}

std::int64_t weyl_dim(const HighestWeight& lambda) {
  const std::int64_t l = lambda.l;
  const std::int64_t m = lambda.m;
  return (l - m + 1) * (m + 1) * (l + 2) * (l + m + 3) / 6;
}

const LaurentChar& irr_char(const HighestWeight& lambda) {
  check_guard(lambda, "irr_char");
  static std::mutex mutex;
  static std::map<HighestWeight, LaurentChar> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(lambda); it != cache.end()) return it->second;
  static const LaurentChar denominator = alternant(2, 1);
  LaurentChar chi = exact_divide(alternant(lambda.l + 2, lambda.m + 1), denominator);
  if (chi.at_identity() != weyl_dim(lambda)) throw IntegrityError("irr_char: dimension mismatch");
  return cache.emplace(lambda, std::move(chi)).first->second;
}

LaurentChar standard_char() {
  return LaurentChar::monomial(1, 0) + LaurentChar::monomial(-1, 0) + LaurentChar::monomial(0, 1) +
         LaurentChar::monomial(0, -1);
}

const LaurentChar& standard_power(int m) {
  if (m < 0 || m > kMaxWeight) throw DomainError("standard_power: exponent out of range");
  static std::mutex mutex;
  static std::vector<LaurentChar> powers{LaurentChar::monomial(0, 0)};
  std::lock_guard lock(mutex);
  static const LaurentChar v = standard_char();
  while (static_cast<int>(powers.size()) <= m) powers.push_back(powers.back() * v);
  return powers[static_cast<std::size_t>(m)];
}

IrrepDecomp decompose(const LaurentChar& c, bool allow_virtual) {
  if (!c.weyl_invariant()) throw DomainError("decompose: character is not Weyl invariant");
  IrrepDecomp out;
  LaurentChar rest = c;
  while (!rest.empty()) {
    // The lex-largest monomial of a Weyl-invariant character is dominant.
    const auto [key, coeff] = *rest.terms().rbegin();
    const HighestWeight lambda(key.first, key.second);
    if (coeff < 0 && !allow_virtual) {
      throw IntegrityError("decompose: negative multiplicity for (" + lambda.str() + ")");
    }
    out[lambda] += coeff;
    LaurentChar piece = irr_char(lambda);
    rest -= piece.scale(coeff);
  }
  return out;
}

std::int64_t decomposition_dim(const IrrepDecomp& d) {
  std::int64_t total = 0;
  for (const auto& [lambda, mult] : d) total = checked_add(total, checked_mul(mult, weyl_dim(lambda)));
  return total;
}

Integer eval_frobenius(const HighestWeight& lambda, const pointcount::FrobClass& cls) {
  if (!cls.a2) throw DomainError("eval_frobenius: genus-2 Frobenius class required");
  const Integer a1 = cls.a1;
  const Integer a2 = *cls.a2;
  const Integer q = cls.q;
  // h_k: complete symmetric functions of the four eigenvalues, from the
  // characteristic polynomial x^4 - a1 x^3 + a2 x^2 - q a1 x + q^2.
  const int top = lambda.l + 1;
  std::vector<Integer> h(static_cast<std::size_t>(top + 1));
  auto at = [&](int k) -> Integer { return k < 0 ? Integer(0) : h[static_cast<std::size_t>(k)]; };
  h[0] = 1;
  for (int k = 1; k <= top; ++k) {
    h[static_cast<std::size_t>(k)] = a1 * at(k - 1) - a2 * at(k - 2) + q * a1 * at(k - 3) - q * q * at(k - 4);
  }
  const int l = lambda.l;
  const int m = lambda.m;
  return at(l) * at(m) - at(l + 1) * at(m - 1) + q * (at(l) * at(m - 2) - at(l - 1) * at(m - 1));
}

Integer eval_frobenius_sp2(int n, const pointcount::FrobClass& cls) {
  if (n < 0) throw DomainError("eval_frobenius_sp2: negative weight");
  Integer prev = 0;
  Integer cur = 1;
  for (int k = 1; k <= n; ++k) {
    Integer next = cls.a1 * cur - Integer(cls.q) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Rational evaluate_at_eigenvalues(const HighestWeight& lambda, const Rational& alpha1, const Rational& alpha2,
                                 const Rational& q) {
  auto rpow = [](const Rational& base, int e) {
    Rational r = 1;
    const Rational b = e >= 0 ? base : Rational(1) / base;
    for (int i = 0; i < std::abs(e); ++i) r *= b;
    return r;
  };
  Rational total = 0;
  for (const auto& [key, c] : irr_char(lambda).terms()) {
    const int twist2 = lambda.size() - key.first - key.second;
    total += Rational(c) * rpow(alpha1, key.first) * rpow(alpha2, key.second) * rpow(q, twist2 / 2);
  }
  return total;
}

std::int64_t BranchDecomp::plus(int a) const {
  const auto it = diag_plus.find(a);
  return it == diag_plus.end() ? 0 : it->second;
}

std::int64_t BranchDecomp::minus(int a) const {
  const auto it = diag_minus.find(a);
  return it == diag_minus.end() ? 0 : it->second;
}

std::int64_t BranchDecomp::dimension() const {
  std::int64_t d = 0;
  for (const auto& [ab, mult] : off_diag) d += mult * 2 * (ab.first + 1) * (ab.second + 1);
  for (const auto& [a, mult] : diag_plus) d += mult * (a + 1) * (a + 1);
  for (const auto& [a, mult] : diag_minus) d += mult * (a + 1) * (a + 1);
  return d;
}

BranchDecomp branch_a11(const HighestWeight& lambda) {
  check_guard(lambda, "branch_a11");
  const LaurentChar& chi = irr_char(lambda);

  // Restriction x1 -> u, x2 -> v, peeled into Sp2 x Sp2 characters.
  std::map<std::pair<int, int>, std::int64_t> mult;
  LaurentChar rest = chi;
  while (!rest.empty()) {
    const auto [key, c] = *rest.terms().rbegin();
    const auto [a, b] = key;
    if (a < 0 || b < 0 || c < 0) throw IntegrityError("branch_a11: restriction is not a genuine character");
    mult[{a, b}] += c;
    LaurentChar piece;
    for (int s = 0; s <= a; ++s) {
      for (int t = 0; t <= b; ++t) piece += LaurentChar::monomial(a - 2 * s, b - 2 * t, c);
    }
    rest -= piece;
  }

  // Swap-twisted character: the element swapping the two planes composed
  // with (h1, h2) has eigenvalues +-s^{+-1}, s^2 = eigenvalue of h1 h2.
  // Monomial x1^i x2^j becomes (-1)^j s^{i+j}; odd powers cancel.
  std::map<int, std::int64_t> by_power;  // exponent of s
  for (const auto& [key, c] : chi.terms()) {
    by_power[key.first + key.second] += (key.second % 2 == 0) ? c : -c;
  }
  std::map<int, std::int64_t> twisted;  // exponent of z = s^2
  for (const auto& [e, c] : by_power) {
    if (c == 0) continue;
    if (e % 2 != 0) throw IntegrityError("branch_a11: odd powers in the twisted character");
    twisted[e / 2] = c;
  }
  std::map<int, std::int64_t> signed_diag;
  while (!twisted.empty()) {
    const auto [e, c] = *twisted.rbegin();
    if (e < 0) throw IntegrityError("branch_a11: twisted character has no dominant term");
    signed_diag[e] += c;
    for (int t = 0; t <= e; ++t) {
      auto& slot = twisted[e - 2 * t];
      slot -= c;
      if (slot == 0) twisted.erase(e - 2 * t);
    }
  }

  BranchDecomp out;
  out.lambda = lambda;
  for (const auto& [ab, m] : mult) {
    const auto [a, b] = ab;
    if (a > b) {
      if (mult.count({b, a}) == 0 || mult.at({b, a}) != m) {
        throw IntegrityError("branch_a11: restriction is not swap symmetric");
      }
      out.off_diag[{a, b}] = m;
    } else if (a == b) {
      const std::int64_t d = signed_diag.count(a) != 0 ? signed_diag.at(a) : 0;
      if ((m + d) % 2 != 0 || std::abs(d) > m) throw IntegrityError("branch_a11: inconsistent +/- split");
      if ((m + d) / 2 != 0) out.diag_plus[a] = (m + d) / 2;
      if ((m - d) / 2 != 0) out.diag_minus[a] = (m - d) / 2;
    }
  }
  for (const auto& [a, d] : signed_diag) {
    if (mult.count({a, a}) == 0) throw IntegrityError("branch_a11: twisted piece without diagonal restriction");
  }
  if (out.dimension() != weyl_dim(lambda)) throw IntegrityError("branch_a11: dimension identity fails");
  return out;
}

std::int64_t multiplicity_in_tensor_power(const HighestWeight& lambda, int m) {
  if (m < 0 || m > kMaxWeight) throw DomainError("multiplicity_in_tensor_power: exponent out of range");
  if (lambda.size() > m || (m - lambda.size()) % 2 != 0) return 0;
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const IrrepDecomp>> cache;
  std::shared_ptr<const IrrepDecomp> d;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) d = it->second;
  }
  if (!d) {
    d = std::make_shared<const IrrepDecomp>(decompose(standard_power(m)));
    std::lock_guard lock(mutex);
    cache.emplace(m, d);
  }
  const auto it = d->find(lambda);
  return it == d->end() ? 0 : it->second;
}

std::int64_t multiplicity_in_cohomology(const HighestWeight& lambda, int n, int k) {
  if (n < 0 || n > 20) throw DomainError("multiplicity_in_cohomology: n must lie in [0, 20]");
  if (k < 0 || k > 2 * n) throw DomainError("multiplicity_in_cohomology: k must lie in [0, 2n]");
  // H^*(X) = 1 + V + 1 (degrees 0, 1, 2); choose m factors in degree 1 and
  // (k - m)/2 in degree 2.
  std::int64_t total = 0;
  for (int m = k % 2; m <= std::min(n, k); m += 2) {
    const int r = (k - m) / 2;
    if (r > n - m) continue;
    const std::int64_t mult = multiplicity_in_tensor_power(lambda, m);
    if (mult == 0) continue;
    total = checked_add(total, checked_mul(checked_mul(binomial(n, m), binomial(n - m, r)), mult));
  }
  return total;
}

std::vector<std::int64_t> invariant_poincare(int n) {
  if (n < 0 || n > 8) throw DomainError("invariant_poincare: n must lie in [0, 8]");
  std::vector<std::int64_t> out;
  for (int k = 0; k <= 2 * n; ++k) out.push_back(multiplicity_in_cohomology(HighestWeight(0, 0), n, k));
  return out;
}

}  // namespace taut2::symchar
