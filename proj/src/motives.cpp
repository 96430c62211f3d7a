#include "taut2/motives.hpp"

#include <sstream>

#include "taut2/modforms.hpp"

namespace taut2::motives {

namespace {

void check_weight(int k) {
  if (k < 4 || k % 2 != 0) throw DomainError("motive: cusp weight " + std::to_string(k) + " must be even and >= 4");
}

void check_twist(int j) {
  if (j < 0) throw DomainError("motive: Tate twist must be nonnegative");
}

Integer cusp_trace(int k, std::int64_t p, int r) {
  if (modforms::dim_cusp(k) == 0) return -1 - ipow(p, static_cast<unsigned>(r * (k - 1)));
  return modforms::hecke_trace(k, p, r);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

int parse_small(const std::string& s, const std::string& tag) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw DomainError("motive: bad basis tag '" + tag + "'");
}

}  // namespace

MotiveBasisElem MotiveBasisElem::Tate(int j) {
  check_twist(j);
  return {Kind::tate, 0, 0, j};
}

MotiveBasisElem MotiveBasisElem::Cusp(int k, int j) {
  check_weight(k);
  check_twist(j);
  return {Kind::cusp, k, 0, j};
}

MotiveBasisElem MotiveBasisElem::Sym2Cusp(int k, int j) {
  check_weight(k);
  check_twist(j);
  return {Kind::sym2, k, 0, j};
}

MotiveBasisElem MotiveBasisElem::Alt2Cusp(int k, int j) {
  check_weight(k);
  check_twist(j);
  return {Kind::alt2, k, 0, j};
}

MotiveBasisElem MotiveBasisElem::Prod(int k1, int k2, int j) {
  check_weight(k1);
  check_weight(k2);
  check_twist(j);
  return {Kind::prod, std::min(k1, k2), std::max(k1, k2), j};
}

int MotiveBasisElem::weight() const {
  switch (kind) {
    case Kind::tate:
      return 2 * j;
    case Kind::cusp:
      return k1 - 1 + 2 * j;
    case Kind::sym2:
    case Kind::alt2:
      return 2 * (k1 - 1) + 2 * j;
    case Kind::prod:
      return k1 + k2 - 2 + 2 * j;
  }
  return 0;
}

MotiveBasisElem MotiveBasisElem::twisted(int extra) const {
  MotiveBasisElem e = *this;
  e.j += extra;
  check_twist(e.j);
  return e;
}

std::string MotiveBasisElem::tag() const {
  const std::string js = std::to_string(j);
  switch (kind) {
    case Kind::tate:
      return "tate:" + js;
    case Kind::cusp:
      return "cusp:" + std::to_string(k1) + ":" + js;
    case Kind::sym2:
      return "sym2:" + std::to_string(k1) + ":" + js;
    case Kind::alt2:
      return "alt2:" + std::to_string(k1) + ":" + js;
    case Kind::prod:
      return "prod:" + std::to_string(k1) + ":" + std::to_string(k2) + ":" + js;
  }
  return {};
}

std::string MotiveBasisElem::pretty() const {
  std::string base;
  switch (kind) {
    case Kind::tate:
      return j == 0 ? "1" : (j == 1 ? "L" : "L^" + std::to_string(j));
    case Kind::cusp:
      base = "S[" + std::to_string(k1) + "]";
      break;
    case Kind::sym2:
      base = "Sym2 S[" + std::to_string(k1) + "]";
      break;
    case Kind::alt2:
      base = "Alt2 S[" + std::to_string(k1) + "]";
      break;
    case Kind::prod:
      base = "S[" + std::to_string(k1) + "] x S[" + std::to_string(k2) + "]";
      break;
  }
  if (j == 0) return base;
  return base + (j == 1 ? " L" : " L^" + std::to_string(j));
}

MotiveBasisElem parse_basis_elem(const std::string& tag) {
  const std::vector<std::string> parts = split(tag, ':');
  if (parts.empty()) throw DomainError("motive: empty basis tag");
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i) { return parse_small(parts[i], tag); };
  if (kind == "tate" && parts.size() == 2) return MotiveBasisElem::Tate(arg(1));
  if (kind == "cusp" && parts.size() == 3) return MotiveBasisElem::Cusp(arg(1), arg(2));
  if (kind == "sym2" && parts.size() == 3) return MotiveBasisElem::Sym2Cusp(arg(1), arg(2));
  if (kind == "alt2" && parts.size() == 3) return MotiveBasisElem::Alt2Cusp(arg(1), arg(2));
  if (kind == "prod" && parts.size() == 4) return MotiveBasisElem::Prod(arg(1), arg(2), arg(3));
  throw DomainError("motive: bad basis tag '" + tag + "'");
}

std::vector<MotiveBasisElem> parse_basis_spec(const std::string& spec) {
  std::vector<MotiveBasisElem> out;
  for (std::string tag : split(spec, ',')) {
    tag.erase(0, tag.find_first_not_of(" \t"));
    tag.erase(tag.find_last_not_of(" \t") + 1);
    if (!tag.empty()) out.push_back(parse_basis_elem(tag));
  }
  if (out.empty()) throw DomainError("motive: empty basis");
  return out;
}

Rational trace(const MotiveBasisElem& e, std::int64_t p, int r) {
  if (!is_prime(p)) throw DomainError("trace: p = " + std::to_string(p) + " is not prime");
  if (r != 1 && r != 2) throw DomainError("trace: Frobenius power must be 1 or 2");
  const Integer twist = ipow(p, static_cast<unsigned>(r * e.j));
  using Kind = MotiveBasisElem::Kind;
  if (e.kind == Kind::tate) return Rational(twist);
  if (e.kind == Kind::cusp) return Rational(cusp_trace(e.k1, p, r) * twist);
  if (r != 1) {
    throw DomainError("trace: Frobenius power 2 is unsupported on " + e.pretty() +
                      " (needs fourth-power Hecke data)");
  }
  const Integer t1 = cusp_trace(e.k1, p, 1);
  if (e.kind == Kind::prod) return Rational(t1 * cusp_trace(e.k2, p, 1) * twist);
  const Integer t2 = cusp_trace(e.k1, p, 2);
  const Integer num = e.kind == Kind::sym2 ? Integer(t1 * t1 + t2) : Integer(t1 * t1 - t2);
  return Rational(num * twist, 2);
}

MotiveExpr::MotiveExpr(const MotiveBasisElem& e, Integer coeff) { add(e, coeff); }

Integer MotiveExpr::coeff(const MotiveBasisElem& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

Integer MotiveExpr::coefficient_sum() const {
  Integer s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

MotiveExpr& MotiveExpr::add(const MotiveBasisElem& e, const Integer& c) {
  if (c == 0) return *this;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

MotiveExpr& MotiveExpr::operator+=(const MotiveExpr& other) {
  for (const auto& [e, c] : other.terms_) add(e, c);
  return *this;
}

MotiveExpr& MotiveExpr::operator-=(const MotiveExpr& other) {
  for (const auto& [e, c] : other.terms_) add(e, -c);
  return *this;
}

MotiveExpr& MotiveExpr::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MotiveExpr MotiveExpr::twisted(int extra) const {
  MotiveExpr out;
  for (const auto& [e, c] : terms_) out.add(e.twisted(extra), c);
  return out;
}

MotiveExpr MotiveExpr::weight_slice(int w) const {
  MotiveExpr out;
  for (const auto& [e, c] : terms_) {
    if (e.weight() == w) out.add(e, c);
  }
  return out;
}

Rational MotiveExpr::trace(std::int64_t p, int r) const {
  Rational total = 0;
  for (const auto& [e, c] : terms_) total += Rational(c) * motives::trace(e, p, r);
  return total;
}

std::string MotiveExpr::pretty() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    const bool neg = c < 0;
    const Integer mag = neg ? Integer(-c) : c;
    if (out.empty()) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    const bool unit = e.kind == MotiveBasisElem::Kind::tate && e.j == 0;
    if (unit) {
      out += mag.str();
    } else {
      if (mag != 1) out += mag.str() + "*";
      out += e.pretty();
    }
  }
  return out;
}

std::pair<MotiveExpr, MotiveExpr> sym2_alt2(int k) {
  return {MotiveExpr(MotiveBasisElem::Sym2Cusp(k, 0)), MotiveExpr(MotiveBasisElem::Alt2Cusp(k, 0))};
}

MotiveExpr fit(const std::vector<TraceSample>& samples, const std::vector<MotiveBasisElem>& basis) {
  const std::size_t rows = samples.size();
  const std::size_t cols = basis.size();
  if (cols == 0) throw DomainError("fit: empty basis");

  // Augmented matrix [A | b].
  std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = trace(basis[j], samples[i].p, samples[i].r);
    a[i][cols] = samples[i].value;
  }

  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t j = 0; j < cols && rank < rows; ++j) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][j] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const Rational inv = Rational(1) / a[rank][j];
    for (auto& v : a[rank]) v *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][j] == 0) continue;
      const Rational f = a[i][j];
      for (std::size_t c = j; c <= cols; ++c) a[i][c] -= f * a[rank][c];
    }
    pivot_col.push_back(j);
    ++rank;
  }
  if (rank < cols) {
    throw FitError(FitError::Kind::underdetermined,
                   "fit: underdetermined, null space of dimension " + std::to_string(cols - rank) + " (" +
                       std::to_string(rows) + " samples, " + std::to_string(cols) + " basis elements)");
  }
  std::string residuals;
  for (std::size_t i = rank; i < rows; ++i) {
    if (a[i][cols] != 0) {
      residuals += " [p=" + std::to_string(samples[i].p) + ",r=" + std::to_string(samples[i].r) +
                   "]:" + to_string(a[i][cols]);
    }
  }
  if (!residuals.empty()) {
    throw FitError(FitError::Kind::inconsistent, "fit: inconsistent samples, residuals" + residuals);
  }
  MotiveExpr out;
  for (std::size_t i = 0; i < rank; ++i) {
    const Rational& c = a[i][cols];
    if (boost::multiprecision::denominator(c) != 1) {
      throw FitError(FitError::Kind::non_integral, "fit: non-integral coefficient " + to_string(c) + " for " +
                                                       basis[pivot_col[i]].pretty() + " (convention mismatch)");
    }
    out.add(basis[pivot_col[i]], boost::multiprecision::numerator(c));
  }
  return out;
}

}  // namespace taut2::motives
