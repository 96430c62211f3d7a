#include "taut2/cohomology.hpp"

#include <sstream>

namespace taut2::cohomology {

using motives::MotiveBasisElem;
using Kind = MotiveBasisElem::Kind;

std::string to_string(Space space) {
  switch (space) {
    case Space::A1:
      return "a1";
    case Space::A11:
      return "a11";
    case Space::M2:
      return "m2";
    case Space::A2:
      return "a2";
  }
  return {};
}

Space parse_space(const std::string& name) {
  if (name == "a1") return Space::A1;
  if (name == "a11") return Space::A11;
  if (name == "m2") return Space::M2;
  if (name == "a2") return Space::A2;
  throw DomainError("unknown space '" + name + "' (expected a1|a11|m2|a2)");
}

WeightPiece::WeightPiece(Space space, HighestWeight lambda, int degree, int weight, MotiveExpr content, bool inner)
    : space_(space), lambda_(lambda), degree_(degree), weight_(weight), content_(std::move(content)), inner_(inner) {
  if (inner && weight != degree + lambda.size()) {
    throw IntegrityError("weight piece: inner cohomology must be pure of weight i + |lambda|");
  }
  if (content_.weight_slice(weight) != content_) {
    throw IntegrityError("weight piece: content is not pure of weight " + std::to_string(weight));
  }
}

MotiveExpr euler_a1(int n) {
  if (n < 0) throw DomainError("euler_a1: n must be nonnegative");
  if (n == 0) return MotiveExpr(MotiveBasisElem::Tate(1));
  if (n % 2 != 0) return {};
  MotiveExpr e(MotiveBasisElem::Tate(0), -1);
  if (modforms::dim_cusp(n + 2) > 0) e.add(MotiveBasisElem::Cusp(n + 2, 0), -1);
  return e;
}

namespace {

MotiveExpr elem_product(const MotiveBasisElem& x, const MotiveBasisElem& y) {
  if (x.kind == Kind::tate) return MotiveExpr(y.twisted(x.j));
  if (y.kind == Kind::tate) return MotiveExpr(x.twisted(y.j));
  if (x.kind == Kind::cusp && y.kind == Kind::cusp) return MotiveExpr(MotiveBasisElem::Prod(x.k1, y.k1, x.j + y.j));
  throw DomainError("motive product: " + x.pretty() + " * " + y.pretty() + " is outside the supported basis");
}

MotiveExpr elem_sigma2(const MotiveBasisElem& x) {
  if (x.kind == Kind::tate) return MotiveExpr(MotiveBasisElem::Tate(2 * x.j));
  if (x.kind == Kind::cusp) return MotiveExpr(MotiveBasisElem::Sym2Cusp(x.k1, 2 * x.j));
  throw DomainError("sigma2: unsupported element " + x.pretty());
}

MotiveExpr elem_lambda2(const MotiveBasisElem& x) {
  if (x.kind == Kind::tate) return {};
  if (x.kind == Kind::cusp) return MotiveExpr(MotiveBasisElem::Alt2Cusp(x.k1, 2 * x.j));
  throw DomainError("lambda2: unsupported element " + x.pretty());
}

// sigma^2 (sign = +1) or lambda^2 (sign = -1) of an integer combination, via
// sigma^2(cx) = C(c+1,2) sigma^2 x + C(c,2) lambda^2 x and the cross terms.
MotiveExpr square_operation(const MotiveExpr& e, int sign) {
  MotiveExpr out;
  const auto& terms = e.terms();
  for (auto it = terms.begin(); it != terms.end(); ++it) {
    const Integer& c = it->second;
    const Integer up = c * (c + 1) / 2;
    const Integer down = c * (c - 1) / 2;
    out += elem_sigma2(it->first) * (sign > 0 ? up : down);
    out += elem_lambda2(it->first) * (sign > 0 ? down : up);
    for (auto jt = std::next(it); jt != terms.end(); ++jt) {
      out += elem_product(it->first, jt->first) * (c * jt->second);
    }
  }
  return out;
}

void check_trace_weight(const HighestWeight& lambda) {
  if (lambda.size() > 24) throw DomainError("trace_ec: |lambda| must be at most 24");
}

}  // namespace

MotiveExpr product(const MotiveExpr& a, const MotiveExpr& b) {
  MotiveExpr out;
  for (const auto& [x, cx] : a.terms()) {
    for (const auto& [y, cy] : b.terms()) out += elem_product(x, y) * (cx * cy);
  }
  return out;
}

MotiveExpr sigma2(const MotiveExpr& e) { return square_operation(e, +1); }
MotiveExpr lambda2(const MotiveExpr& e) { return square_operation(e, -1); }

MotiveExpr euler_a11(const HighestWeight& lambda) {
  const symchar::BranchDecomp b = symchar::branch_a11(lambda);
  MotiveExpr out;
  for (const auto& [ab, m] : b.off_diag) {
    const auto [x, y] = ab;
    out += product(euler_a1(x), euler_a1(y)).twisted(b.twist(x, y)) * m;
  }
  for (const auto& [a, m] : b.diag_plus) out += sigma2(euler_a1(a)).twisted(b.twist(a, a)) * m;
  for (const auto& [a, m] : b.diag_minus) out += lambda2(euler_a1(a)).twisted(b.twist(a, a)) * m;
  return out;
}

Rational trace_a1_pointcount(int n, std::int64_t q, pointcount::HistogramStore& store) {
  const auto& hist = store.get(pointcount::Family::elliptic, q);
  return pointcount::weighted_trace(hist, [n](const pointcount::FrobClass& cls) {
    return symchar::eval_frobenius_sp2(n, cls);
  });
}

Rational trace_ec(Space space, const HighestWeight& lambda, std::int64_t q, pointcount::HistogramStore& store,
                  const TraceOptions& options) {
  check_trace_weight(lambda);
  if (!is_prime(q)) throw DomainError("trace_ec: q = " + std::to_string(q) + " is not prime");
  if (space == Space::A1 && lambda.m != 0) throw DomainError("trace_ec: A1 local systems are V_n = (n,0)");
  if (lambda.size() % 2 != 0 && !options.force_full) return Rational(0);
  switch (space) {
    case Space::A1:
      return euler_a1(lambda.l).trace(q, 1);
    case Space::A11:
      return euler_a11(lambda).trace(q, 1);
    case Space::M2: {
      const auto& hist = store.get(pointcount::Family::genus2, q);
      return pointcount::weighted_trace(
          hist, [&lambda](const pointcount::FrobClass& cls) { return symchar::eval_frobenius(lambda, cls); });
    }
    case Space::A2:
      return trace_ec(Space::M2, lambda, q, store, options) + trace_ec(Space::A11, lambda, q, store, options);
  }
  return Rational(0);
}

MotiveExpr lowest_a11(const HighestWeight& lambda, int degree) {
  if (degree != 0 && degree != 2) throw DomainError("lowest_a11: degree must be 0 or 2");
  const symchar::BranchDecomp b = symchar::branch_a11(lambda);
  MotiveExpr out;
  if (degree == 0) {
    const std::int64_t invariants = b.plus(0);
    if (invariants != 0) out.add(MotiveBasisElem::Tate(lambda.size() / 2), invariants);
    return out;
  }
  auto has_cusp = [](int a) { return modforms::dim_cusp(a + 2) > 0; };
  for (const auto& [ab, m] : b.off_diag) {
    const auto [x, y] = ab;
    if (has_cusp(x) && has_cusp(y)) out.add(MotiveBasisElem::Prod(x + 2, y + 2, b.twist(x, y)), m);
  }
  for (const auto& [a, m] : b.diag_plus) {
    if (has_cusp(a)) out.add(MotiveBasisElem::Alt2Cusp(a + 2, b.twist(a, a)), m);
  }
  for (const auto& [a, m] : b.diag_minus) {
    if (has_cusp(a)) out.add(MotiveBasisElem::Sym2Cusp(a + 2, b.twist(a, a)), m);
  }
  return out;
}

MotiveExpr eisenstein_lowest(const HighestWeight& lambda, int degree, const modforms::NonvanishingTable& table) {
  if (lambda.size() == 0) throw DomainError("eisenstein_lowest: lambda = (0,0) is not covered");
  if (lambda.l != lambda.m || lambda.l % 2 != 0 || degree != 2) return {};
  const int a = lambda.l / 2;
  const int k = 4 + 4 * a;
  if (modforms::dim_cusp(k) == 0 || !modforms::l_nonvanishing(k, a, table)) return {};
  return MotiveExpr(MotiveBasisElem::Tate(1 + 2 * a), modforms::dim_cusp(k));
}

bool NConfig::is_injective(int a) const {
  const auto it = injective.find(a);
  if (it != injective.end()) return it->second;
  return a != 1;
}

NConfig NConfig::parse(const std::string& assumptions) {
  NConfig cfg;
  std::stringstream in(assumptions);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq < 2 || item[0] != 'a') {
      throw DomainError("assumption '" + item + "' must look like a2=inj or a3=noninj");
    }
    int a = 0;
    try {
      std::size_t used = 0;
      a = std::stoi(item.substr(1, eq - 1), &used);
      if (used != eq - 1) throw std::invalid_argument("a");
    } catch (const std::logic_error&) {
      throw DomainError("assumption '" + item + "' has a malformed index");
    }
    if (a < 2 || a > 5) throw DomainError("assumption '" + item + "': a must lie in {2,3,4,5}");
    const std::string v = item.substr(eq + 1);
    if (v == "inj" || v == "true" || v == "1") {
      cfg.injective[a] = true;
    } else if (v == "noninj" || v == "false" || v == "0") {
      cfg.injective[a] = false;
    } else {
      throw DomainError("assumption '" + item + "': value must be inj or noninj");
    }
  }
  return cfg;
}

M2Lowest h2_lowest_m2(const HighestWeight& lambda, const NConfig& cfg, const modforms::NonvanishingTable& table) {
  if (lambda.size() > 20) {
    throw DomainError("h2_lowest_m2: |lambda| > 20 is outside the range where inner vanishing is proved");
  }
  M2Lowest out;
  if (lambda.size() == 0 || lambda.l != lambda.m || lambda.l % 2 != 0) return out;
  const int a = lambda.l / 2;
  out.eisenstein_dim = eisenstein_lowest(lambda, 2, table).coefficient_sum();
  out.a11_dim = lowest_a11(lambda, 0).coefficient_sum();
  out.injective = cfg.is_injective(a);
  // An injective map removes its image; otherwise the rank-one map is zero.
  const Integer image = out.injective ? std::min(out.a11_dim, out.eisenstein_dim) : Integer(0);
  out.bound = out.eisenstein_dim - image;
  out.nonvanishing = out.bound > 0;
  return out;
}

NResult determine_N(const NConfig& cfg, const modforms::NonvanishingTable& table) {
  for (int a = 2; a <= 5; ++a) {
    if (h2_lowest_m2(HighestWeight(2 * a, 2 * a), cfg, table).nonvanishing) return {4 * a, 2 * a + 1, a};
  }
  throw IntegrityError("determine_N: (10,10) must be nonvanishing");
}

std::set<int> fweights(int a, int b) {
  if (!(a >= b && b >= 0)) throw DomainError("fweights: need a >= b >= 0");
  return {a + b + 3, a + 2, b + 1, 0};
}

bool admits_tate_class(int a, int b, int degree) {
  const int w = degree + a + b;
  if (w % 2 != 0) return false;
  return fweights(a, b).count(w / 2) != 0;
}

bool bound_check(const Integer& q) {
  if (q < 1) throw DomainError("bound_check: q must be a positive integer");
  const Integer lhs = ipow(q, 11) + ipow(q, 12);
  return lhs * lhs > 4 * ipow(q, 23);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::vanishes:
      return "vanishes";
    case Verdict::vanishes_conditionally:
      return "vanishes-conditionally";
    case Verdict::unknown:
      return "unknown";
  }
  return {};
}

std::string to_string(Route r) {
  switch (r) {
    case Route::regular_faltings:
      return "regular-Faltings";
    case Route::below_20_pca11:
      return "below-20-pca11";
    case Route::fweight_tate_obstruction:
      return "fweight-Tate-obstruction";
    case Route::trace_bound_contradiction:
      return "trace-bound-contradiction";
  }
  return {};
}

InnerReport inner_vanishing_report(const HighestWeight& lambda) {
  if (lambda.size() > 20) {
    throw DomainError("inner_vanishing_report: |lambda| = " + std::to_string(lambda.size()) +
                      " > 20 is not decided");
  }
  InnerReport rep;
  rep.lambda = lambda;
  if (lambda.regular()) {
    rep.verdict = Verdict::vanishes;
    rep.route = Route::regular_faltings;
    rep.evidence = {{"regular", true}, {"statement", "L2-cohomology vanishes outside the middle degree"}};
    return rep;
  }
  const MotiveExpr h2 = lowest_a11(lambda, 2);
  if (lambda.size() < 20) {
    if (!h2.is_zero()) throw IntegrityError("inner_vanishing_report: nonzero lowest H^2(A11) below weight 20");
    rep.verdict = Verdict::vanishes;
    rep.route = Route::below_20_pca11;
    rep.evidence = {{"lowest_a11_h2", h2.pretty()}};
    return rep;
  }
  // Non-regular of weight 20: (20,0) or (10,10). Both have W H^2(A11) = Alt2 S[12].
  rep.evidence["lowest_a11_h2"] = h2.pretty();
  rep.evidence["alt2_s12_is_tate"] = true;
  for (std::int64_t p : {2, 3, 5, 7}) {
    if (motives::trace(MotiveBasisElem::Alt2Cusp(12, 0), p, 1) != Rational(ipow(p, 11))) {
      rep.evidence["alt2_s12_is_tate"] = false;
    }
  }
  if (lambda.m == 0) {
    const std::set<int> fw = fweights(lambda.l, lambda.m);
    const int half = (2 + lambda.size()) / 2;
    if (admits_tate_class(lambda.l, lambda.m, 2)) {
      throw IntegrityError("inner_vanishing_report: F-weights of V_{a,0} admit a Tate class");
    }
    rep.verdict = Verdict::vanishes;
    rep.route = Route::fweight_tate_obstruction;
    rep.evidence["fweights"] = std::vector<int>(fw.begin(), fw.end());
    rep.evidence["tate_hodge_weight"] = half;
    rep.evidence["tate_class_possible"] = false;
    return rep;
  }
  bool all_hold = true;
  for (int q = 2; q <= 37; ++q) all_hold = all_hold && bound_check(q);
  rep.verdict = Verdict::vanishes_conditionally;
  rep.route = Route::trace_bound_contradiction;
  rep.evidence["inequality"] = "(1+q)^2 > 4q, i.e. q^11 (1 - sqrt q)^2 > 0";
  rep.evidence["inequality_holds_q_2_to_37"] = all_hold;
  rep.evidence["external_hypothesis"] =
      "trace of Frobenius on inner cohomology of V_{10,10} vanishes for all primes up to 37";
  rep.evidence["fweights"] = [&] {
    const std::set<int> fw = fweights(lambda.l, lambda.m);
    return std::vector<int>(fw.begin(), fw.end());
  }();
  rep.evidence["tate_class_possible"] = admits_tate_class(lambda.l, lambda.m, 2);
  return rep;
}

}  // namespace taut2::cohomology
