#pragma once

// Compactly supported Euler characteristics of the local systems V_lambda on
// A1, A_{1,1}, M2 and A2 (as Frobenius traces and, where available, as
// motives), lowest-weight pieces, the inner-cohomology vanishing dispatch for
// |lambda| <= 20, and the determination of N.

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include <json.hpp>

#include "taut2/modforms.hpp"
#include "taut2/motives.hpp"
#include "taut2/pointcount.hpp"
#include "taut2/symchar.hpp"

namespace taut2::cohomology {

using motives::MotiveExpr;
using symchar::HighestWeight;

enum class Space { A1, A11, M2, A2 };

std::string to_string(Space space);
Space parse_space(const std::string& name);

// gr^W_w H^i(space, V_lambda). Inner pieces are pure of weight i + |lambda|.
class WeightPiece {
 public:
  WeightPiece(Space space, HighestWeight lambda, int degree, int weight, MotiveExpr content, bool inner);

  Space space() const { return space_; }
  const HighestWeight& lambda() const { return lambda_; }
  int degree() const { return degree_; }
  int weight() const { return weight_; }
  bool inner() const { return inner_; }
  const MotiveExpr& content() const { return content_; }

 private:
  Space space_;
  HighestWeight lambda_;
  int degree_;
  int weight_;
  MotiveExpr content_;
  bool inner_;
};

// e_c(A1, V_n): L for n = 0, 0 for odd n, -S[n+2] - 1 for even n >= 2 (the
// S[n+2] term only when dim S_{n+2} > 0).
MotiveExpr euler_a1(int n);

// Products and the lambda-ring squares sigma^2, lambda^2 of expressions made
// of Tate and cusp elements.
MotiveExpr product(const MotiveExpr& a, const MotiveExpr& b);
MotiveExpr sigma2(const MotiveExpr& e);
MotiveExpr lambda2(const MotiveExpr& e);

// e_c(A_{1,1}, V_lambda) assembled from the branching to (Sp2 x Sp2) x| S2.
MotiveExpr euler_a11(const HighestWeight& lambda);

struct TraceOptions {
  // Evaluate odd |lambda| in full instead of returning 0.
  bool force_full = false;
};

// Trace of Frob_q on e_c(space, V_lambda); |lambda| <= 24. For A1, lambda
// must be (n, 0). M2 and A2 draw genus-2 histograms from the store.
Rational trace_ec(Space space, const HighestWeight& lambda, std::int64_t q, pointcount::HistogramStore& store,
                  const TraceOptions& options = {});

// Point-count trace of e_c(A1, V_n) from the elliptic histogram.
Rational trace_a1_pointcount(int n, std::int64_t q, pointcount::HistogramStore& store);

// Lowest weight part W_{i+|lambda|} H^i(A_{1,1}, V_lambda), i in {0, 2}.
MotiveExpr lowest_a11(const HighestWeight& lambda, int degree);

// Lowest weight part of the Eisenstein cohomology of A2 (lambda != (0,0)).
MotiveExpr eisenstein_lowest(const HighestWeight& lambda, int degree,
                             const modforms::NonvanishingTable& table = modforms::NonvanishingTable{});

// Injectivity flags of H^0(A11, V_{2a,2a})(-1) -> H^2(A2, V_{2a,2a}) for
// a in {2, 3, 4, 5}. Defaults: injective for every a.
struct NConfig {
  std::map<int, bool> injective{{2, true}, {3, true}, {4, true}, {5, true}};

  bool is_injective(int a) const;
  // "a2=inj,a3=noninj,..."
  static NConfig parse(const std::string& assumptions);
};

struct M2Lowest {
  Integer eisenstein_dim;  // dim W H^2_Eis(A2, V_lambda)
  Integer a11_dim;         // dim H^0(A11, V_lambda)(-1)
  bool injective = false;
  Integer bound;  // lower bound on dim W_{2+|lambda|} H^2(M2, V_lambda)
  bool nonvanishing = false;
};

// |lambda| <= 20.
M2Lowest h2_lowest_m2(const HighestWeight& lambda, const NConfig& cfg,
                      const modforms::NonvanishingTable& table = modforms::NonvanishingTable{});

struct NResult {
  int N = 0;
  int degree = 0;  // N/2 + 1
  int a = 0;
};

NResult determine_N(const NConfig& cfg, const modforms::NonvanishingTable& table = modforms::NonvanishingTable{});

// Hodge F-weights of the cohomology of V_{a,b}.
std::set<int> fweights(int a, int b);
// Whether gr^W H^degree(V_{a,b}) can contain a class of Tate type.
bool admits_tate_class(int a, int b, int degree);

// (q^11 + q^12)^2 > 4 q^23 in exact integers.
bool bound_check(const Integer& q);

enum class Verdict { vanishes, vanishes_conditionally, unknown };
enum class Route { regular_faltings, below_20_pca11, fweight_tate_obstruction, trace_bound_contradiction };

std::string to_string(Verdict v);
std::string to_string(Route r);

struct InnerReport {
  HighestWeight lambda;
  Verdict verdict = Verdict::unknown;
  Route route = Route::regular_faltings;
  nlohmann::json evidence;
};

// H^i_!(A2, V_lambda) = 0 for i != 3, |lambda| <= 20.
InnerReport inner_vanishing_report(const HighestWeight& lambda);

}  // namespace taut2::cohomology
