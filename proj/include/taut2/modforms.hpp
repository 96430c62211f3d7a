#pragma once

// Level-one modular forms: cusp-space dimensions, integral echelon (Miller)
// bases of S_k, Hecke matrices on q-expansions, and the table of
// L-value nonvanishing flags used for the residual Eisenstein classes.

#include <cstdint>
#include <filesystem>
#include <map>
#include <utility>
#include <vector>

#include "taut2/exact.hpp"

namespace taut2::modforms {

// Coefficients c_0 .. c_{prec-1} of a q-expansion.
using QSeries = std::vector<Integer>;

int dim_cusp(int k);

// E_4, E_6 and Delta = (E_4^3 - E_6^2) / 1728 to `prec` terms.
QSeries eisenstein_e4(int prec);
QSeries eisenstein_e6(int prec);
QSeries delta_series(int prec);
QSeries multiply(const QSeries& a, const QSeries& b);

struct CuspSpaceBasis {
  int weight = 0;
  int prec = 0;
  // forms[i] = q^{i+1} + O(q^{d+1}), integral.
  std::vector<QSeries> forms;

  int dimension() const { return static_cast<int>(forms.size()); }
};

// Empty basis when dim S_k = 0. Throws DomainError for prec < dim + 2.
CuspSpaceBasis miller_basis(int k, int prec);

using Matrix = std::vector<std::vector<Integer>>;

// Matrix of T_p on the Miller basis (rows = images of basis elements).
Matrix hecke_matrix(int k, std::int64_t p);

// r = 1: Tr(T_p | S_k); r = 2: sum over eigenforms of alpha^2 + beta^2,
// i.e. Tr(T_p^2) - 2 p^{k-1} dim S_k.
Integer hecke_trace(int k, std::int64_t p, int r);

// Flags "L(f, 2+a) != 0 for every eigenform f of weight 4+4a".
class NonvanishingTable {
 public:
  // Known (all true) up to this weight.
  static constexpr int kDefaultMaxWeight = 200;

  NonvanishingTable() = default;
  // Lines "weight,a,flag" with flag in {true,false,1,0}; '#' starts a comment.
  static NonvanishingTable load(const std::filesystem::path& path);

  void set(int weight, int a, bool flag);
  bool lookup(int weight, int a) const;

 private:
  std::map<std::pair<int, int>, bool> overrides_;
};

// Requires k = 4 + 4a.
bool l_nonvanishing(int k, int a, const NonvanishingTable& table = NonvanishingTable{});

}  // namespace taut2::modforms
