#include "taut2/modforms.hpp"

#include <fstream>
#include <mutex>
#include <string>

namespace taut2::modforms {

namespace {

Integer divisor_power_sum(int n, int e) {
  Integer s = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) s += ipow(d, static_cast<unsigned>(e));
  }
  return s;
}

QSeries eisenstein(int prec, int e, int factor) {
  QSeries s(static_cast<std::size_t>(prec), 0);
  if (prec > 0) s[0] = 1;
  for (int n = 1; n < prec; ++n) s[static_cast<std::size_t>(n)] = factor * divisor_power_sum(n, e);
  return s;
}

QSeries power(const QSeries& a, int e, int prec) {
  QSeries r(static_cast<std::size_t>(prec), 0);
  if (prec > 0) r[0] = 1;
  for (int i = 0; i < e; ++i) r = multiply(r, a);
  return r;
}

}  // namespace

int dim_cusp(int k) {
  if (k < 12 || k % 2 != 0) return 0;
  const int base = k / 12;
  return k % 12 == 2 ? base - 1 : base;
}

QSeries multiply(const QSeries& a, const QSeries& b) {
  const std::size_t n = std::min(a.size(), b.size());
  QSeries r(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

QSeries eisenstein_e4(int prec) { return eisenstein(prec, 3, 240); }
QSeries eisenstein_e6(int prec) { return eisenstein(prec, 5, -504); }

QSeries delta_series(int prec) {
  const QSeries e4 = eisenstein_e4(prec);
  const QSeries e6 = eisenstein_e6(prec);
  QSeries d = multiply(multiply(e4, e4), e4);
  const QSeries e6sq = multiply(e6, e6);
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] -= e6sq[i];
    if (d[i] % 1728 != 0) throw IntegrityError("delta_series: E4^3 - E6^2 not divisible by 1728");
    d[i] /= 1728;
  }
  return d;
}

CuspSpaceBasis miller_basis(int k, int prec) {
  CuspSpaceBasis basis;
  basis.weight = k;
  basis.prec = prec;
  const int d = dim_cusp(k);
  if (d == 0) return basis;
  if (prec < d + 2) throw DomainError("miller_basis: precision must be at least dim + 2");

  const QSeries delta = delta_series(prec);
  const QSeries e4 = eisenstein_e4(prec);
  const QSeries e6 = eisenstein_e6(prec);
  for (int j = 1; j <= d; ++j) {
    const int w = k - 12 * j;
    const int b = (w % 4 == 0) ? 0 : 1;
    const int a = (w - 6 * b) / 4;
    if (a < 0) throw IntegrityError("miller_basis: no Eisenstein product of weight " + std::to_string(w));
    QSeries g = multiply(power(delta, j, prec), multiply(power(e4, a, prec), power(e6, b, prec)));
    basis.forms.push_back(std::move(g));
  }
  // Back-substitution: clear coefficient q^i from every earlier form.
  for (int j = d - 1; j >= 1; --j) {
    QSeries& g = basis.forms[static_cast<std::size_t>(j - 1)];
    for (int i = j + 1; i <= d; ++i) {
      const Integer c = g[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      const QSeries& h = basis.forms[static_cast<std::size_t>(i - 1)];
      for (std::size_t n = 0; n < g.size(); ++n) g[n] -= c * h[n];
    }
  }
  for (int j = 1; j <= d; ++j) {
    const QSeries& g = basis.forms[static_cast<std::size_t>(j - 1)];
    for (int i = 0; i <= d; ++i) {
      const Integer expected = i == j ? 1 : 0;
      if (g[static_cast<std::size_t>(i)] != expected) throw IntegrityError("miller_basis: echelon form broken");
    }
  }
  return basis;
}

Matrix hecke_matrix(int k, std::int64_t p) {
  if (!is_prime(p)) throw DomainError("hecke: p = " + std::to_string(p) + " is not prime");
  if (k < 0 || k % 2 != 0) throw DomainError("hecke: weight must be even and nonnegative");
  const int d = dim_cusp(k);
  if (d == 0) return {};
  const int prec = static_cast<int>(d * p + 1);
  const CuspSpaceBasis basis = miller_basis(k, std::max(prec, d + 2));
  const Integer pk = ipow(p, static_cast<unsigned>(k - 1));
  Matrix m(static_cast<std::size_t>(d), std::vector<Integer>(static_cast<std::size_t>(d), 0));
  for (int i = 0; i < d; ++i) {
    const QSeries& f = basis.forms[static_cast<std::size_t>(i)];
    for (int n = 1; n <= d; ++n) {
      Integer c = f[static_cast<std::size_t>(n * p)];
      if (n % p == 0) c += pk * f[static_cast<std::size_t>(n / p)];
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - 1)] = c;
    }
  }
  return m;
}

Integer hecke_trace(int k, std::int64_t p, int r) {
  if (r != 1 && r != 2) throw DomainError("hecke: Frobenius power must be 1 or 2");
  static std::mutex mutex;
  static std::map<std::tuple<int, std::int64_t, int>, Integer> cache;
  const auto key = std::make_tuple(k, p, r);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const Matrix m = hecke_matrix(k, p);
  const std::size_t d = m.size();
  Integer tr = 0;
  if (r == 1) {
    for (std::size_t i = 0; i < d; ++i) tr += m[i][i];
  } else {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) tr += m[i][j] * m[j][i];
    }
    tr -= 2 * ipow(p, static_cast<unsigned>(k - 1)) * static_cast<long>(d);
  }
  std::lock_guard lock(mutex);
  cache.emplace(key, tr);
  return tr;
}

NonvanishingTable NonvanishingTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("nonvanishing table: cannot read " + path.string());
  NonvanishingTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r')) line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw DomainError("nonvanishing table: malformed line " + std::to_string(lineno));
    }
    const std::string flag = line.substr(c2 + 1);
    bool value = false;
    if (flag == "true" || flag == "1") {
      value = true;
    } else if (flag != "false" && flag != "0") {
      throw DomainError("nonvanishing table: bad flag on line " + std::to_string(lineno));
    }
    try {
      table.set(std::stoi(line.substr(0, c1)), std::stoi(line.substr(c1 + 1, c2 - c1 - 1)), value);
    } catch (const std::logic_error&) {
      throw DomainError("nonvanishing table: malformed line " + std::to_string(lineno));
    }
  }
  return table;
}

void NonvanishingTable::set(int weight, int a, bool flag) { overrides_[{weight, a}] = flag; }

bool NonvanishingTable::lookup(int weight, int a) const {
  if (const auto it = overrides_.find({weight, a}); it != overrides_.end()) return it->second;
  if (weight <= kDefaultMaxWeight) return true;
  throw DomainError("l_nonvanishing: no data for weight " + std::to_string(weight) +
                    " (known up to 200; supply an override)");
}

bool l_nonvanishing(int k, int a, const NonvanishingTable& table) {
  if (a < 0 || k != 4 + 4 * a) throw DomainError("l_nonvanishing: weight must equal 4 + 4a");
  return table.lookup(k, a);
}

}  // namespace taut2::modforms
