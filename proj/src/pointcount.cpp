#include "taut2/pointcount.hpp"

#include <openssl/evp.h>

#include <array>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "taut2/ffield.hpp"

namespace taut2::pointcount {

using ffield::Elem;
using ffield::PrimeField;

std::string to_string(Family family) {
  return family == Family::elliptic ? "elliptic" : "genus2";
}

Family parse_family(const std::string& name) {
  if (name == "elliptic") return Family::elliptic;
  if (name == "genus2") return Family::genus2;
  throw DomainError("unknown curve family '" + name + "' (expected elliptic|genus2)");
}

int genus(Family family) { return family == Family::elliptic ? 1 : 2; }

std::int64_t group_order(Family family, std::int64_t q) {
  if (family == Family::elliptic) return q * (q - 1);
  return q * (q - 1) * (q - 1) * (q + 1);
}

FrobHistogram::FrobHistogram(Family family, std::int64_t q)
    : family_(family), q_(q), group_order_(pointcount::group_order(family, q)) {}

void FrobHistogram::add(std::int64_t a1, std::int64_t a2, std::int64_t models) {
  if (models <= 0) throw IntegrityError("histogram: nonpositive model count");
  if (family_ == Family::elliptic) a2 = 0;
  counts_[{a1, a2}] += models;
}

void FrobHistogram::merge(const FrobHistogram& other) {
  if (other.family_ != family_ || other.q_ != q_) {
    throw IntegrityError("histogram merge: family or q mismatch");
  }
  for (const auto& [key, n] : other.counts_) counts_[key] += n;
}

std::int64_t FrobHistogram::model_count() const {
  std::int64_t total = 0;
  for (const auto& [key, n] : counts_) total += n;
  return total;
}

Rational FrobHistogram::total_mass() const { return Rational(model_count(), group_order_); }

Rational FrobHistogram::mass(std::int64_t a1, std::int64_t a2) const {
  if (family_ == Family::elliptic) a2 = 0;
  const auto it = counts_.find({a1, a2});
  if (it == counts_.end()) return Rational(0);
  return Rational(it->second, group_order_);
}

std::vector<std::pair<FrobClass, Rational>> FrobHistogram::entries() const {
  std::vector<std::pair<FrobClass, Rational>> out;
  out.reserve(counts_.size());
  for (const auto& [key, n] : counts_) {
    FrobClass cls{q_, key.first, std::nullopt};
    if (family_ == Family::genus2) cls.a2 = key.second;
    out.emplace_back(cls, Rational(n, group_order_));
  }
  return out;
}

FrobClass lcoeffs_from_counts(std::int64_t n1, std::int64_t n2, std::int64_t q, int genus) {
  if (n1 < 0 || n2 < 0) throw DomainError("lcoeffs_from_counts: negative point count");
  const std::int64_t p1 = q + 1 - n1;
  if (genus == 1) {
    if (p1 * p1 > 4 * q) throw IntegrityError("lcoeffs_from_counts: Hasse bound violated");
    return {q, p1, std::nullopt};
  }
  if (genus != 2) throw DomainError("lcoeffs_from_counts: genus must be 1 or 2");
  const std::int64_t p2 = q * q + 1 - n2;
  const std::int64_t diff = p1 * p1 - p2;
  if (diff % 2 != 0) throw IntegrityError("lcoeffs_from_counts: p1^2 - p2 is odd (malformed counts)");
  if (p1 * p1 > 16 * q || p2 > 4 * q || p2 < -4 * q) {
    throw IntegrityError("lcoeffs_from_counts: Weil bound violated");
  }
  return {q, p1, diff / 2};
}

Rational weighted_trace(const FrobHistogram& hist, const ClassFunction& eval) {
  Integer acc = 0;
  for (const auto& [key, n] : hist.model_counts()) {
    FrobClass cls{hist.q(), key.first, std::nullopt};
    if (hist.family() == Family::genus2) cls.a2 = key.second;
    acc += eval(cls) * n;
  }
  return Rational(acc, hist.group_order());
}

namespace {

// Point counts keyed by (n1, n2) in a dense table; converted to Frobenius
// classes once per distinct key when the enumeration finishes.
class CountTable {
 public:
  CountTable(std::int64_t max_n1, std::int64_t max_n2)
      : width_(max_n2 + 1), cells_(static_cast<std::size_t>((max_n1 + 1) * (max_n2 + 1)), 0) {}

  void bump(std::int64_t n1, std::int64_t n2) { ++cells_[static_cast<std::size_t>(n1 * width_ + n2)]; }

  void merge_into(CountTable& other) const {
    for (std::size_t i = 0; i < cells_.size(); ++i) other.cells_[i] += cells_[i];
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (cells_[i] != 0) {
        f(static_cast<std::int64_t>(i) / width_, static_cast<std::int64_t>(i) % width_, cells_[i]);
      }
    }
  }

 private:
  std::int64_t width_;
  std::vector<std::int64_t> cells_;
};

template <typename Body>
void run_chunks(std::size_t chunk_count, unsigned jobs, Body&& body) {
  jobs = std::max(1U, jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&](unsigned slot) {
    for (std::size_t c = next.fetch_add(1); c < chunk_count; c = next.fetch_add(1)) body(slot, c);
  };
  if (jobs == 1) {
    worker(0);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker, j);
  for (auto& t : threads) t.join();
}

FrobHistogram enumerate_elliptic(std::int64_t q, unsigned jobs) {
  const PrimeField field(q);
  // Chunk over the x^2 coefficient.
  std::vector<CountTable> partial(std::max(1U, jobs), CountTable(2 * q + 2, 0));
  run_chunks(static_cast<std::size_t>(q), jobs, [&](unsigned slot, std::size_t chunk) {
    const Elem a = static_cast<Elem>(chunk);
    std::vector<Elem> quad(static_cast<std::size_t>(q));
    for (Elem x = 0; x < q; ++x) {
      quad[static_cast<std::size_t>(x)] = field.mul(field.mul(x, x), field.add(x, a));
    }
    for (Elem b = 0; b < q; ++b) {
      for (Elem c = 0; c < q; ++c) {
        const std::array<Elem, 4> f{c, b, a, 1};
        if (!ffield::is_squarefree(field, f)) continue;
        std::int64_t s = 0;
        for (Elem x = 0; x < q; ++x) {
          const Elem v = field.add(field.add(quad[static_cast<std::size_t>(x)], field.mul(b, x)), c);
          s += field.character(v);
        }
        partial[slot].bump(q + 1 + s, 0);
      }
    }
  });
  for (std::size_t i = 1; i < partial.size(); ++i) partial[i].merge_into(partial[0]);
  FrobHistogram hist(Family::elliptic, q);
  partial[0].for_each([&](std::int64_t n1, std::int64_t, std::int64_t n) {
    const FrobClass cls = lcoeffs_from_counts(n1, 0, q, 1);
    hist.add(cls.a1, 0, n);
  });
  return hist;
}

// Squarefreeness of a polynomial of degree <= 6 with small p, using an
// inverse table. Mirrors ffield::is_squarefree without heap traffic.
class SmallSquarefree {
 public:
  explicit SmallSquarefree(const PrimeField& field) : field_(field), inv_(static_cast<std::size_t>(field.p()), 0) {
    for (Elem a = 1; a < field.p(); ++a) inv_[static_cast<std::size_t>(a)] = field.inv(a);
  }

  bool operator()(const std::array<Elem, 7>& f, int deg) const {
    std::array<Elem, 7> a{};
    std::array<Elem, 7> b{};
    int da = deg;
    for (int i = 0; i <= deg; ++i) a[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)];
    int db = -1;
    for (int i = 1; i <= deg; ++i) {
      b[static_cast<std::size_t>(i - 1)] = field_.mul(field_.reduce(i), f[static_cast<std::size_t>(i)]);
      if (b[static_cast<std::size_t>(i - 1)] != 0) db = i - 1;
    }
    while (db >= 0) {
      // a <- a mod b
      const Elem lead_inv = inv_[static_cast<std::size_t>(b[static_cast<std::size_t>(db)])];
      while (da >= db) {
        const Elem c = field_.mul(a[static_cast<std::size_t>(da)], lead_inv);
        const int shift = da - db;
        for (int i = 0; i <= db; ++i) {
          auto& slot = a[static_cast<std::size_t>(shift + i)];
          slot = field_.sub(slot, field_.mul(c, b[static_cast<std::size_t>(i)]));
        }
        while (da >= 0 && a[static_cast<std::size_t>(da)] == 0) --da;
        if (da < 0) break;
      }
      std::swap(a, b);
      std::swap(da, db);
    }
    return da == 0;
  }

 private:
  const PrimeField& field_;
  std::vector<Elem> inv_;
};

FrobHistogram enumerate_genus2(std::int64_t q, unsigned jobs) {
  const PrimeField field(q);
  const ffield::QuadExtField ext(field);
  const auto qs = static_cast<std::size_t>(q);

  // Points of F_{q^2} \ F_q up to conjugation: x + y*sqrt(n), 1 <= y <= (q-1)/2.
  std::vector<ffield::QuadElem> reps;
  for (Elem y = 1; y <= (q - 1) / 2; ++y) {
    for (Elem x = 0; x < q; ++x) reps.push_back({x, y});
  }
  const std::size_t nr = reps.size();

  // Powers z^i, i = 0..6, for base points and representatives.
  std::array<std::vector<Elem>, 7> base_pow;
  std::array<std::vector<ffield::QuadElem>, 7> rep_pow;
  for (int i = 0; i <= 6; ++i) {
    base_pow[static_cast<std::size_t>(i)].resize(qs);
    rep_pow[static_cast<std::size_t>(i)].resize(nr);
  }
  for (Elem x = 0; x < q; ++x) {
    Elem acc = 1;
    for (int i = 0; i <= 6; ++i) {
      base_pow[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] = acc;
      acc = field.mul(acc, x);
    }
  }
  for (std::size_t r = 0; r < nr; ++r) {
    ffield::QuadElem acc{1, 0};
    for (int i = 0; i <= 6; ++i) {
      rep_pow[static_cast<std::size_t>(i)][r] = acc;
      acc = ext.mul(acc, reps[r]);
    }
  }
  // Character of F_{q^2} indexed by x + q*y.
  std::vector<std::int8_t> chi2(static_cast<std::size_t>(q * q));
  for (std::int64_t idx = 0; idx < q * q; ++idx) {
    chi2[static_cast<std::size_t>(idx)] = static_cast<std::int8_t>(ext.character(ext.from_index(idx)));
  }
  std::vector<std::int8_t> chi1(qs);
  for (Elem a = 0; a < q; ++a) chi1[static_cast<std::size_t>(a)] = static_cast<std::int8_t>(field.character(a));

  const SmallSquarefree squarefree(field);
  std::vector<CountTable> partial(std::max(1U, jobs), CountTable(2 * q + 2, 2 * q * q + 2));

  // Chunk over (c6, c5); each chunk walks c4..c0 with incremental value tables.
  run_chunks(qs * qs, jobs, [&](unsigned slot, std::size_t chunk) {
    const Elem c6 = static_cast<Elem>(chunk / qs);
    const Elem c5 = static_cast<Elem>(chunk % qs);
    if (c6 == 0 && c5 == 0) return;
    const int deg = c6 != 0 ? 6 : 5;
    const std::int64_t inf1 = deg == 6 ? 1 + field.character(c6) : 1;
    const std::int64_t inf2 = deg == 6 ? 2 : 1;
    CountTable& table = partial[slot];

    // vb[k][x], vx[k][r], vy[k][r]: value of sum_{i >= k} c_i z^i.
    std::array<std::vector<Elem>, 7> vb;
    std::array<std::vector<Elem>, 7> vx;
    std::array<std::vector<Elem>, 7> vy;
    for (auto& v : vb) v.assign(qs, 0);
    for (auto& v : vx) v.assign(nr, 0);
    for (auto& v : vy) v.assign(nr, 0);
    std::array<Elem, 7> coeff{};
    coeff[6] = c6;
    coeff[5] = c5;

    auto set_level = [&](int k, Elem c) {
      const auto ks = static_cast<std::size_t>(k);
      coeff[ks] = c;
      const auto& bp = base_pow[ks];
      const auto& rp = rep_pow[ks];
      if (k == 6) {
        for (std::size_t x = 0; x < qs; ++x) vb[6][x] = field.mul(c, bp[x]);
        for (std::size_t r = 0; r < nr; ++r) {
          vx[6][r] = field.mul(c, rp[r].x);
          vy[6][r] = field.mul(c, rp[r].y);
        }
        return;
      }
      for (std::size_t x = 0; x < qs; ++x) vb[ks][x] = field.add(vb[ks + 1][x], field.mul(c, bp[x]));
      for (std::size_t r = 0; r < nr; ++r) {
        vx[ks][r] = field.add(vx[ks + 1][r], field.mul(c, rp[r].x));
        vy[ks][r] = field.add(vy[ks + 1][r], field.mul(c, rp[r].y));
      }
    };

    set_level(6, c6);
    set_level(5, c5);
    for (Elem c4 = 0; c4 < q; ++c4) {
      set_level(4, c4);
      for (Elem c3 = 0; c3 < q; ++c3) {
        set_level(3, c3);
        for (Elem c2 = 0; c2 < q; ++c2) {
          set_level(2, c2);
          for (Elem c1 = 0; c1 < q; ++c1) {
            set_level(1, c1);
            const auto& b1 = vb[1];
            const auto& x1 = vx[1];
            const auto& y1 = vy[1];
            for (Elem c0 = 0; c0 < q; ++c0) {
              coeff[0] = c0;
              if (!squarefree(coeff, deg)) continue;
              std::int64_t s1 = 0;
              std::int64_t s2 = 0;
              for (std::size_t x = 0; x < qs; ++x) {
                Elem v = b1[x] + c0;
                if (v >= q) v -= q;
                s1 += chi1[static_cast<std::size_t>(v)];
                s2 += v != 0 ? 1 : 0;
              }
              std::int64_t s_rep = 0;
              for (std::size_t r = 0; r < nr; ++r) {
                Elem v = x1[r] + c0;
                if (v >= q) v -= q;
                s_rep += chi2[static_cast<std::size_t>(v + q * y1[r])];
              }
              s2 += 2 * s_rep;
              table.bump(q + s1 + inf1, q * q + s2 + inf2);
            }
          }
        }
      }
    }
  });
  for (std::size_t i = 1; i < partial.size(); ++i) partial[i].merge_into(partial[0]);
  FrobHistogram hist(Family::genus2, q);
  partial[0].for_each([&](std::int64_t n1, std::int64_t n2, std::int64_t n) {
    const FrobClass cls = lcoeffs_from_counts(n1, n2, q, 2);
    hist.add(cls.a1, *cls.a2, n);
  });
  return hist;
}

}  // namespace

FrobHistogram enumerate(Family family, std::int64_t q, const EnumerateOptions& options) {
  if (q % 2 == 0 || !is_prime(q)) {
    throw DomainError("enumerate: q = " + std::to_string(q) + " is not an odd prime");
  }
  if (family == Family::elliptic) {
    if (q > 1009) throw DomainError("enumerate: elliptic enumeration supports q <= 1009");
    return enumerate_elliptic(q, options.jobs);
  }
  const std::int64_t limit = options.allow_large ? 13 : 7;
  if (q > limit) {
    throw DomainError("enumerate: genus-2 enumeration at q = " + std::to_string(q) +
                      " needs the large-q flag (supported up to 13)");
  }
  return enumerate_genus2(q, options.jobs);
}

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw IntegrityError("sha256: digest failed");
  }
  std::ostringstream out;
  out << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) out << std::setw(2) << static_cast<int>(digest[i]);
  return out.str();
}

namespace {

std::string body_of(const FrobHistogram& hist) {
  std::ostringstream body;
  for (const auto& [cls, mass] : hist.entries()) {
    body << cls.a1 << ',';
    if (cls.a2) body << *cls.a2 << ',';
    body << boost::multiprecision::numerator(mass) << ',' << boost::multiprecision::denominator(mass)
         << '\n';
  }
  return body.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::int64_t parse_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw IntegrityError(std::string("histogram cache: bad ") + what + " '" + s + "'");
  }
  if (used != s.size()) throw IntegrityError(std::string("histogram cache: bad ") + what + " '" + s + "'");
  return v;
}

}  // namespace

std::string serialize(const FrobHistogram& hist) {
  std::ostringstream out;
  const std::string body = body_of(hist);
  out << "taut2-hist v1 " << to_string(hist.family()) << ' ' << hist.q() << ' ' << hist.group_order()
      << '\n'
      << body << "sha256:" << sha256_hex(body) << '\n';
  return out.str();
}

FrobHistogram deserialize(const std::string& text) {
  std::vector<std::string> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 2) throw IntegrityError("histogram cache: truncated file");

  const std::vector<std::string> header = split(lines.front(), ' ');
  if (header.size() != 5 || header[0] != "taut2-hist") {
    throw IntegrityError("histogram cache: bad header '" + lines.front() + "'");
  }
  if (header[1] != "v1") throw IntegrityError("histogram cache: unsupported version " + header[1]);
  const Family family = parse_family(header[2]);
  const std::int64_t q = parse_int(header[3], "q");
  const std::int64_t g = parse_int(header[4], "group order");
  if (g != group_order(family, q)) throw IntegrityError("histogram cache: group order mismatch");

  const std::string& trailer = lines.back();
  if (trailer.rfind("sha256:", 0) != 0) throw IntegrityError("histogram cache: missing checksum line");
  std::string body;
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) body += lines[i] + '\n';
  if (sha256_hex(body) != trailer.substr(7)) throw IntegrityError("histogram cache: checksum mismatch");

  FrobHistogram hist(family, q);
  const std::size_t fields = family == Family::elliptic ? 3 : 4;
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const std::vector<std::string> parts = split(lines[i], ',');
    if (parts.size() != fields) throw IntegrityError("histogram cache: bad body line '" + lines[i] + "'");
    const std::int64_t a1 = parse_int(parts[0], "a1");
    const std::int64_t a2 = family == Family::genus2 ? parse_int(parts[1], "a2") : 0;
    const Rational m(Integer(parts[fields - 2]), Integer(parts[fields - 1]));
    const Rational models = m * g;
    if (boost::multiprecision::denominator(models) != 1) {
      throw IntegrityError("histogram cache: mass is not a multiple of 1/|G|");
    }
    hist.add(a1, a2, static_cast<std::int64_t>(boost::multiprecision::numerator(models)));
  }
  if (serialize(hist) != text) throw IntegrityError("histogram cache: body is not in canonical form");
  return hist;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, Family family, std::int64_t q) {
  return dir / ("hist-" + to_string(family) + "-" + std::to_string(q) + ".csv");
}

std::filesystem::path cache_store(const FrobHistogram& hist, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = cache_path(dir, hist.family(), hist.q());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cache_store: cannot write " + tmp);
    out << serialize(hist);
  }
  std::filesystem::rename(tmp, path);
  return path;
}

FrobHistogram cache_load(Family family, std::int64_t q, const std::filesystem::path& dir) {
  const auto path = cache_path(dir, family, q);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cache_load: missing cache file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  FrobHistogram hist = deserialize(text.str());
  if (hist.family() != family || hist.q() != q) {
    throw IntegrityError("cache_load: " + path.string() + " holds a different family or q");
  }
  return hist;
}

HistogramStore::HistogramStore(std::optional<std::filesystem::path> cache_dir, EnumerateOptions options)
    : cache_dir_(std::move(cache_dir)), options_(options) {}

const FrobHistogram& HistogramStore::get(Family family, std::int64_t q) {
  std::lock_guard lock(mutex_);
  const auto key = std::make_pair(family, q);
  if (auto it = memo_.find(key); it != memo_.end()) {
    origin_[key] = "memory";
    return *it->second;
  }
  std::unique_ptr<FrobHistogram> hist;
  if (cache_dir_ && std::filesystem::exists(cache_path(*cache_dir_, family, q))) {
    hist = std::make_unique<FrobHistogram>(cache_load(family, q, *cache_dir_));
    origin_[key] = "cache";
  } else {
    hist = std::make_unique<FrobHistogram>(enumerate(family, q, options_));
    if (cache_dir_) cache_store(*hist, *cache_dir_);
    origin_[key] = "enumerated";
  }
  return *memo_.emplace(key, std::move(hist)).first->second;
}

std::string HistogramStore::origin(Family family, std::int64_t q) const {
  std::lock_guard lock(mutex_);
  const auto it = origin_.find({family, q});
  return it == origin_.end() ? "" : it->second;
}

}  // namespace taut2::pointcount
