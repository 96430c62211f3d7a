#pragma once

// Automorphism-weighted enumeration of elliptic and genus-2 curves over F_q.
//
// Every model y^2 = f(x) in a family is visited once and contributes mass
// 1/|G|, where G is the group of model substitutions. By orbit-stabilizer the
// mass of an isomorphism class is 1/#Aut, so summing a class function against
// the histogram computes the groupoid (stacky) point count.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "taut2/exact.hpp"

namespace taut2::pointcount {

enum class Family { elliptic, genus2 };

std::string to_string(Family family);
Family parse_family(const std::string& name);
int genus(Family family);

// Frobenius data of one curve: a1 = e1 and (genus 2) a2 = e2 of the
// eigenvalues of Frobenius on H^1.
struct FrobClass {
  std::int64_t q = 0;
  std::int64_t a1 = 0;
  std::optional<std::int64_t> a2;

  friend auto operator<=>(const FrobClass&, const FrobClass&) = default;
};

// Order of the model substitution group: q(q-1) for monic cubics,
// q(q-1)^2(q+1) = |GL_2(F_q)| for genus-2 sextic/quintic models.
std::int64_t group_order(Family family, std::int64_t q);

class FrobHistogram {
 public:
  FrobHistogram(Family family, std::int64_t q);

  Family family() const { return family_; }
  std::int64_t q() const { return q_; }
  std::int64_t group_order() const { return group_order_; }

  // Adds `models` models of class (a1, a2); a2 is ignored for elliptic data.
  void add(std::int64_t a1, std::int64_t a2, std::int64_t models);
  void merge(const FrobHistogram& other);

  std::size_t size() const { return counts_.size(); }
  std::int64_t model_count() const;
  Rational total_mass() const;
  Rational mass(std::int64_t a1, std::int64_t a2 = 0) const;

  // Sorted by (a1, a2).
  std::vector<std::pair<FrobClass, Rational>> entries() const;
  const std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t>& model_counts() const {
    return counts_;
  }

  friend bool operator==(const FrobHistogram&, const FrobHistogram&) = default;

 private:
  Family family_;
  std::int64_t q_;
  std::int64_t group_order_;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> counts_;
};

struct EnumerateOptions {
  unsigned jobs = 1;
  // Genus-2 enumeration is restricted to q <= 7 unless set (q <= 13 then).
  bool allow_large = false;
};

FrobHistogram enumerate(Family family, std::int64_t q, const EnumerateOptions& options = {});

// Converts #C(F_q), #C(F_{q^2}) into Frobenius data. Throws IntegrityError on
// odd p1^2 - p2 or on a Weil bound violation.
FrobClass lcoeffs_from_counts(std::int64_t n1, std::int64_t n2, std::int64_t q, int genus);

using ClassFunction = std::function<Integer(const FrobClass&)>;
Rational weighted_trace(const FrobHistogram& hist, const ClassFunction& eval);

// Cache file format:
//   taut2-hist v1 <family> <q> <|G|>
//   a1,a2,num,den       (a2 omitted for elliptic; sorted by (a1,a2))
//   sha256:<hex of body>
std::string serialize(const FrobHistogram& hist);
FrobHistogram deserialize(const std::string& text);

std::filesystem::path cache_path(const std::filesystem::path& dir, Family family, std::int64_t q);
std::filesystem::path cache_store(const FrobHistogram& hist, const std::filesystem::path& dir);
FrobHistogram cache_load(Family family, std::int64_t q, const std::filesystem::path& dir);

std::string sha256_hex(const std::string& data);

// Memoizing source of histograms: memory, then the cache directory (if any),
// then enumeration (stored back to the cache directory).
class HistogramStore {
 public:
  explicit HistogramStore(std::optional<std::filesystem::path> cache_dir = std::nullopt,
                          EnumerateOptions options = {});

  const FrobHistogram& get(Family family, std::int64_t q);
  // Provenance of the last get() for (family, q): "memory", "cache" or "enumerated".
  std::string origin(Family family, std::int64_t q) const;

 private:
  std::optional<std::filesystem::path> cache_dir_;
  EnumerateOptions options_;
  mutable std::mutex mutex_;
  std::map<std::pair<Family, std::int64_t>, std::unique_ptr<FrobHistogram>> memo_;
  std::map<std::pair<Family, std::int64_t>, std::string> origin_;
};

}  // namespace taut2::pointcount
