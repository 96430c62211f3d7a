#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "taut2/pointcount.hpp"

using namespace taut2;
using namespace taut2::pointcount;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("taut2-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("group orders") {
  CHECK(group_order(Family::elliptic, 5) == 20);
  CHECK(group_order(Family::genus2, 3) == 48);
  CHECK(group_order(Family::genus2, 5) == 480);
  CHECK(genus(Family::elliptic) == 1);
  CHECK(genus(Family::genus2) == 2);
  CHECK(parse_family("genus2") == Family::genus2);
  CHECK_THROWS_AS(parse_family("genus3"), DomainError);
}

TEST_CASE("elliptic histogram equals brute-force point counts") {
  for (std::int64_t q : {3, 5, 7, 11}) {
    CAPTURE(q);
    const auto hist = enumerate(Family::elliptic, q);
    std::map<std::int64_t, std::int64_t> got;
    for (const auto& [key, count] : hist.model_counts()) got[key.first] = count;
    CHECK(got == oracle::elliptic_brute(q));
  }
}

TEST_CASE("genus-2 histogram equals brute-force point counts") {
  for (std::int64_t q : {3, 5}) {
    CAPTURE(q);
    const auto hist = enumerate(Family::genus2, q);
    CHECK(hist.model_counts() == oracle::genus2_brute(q));
  }
}

TEST_CASE("elliptic mass is q") {
  for (std::int64_t q = 3; q <= 101; ++q) {
    if (!oracle::is_prime(q)) continue;
    CAPTURE(q);
    CHECK(enumerate(Family::elliptic, q).total_mass() == Rational(q));
  }
}

TEST_CASE("genus-2 mass is q^3") {
  // Equal to the number of models divided by |GL_2(F_q)|; the brute-force
  // enumeration gives 1296 / 48 = 27 at q = 3.
  std::int64_t models = 0;
  for (const auto& [k, c] : oracle::genus2_brute(3)) models += c;
  CHECK(models == 1296);
  CHECK(enumerate(Family::genus2, 3).total_mass() == Rational(27));
  CHECK(enumerate(Family::genus2, 5).total_mass() == Rational(125));
  CHECK(enumerate(Family::genus2, 7).total_mass() == Rational(343));
}

TEST_CASE("Weil bounds and twist symmetry on every class") {
  for (std::int64_t q : {3, 5, 7}) {
    const auto hist = enumerate(Family::genus2, q);
    for (const auto& [key, count] : hist.model_counts()) {
      const auto [a1, a2] = key;
      CHECK(a1 * a1 <= 16 * q);
      CHECK(a2 <= 6 * q);
      CHECK(a2 >= -6 * q);
      // Quadratic twist y^2 = n f(x) negates a1.
      CHECK(hist.mass(-a1, a2) == hist.mass(a1, a2));
    }
  }
  for (std::int64_t q : {3, 5, 7, 11, 13, 101}) {
    const auto hist = enumerate(Family::elliptic, q);
    for (const auto& [key, count] : hist.model_counts()) {
      CHECK(key.first * key.first <= 4 * q);
      CHECK(hist.mass(-key.first) == hist.mass(key.first));
    }
  }
}

TEST_CASE("parallel and serial enumeration agree") {
  EnumerateOptions serial, parallel;
  parallel.jobs = 3;
  CHECK(enumerate(Family::genus2, 5, serial) == enumerate(Family::genus2, 5, parallel));
  CHECK(enumerate(Family::elliptic, 97, serial) == enumerate(Family::elliptic, 97, parallel));
}

TEST_CASE("enumeration domain") {
  CHECK_THROWS_AS(enumerate(Family::elliptic, 2), DomainError);
  CHECK_THROWS_AS(enumerate(Family::elliptic, 9), DomainError);
  CHECK_THROWS_AS(enumerate(Family::genus2, 11), DomainError);
  CHECK_THROWS_AS(enumerate(Family::genus2, 17, {1, true}), DomainError);
}

TEST_CASE("Frobenius data from point counts") {
  // Counts inside the Weil range.
  const auto cls = lcoeffs_from_counts(4, 10, 3, 2);
  const auto [a1, a2] = oracle::frob_from_counts(4, 10, 3);
  CHECK(cls.a1 == a1);
  CHECK(cls.a2 == a2);
  CHECK(lcoeffs_from_counts(6, 0, 5, 1).a1 == 0);
  CHECK_THROWS_AS(lcoeffs_from_counts(4, 11, 3, 2), IntegrityError);  // odd a1^2 - s2
  CHECK_THROWS_AS(lcoeffs_from_counts(100, 0, 5, 1), IntegrityError);
  CHECK_THROWS_AS(lcoeffs_from_counts(40, 60, 3, 2), IntegrityError);
}

TEST_CASE("weighted trace of the constant function is the mass") {
  const auto hist = enumerate(Family::genus2, 5);
  CHECK(weighted_trace(hist, [](const FrobClass&) { return Integer(1); }) == hist.total_mass());
  // Odd functions of a1 vanish by twist symmetry.
  CHECK(weighted_trace(hist, [](const FrobClass& c) { return Integer(c.a1 * c.a1 * c.a1); }) == 0);
}

TEST_CASE("sha256 known vector") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("cache serialization round trip and format") {
  const auto hist = enumerate(Family::genus2, 3);
  const std::string text = serialize(hist);
  CHECK(text.rfind("taut2-hist v1 genus2 3 48\n", 0) == 0);
  CHECK(deserialize(text) == hist);

  std::istringstream in(text);
  std::string line, body;
  std::getline(in, line);
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == hist.size() + 1);
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) body += lines[i] + "\n";
  CHECK(lines.back() == "sha256:" + sha256_hex(body));
  // First class is the smallest (a1, a2); four comma separated fields.
  CHECK(std::count(lines.front().begin(), lines.front().end(), ',') == 3);

  const auto ell = enumerate(Family::elliptic, 5);
  const std::string etext = serialize(ell);
  CHECK(etext.rfind("taut2-hist v1 elliptic 5 20\n", 0) == 0);
  CHECK(deserialize(etext) == ell);
}

TEST_CASE("tampered caches are integrity failures") {
  const std::string text = serialize(enumerate(Family::elliptic, 7));
  std::string bad_body = text;
  bad_body[bad_body.find('\n') + 1] = bad_body[bad_body.find('\n') + 1] == '-' ? '1' : '-';
  CHECK_THROWS_AS(deserialize(bad_body), IntegrityError);
  std::string bad_header = text;
  bad_header.replace(0, 13, "taut2-hist v2");
  CHECK_THROWS_AS(deserialize(bad_header), IntegrityError);
  std::string bad_group = text;
  bad_group.replace(bad_group.find(" 42\n"), 4, " 43\n");
  CHECK_THROWS_AS(deserialize(bad_group), IntegrityError);
  CHECK_THROWS_AS(deserialize(""), IntegrityError);
}

TEST_CASE("histogram store: enumerate, memory, cache") {
  const auto dir = fresh_dir("store");
  {
    HistogramStore store(dir);
    const auto& h = store.get(Family::elliptic, 11);
    CHECK(store.origin(Family::elliptic, 11) == "enumerated");
    CHECK(std::filesystem::exists(cache_path(dir, Family::elliptic, 11)));
    store.get(Family::elliptic, 11);
    CHECK(store.origin(Family::elliptic, 11) == "memory");
    CHECK(h.total_mass() == Rational(11));
  }
  {
    HistogramStore store(dir);
    store.get(Family::elliptic, 11);
    CHECK(store.origin(Family::elliptic, 11) == "cache");
  }
  CHECK(slurp(cache_path(dir, Family::elliptic, 11)) == serialize(enumerate(Family::elliptic, 11)));
  CHECK_THROWS_AS(cache_load(Family::genus2, 5, dir), DomainError);

  // Corrupt the cache file: the next load is an integrity failure.
  {
    std::ofstream out(cache_path(dir, Family::elliptic, 11), std::ios::app);
    out << "0,1,1\n";
  }
  HistogramStore store(dir);
  CHECK_THROWS_AS(store.get(Family::elliptic, 11), IntegrityError);
  std::filesystem::remove_all(dir);
}
