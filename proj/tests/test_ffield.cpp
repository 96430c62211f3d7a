#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "oracles.hpp"
#include "taut2/exact.hpp"
#include "taut2/ffield.hpp"

using namespace taut2;
using namespace taut2::ffield;

TEST_CASE("prime field rejects p = 2 and composites") {
  CHECK_THROWS_AS(PrimeField(2), DomainError);
  CHECK_THROWS_AS(PrimeField(9), DomainError);
  CHECK_THROWS_AS(PrimeField(1), DomainError);
  CHECK_NOTHROW(PrimeField(3));
}

TEST_CASE("smallest nonresidue matches brute force") {
  for (std::int64_t p = 3; p < 400; ++p) {
    if (!oracle::is_prime(p)) continue;
    CAPTURE(p);
    CHECK(find_nonresidue(p) == oracle::smallest_nonresidue(p));
    CHECK(PrimeField(p).smallest_nonresidue() == oracle::smallest_nonresidue(p));
  }
  CHECK(find_nonresidue(7) == 3);
  CHECK(find_nonresidue(17) == 3);
  CHECK(find_nonresidue(41) == 3);
  CHECK(find_nonresidue(71) == 7);
}

TEST_CASE("Legendre symbol agrees with the set of squares") {
  for (std::int64_t p : {3, 5, 7, 11, 13, 101, 997}) {
    const PrimeField f(p);
    const auto sq = oracle::squares(p);
    for (Elem a = 0; a < p; ++a) {
      const int want = a == 0 ? 0 : (sq.count(a) ? 1 : -1);
      REQUIRE(quadratic_character(f, a) == want);
      REQUIRE(f.euler_character(a) == want);
    }
  }
}

TEST_CASE("quadratic character is multiplicative") {
  for (std::int64_t p = 3; p <= 100; ++p) {
    if (!oracle::is_prime(p)) continue;
    const PrimeField f(p);
    for (Elem a = 0; a < p; ++a) {
      for (Elem b = 0; b < p; ++b) REQUIRE(f.character(f.mul(a, b)) == f.character(a) * f.character(b));
    }
  }
}

TEST_CASE("large primes fall back to Euler's criterion") {
  const std::int64_t p = 1000003;
  const PrimeField f(p);
  CHECK(f.character(4) == 1);
  CHECK(f.character(f.neg(1)) == -1);  // p = 3 mod 4
  CHECK(f.mul(f.inv(12345), 12345) == 1);
}

TEST_CASE("field axioms on small fields") {
  const PrimeField f(13);
  for (Elem a = 1; a < 13; ++a) {
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.pow(a, 12) == 1);
    CHECK(f.add(a, f.neg(a)) == 0);
    CHECK(f.sub(0, a) == f.neg(a));
  }
}

TEST_CASE("quadratic extension: squares, norm and character") {
  for (std::int64_t p : {3, 5, 7, 11}) {
    const PrimeField base(p);
    const QuadExtField ext(base);
    const oracle::Fp2 ref(p);
    int squares = 0;
    std::vector<bool> is_square(static_cast<std::size_t>(p * p), false);
    for (std::int64_t i = 0; i < p * p; ++i) {
      const QuadElem z = ext.from_index(i);
      const QuadElem s = ext.mul(z, z);
      is_square[static_cast<std::size_t>(s.x + p * s.y)] = true;
      // Multiplication agrees with the oracle model of F_{p^2}.
      const auto r = ref.mul({z.x, z.y}, {z.x, z.y});
      REQUIRE(r == std::pair<std::int64_t, std::int64_t>{s.x, s.y});
    }
    for (std::int64_t i = 1; i < p * p; ++i) squares += is_square[static_cast<std::size_t>(i)] ? 1 : 0;
    CHECK(squares == (p * p - 1) / 2);
    for (std::int64_t i = 0; i < p * p; ++i) {
      const QuadElem z = ext.from_index(i);
      const int want = i == 0 ? 0 : (is_square[static_cast<std::size_t>(i)] ? 1 : -1);
      REQUIRE(quadratic_character(ext, z) == want);
    }
    // Every element of the base field is a square upstairs.
    for (Elem a = 1; a < p; ++a) CHECK(ext.character(ext.embed(a)) == 1);
  }
}

TEST_CASE("evaluation upstairs restricts to evaluation downstairs") {
  const PrimeField f(11);
  const QuadExtField ext(f);
  const std::vector<Elem> poly{3, 0, 7, 1, 10, 5, 2};
  for (Elem x = 0; x < 11; ++x) {
    const QuadElem v = ext_eval(ext, poly, ext.embed(x));
    CHECK(v.y == 0);
    CHECK(v.x == eval(f, poly, x));
  }
  CHECK(eval(f, poly, 0) == 3);
  CHECK(eval(f, poly, 1) == (3 + 7 + 1 + 10 + 5 + 2) % 11);
}

TEST_CASE("squarefree test") {
  const PrimeField f(7);
  const std::vector<Elem> square{1, 2, 1};  // (x+1)^2
  const std::vector<Elem> split{6, 0, 1};   // x^2 - 1
  CHECK_FALSE(is_squarefree(f, square));
  CHECK(is_squarefree(f, split));
  const std::vector<Elem> cube{1, 5, 6, 1};  // (x+2)^3 = x^3 + 6x^2 + 5x + 1 over F_7
  CHECK_FALSE(is_squarefree(f, cube));
  CHECK_THROWS_AS(is_squarefree(f, std::vector<Elem>{0, 0}), DomainError);
  CHECK(is_squarefree(f, std::vector<Elem>{4}));

  // Monic cubics: squarefree iff discriminant nonzero.
  for (std::int64_t p : {3, 5, 7}) {
    const PrimeField g(p);
    for (Elem a = 0; a < p; ++a) {
      for (Elem b = 0; b < p; ++b) {
        for (Elem c = 0; c < p; ++c) {
          const std::int64_t disc =
              oracle::mod(a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c, p);
          const std::vector<Elem> poly{c, b, a, 1};
          REQUIRE(is_squarefree(g, poly) == (disc != 0));
        }
      }
    }
  }
}

TEST_CASE("derivative and gcd") {
  const PrimeField f(5);
  const std::vector<Elem> poly{1, 2, 3, 4};
  CHECK(derivative(f, poly) == Poly{2, 6 % 5, 12 % 5});
  const Poly g = poly_gcd(f, Poly{4, 0, 1}, Poly{3, 1});  // (x^2 - 1, x - 2)
  CHECK(g.size() == 1);
  const Poly h = poly_gcd(f, Poly{4, 0, 1}, Poly{1, 1});  // x^2 - 1 and x + 1
  CHECK(h.size() == 2);
}
