#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mahavier/json_io.hpp"
#include "mahavier/relation.hpp"

#include <cmath>
#include <random>

using namespace mahavier;

namespace {

double sample_in(const Interval& iv, std::mt19937_64& rng) {
  return iv.lo + iv.length() * uniform01(rng());
}

}  // namespace

TEST_CASE("interval union invariants") {
  CHECK_THROWS_AS(IntervalUnion({{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(IntervalUnion({{0, 1}, {0.5, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(IntervalUnion({{2, 3}, {0, 1}}), std::invalid_argument);

  IntervalUnion x({{0, 1}, {2, 3}});
  CHECK(x.contains(0));
  CHECK(x.contains(1));
  CHECK(x.contains(2.5));
  CHECK_FALSE(x.contains(1.5));
  CHECK(x.component_of(2.0) == 1);
  CHECK_THROWS_AS(x.component_of(1.5), std::domain_error);
}

TEST_CASE("branch evaluation and closed-form inverses round-trip") {
  const auto rel = builtin_relation(Builtin::Devaney5);
  std::mt19937_64 rng(7);
  for (const auto& b : rel.branches()) {
    for (int i = 0; i < 50; ++i) {
      const double x = sample_in(b.domain(), rng);
      CHECK(b.inverse(b(x)) == doctest::Approx(x).epsilon(1e-12));
    }
    // strictly increasing on sampled pairs
    for (int i = 0; i < 20; ++i) {
      double x1 = sample_in(b.domain(), rng), x2 = sample_in(b.domain(), rng);
      if (x1 > x2) std::swap(x1, x2);
      if (x2 - x1 > 1e-12) CHECK(b(x1) < b(x2));
    }
  }
}

TEST_CASE("contains on the cube-root system") {
  const auto rel = builtin_relation(Builtin::Robinson3);
  CHECK(rel.contains(0.5, 2.5));
  for (double t : {0.25, 2.75, 4.5}) CHECK(rel.contains(t, t));
  // direct evaluation: (2.5 - 2)^2 = 0.25
  CHECK(rel.contains(2.5, 0.25));
  CHECK_FALSE(rel.contains(0.5, 0.6));
  CHECK_THROWS_AS(rel.contains(1.5, 0.5), std::domain_error);
}

TEST_CASE("image examples") {
  const auto dev = builtin_relation(Builtin::Devaney5);
  CHECK(dev.image(0.5) == std::vector<double>{0.5, 2.5});

  const auto knud = builtin_relation(Builtin::Knudsen3);
  CHECK(knud.image(0.0) == std::vector<double>{0.0, 2.0});

  ClosedRelation diag_only(IntervalUnion({{0, 1}}), {}, true);
  CHECK(diag_only.image(0.37) == std::vector<double>{0.37});
}

TEST_CASE("preimage examples and round-trip") {
  const auto rob = builtin_relation(Builtin::Robinson3);
  // every branch inverts in closed form: x+2 on [0,1], the identity on [2,3],
  // and the cube root on [4,5] via (2.5-2)^3 + 4 = 4.125
  CHECK(rob.preimage(2.5) == std::vector<double>{0.5, 2.5, 4.125});
  CHECK(rob.preimage(0.25) == std::vector<double>{0.25, 2.5});

  ClosedRelation diag_only(IntervalUnion({{0, 1}}), {}, true);
  CHECK(diag_only.preimage(0.8) == std::vector<double>{0.8});

  std::mt19937_64 rng(11);
  for (const auto& b : rob.branches())
    for (int i = 0; i < 30; ++i) {
      const double x = sample_in(b.domain(), rng);
      const auto back = rob.preimage(b(x));
      bool found = false;
      for (double v : back) found |= std::abs(v - x) <= 1e-9;
      CHECK(found);
    }
}

TEST_CASE("diagonal closure") {
  const auto rel = builtin_relation(Builtin::Knudsen3).with_diagonal();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto& iv = rel.space().intervals()[rng() % 3];
    const double t = sample_in(iv, rng);
    CHECK(rel.contains(t, t));
  }
}

TEST_CASE("projection fullness") {
  CHECK(builtin_relation(Builtin::Devaney5).projections_are_full());
  CHECK(builtin_relation(Builtin::Robinson3).projections_are_full());

  ClosedRelation partial(IntervalUnion({{0, 1}, {2, 3}}),
                         {BranchMap::affine({0, 1}, 1, 0)}, false);
  CHECK_FALSE(partial.projections_are_full());

  const auto pair = NCPair::checked(Rational(1, 2), Rational(3));
  CHECK(builtin_relation(Builtin::LelekDiag, pair).projections_are_full());
  CHECK(builtin_relation(Builtin::Lelek, pair).projections_are_full());
}

TEST_CASE("never-connect checking") {
  CHECK(is_never_connect(Rational(1, 2), Rational(3), 64));
  CHECK_FALSE(is_never_connect(Rational(1, 2), Rational(4), 64));  // r^-2 = rho
  CHECK_FALSE(is_never_connect(Rational(1, 2), Rational(2), 64));  // r^-1 = rho
  CHECK_THROWS_AS(is_never_connect(Rational(0), Rational(3), 64), std::domain_error);
  CHECK_THROWS_AS(is_never_connect(Rational(-1, 2), Rational(3), 64), std::domain_error);

  // soundness: rho = (1/r)^(k/l) gives the explicit relation r^-k = rho^l,
  // which the exact scan must catch
  for (int k = 1; k <= 6; ++k)
    for (int l = 1; l <= 3; ++l) {
      if (k % l != 0) continue;
      const Rational rho = rational_pow(Rational(5, 2), k / l);
      CHECK_FALSE(is_never_connect(Rational(2, 5), rho, 64));
    }
  CHECK(is_never_connect(Rational(2, 5), Rational(7, 3), 64));
}

TEST_CASE("builtin fidelity at interval endpoints") {
  const auto dev = builtin_relation(Builtin::Devaney5);
  auto value_of = [&](int family, double x) -> double {
    for (const auto& b : dev.branches())
      if (b.family() == family && b.domain_contains(x)) return b(x);
    FAIL("no branch");
    return 0;
  };
  // f2: (3-2)^2 = 1, (7-6)^3 + 4 = 5, 0 + 2 = 2, 5 + 2 = 7
  CHECK(value_of(1, 3.0) == 1.0);
  CHECK(value_of(1, 7.0) == 5.0);
  CHECK(value_of(1, 0.0) == 2.0);
  CHECK(value_of(1, 5.0) == 7.0);
  // f3: sqrt(5-4) + 2 = 3, cbrt(9-8) + 6 = 7, endpoints of the root branches
  CHECK(value_of(2, 5.0) == 3.0);
  CHECK(value_of(2, 4.0) == 2.0);
  CHECK(value_of(2, 9.0) == 7.0);
  CHECK(value_of(2, 8.0) == 6.0);

  const auto rob = builtin_relation(Builtin::Robinson3);
  bool has_cbrt = false;
  for (const auto& b : rob.branches())
    has_cbrt |= b.form() == BranchForm::ShiftedPower && b.exponent() == Rational(1, 3);
  CHECK(has_cbrt);

  const auto knud = builtin_relation(Builtin::Knudsen3);
  bool has_sqrt = false;
  for (const auto& b : knud.branches())
    has_sqrt |= b.form() == BranchForm::ShiftedPower && b.exponent() == Rational(1, 2);
  CHECK(has_sqrt);
}

TEST_CASE("lelek relations from a never-connect pair") {
  const auto pair = NCPair::checked(Rational(1, 2), Rational(3));
  const auto lelek = builtin_relation(Builtin::Lelek, pair);
  CHECK(lelek.branches().size() == 2);
  CHECK_FALSE(lelek.include_diagonal());
  CHECK(lelek.contains(0.5, 0.25));                   // r branch
  CHECK(lelek.contains(0.2, 0.6));                    // rho branch
  CHECK_FALSE(lelek.contains(0.2, 0.2));              // no diagonal
  CHECK(builtin_relation(Builtin::LelekDiag, pair).contains(0.2, 0.2));

  CHECK_THROWS_AS(NCPair::checked(Rational(1, 2), Rational(4)), std::invalid_argument);
  CHECK_THROWS_AS(builtin_relation(Builtin::Lelek), std::invalid_argument);
}

TEST_CASE("relation spec JSON round-trip") {
  const auto rel = builtin_relation(Builtin::Robinson3);
  const auto spec = io::relation_to_json(rel);
  const auto back = io::relation_from_json(spec);
  CHECK(back.branches().size() == rel.branches().size());
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto& iv = rel.space().intervals()[rng() % 3];
    const double x = sample_in(iv, rng);
    CHECK(rel.image(x) == back.image(x));
  }
  CHECK_THROWS_AS(io::relation_from_json(nlohmann::json::parse("{\"space\": []}")),
                  std::invalid_argument);
}
