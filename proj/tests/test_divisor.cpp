#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qmapk/divisor.hpp"

using namespace qmapk;

namespace {

BForm F(std::vector<long> coeffs) {
  std::vector<Rat> c;
  for (long v : coeffs) c.emplace_back(v);
  return BForm(static_cast<int>(coeffs.size()) - 1, c);
}

}  // namespace

TEST_CASE("divisor_from distributes exponents onto the basis") {
  // (x^2 : 1/2) -> (x : 1)
  QDivisor d = QDivisor::from_pairs({{form_pow(form_x(), 2), Rat(1, 2)}});
  REQUIRE(d.terms().size() == 1);
  CHECK(d.terms()[0].form == form_x());
  CHECK(d.terms()[0].coeff == 1);

  // (x^2-y^2 : 1/2) + ((x-y)^2 : 1/4) -> (x-y : 1), (x+y : 1/2)
  QDivisor e = QDivisor::from_pairs({{F({-1, 0, 1}), Rat(1, 2)}, {F({1, -2, 1}), Rat(1, 4)}});
  REQUIRE(e.terms().size() == 2);
  CHECK(e.terms()[0].form == F({-1, 1}));
  CHECK(e.terms()[0].coeff == 1);
  CHECK(e.terms()[1].form == F({1, 1}));
  CHECK(e.terms()[1].coeff == Rat(1, 2));

  CHECK(QDivisor::from_pairs({}).is_zero());
  CHECK_THROWS_AS(QDivisor::from_pairs({{BForm::zero(1), Rat(1)}}), Error);
}

TEST_CASE("combine is exact on degrees and cancels") {
  QDivisor d = QDivisor::from_pairs({{F({0, 1}), Rat(1)}, {F({-2, 1}), Rat(1, 3)}});
  CHECK(combine(d, d, Rat(1), Rat(-1)).is_zero());

  QDivisor x1 = divisor_of(form_x());
  QDivisor y1 = divisor_of(form_y());
  QDivisor half = combine(x1, y1, Rat(1, 2), Rat(1, 2));
  CHECK(half.degree() == 1);
  CHECK(half.multiplicity_at(RationalPoint::affine(Rat(0))) == Rat(1, 2));
  CHECK(half.multiplicity_at(RationalPoint::infinity()) == Rat(1, 2));

  // x^2 + xy = x(x+y) recombines with x
  QDivisor a = divisor_of(F({0, 1, 1}));
  QDivisor b = divisor_of(form_x());
  QDivisor s = combine(a, b, Rat(1), Rat(1));
  CHECK(s.multiplicity_at(RationalPoint::affine(Rat(0))) == 2);
  CHECK(s.multiplicity_at(RationalPoint::affine(Rat(-1))) == 1);
  CHECK(s.degree() == 3);
}

TEST_CASE("max multiplicity sits on a cluster") {
  QDivisor d = QDivisor::from_pairs({{form_x(), Rat(1, 2)}, {form_y(), Rat(1, 3)}});
  auto [v, w] = d.max_multiplicity();
  CHECK(v == Rat(1, 2));
  REQUIRE(w.has_value());
  CHECK(*w == form_x());

  // conjugate pair carries its coefficient uniformly
  QDivisor e = QDivisor::from_pairs({{F({1, 0, 1}), Rat(3, 4)}});
  auto [v2, w2] = e.max_multiplicity();
  CHECK(v2 == Rat(3, 4));
  CHECK(*w2 == F({1, 0, 1}));

  auto [v3, w3] = QDivisor::zero().max_multiplicity();
  CHECK(v3 == 0);
  CHECK(!w3.has_value());
}

TEST_CASE("multiplicity_at on points") {
  QDivisor d = QDivisor::from_pairs({{form_x(), Rat(1, 2)}});
  CHECK(d.multiplicity_at(RationalPoint::affine(Rat(0))) == Rat(1, 2));
  CHECK(d.multiplicity_at(RationalPoint::affine(Rat(1))) == 0);
  QDivisor e = QDivisor::from_pairs({{F({-1, 0, 1}), Rat(1, 3)}});
  CHECK(e.multiplicity_at(RationalPoint::affine(Rat(1))) == Rat(1, 3));
}

TEST_CASE("combine degree linearity, randomized") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<long> root(-3, 3);
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  auto rnd_div = [&]() {
    std::vector<std::pair<BForm, Rat>> pairs;
    int n = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i) {
      Rat c(num(rng), den(rng));
      c.canonicalize();
      if (c == 0) c = 1;
      pairs.emplace_back(form_pow(form_linear(Rat(root(rng))), 1 + rng() % 2), c);
    }
    return QDivisor::from_pairs(pairs);
  };
  for (int iter = 0; iter < 50; ++iter) {
    QDivisor a = rnd_div(), b = rnd_div();
    Rat s(num(rng), den(rng)), t(num(rng), den(rng));
    s.canonicalize();
    t.canonicalize();
    CHECK(combine(a, b, s, t).degree() == s * a.degree() + t * b.degree());
  }
}

TEST_CASE("max multiplicity agrees with a rational point scan on split divisors") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<long> root(-4, 4);
  std::uniform_int_distribution<long> den(1, 5);
  for (int iter = 0; iter < 60; ++iter) {
    std::vector<std::pair<BForm, Rat>> pairs;
    std::vector<RationalPoint> support;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      long r = root(rng);
      Rat c(1 + static_cast<long>(rng() % 4), den(rng));
      c.canonicalize();
      bool inf = rng() % 5 == 0;
      pairs.emplace_back(inf ? form_y() : form_linear(Rat(r)), c);
      support.push_back(inf ? RationalPoint::infinity() : RationalPoint::affine(Rat(r)));
    }
    QDivisor d = QDivisor::from_pairs(pairs);
    Rat brute(0);
    for (const auto& p : support) brute = std::max(brute, d.multiplicity_at(p));
    CHECK(d.max_multiplicity().first == brute);
  }
}

TEST_CASE("max multiplicity is Moebius invariant") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<long> entry(-4, 4);
  QDivisor d = QDivisor::from_pairs(
      {{form_x(), Rat(2, 3)}, {F({1, 0, 1}), Rat(1, 5)}, {F({-3, 1}), Rat(2, 3)}});
  for (int iter = 0; iter < 40; ++iter) {
    MobiusMatrix m(Rat(entry(rng)), Rat(entry(rng)), Rat(entry(rng)), Rat(entry(rng)));
    if (!m.invertible()) continue;
    CHECK(apply_mobius(d, m).max_multiplicity().first == d.max_multiplicity().first);
  }
}
