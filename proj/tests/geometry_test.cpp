#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "micdoa/errors.hpp"
#include "micdoa/geometry.hpp"

using namespace micdoa;

namespace {
// Circular comparison so 359.999... and 0.0 count as equal bearings.
void check_angle_near(double got_deg, double want_deg, double tol) {
  CHECK(std::abs(angular_error_deg(got_deg, want_deg)) < tol);
}
}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("polar_to_rect on axis-aligned and exact-trig bearings") {
  const RectVector a = polar_to_rect({0.0, 1.0});
  CHECK(a.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.y == doctest::Approx(0.0).epsilon(1e-12));

  const RectVector b = polar_to_rect({120.0, 2.0});
  CHECK(b.x == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(b.y == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

  const RectVector c = polar_to_rect({240.0, 3.0});
  CHECK(c.x == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(c.y == doctest::Approx(-1.5 * std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("sum_vectors examples") {
  const std::vector<RectVector> symmetric = {
      {1.0, 0.0}, {-0.5, 0.8660254037844386}, {-0.5, -0.8660254037844386}};
  const RectVector zero = sum_vectors(symmetric);
  CHECK(std::abs(zero.x) < 1e-12);
  CHECK(std::abs(zero.y) < 1e-12);

  const std::vector<RectVector> single = {{1.0, 2.0}};
  const RectVector same = sum_vectors(single);
  CHECK(same.x == 1.0);
  CHECK(same.y == 2.0);

  const std::vector<RectVector> mixed = {
      {1.0, 0.0}, {-1.0, 1.7320508075688772}, {-1.5, -2.598076211353316}};
  const RectVector s = sum_vectors(mixed);
  CHECK(s.x == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(s.y == doctest::Approx(-0.8660254037844386).epsilon(1e-12));

  CHECK_THROWS_AS(sum_vectors(std::vector<RectVector>{}),
                  std::invalid_argument);
}

TEST_CASE("rect_to_polar quadrants and zero vector") {
  const PolarVector a = rect_to_polar({1.0, 0.0});
  CHECK(a.angle_deg == doctest::Approx(0.0));
  CHECK(a.magnitude == doctest::Approx(1.0));

  const PolarVector b = rect_to_polar({0.0, -2.0});
  CHECK(b.angle_deg == doctest::Approx(270.0).epsilon(1e-12));
  CHECK(b.magnitude == doctest::Approx(2.0).epsilon(1e-12));

  const PolarVector c = rect_to_polar({-1.5, -0.8660254037844386});
  CHECK(c.angle_deg == doctest::Approx(210.0).epsilon(1e-12));
  CHECK(c.magnitude == doctest::Approx(1.7320508075688772).epsilon(1e-12));

  CHECK_THROWS_AS(rect_to_polar({0.0, 0.0}), IndeterminateDirectionError);
}

TEST_CASE("bearing_signed_deg keeps atan2's native range") {
  CHECK(bearing_signed_deg({0.0, -2.0}) == doctest::Approx(-90.0));
  CHECK(bearing_signed_deg({-1.0, 0.0}) == doctest::Approx(180.0));
}

TEST_CASE("normalize_angle_deg") {
  CHECK(normalize_angle_deg(-150.0) == doctest::Approx(210.0));
  CHECK(normalize_angle_deg(360.0) == 0.0);
  CHECK(normalize_angle_deg(480.0) == doctest::Approx(120.0));
  CHECK(normalize_angle_deg(-1e-17) == 0.0);  // must not round up to 360
  CHECK(normalize_angle_deg(0.0) == 0.0);
}

TEST_CASE("angular_error_deg wrap and sign") {
  CHECK(angular_error_deg(10.0, 350.0) == doctest::Approx(20.0));
  CHECK(angular_error_deg(120.0, 120.0) == 0.0);
  CHECK(angular_error_deg(20.0, 27.11) == doctest::Approx(-7.11).epsilon(1e-12));
  // Both orientations of the antipode land on +180.
  CHECK(angular_error_deg(0.0, 180.0) == doctest::Approx(180.0));
  CHECK(angular_error_deg(180.0, 0.0) == doctest::Approx(180.0));
}

TEST_CASE("MicArray invariants") {
  CHECK_NOTHROW(MicArray::default_array());
  CHECK(MicArray::default_array().size() == 3);
  CHECK(MicArray::default_array().radius_m() == doctest::Approx(0.15));
  CHECK_THROWS_AS(MicArray({0.0}, 0.15), std::invalid_argument);
  CHECK_THROWS_AS(MicArray({0.0, 120.0, 120.0}, 0.15), std::invalid_argument);
  CHECK_THROWS_AS(MicArray({0.0, 360.0}, 0.15), std::invalid_argument);
  CHECK_THROWS_AS(MicArray({0.0, -5.0}, 0.15), std::invalid_argument);
  CHECK_THROWS_AS(MicArray({0.0, 120.0}, 0.0), std::invalid_argument);
}

TEST_CASE("property: polar/rect round trip and norm preservation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0.0, 360.0);
  std::uniform_real_distribution<double> mag(1e-6, 1e3);
  for (int i = 0; i < 2000; ++i) {
    const PolarVector v{angle(rng), mag(rng)};
    const RectVector r = polar_to_rect(v);
    CHECK(std::hypot(r.x, r.y) ==
          doctest::Approx(v.magnitude).epsilon(1e-12));
    const PolarVector back = rect_to_polar(r);
    check_angle_near(back.angle_deg, v.angle_deg, 1e-9);
    CHECK(back.magnitude == doctest::Approx(v.magnitude).epsilon(1e-9));
  }
}

TEST_CASE("property: sum_vectors permutation-invariant and associative") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    std::vector<RectVector> vs(6);
    for (auto& v : vs) v = {coord(rng), coord(rng)};

    const RectVector direct = sum_vectors(vs);
    std::vector<RectVector> shuffled = vs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const RectVector permuted = sum_vectors(shuffled);
    CHECK(permuted.x == doctest::Approx(direct.x).epsilon(1e-12));
    CHECK(permuted.y == doctest::Approx(direct.y).epsilon(1e-12));

    // Associativity: sum of prefix-sum and suffix-sum.
    const std::vector<RectVector> head(vs.begin(), vs.begin() + 3);
    const std::vector<RectVector> tail(vs.begin() + 3, vs.end());
    const std::vector<RectVector> halves = {sum_vectors(head), sum_vectors(tail)};
    const RectVector grouped = sum_vectors(halves);
    CHECK(grouped.x == doctest::Approx(direct.x).epsilon(1e-12));
    CHECK(grouped.y == doctest::Approx(direct.y).epsilon(1e-12));
  }
}

TEST_CASE("property: equal magnitudes cancel on the default array") {
  const MicArray array = MicArray::default_array();
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> mag(0.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const double m = mag(rng);
    std::vector<RectVector> vs;
    for (double a : array.angles_deg()) vs.push_back(polar_to_rect({a, m}));
    const RectVector s = sum_vectors(vs);
    CHECK(std::abs(s.x) < 1e-12);
    CHECK(std::abs(s.y) < 1e-12);
  }
}

TEST_CASE("property: normalize idempotent, angular_error antisymmetric") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> any(-1e4, 1e4);
  for (int i = 0; i < 2000; ++i) {
    const double a = any(rng);
    const double n = normalize_angle_deg(a);
    CHECK(n >= 0.0);
    CHECK(n < 360.0);
    CHECK(normalize_angle_deg(n) == n);

    const double b = any(rng);
    const double e = angular_error_deg(a, b);
    CHECK(e > -180.0);
    CHECK(e <= 180.0);
    if (std::abs(e) != 180.0) {
      CHECK(angular_error_deg(b, a) == doctest::Approx(-e).epsilon(1e-9));
    }
  }
}

}  // TEST_SUITE
