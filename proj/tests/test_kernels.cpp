#include <doctest.h>

#include <cmath>
#include <numbers>

#include "marketfield/kernels.hpp"

using namespace marketfield;
using kernels::ScalarGrid;
using kernels::VectorGrid;

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

TEST_CASE("newtonian_potential: zero sources and linearity") {
  auto zero = ScalarGrid::zeros({0, 0, 0}, {1, 1, 1}, 8, 8, 8);
  CHECK(kernels::newtonian_potential(zero, {20.0, 0.0, 0.0}) == 0.0);

  auto f = zero;
  auto g = zero;
  f.at(2, 3, 4) = 1.5;
  f.at(5, 5, 5) = -0.25;
  g.at(1, 1, 6) = 2.0;
  auto sum = zero;
  for (std::size_t i = 0; i < sum.values.size(); ++i) {
    sum.values[i] = f.values[i] + g.values[i];
  }
  const Vec3 x{11.0, -3.0, 2.0};
  CHECK(kernels::newtonian_potential(sum, x) ==
        doctest::Approx(kernels::newtonian_potential(f, x) +
                        kernels::newtonian_potential(g, x))
            .epsilon(1e-14));
}

TEST_CASE("newtonian_potential: far-field Green's function of a point mass") {
  auto grid = ScalarGrid::zeros({0, 0, 0}, {1, 1, 1}, 3, 3, 3);
  grid.at(1, 1, 1) = 1.0;  // unit density in one unit cell
  const Vec3 center = grid.cell_center(1, 1, 1);
  for (double rho : {5.0, 10.0, 40.0}) {
    const Vec3 x = center + Vec3{rho, 0.0, 0.0};
    const double expected = 1.0 / (kFourPi * rho);
    CHECK(kernels::newtonian_potential(grid, x) ==
          doctest::Approx(expected).epsilon(0.01));
  }
  // Self-cell exclusion makes the evaluation at the cell center total.
  CHECK(kernels::newtonian_potential(grid, center) == 0.0);
}

TEST_CASE("biot_savart: straight filament matches the infinite-line law") {
  const double rho = 2.0;
  kernels::Filament fil;
  fil.gamma = 3.0;
  const double half = 100.0 * rho;
  const int n_seg = 4000;
  for (int i = 0; i <= n_seg; ++i) {
    fil.points.push_back({0.0, 0.0, -half + 2.0 * half * i / n_seg});
  }
  const Vec3 result = kernels::biot_savart(fil, {rho, 0.0, 0.0});
  CHECK(norm(result) ==
        doctest::Approx(fil.gamma / (2.0 * std::numbers::pi * rho)).epsilon(0.01));
  CHECK(norm(normalized(result) - Vec3{0.0, 1.0, 0.0}) < 1e-9);

  // Capital is a pure offset; gamma = 0 returns -capital.
  const Vec3 k{0.1, -0.4, 0.7};
  CHECK(norm(kernels::biot_savart(fil, {rho, 0, 0}, k) - (result - k)) < 1e-15);
  auto quiet = fil;
  quiet.gamma = 0.0;
  CHECK(norm(kernels::biot_savart(quiet, {rho, 0, 0}, k) + k) == 0.0);
}

TEST_CASE("biot_savart: singularity guard and validation") {
  kernels::Filament fil;
  fil.gamma = 1.0;
  fil.points = {{0, 0, -1}, {0, 0, 1}};
  CHECK_THROWS_AS(kernels::biot_savart(fil, {0.0, 0.0, 0.2}), OnFilament);
  CHECK_THROWS_AS(kernels::biot_savart(fil, {5e-10, 0.0, 0.0}), OnFilament);

  kernels::Filament bad;
  bad.points = {{0, 0, 0}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.points = {{0, 0, 0}, {0, 0, 0}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("biot_savart: ring refinement converges") {
  const auto ring = [](int n_seg) {
    kernels::Filament fil;
    fil.gamma = 1.0;
    fil.closed = true;
    for (int i = 0; i < n_seg; ++i) {
      const double a = 2.0 * std::numbers::pi * i / n_seg;
      fil.points.push_back({std::cos(a), std::sin(a), 0.0});
    }
    return fil;
  };
  const Vec3 x{0.2, -0.3, 0.5};
  const Vec3 coarse = kernels::biot_savart(ring(512), x);
  const Vec3 fine = kernels::biot_savart(ring(1024), x);
  CHECK(norm(fine - coarse) / norm(fine) < 1e-3);
}

TEST_CASE("lia_competition and capital_boundary") {
  soliton::SolitonParams params;
  params.gamma = 1.0;
  params.half_length = 5.0;
  const Vec3 b{0.0, 0.0, 1.0};

  // ln(2L / 2L) = 0 and kappa = 0 both give the zero vector.
  CHECK(norm(kernels::lia_competition(params, 2.0, b, 2.0 * params.half_length)) == 0.0);
  CHECK(norm(kernels::lia_competition(params, 0.0, b, 0.1)) == 0.0);

  // Frozen: (2 / 4 pi) ln 100.
  CHECK(norm(kernels::lia_competition(params, 2.0, b, 0.1)) ==
        doctest::Approx(0.73293559887942774).epsilon(1e-14));

  CHECK_THROWS_AS(kernels::lia_competition(params, 1.0, b, 0.0), NonpositiveRadius);
  CHECK_THROWS_AS(kernels::lia_competition(params, 1.0, b, -1.0), NonpositiveRadius);

  // Cutoff form: with K from capital_boundary the field is
  // (gamma kappa / 4 pi) ln(d / r) b; frozen at d=1, r=0.5: ln(2)/4pi.
  params.cutoff = 1.0;
  const Vec3 k = kernels::capital_boundary(params, 1.0, b);
  const Vec3 reduced = kernels::lia_competition(params, 1.0, b, 0.5, k);
  CHECK(norm(reduced) == doctest::Approx(0.055158900038162898).epsilon(1e-12));
  // At r = d the cutoff field vanishes identically.
  CHECK(norm(kernels::lia_competition(params, 1.0, b, params.cutoff, k)) < 1e-16);

  params.cutoff = 2.0 * params.half_length;
  CHECK_THROWS_AS(kernels::capital_boundary(params, 1.0, b), InvalidCutoff);
  params.cutoff = -0.5;
  CHECK_THROWS_AS(kernels::capital_boundary(params, 1.0, b), InvalidCutoff);
}

TEST_CASE("lia/cutoff algebraic identity over a sweep") {
  soliton::SolitonParams params;
  const Vec3 b{0.0, 1.0, 0.0};
  for (double L : {1.0, 4.0, 12.0}) {
    params.half_length = L;
    for (double d : {0.05 * L, 0.4 * L, 1.8 * L}) {
      params.cutoff = d;
      const Vec3 k = kernels::capital_boundary(params, 1.7, b);
      for (double r : {0.01, 0.3, 1.0, 1.9 * L}) {
        const Vec3 got = kernels::lia_competition(params, 1.7, b, r, k);
        const double expected =
            params.gamma * 1.7 / kFourPi * std::log(d / r);
        CHECK(norm(got - b * expected) < 1e-12);
      }
    }
  }
}

TEST_CASE("inflation_from_sources and choice_from_inflation") {
  auto zero = VectorGrid::zeros({0, 0, 0}, {1, 1, 1}, 6, 6, 6);
  const auto no_choice = [](const Vec3&) { return Vec3{}; };
  CHECK(norm(kernels::inflation_from_sources(zero, no_choice, {10, 0, 0})) == 0.0);

  // Static capital with a pure choice rate v gives -v.
  const Vec3 v{0.2, -0.1, 0.5};
  CHECK(norm(kernels::inflation_from_sources(zero, [&](const Vec3&) { return v; },
                                             {1, 2, 3}) +
             v) == 0.0);

  // Point capital-rate source: 1/(4 pi rho) falloff minus the choice term.
  auto point = zero;
  point.at(3, 3, 3) = {1.0, 0.0, 0.0};
  const Vec3 center = point.cell_center(3, 3, 3);
  const double rho = 20.0;
  const Vec3 pi_vec = kernels::inflation_from_sources(
      point, [&](const Vec3&) { return v; }, center + Vec3{0.0, rho, 0.0});
  CHECK(pi_vec.x + v.x == doctest::Approx(1.0 / (kFourPi * rho)).epsilon(0.01));

  // Choice from inflation carries the opposite sign of the kernel.
  const Vec3 choice = kernels::choice_from_inflation(point, center + Vec3{0.0, rho, 0.0});
  CHECK(choice.x == doctest::Approx(-1.0 / (kFourPi * rho)).epsilon(0.01));
  CHECK(choice.x < 0.0);
}

TEST_CASE("inflation_selfconsistent") {
  auto a = ScalarGrid::zeros({0, 0, 0}, {1, 1, 1}, 6, 6, 6);
  auto b = a;
  CHECK(kernels::inflation_selfconsistent(a, b, {9, 9, 9}) == 0.0);

  a.at(2, 2, 2) = 3.0;
  // Zero acceleration reduces to the plain potential of the capital rate.
  CHECK(kernels::inflation_selfconsistent(a, b, {15, 3, 3}) ==
        doctest::Approx(kernels::newtonian_potential(a, {15, 3, 3})).epsilon(1e-14));

  auto wrong = ScalarGrid::zeros({0, 0, 0}, {1, 1, 1}, 5, 6, 6);
  CHECK_THROWS_AS(kernels::inflation_selfconsistent(a, wrong, {0, 0, 0}), GridMismatch);
}

TEST_CASE("composing choice-from-inflation into the inflation relation") {
  // On a smooth synthetic source, evaluating the self-consistent form agrees
  // with composing the two single-kernel relations within quadrature error.
  auto capital = VectorGrid::zeros({0, 0, 0}, {0.5, 0.5, 0.5}, 12, 12, 12);
  auto accel = capital;
  for (int k = 0; k < 12; ++k) {
    for (int j = 0; j < 12; ++j) {
      for (int i = 0; i < 12; ++i) {
        const Vec3 c = capital.cell_center(i, j, k);
        const double r2 = dot(c - Vec3{3, 3, 3}, c - Vec3{3, 3, 3});
        capital.at(i, j, k) = {std::exp(-r2), 0.0, 0.0};
        accel.at(i, j, k) = {0.5 * std::exp(-r2), 0.0, 0.0};
      }
    }
  }
  const Vec3 x{10.0, 3.0, 3.0};
  const Vec3 direct = kernels::inflation_selfconsistent(capital, accel, x);
  const Vec3 composed =
      kernels::newtonian_potential(capital, x) + kernels::newtonian_potential(accel, x);
  CHECK(norm(direct - composed) < 1e-3);
}
