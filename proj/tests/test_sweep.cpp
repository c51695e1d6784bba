#include <doctest.h>

#include <cmath>
#include <cstring>

#include "colorent/errors.hpp"
#include "colorent/sweep.hpp"
#include "test_support.hpp"

using namespace colorent;

namespace {

const double kGamma = MediumParams::rb85_d1().gamma_e;
const double kTwoPi = 2.0 * M_PI;

OperatingPoint near_resonance() {
  OperatingPoint p;
  p.drive = {6 * kGamma, 6 * kGamma, -kGamma, kGamma};
  return p;
}

OperatingPoint raman() {
  OperatingPoint p;
  p.drive = {2e-4 * kGamma, 1e-3 * kGamma, -kTwoPi * 1e9, kTwoPi * 10e9};
  return p;
}

AxisRange axis(SweepParameter p, double lo, double hi, int n, AxisScale s = AxisScale::Linear) {
  return AxisRange{p, lo, hi, n, s};
}

bool same_bits(const MeritRecord& a, const MeritRecord& b) {
  auto eq = [](double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; };
  return eq(a.npt_pure, b.npt_pure) && eq(a.npt_lossy, b.npt_lossy) && eq(a.gen_prob, b.gen_prob) &&
         eq(a.t_as, b.t_as) && eq(a.t_as_prime, b.t_as_prime) && eq(a.prob_c, b.prob_c) &&
         eq(a.prob_d, b.prob_d) && eq(a.alpha.real(), b.alpha.real()) &&
         eq(a.alpha.imag(), b.alpha.imag()) && eq(a.beta.real(), b.beta.real()) &&
         eq(a.beta.imag(), b.beta.imag()) && a.dark == b.dark;
}

}  // namespace

TEST_CASE("axis values") {
  const auto lin = axis(SweepParameter::DetuningC, -1.0, 1.0, 5);
  CHECK(lin.values() == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  const auto lg = axis(SweepParameter::RabiC, 1e-3, 1e1, 5, AxisScale::Log);
  const auto v = lg.values();
  CHECK(v.front() == 1e-3);
  CHECK(v.back() == 1e1);
  CHECK(v[2] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK_THROWS_AS(axis(SweepParameter::RabiC, 0.0, 1.0, 3, AxisScale::Log).validate(), ParameterError);
  CHECK_THROWS_AS(axis(SweepParameter::RabiC, 1.0, 1.0, 3).validate(), ParameterError);
  CHECK_THROWS_AS(axis(SweepParameter::RabiC, 0.0, 1.0, 1).validate(), ParameterError);
  CHECK(default_scale(SweepParameter::RabiP) == AxisScale::Log);
  CHECK(default_scale(SweepParameter::Pop11) == AxisScale::Linear);
  CHECK(parse_sweep_parameter("Omega_c") == SweepParameter::RabiC);
  CHECK(!parse_sweep_parameter("Omega_x"));
}

TEST_CASE("population axis keeps the populations normalized") {
  const auto p = with_parameter(near_resonance(), SweepParameter::Pop11, 0.3);
  CHECK(p.medium.pop_11 == 0.3);
  CHECK(p.medium.pop_11 + p.medium.pop_22 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(parameter_value(p, SweepParameter::Pop11) == 0.3);
}

TEST_CASE("evaluate_point at the transparency operating point") {
  const auto r = evaluate_point(near_resonance());
  CHECK(!r.dark);
  CHECK(r.npt_lossy >= 0.99);
  CHECK(r.npt_lossy <= r.npt_pure);
  CHECK(r.rho_hermiticity_error <= 1e-12);
  CHECK(r.rho_trace_error <= 1e-12);
  CHECK(r.rho_min_eigenvalue >= -1e-10);
}

TEST_CASE("evaluate_point on the Raman ridge") {
  // The weak-field ridge sits at Omega_c / Delta_c = Omega_p / (omega_21 + Delta_p).
  auto p = raman();
  const double w21 = p.medium.omega_21;
  p.drive.rabi_c = p.drive.rabi_p * p.drive.det_c / (w21 + p.drive.det_p);
  CHECK(evaluate_point(p).npt_pure >= 0.99);
  // The bare ratio Omega_p / omega_21 lands within the same factor-two band.
  p.drive.rabi_c = p.drive.rabi_p * p.drive.det_c / w21;
  CHECK(evaluate_point(p).npt_pure >= 0.9);
}

TEST_CASE("dark points are flagged") {
  auto p = near_resonance();
  p.drive.rabi_p = 0.0;
  p.drive.rabi_c = 0.0;
  const auto r = evaluate_point(p);
  CHECK(r.dark);
  CHECK(r.npt_lossy == 0.0);
  CHECK(r.gen_prob == 0.0);
}

TEST_CASE("grid sweep cells equal direct evaluation") {
  SweepSpec spec{near_resonance(), axis(SweepParameter::RabiP, 4 * kGamma, 8 * kGamma, 2),
                 axis(SweepParameter::RabiC, 4 * kGamma, 8 * kGamma, 2)};
  const auto map = grid_sweep(spec);
  REQUIRE(map.records.size() == 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      auto p = near_resonance();
      p.drive.rabi_p = map.axis1_values[i];
      p.drive.rabi_c = map.axis2_values[j];
      CHECK(same_bits(map.at(i, j), evaluate_point(p)));
    }
}

TEST_CASE("one-dimensional sweep") {
  SweepSpec spec{near_resonance(), axis(SweepParameter::RabiC, 0.1 * kGamma, 6 * kGamma, 7), {}};
  const auto map = grid_sweep(spec);
  CHECK(map.rows() == 7);
  CHECK(map.cols() == 1);
}

TEST_CASE("sweep rejects duplicated axes") {
  SweepSpec spec{near_resonance(), axis(SweepParameter::RabiC, 1.0, 2.0, 2),
                 axis(SweepParameter::RabiC, 1.0, 2.0, 2)};
  CHECK_THROWS_AS(grid_sweep(spec), ParameterError);
}

TEST_CASE("sweep results do not depend on the thread count") {
  SweepSpec spec{near_resonance(),
                 axis(SweepParameter::RabiP, 0.5 * kGamma, 8 * kGamma, 9, AxisScale::Log),
                 axis(SweepParameter::DetuningC, -3 * kGamma, 3 * kGamma, 7)};
  const auto one = grid_sweep(spec, {1});
  for (unsigned t : {2u, 3u, 8u}) {
    const auto many = grid_sweep(spec, {t});
    REQUIRE(many.records.size() == one.records.size());
    for (std::size_t k = 0; k < one.records.size(); ++k) CHECK(same_bits(one.records[k], many.records[k]));
  }
}

TEST_CASE("region extraction") {
  SweepSpec spec{near_resonance(), axis(SweepParameter::RabiP, 4 * kGamma, 8 * kGamma, 4),
                 axis(SweepParameter::RabiC, 4 * kGamma, 8 * kGamma, 4)};
  const auto map = grid_sweep(spec);
  Thresholds all;
  all.npt_lossy_min = 0.0;
  CHECK(extract_region(map, all).count() == 16);
  CHECK(extract_region(map, Thresholds{}).fraction() == 1.0);
  Thresholds none;
  none.npt_lossy_min = 1.0 + 1e-12;
  CHECK(extract_region(map, none).count() == 0);
  Thresholds mixed;
  mixed.npt_lossy_min = 0.99;
  mixed.t_as_min = 0.95;
  const auto mask = extract_region(map, mixed);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(mask.at(i, j) == mixed.admits(map.at(i, j)));
}

TEST_CASE("population engineering opens a low-coupling window") {
  auto base = near_resonance();
  base.drive.rabi_p = 1.5 * kGamma;
  SweepSpec spec{base, axis(SweepParameter::RabiC, 0.5 * kGamma, 3 * kGamma, 26),
                 axis(SweepParameter::Pop11, 0.05, 0.2, 4)};
  Thresholds t;
  t.npt_lossy_min = 0.99;
  t.t_as_min = 0.95;
  t.t_as_prime_min = 0.95;
  CHECK(extract_region(grid_sweep(spec), t).count() > 0);
}

TEST_CASE("ridge picks the best row per column") {
  SweepSpec spec{near_resonance(), axis(SweepParameter::RabiC, 0.5 * kGamma, 8 * kGamma, 16),
                 axis(SweepParameter::RabiP, 2 * kGamma, 8 * kGamma, 3)};
  const auto map = grid_sweep(spec);
  const auto r = ridge(map, Objective::NptLossy);
  REQUIRE(r.size() == map.cols());
  for (std::size_t j = 0; j < map.cols(); ++j)
    for (std::size_t i = 0; i < map.rows(); ++i) CHECK(map.at(i, j).npt_lossy <= map.at(r[j], j).npt_lossy);
}

TEST_CASE("Raman scan has a single interior maximum and is refinement stable") {
  auto run = [](int n) {
    SweepSpec spec{raman(), axis(SweepParameter::RabiC, 1e-5 * kGamma, 1e-1 * kGamma, n, AxisScale::Log), {}};
    return grid_sweep(spec);
  };
  const auto coarse = run(41);
  const auto fine = run(81);
  const std::size_t ic = ridge(coarse, Objective::NptPure)[0];
  const std::size_t iff = ridge(fine, Objective::NptPure)[0];
  CHECK(ic > 0);
  CHECK(ic + 1 < coarse.rows());
  int peaks = 0;
  for (std::size_t i = 1; i + 1 < coarse.rows(); ++i)
    if (coarse.at(i, 0).npt_pure > coarse.at(i - 1, 0).npt_pure &&
        coarse.at(i, 0).npt_pure > coarse.at(i + 1, 0).npt_pure)
      ++peaks;
  CHECK(peaks == 1);
  const double step = std::log(coarse.axis1_values[1] / coarse.axis1_values[0]);
  CHECK(std::abs(std::log(fine.axis1_values[iff] / coarse.axis1_values[ic])) <= step);
}

TEST_CASE("optimizer agrees with brute force") {
  OptimizeSpec spec;
  spec.baseline = near_resonance();
  spec.axis1 = axis(SweepParameter::RabiP, 4 * kGamma, 8 * kGamma, 9);
  spec.axis2 = axis(SweepParameter::RabiC, 4 * kGamma, 8 * kGamma, 9);
  spec.objective = Objective::NptLossy;
  spec.constraints.t_as_min = 0.95;
  spec.constraints.t_as_prime_min = 0.95;
  const auto res = optimize(spec);
  REQUIRE(res.feasible);
  CHECK(res.best.npt_lossy >= 0.99);

  SweepSpec brute{spec.baseline, spec.axis1, spec.axis2};
  brute.axis1.points = 81;
  brute.axis2->points = 81;
  const auto map = grid_sweep(brute);
  double best = 0.0;
  for (const auto& r : map.records)
    if (spec.constraints.admits(r)) best = std::max(best, r.npt_lossy);
  CHECK(res.best.npt_lossy >= best - 1e-4);

  // Each stage keeps or improves the incumbent.
  REQUIRE(!res.trace.empty());
  for (std::size_t k = 1; k < res.trace.size(); ++k) CHECK(res.trace[k].objective >= res.trace[k - 1].objective);
  CHECK(res.best.npt_lossy >= res.trace.front().objective);

  auto again = optimize(spec, {4});
  CHECK(again.x1 == res.x1);
  CHECK(again.x2 == res.x2);
}

TEST_CASE("optimizer reports infeasibility") {
  OptimizeSpec spec;
  spec.baseline = near_resonance();
  spec.baseline.drive.rabi_p = 0.0;
  spec.baseline.drive.rabi_c = 0.0;
  spec.axis1 = axis(SweepParameter::Pop11, 0.1, 1.0, 5);
  const auto res = optimize(spec);
  CHECK(!res.feasible);

  OptimizeSpec strict;
  strict.baseline = near_resonance();
  strict.axis1 = axis(SweepParameter::RabiC, 4 * kGamma, 8 * kGamma, 5);
  strict.constraints.gen_prob_max = 0.0;
  CHECK(!optimize(strict).feasible);
}

TEST_CASE("objective parsing") {
  CHECK(parse_objective("npt_lossy") == Objective::NptLossy);
  CHECK(parse_objective("gen_prob") == Objective::GenProb);
  CHECK(!parse_objective("fidelity"));
}
