#include <doctest.h>

#include <cmath>

#include "colorent/errors.hpp"
#include "colorent/herald.hpp"
#include "test_support.hpp"

using namespace colorent;
using colorent::testing::rel_close;
using colorent::testing::uniform;

namespace {

MediumParams base() { return MediumParams::rb85_d1(); }

double norm2(const HeraldedState& s) { return std::norm(s.alpha) + std::norm(s.beta); }

}  // namespace

TEST_CASE("balanced amplitudes give a maximally entangled state") {
  const auto s = herald_from_amplitudes({0.3, 0.4}, {0.3, 0.4}, 1.0, 2.0);
  CHECK(rel_close(std::abs(s.alpha), 1.0 / std::sqrt(2.0), 1e-15));
  CHECK(rel_close(std::abs(s.beta), 1.0 / std::sqrt(2.0), 1e-15));
  CHECK(rel_close(pure_npt(s), 1.0, 1e-15));
  CHECK(rel_close(s.norm, 0.5, 1e-15));
  CHECK(s.gen_prob == s.norm);
  CHECK(s.omega_as == 1.0);
  CHECK(s.omega_as_prime == 2.0);
}

TEST_CASE("a single channel gives a product state") {
  const auto s = herald_from_amplitudes({0.0, 2.0}, 0.0, 1.0, 2.0);
  CHECK(std::abs(s.alpha) == 1.0);
  CHECK(s.beta == complex(0.0, 0.0));
  CHECK(pure_npt(s) == 0.0);
}

TEST_CASE("no herald without amplitude") {
  CHECK_THROWS_AS(herald_from_amplitudes(0.0, 0.0, 1.0, 2.0), NoHeraldError);
  CHECK_THROWS_AS(herald_from_amplitudes({NAN, 0.0}, 1.0, 1.0, 2.0), NoHeraldError);
  const auto m = base();
  const auto d = make_drives(m, 0.0, 0.0, 0.0, 0.0);
  CHECK_THROWS_AS(herald(m, d, resonant_stokes(m, d)), NoHeraldError);
  CHECK(generation_probability(m, d, resonant_stokes(m, d)) == 0.0);
}

TEST_CASE("pure NPT worked value") {
  const auto s = herald_from_amplitudes(std::sqrt(0.9), std::sqrt(0.1), 1.0, 2.0);
  CHECK(rel_close(pure_npt(s), 0.6, 1e-14));
}

TEST_CASE("herald is invariant under common scale and phase") {
  for (int k = 0; k < 100; ++k) {
    const complex fa(uniform(-1, 1), uniform(-1, 1));
    const complex fb(uniform(-1, 1), uniform(-1, 1));
    const auto s = herald_from_amplitudes(fa, fb, 1.0, 2.0);
    const complex z = std::polar(std::pow(10.0, uniform(-150, 150)), uniform(-M_PI, M_PI));
    const auto t = herald_from_amplitudes(z * fa, z * fb, 1.0, 2.0);
    CHECK(std::abs(norm2(s) - 1.0) <= 1e-12);
    CHECK(std::abs(norm2(t) - 1.0) <= 1e-12);
    CHECK(std::abs(pure_npt(s) - pure_npt(t)) <= 1e-12);
    CHECK(pure_npt(s) >= 0.0);
    CHECK(pure_npt(s) <= 1.0);
    CHECK(std::abs(std::abs(s.alpha) - std::abs(t.alpha)) <= 1e-12);
    // Relative phase survives.
    CHECK(std::abs(s.alpha * std::conj(s.beta) - t.alpha * std::conj(t.beta)) <= 1e-12);
  }
}

TEST_CASE("herald underflow and overflow safe") {
  const auto tiny = herald_from_amplitudes(1e-200, 1e-200, 1.0, 2.0);
  CHECK(rel_close(pure_npt(tiny), 1.0, 1e-14));
  const auto huge = herald_from_amplitudes(1e200, 3e200, 1.0, 2.0);
  CHECK(std::abs(norm2(huge) - 1.0) <= 1e-12);
}

TEST_CASE("herald uses only the A and B channels") {
  const auto m = base();
  const double g = m.gamma_e;
  const auto d = make_drives(m, 6 * g, 6 * g, -g, g);
  const double ws = resonant_stokes(m, d);
  const auto s = herald(m, d, ws);
  const auto ref = herald_from_amplitudes(pair_amplitude(m, d, Process::A, ws).value,
                                          pair_amplitude(m, d, Process::B, ws).value,
                                          conserved_quad(d, Process::A, ws).omega_anti,
                                          conserved_quad(d, Process::B, ws).omega_anti);
  CHECK(s.alpha == ref.alpha);
  CHECK(s.beta == ref.beta);
  CHECK(s.norm == ref.norm);
  CHECK(s.omega_as != s.omega_as_prime);
  CHECK(generation_probability(m, d, ws) == s.gen_prob);

  const auto diag = channel_diagnostics(m, d, ws);
  CHECK(diag.a.value == pair_amplitude(m, d, Process::A, ws).value);
  CHECK(diag.omega_stokes_prime == mirror_stokes(d, ws));
  CHECK(diag.d.quad.omega_anti == doctest::Approx(s.omega_as).epsilon(1e-15));
  CHECK(diag.prob_c() >= 0.0);
}

TEST_CASE("herald is continuous in the drive parameters") {
  const auto m = base();
  const double g = m.gamma_e;
  const auto d1 = make_drives(m, 6 * g, 6 * g, -g, g);
  const auto d2 = make_drives(m, 6 * g, 6 * g * (1 + 1e-7), -g, g);
  const auto s1 = herald(m, d1, resonant_stokes(m, d1));
  const auto s2 = herald(m, d2, resonant_stokes(m, d2));
  CHECK(std::abs(s1.alpha - s2.alpha) < 1e-5);
  CHECK(std::abs(pure_npt(s1) - pure_npt(s2)) < 1e-5);
}
