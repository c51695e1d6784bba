#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "colorent/medium.hpp"

namespace colorent::testing {

inline bool rel_close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

inline bool rel_close(std::complex<double> a, std::complex<double> b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed2024ULL);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

/// Random normalized (alpha, beta) with random phases.
inline std::pair<std::complex<double>, std::complex<double>> random_coefficients() {
  const double theta = uniform(0.0, 0.5 * M_PI);
  const double pa = uniform(-M_PI, M_PI);
  const double pb = uniform(-M_PI, M_PI);
  return {std::polar(std::cos(theta), pa), std::polar(std::sin(theta), pb)};
}

/// Wraps the default response but pins chi1 to a fixed value.
class FixedChi1Response final : public MediumResponse {
 public:
  explicit FixedChi1Response(complex value) : value_(value) {}
  complex chi1(const MediumParams&, const DriveFields&, AntiStokesMode, double) const override {
    return value_;
  }
  complex chi3(const MediumParams& m, const DriveFields& d, Process p, double wa,
               double ws) const override {
    return default_response().chi3(m, d, p, wa, ws);
  }

 private:
  complex value_;
};

}  // namespace colorent::testing
