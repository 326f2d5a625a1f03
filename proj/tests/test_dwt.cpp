#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "mmae/dwt.hpp"
#include "mmae/errors.hpp"
#include "mmae/metrics.hpp"
#include "mmae/rng.hpp"

using namespace mmae;

namespace {

std::vector<double> random_signal(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> s(n);
  for (double& v : s) v = rng.next_gaussian();
  return s;
}

double sum_sq(const std::vector<double>& v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("config validation") {
  WaveletConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.order = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.order = 7;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = WaveletConfig{};
  cfg.levels = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = WaveletConfig{};
  cfg.threshold = -1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("perfect reconstruction for every supported order") {
  const std::vector<double> x = random_signal(256, 101);
  for (int order = 1; order <= 6; ++order) {
    WaveletConfig cfg;
    cfg.order = order;
    cfg.levels = 4;
    const DwtCoeffs c = dwt_forward(x, cfg);
    const std::vector<double> r = dwt_inverse(c, cfg);
    CHECK(max_abs_diff(x, r) <= 1e-10);
  }
}

TEST_CASE("perfect reconstruction with non-power-of-two lengths (padding)") {
  for (std::size_t n : {100u, 333u, 8064u}) {
    WaveletConfig cfg;
    cfg.levels = 5;
    const std::vector<double> x = random_signal(n, 1000 + n);
    const DwtCoeffs c = dwt_forward(x, cfg);
    CHECK(c.original_length == n);
    CHECK(c.padded_length % (1u << 5) == 0);
    CHECK(c.padded_length >= n);
    const std::vector<double> r = dwt_inverse(c, cfg);
    CHECK(r.size() == n);
    CHECK(max_abs_diff(x, r) <= 1e-10);
  }

  // Signals shorter than the filter support are rejected outright.
  WaveletConfig cfg;
  cfg.order = 4;  // 8-tap filter
  CHECK_THROWS_AS(dwt_forward(random_signal(7, 1), cfg), DomainError);
}

TEST_CASE("orthonormality: Parseval energy conservation on padded lengths") {
  // For lengths already divisible by 2^levels no padding happens, so the
  // transform is exactly orthogonal and energy is conserved.
  const std::vector<double> x = random_signal(512, 11);
  for (int order = 1; order <= 6; ++order) {
    WaveletConfig cfg;
    cfg.order = order;
    cfg.levels = 3;
    const DwtCoeffs c = dwt_forward(x, cfg);
    const double coeff_energy = sum_sq(c.flattened());
    CHECK(std::abs(coeff_energy - sum_sq(x)) <= 1e-9 * sum_sq(x));
  }
}

TEST_CASE("vanishing moments: polynomial inputs give (near) zero details") {
  // db-k annihilates polynomials of degree < k. Periodic wrap-around spoils
  // this at the boundary, so test a periodic-friendly constant and, for
  // higher degrees, check interior detail coefficients only at one level.
  WaveletConfig cfg;
  cfg.order = 1;
  cfg.levels = 1;
  std::vector<double> constant(64, 3.25);
  DwtCoeffs c = dwt_forward(constant, cfg);
  for (double d : c.details[0]) CHECK(std::abs(d) <= 1e-12);
  // Haar approximation of a constant is sqrt(2) * constant.
  for (double a : c.approx)
    CHECK(std::abs(a - 3.25 * std::sqrt(2.0)) <= 1e-12);

  cfg.order = 3;
  std::vector<double> quad(64);
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const double t = static_cast<double>(i);
    quad[i] = 0.5 * t * t - 2.0 * t + 1.0;
  }
  c = dwt_forward(quad, cfg);
  // Interior coefficients (away from the periodic seam) vanish, up to
  // rounding relative to the signal's magnitude (up to ~2e3 here).
  double quad_max = 0.0;
  for (double v : quad) quad_max = std::max(quad_max, std::abs(v));
  for (std::size_t i = 4; i + 4 < c.details[0].size(); ++i)
    CHECK(std::abs(c.details[0][i]) <= 1e-11 * quad_max);
}

TEST_CASE("linearity of the forward transform") {
  WaveletConfig cfg;
  const std::vector<double> x = random_signal(128, 21);
  const std::vector<double> y = random_signal(128, 22);
  std::vector<double> z(128);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = 2.0 * x[i] - 3.0 * y[i];

  const auto cx = dwt_forward(x, cfg).flattened();
  const auto cy = dwt_forward(y, cfg).flattened();
  const auto cz = dwt_forward(z, cfg).flattened();
  for (std::size_t i = 0; i < cz.size(); ++i)
    CHECK(std::abs(cz[i] - (2.0 * cx[i] - 3.0 * cy[i])) <= 1e-10);
}

TEST_CASE("threshold zero retains everything and reconstructs exactly") {
  WaveletConfig cfg;
  const std::vector<double> x = random_signal(200, 31);
  const ThresholdResult res = threshold_compress(x, cfg);
  CHECK(res.cr_percent == 0.0);
  CHECK(res.coeffs.retained_values.size() == res.coeffs.total_count);
  const std::vector<double> r = sparse_reconstruct(res.coeffs, cfg);
  CHECK(max_abs_diff(x, r) <= 1e-10);
}

TEST_CASE("thresholding: retention rule and CR/PRD monotonicity") {
  WaveletConfig cfg;
  cfg.levels = 4;
  const std::vector<double> x = random_signal(512, 41);
  const std::vector<double> flat = dwt_forward(x, cfg).flattened();

  double prev_cr = -1.0;
  for (double t : {0.1, 0.5, 1.0, 2.0}) {
    cfg.threshold = t;
    const ThresholdResult res = threshold_compress(x, cfg);
    std::size_t expected = 0;
    for (double c : flat)
      if (std::abs(c) >= t && c != 0.0) ++expected;
    CHECK(res.coeffs.retained_values.size() == expected);
    CHECK(res.cr_percent ==
          doctest::Approx((1.0 - static_cast<double>(expected) /
                                     static_cast<double>(flat.size())) *
                          100.0));
    CHECK(res.cr_percent >= prev_cr);
    prev_cr = res.cr_percent;

    for (std::size_t i = 0; i < res.coeffs.retained_values.size(); ++i) {
      CHECK(std::abs(res.coeffs.retained_values[i]) >= t);
      CHECK(res.coeffs.retained_values[i] ==
            flat[res.coeffs.retained_indices[i]]);
    }
  }
}

TEST_CASE("sparse reconstruction error grows with the threshold") {
  WaveletConfig cfg;
  const std::vector<double> x = random_signal(256, 51);
  double prev_err = 0.0;
  for (double t : {0.0, 0.25, 1.0, 3.0}) {
    cfg.threshold = t;
    const ThresholdResult res = threshold_compress(x, cfg);
    const std::vector<double> r = sparse_reconstruct(res.coeffs, cfg);
    std::vector<double> diff(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - r[i];
    const double err = sum_sq(diff);
    CHECK(err >= prev_err - 1e-12);
    prev_err = err;
  }
  CHECK(prev_err > 0.0);  // the largest threshold must discard something
}

TEST_CASE("orthogonality ties discarded energy to reconstruction error") {
  // With no padding the transform is orthogonal, so the squared error of a
  // thresholded reconstruction equals the energy of the dropped coefficients.
  WaveletConfig cfg;
  cfg.levels = 3;
  cfg.threshold = 0.8;
  const std::vector<double> x = random_signal(512, 61);
  const std::vector<double> flat = dwt_forward(x, cfg).flattened();
  const ThresholdResult res = threshold_compress(x, cfg);
  const std::vector<double> r = sparse_reconstruct(res.coeffs, cfg);

  double dropped = 0.0;
  std::vector<bool> kept(flat.size(), false);
  for (std::size_t idx : res.coeffs.retained_indices) kept[idx] = true;
  for (std::size_t i = 0; i < flat.size(); ++i)
    if (!kept[i]) dropped += flat[i] * flat[i];

  std::vector<double> diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - r[i];
  CHECK(sum_sq(diff) == doctest::Approx(dropped).epsilon(1e-9));
}

TEST_CASE("dwt_codec_eval aggregates per-column compression") {
  Rng rng(71);
  RealMatrix signals(128, 3);
  for (double& v : signals.values()) v = rng.next_gaussian();

  WaveletConfig cfg;
  cfg.levels = 3;
  cfg.threshold = 0.5;
  const EvalReport rep = dwt_codec_eval(signals, cfg);
  CHECK(rep.method == "dwt");
  CHECK(rep.cr_percent >= 0.0);
  CHECK(rep.cr_percent < 100.0);
  CHECK(rep.prd_eeg > 0.0);

  // Mean column CR matches manual per-column evaluation.
  double cr_sum = 0.0;
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<double> col(128);
    for (std::size_t i = 0; i < 128; ++i) col[i] = signals(i, j);
    cr_sum += threshold_compress(col, cfg).cr_percent;
  }
  CHECK(rep.cr_percent == doctest::Approx(cr_sum / 3.0).epsilon(1e-12));

  CHECK_THROWS_AS(dwt_codec_eval(RealMatrix(), cfg), DomainError);
}
