#pragma once

#include <cstddef>
#include <vector>

#include "mmae/matrix.hpp"

namespace mmae {

struct EvalReport;  // metrics.hpp

// Orthogonal Daubechies wavelet codec with periodic boundary handling.
struct WaveletConfig {
  int order = 4;        // Daubechies vanishing moments (1..6)
  int levels = 5;
  double threshold = 0.0;  // hard-threshold magnitude

  void validate() const;
};

// Multi-level analysis output. Signals whose length is not a multiple of
// 2^levels are padded (edge replication) before the transform and cropped
// after the inverse.
struct DwtCoeffs {
  std::vector<double> approx;                 // coarsest approximation
  std::vector<std::vector<double>> details;   // finest level first
  std::size_t original_length = 0;
  std::size_t padded_length = 0;

  std::size_t total_count() const;
  // All coefficients flattened, approx first then details coarse-to-fine.
  std::vector<double> flattened() const;
};

DwtCoeffs dwt_forward(const std::vector<double>& signal,
                      const WaveletConfig& cfg);
std::vector<double> dwt_inverse(const DwtCoeffs& coeffs,
                                const WaveletConfig& cfg);

// Thresholded transform: only coefficients with |c| >= threshold survive.
struct SparseCoeffs {
  std::vector<double> retained_values;
  std::vector<std::size_t> retained_indices;  // into the flattened layout
  std::size_t total_count = 0;
  std::size_t original_length = 0;
  std::size_t padded_length = 0;
  std::vector<std::size_t> level_sizes;  // approx size, then detail sizes
};

struct ThresholdResult {
  SparseCoeffs coeffs;
  double cr_percent = 0.0;  // (1 - retained/total) * 100
};

ThresholdResult threshold_compress(const std::vector<double>& signal,
                                   const WaveletConfig& cfg);
std::vector<double> sparse_reconstruct(const SparseCoeffs& sparse,
                                       const WaveletConfig& cfg);

// Compresses every column of `signals` independently, reconstructs, and
// aggregates batch PRD plus the mean per-signal CR.
EvalReport dwt_codec_eval(const RealMatrix& signals, const WaveletConfig& cfg);

}  // namespace mmae
