#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mmae/matrix.hpp"
#include "mmae/multimodal.hpp"

namespace mmae {

// One trial of the DEAP-style container: channels x 8064 samples (63 s at
// 128 Hz) plus four ratings in [1, 9].
struct TrialRecord {
  int participant = 0;
  int video = 0;
  RealMatrix channels;  // channels x samples
  std::array<double, 4> ratings{};  // valence, arousal, dominance, liking
};

enum class Criterion { Valence = 0, Arousal = 1, Dominance = 2, Liking = 3 };

inline constexpr std::size_t kTrialSamples = 8064;  // 63 s * 128 Hz

// Affine parameters of per-segment whitening + [0,1] mapping, kept so the
// whitened segment can be recovered exactly.
struct SegmentAffine {
  double mean = 0.0;
  double stddev = 1.0;
  double min = 0.0;   // of the whitened segment
  double range = 1.0;
};

// Paired, normalized segments of both modalities with per-criterion binary
// labels. All feature values lie in [0, 1].
struct SegmentedDataset {
  RealMatrix eeg;  // D x n
  RealMatrix emg;  // D x n
  std::array<std::vector<int>, 4> labels;  // indexed by Criterion
  std::vector<SegmentAffine> eeg_affine, emg_affine;  // per segment
  std::size_t skipped_segments = 0;  // zero-variance segments dropped

  std::size_t samples() const { return eeg.cols(); }
  MultimodalBatch batch() const { return {eeg, emg, {}}; }
};

// Reads every participant container (s*.deapc) under `dir`, validating
// shapes and rating ranges.
std::vector<TrialRecord> load_deap(const std::string& dir);

// Writes records grouped by participant in the same container layout.
void write_deap_container(const std::vector<TrialRecord>& records,
                          const std::string& dir);

// Splits the selected channels into consecutive segments of segment_dim
// samples, whitens each segment (zero mean, unit variance) and maps it
// affinely to [0, 1]. Trial labels are copied onto every segment.
SegmentedDataset segment_normalize(const std::vector<TrialRecord>& records,
                                   std::size_t eeg_channel,
                                   std::size_t emg_channel,
                                   std::size_t segment_dim);

// Recovers the whitened segment from its normalized form.
std::vector<double> denormalize_segment(const RealMatrix& data,
                                        std::size_t column,
                                        const SegmentAffine& affine);

// Binary thresholding of a [1,9] rating at the scale midpoint: 1 iff
// rating > 5.
int threshold_label(double rating);

struct SplitDataset {
  SegmentedDataset train;
  SegmentedDataset test;
};
SplitDataset train_test_split(const SegmentedDataset& data,
                              double train_fraction, std::uint64_t seed);

// Desk-scale surrogate for DEAP: both modalities are distinct smooth
// nonlinear mixtures of the same latent factors plus independent noise, so
// they are correlated and the labels (thresholds on latents) learnable.
struct SynthSpec {
  std::size_t latent_dim = 4;
  double noise = 0.1;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::size_t segment_dim = 32;

  void validate() const;
};

SegmentedDataset synth_multimodal(const SynthSpec& spec);

// Synthetic trials in the DEAP container shape (channel 0 EEG-like,
// channel 1 EMG-like), so the full load/segment pipeline can run without
// the access-restricted dataset.
std::vector<TrialRecord> synth_trials(std::size_t participants,
                                      std::size_t videos, std::uint64_t seed);

}  // namespace mmae
