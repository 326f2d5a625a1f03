#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include <unistd.h>

#include "doctest.h"
#include "mmae/data_io.hpp"
#include "mmae/errors.hpp"
#include "test_helpers.hpp"

using namespace mmae;

namespace {

struct TempDir {
  std::filesystem::path dir;
  explicit TempDir(const std::string& tag) {
    dir = std::filesystem::temp_directory_path() /
          ("mmae_data_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
  }
  ~TempDir() { std::filesystem::remove_all(dir); }
};

}  // namespace

TEST_CASE("threshold_label: midpoint goes to class 0") {
  CHECK(threshold_label(1.0) == 0);
  CHECK(threshold_label(5.0) == 0);
  CHECK(threshold_label(5.0000001) == 1);
  CHECK(threshold_label(9.0) == 1);
  CHECK_THROWS_AS(threshold_label(0.5), DomainError);
  CHECK_THROWS_AS(threshold_label(9.5), DomainError);
}

TEST_CASE("container round trip preserves trials, ratings and order") {
  TempDir tmp("roundtrip");
  const std::vector<TrialRecord> records = synth_trials(2, 3, 99);
  REQUIRE(records.size() == 6);
  write_deap_container(records, tmp.dir.string());

  CHECK(std::filesystem::exists(tmp.dir / "s01.deapc"));
  CHECK(std::filesystem::exists(tmp.dir / "s02.deapc"));

  const std::vector<TrialRecord> back = load_deap(tmp.dir.string());
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(back[i].participant == records[i].participant);
    CHECK(back[i].video == records[i].video);
    CHECK(back[i].ratings == records[i].ratings);
    CHECK(back[i].channels == records[i].channels);  // bit-exact float64
  }
}

TEST_CASE("load_deap rejects missing dirs, empty dirs and bad containers") {
  CHECK_THROWS_AS(load_deap("/nonexistent/path"), DataError);

  TempDir tmp("empty");
  CHECK_THROWS_AS(load_deap(tmp.dir.string()), DataError);

  // A container with a corrupted byte fails the checksum as a DataError.
  const std::vector<TrialRecord> records = synth_trials(1, 1, 5);
  write_deap_container(records, tmp.dir.string());
  const auto file = tmp.dir / "s01.deapc";
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(-3, std::ios::end);
    f.put('\xFF');
  }
  CHECK_THROWS_AS(load_deap(tmp.dir.string()), DataError);
}

TEST_CASE("load_deap validates rating range") {
  TempDir tmp("ratings");
  std::vector<TrialRecord> records = synth_trials(1, 1, 6);
  records[0].ratings[2] = 11.0;  // bypass synth clamping
  write_deap_container(records, tmp.dir.string());
  CHECK_THROWS_AS(load_deap(tmp.dir.string()), DataError);
}

TEST_CASE("segment_normalize: shapes, [0,1] range, exact whitening stats") {
  const std::vector<TrialRecord> records = synth_trials(1, 2, 7);
  const std::size_t dim = 448;
  const SegmentedDataset ds = segment_normalize(records, 0, 1, dim);

  CHECK(ds.eeg.rows() == dim);
  CHECK(ds.emg.rows() == dim);
  // 8064 / 448 = 18 segments per trial, 2 trials.
  CHECK(ds.samples() + ds.skipped_segments == 36);
  CHECK(ds.labels[0].size() == ds.samples());
  CHECK(ds.eeg_affine.size() == ds.samples());

  for (double v : ds.eeg.values()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  // Every segment spans the full [0,1] interval after min-max mapping.
  for (std::size_t j = 0; j < ds.samples(); ++j) {
    double lo = 1.0, hi = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      lo = std::min(lo, ds.eeg(i, j));
      hi = std::max(hi, ds.eeg(i, j));
    }
    CHECK(lo == 0.0);
    CHECK(hi == 1.0);
  }

  // Denormalizing returns the whitened segment: zero mean, unit variance.
  const std::vector<double> w = denormalize_segment(ds.eeg, 0, ds.eeg_affine[0]);
  double mean = 0.0, var = 0.0;
  for (double v : w) mean += v;
  mean /= static_cast<double>(w.size());
  for (double v : w) var += (v - mean) * (v - mean);
  var /= static_cast<double>(w.size());
  CHECK(std::abs(mean) <= 1e-12);
  CHECK(std::abs(var - 1.0) <= 1e-12);

  // And scaling back by stddev/mean recovers the raw samples.
  const SegmentAffine& a = ds.eeg_affine[0];
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(w[i] * a.stddev + a.mean ==
          doctest::Approx(records[0].channels(0, i)).epsilon(1e-12));
}

TEST_CASE("segment_normalize skips zero-variance segments but keeps pairing") {
  std::vector<TrialRecord> records = synth_trials(1, 1, 8);
  // Flatten one EEG segment; its EMG partner must be dropped with it.
  for (std::size_t t = 0; t < 448; ++t) records[0].channels(0, t) = 2.5;
  const SegmentedDataset ds = segment_normalize(records, 0, 1, 448);
  CHECK(ds.skipped_segments == 1);
  CHECK(ds.samples() == 17);
  CHECK(ds.eeg.cols() == ds.emg.cols());
  CHECK(ds.labels[0].size() == 17);

  CHECK_THROWS_AS(segment_normalize(records, 5, 1, 448), DataError);
  CHECK_THROWS_AS(segment_normalize(records, 0, 1, 0), DomainError);
}

TEST_CASE("labels propagate the trial rating to every segment") {
  const std::vector<TrialRecord> records = synth_trials(1, 2, 9);
  const SegmentedDataset ds = segment_normalize(records, 0, 1, 448);
  REQUIRE(ds.skipped_segments == 0);
  const std::size_t per_trial = kTrialSamples / 448;
  std::size_t j = 0;
  for (const auto& rec : records)
    for (std::size_t s = 0; s < per_trial; ++s, ++j)
      for (int c = 0; c < 4; ++c)
        CHECK(ds.labels[c][j] == threshold_label(rec.ratings[c]));
}

TEST_CASE("train_test_split: partition, sizes, determinism") {
  SynthSpec spec;
  spec.samples = 101;
  spec.seed = 13;
  const SegmentedDataset ds = synth_multimodal(spec);

  const SplitDataset split = train_test_split(ds, 0.75, 42);
  CHECK(split.train.samples() ==
        static_cast<std::size_t>(std::llround(0.75 * 101.0)));
  CHECK(split.train.samples() + split.test.samples() == 101);
  CHECK(split.train.labels[0].size() == split.train.samples());

  // Every original column appears exactly once across the two parts.
  auto column_key = [](const RealMatrix& m, std::size_t j) {
    double key = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      key += m(i, j) * static_cast<double>(i + 1);
    return key;
  };
  std::multiset<double> original, recombined;
  for (std::size_t j = 0; j < ds.samples(); ++j)
    original.insert(column_key(ds.eeg, j));
  for (std::size_t j = 0; j < split.train.samples(); ++j)
    recombined.insert(column_key(split.train.eeg, j));
  for (std::size_t j = 0; j < split.test.samples(); ++j)
    recombined.insert(column_key(split.test.eeg, j));
  CHECK(original == recombined);

  // Same seed reproduces the split; a different seed changes it.
  const SplitDataset again = train_test_split(ds, 0.75, 42);
  CHECK(again.train.eeg == split.train.eeg);
  const SplitDataset other = train_test_split(ds, 0.75, 43);
  CHECK(other.train.eeg != split.train.eeg);

  CHECK_THROWS_AS(train_test_split(ds, 0.0, 1), DomainError);
  CHECK_THROWS_AS(train_test_split(ds, 1.0, 1), DomainError);
}

TEST_CASE("synth_multimodal: contract and cross-modal correlation") {
  SynthSpec spec;
  spec.samples = 400;
  spec.segment_dim = 16;
  spec.latent_dim = 3;
  spec.seed = 21;
  spec.noise = 0.1;
  const SegmentedDataset ds = synth_multimodal(spec);
  CHECK(ds.eeg.rows() == 16);
  CHECK(ds.samples() == 400);
  for (double v : ds.eeg.values()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  for (double v : ds.emg.values()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
  // Labels are binary and not degenerate.
  for (int c = 0; c < 4; ++c) {
    const auto& l = ds.labels[c];
    const auto ones = std::count(l.begin(), l.end(), 1);
    CHECK(ones > 50);
    CHECK(ones < 350);
  }

  // Low noise: the modalities share latent structure, so the first
  // canonical correlation is strong. Heavy noise destroys it.
  const double cca_low =
      mmae::testing::first_canonical_correlation(ds.eeg, ds.emg);
  CHECK(cca_low > 0.5);

  SynthSpec noisy = spec;
  noisy.noise = 100.0;
  const SegmentedDataset dn = synth_multimodal(noisy);
  // Sample CCA of independent 16-dim data at n=400 is biased up to roughly
  // sqrt(p/n) + sqrt(q/n) = 0.4 even with no true correlation.
  const double cca_high =
      mmae::testing::first_canonical_correlation(dn.eeg, dn.emg);
  CHECK(cca_high < 0.45);
  CHECK(cca_low > cca_high + 0.2);

  // Determinism.
  const SegmentedDataset ds2 = synth_multimodal(spec);
  CHECK(ds2.eeg == ds.eeg);
  CHECK(ds2.labels == ds.labels);

  SynthSpec bad = spec;
  bad.latent_dim = 16;
  CHECK_THROWS_AS(synth_multimodal(bad), DomainError);
  bad = spec;
  bad.noise = -0.1;
  CHECK_THROWS_AS(synth_multimodal(bad), DomainError);
}

TEST_CASE("synth_trials produce valid containers end to end") {
  const std::vector<TrialRecord> records = synth_trials(2, 2, 31);
  for (const auto& r : records) {
    CHECK(r.channels.rows() == 2);
    CHECK(r.channels.cols() == kTrialSamples);
    for (double rating : r.ratings) {
      CHECK(rating >= 1.0);
      CHECK(rating <= 9.0);
    }
  }
  // Deterministic in the seed.
  CHECK(synth_trials(2, 2, 31)[3].channels == records[3].channels);
  CHECK(synth_trials(2, 2, 32)[3].channels != records[3].channels);
}
