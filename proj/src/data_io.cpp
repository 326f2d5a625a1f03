#include "mmae/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <sstream>

#include "artifact_format.hpp"
#include "mmae/errors.hpp"
#include "mmae/rng.hpp"

namespace fs = std::filesystem;

namespace mmae {

namespace {

constexpr int kContainerVersion = 1;

void validate_ratings(const std::array<double, 4>& ratings, int participant,
                      int video) {
  for (double r : ratings)
    if (!(r >= 1.0 && r <= 9.0))
      throw DataError("participant " + std::to_string(participant) +
                      ", video " + std::to_string(video) + ": rating " +
                      std::to_string(r) + " outside [1,9]");
}

}  // namespace

std::vector<TrialRecord> load_deap(const std::string& dir) {
  if (!fs::is_directory(dir))
    throw DataError("load_deap: not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".deapc") files.push_back(entry.path());
  if (files.empty())
    throw DataError("load_deap: no .deapc container files in " + dir);
  std::sort(files.begin(), files.end());

  std::vector<TrialRecord> records;
  for (const auto& file : files) {
    auto parsed = [&]() -> detail::ParsedArtifact {
      try {
        return detail::parse_artifact(detail::read_file(file.string()),
                                      "DEAPC", kContainerVersion);
      } catch (const FormatError& e) {
        throw DataError("load_deap: " + file.filename().string() + ": " +
                        e.what());
      }
    }();
    const auto& m = parsed.manifest;
    const int participant = static_cast<int>(m.get_count("participant"));
    const std::size_t trials = m.get_count("trials");
    const std::size_t channels = m.get_count("channels");
    const std::size_t samples = m.get_count("samples");
    if (samples != kTrialSamples)
      throw DataError("load_deap: " + file.filename().string() + ": " +
                      std::to_string(samples) + " samples per channel, expected " +
                      std::to_string(kTrialSamples));
    const std::size_t expected = trials * channels * samples + trials * 4;
    if (parsed.payload.size() != expected)
      throw DataError("load_deap: " + file.filename().string() +
                      ": payload size " +
                      std::to_string(parsed.payload.size()) + ", expected " +
                      std::to_string(expected));

    const double* p = parsed.payload.data();
    const double* ratings_blob = p + trials * channels * samples;
    for (std::size_t t = 0; t < trials; ++t) {
      TrialRecord rec;
      rec.participant = participant;
      rec.video = static_cast<int>(t);
      rec.channels = RealMatrix(channels, samples);
      std::copy(p + t * channels * samples, p + (t + 1) * channels * samples,
                rec.channels.data());
      for (int c = 0; c < 4; ++c) rec.ratings[c] = ratings_blob[t * 4 + c];
      validate_ratings(rec.ratings, participant, rec.video);
      records.push_back(std::move(rec));
    }
  }
  return records;
}

void write_deap_container(const std::vector<TrialRecord>& records,
                          const std::string& dir) {
  fs::create_directories(dir);
  // Group by participant, preserving trial order.
  std::vector<int> participants;
  for (const auto& r : records)
    if (std::find(participants.begin(), participants.end(), r.participant) ==
        participants.end())
      participants.push_back(r.participant);

  for (int pid : participants) {
    std::vector<const TrialRecord*> trials;
    for (const auto& r : records)
      if (r.participant == pid) trials.push_back(&r);
    const std::size_t channels = trials.front()->channels.rows();
    const std::size_t samples = trials.front()->channels.cols();

    std::vector<double> payload;
    payload.reserve(trials.size() * (channels * samples + 4));
    for (const auto* t : trials) {
      if (t->channels.rows() != channels || t->channels.cols() != samples)
        throw DataError("write_deap_container: inconsistent trial shapes for participant " +
                        std::to_string(pid));
      payload.insert(payload.end(), t->channels.values().begin(),
                     t->channels.values().end());
    }
    for (const auto* t : trials)
      payload.insert(payload.end(), t->ratings.begin(), t->ratings.end());

    std::string manifest;
    manifest += "DEAPC " + std::to_string(kContainerVersion) + "\n";
    manifest += "participant " + std::to_string(pid) + "\n";
    manifest += "trials " + std::to_string(trials.size()) + "\n";
    manifest += "channels " + std::to_string(channels) + "\n";
    manifest += "samples " + std::to_string(samples) + "\n";

    char name[32];
    std::snprintf(name, sizeof name, "s%02d.deapc", pid);
    detail::write_file((fs::path(dir) / name).string(),
                       detail::assemble_artifact(manifest, payload));
  }
}

namespace {

// Whiten one segment and map it to [0,1]. Returns false on zero variance.
bool normalize_segment(const double* src, std::size_t dim,
                       std::vector<double>& out, SegmentAffine& affine) {
  double mean = 0.0;
  for (std::size_t i = 0; i < dim; ++i) mean += src[i];
  mean /= static_cast<double>(dim);
  double var = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double d = src[i] - mean;
    var += d * d;
  }
  var /= static_cast<double>(dim);
  if (var == 0.0) return false;
  const double stddev = std::sqrt(var);

  out.resize(dim);
  double lo = (src[0] - mean) / stddev, hi = lo;
  for (std::size_t i = 0; i < dim; ++i) {
    out[i] = (src[i] - mean) / stddev;
    lo = std::min(lo, out[i]);
    hi = std::max(hi, out[i]);
  }
  const double range = hi - lo;
  for (std::size_t i = 0; i < dim; ++i) out[i] = (out[i] - lo) / range;
  affine = {mean, stddev, lo, range};
  return true;
}

}  // namespace

SegmentedDataset segment_normalize(const std::vector<TrialRecord>& records,
                                   std::size_t eeg_channel,
                                   std::size_t emg_channel,
                                   std::size_t segment_dim) {
  if (segment_dim == 0) throw DomainError("segment_normalize: segment_dim 0");
  std::vector<std::vector<double>> eeg_cols, emg_cols;
  SegmentedDataset out;

  for (const auto& rec : records) {
    if (eeg_channel >= rec.channels.rows() ||
        emg_channel >= rec.channels.rows())
      throw DataError("segment_normalize: channel index out of range for participant " +
                      std::to_string(rec.participant));
    const std::size_t usable =
        (rec.channels.cols() / segment_dim) * segment_dim;
    std::vector<double> eeg_raw(segment_dim), emg_raw(segment_dim);
    for (std::size_t start = 0; start + segment_dim <= usable;
         start += segment_dim) {
      for (std::size_t i = 0; i < segment_dim; ++i) {
        eeg_raw[i] = rec.channels(eeg_channel, start + i);
        emg_raw[i] = rec.channels(emg_channel, start + i);
      }
      std::vector<double> eeg_seg, emg_seg;
      SegmentAffine ae, am;
      if (!normalize_segment(eeg_raw.data(), segment_dim, eeg_seg, ae) ||
          !normalize_segment(emg_raw.data(), segment_dim, emg_seg, am)) {
        ++out.skipped_segments;  // zero-variance segment: keep pairing intact
        continue;
      }
      eeg_cols.push_back(std::move(eeg_seg));
      emg_cols.push_back(std::move(emg_seg));
      out.eeg_affine.push_back(ae);
      out.emg_affine.push_back(am);
      for (int c = 0; c < 4; ++c)
        out.labels[c].push_back(threshold_label(rec.ratings[c]));
    }
  }

  const std::size_t n = eeg_cols.size();
  out.eeg = RealMatrix(segment_dim, n);
  out.emg = RealMatrix(segment_dim, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < segment_dim; ++i) {
      out.eeg(i, j) = eeg_cols[j][i];
      out.emg(i, j) = emg_cols[j][i];
    }
  return out;
}

std::vector<double> denormalize_segment(const RealMatrix& data,
                                        std::size_t column,
                                        const SegmentAffine& affine) {
  if (column >= data.cols())
    throw ShapeError("denormalize_segment: column out of range");
  std::vector<double> out(data.rows());
  for (std::size_t i = 0; i < data.rows(); ++i)
    out[i] = data(i, column) * affine.range + affine.min;
  return out;
}

int threshold_label(double rating) {
  if (!(rating >= 1.0 && rating <= 9.0))
    throw DomainError("threshold_label: rating " + std::to_string(rating) +
                      " outside [1,9]");
  return rating > 5.0 ? 1 : 0;
}

SplitDataset train_test_split(const SegmentedDataset& data,
                              double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw DomainError("train_test_split: fraction must be in (0,1)");
  const std::size_t n = data.samples();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng = Rng(seed).derive("split");
  for (std::size_t i = n; i > 1; --i)
    std::swap(idx[i - 1], idx[rng.next_below(i)]);
  const std::size_t n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n)));

  auto take = [&](std::size_t begin, std::size_t end) {
    SegmentedDataset part;
    part.eeg = RealMatrix(data.eeg.rows(), end - begin);
    part.emg = RealMatrix(data.emg.rows(), end - begin);
    for (std::size_t j = begin; j < end; ++j) {
      const std::size_t src = idx[j], dst = j - begin;
      for (std::size_t i = 0; i < data.eeg.rows(); ++i)
        part.eeg(i, dst) = data.eeg(i, src);
      for (std::size_t i = 0; i < data.emg.rows(); ++i)
        part.emg(i, dst) = data.emg(i, src);
      for (int c = 0; c < 4; ++c)
        if (!data.labels[c].empty())
          part.labels[c].push_back(data.labels[c][src]);
      if (!data.eeg_affine.empty()) {
        part.eeg_affine.push_back(data.eeg_affine[src]);
        part.emg_affine.push_back(data.emg_affine[src]);
      }
    }
    return part;
  };
  return {take(0, n_train), take(n_train, n)};
}

void SynthSpec::validate() const {
  if (latent_dim == 0 || segment_dim == 0 || samples == 0)
    throw DomainError("SynthSpec: zero dimension or sample count");
  if (latent_dim >= segment_dim)
    throw DomainError("SynthSpec: latent_dim must be < segment_dim");
  if (noise < 0.0) throw DomainError("SynthSpec: negative noise");
}

SegmentedDataset synth_multimodal(const SynthSpec& spec) {
  spec.validate();
  Rng mix_rng = Rng(spec.seed).derive("synth.mixing");
  Rng latent_rng = Rng(spec.seed).derive("synth.latent");
  Rng noise_rng = Rng(spec.seed).derive("synth.noise");

  // Fixed smooth mixing maps per modality.
  auto make_mixing = [&](Rng& rng) {
    RealMatrix a(spec.segment_dim, spec.latent_dim);
    for (double& v : a.values()) v = rng.next_gaussian();
    std::vector<double> phase(spec.segment_dim);
    for (double& v : phase) v = rng.next_uniform(-1.0, 1.0);
    return std::make_pair(a, phase);
  };
  const auto [mix_e, phase_e] = make_mixing(mix_rng);
  const auto [mix_m, phase_m] = make_mixing(mix_rng);

  RealMatrix raw_e(spec.segment_dim, spec.samples);
  RealMatrix raw_m(spec.segment_dim, spec.samples);
  SegmentedDataset out;
  std::vector<double> latent(spec.latent_dim);
  for (std::size_t j = 0; j < spec.samples; ++j) {
    for (double& g : latent) g = latent_rng.next_gaussian();
    for (std::size_t i = 0; i < spec.segment_dim; ++i) {
      double se = phase_e[i], sm = phase_m[i];
      for (std::size_t k = 0; k < spec.latent_dim; ++k) {
        se += mix_e(i, k) * latent[k];
        sm += mix_m(i, k) * latent[k];
      }
      raw_e(i, j) = std::tanh(se) + spec.noise * noise_rng.next_gaussian();
      raw_m(i, j) = std::sin(sm) + spec.noise * noise_rng.next_gaussian();
    }
    for (int c = 0; c < 4; ++c) {
      const std::size_t which =
          std::min<std::size_t>(static_cast<std::size_t>(c),
                                spec.latent_dim - 1);
      out.labels[c].push_back(latent[which] > 0.0 ? 1 : 0);
    }
  }

  // Same per-segment whitening + [0,1] mapping as the real pipeline.
  out.eeg = RealMatrix(spec.segment_dim, spec.samples);
  out.emg = RealMatrix(spec.segment_dim, spec.samples);
  std::vector<double> seg;
  std::vector<double> col(spec.segment_dim);
  for (std::size_t j = 0; j < spec.samples; ++j) {
    SegmentAffine affine;
    for (std::size_t i = 0; i < spec.segment_dim; ++i) col[i] = raw_e(i, j);
    normalize_segment(col.data(), spec.segment_dim, seg, affine);
    for (std::size_t i = 0; i < spec.segment_dim; ++i) out.eeg(i, j) = seg[i];
    out.eeg_affine.push_back(affine);
    for (std::size_t i = 0; i < spec.segment_dim; ++i) col[i] = raw_m(i, j);
    normalize_segment(col.data(), spec.segment_dim, seg, affine);
    for (std::size_t i = 0; i < spec.segment_dim; ++i) out.emg(i, j) = seg[i];
    out.emg_affine.push_back(affine);
  }
  return out;
}

std::vector<TrialRecord> synth_trials(std::size_t participants,
                                      std::size_t videos, std::uint64_t seed) {
  std::vector<TrialRecord> records;
  Rng root(seed);
  for (std::size_t p = 1; p <= participants; ++p) {
    for (std::size_t v = 0; v < videos; ++v) {
      Rng rng = root.derive("trial." + std::to_string(p) + "." +
                            std::to_string(v));
      double latent[4];
      for (double& g : latent) g = rng.next_gaussian();

      TrialRecord rec;
      rec.participant = static_cast<int>(p);
      rec.video = static_cast<int>(v);
      rec.channels = RealMatrix(2, kTrialSamples);
      // Channel 0: EEG-like sinusoid mixture; channel 1: EMG-like bursty
      // signal. Both driven by the shared latents.
      for (std::size_t t = 0; t < kTrialSamples; ++t) {
        const double tau = static_cast<double>(t) / 128.0;
        double eeg = 0.0;
        for (int k = 0; k < 4; ++k)
          eeg += latent[k] * std::sin(2.0 * 3.14159265358979 * (4.0 + 3.0 * k) *
                                      tau + 0.7 * k);
        double emg = std::tanh(latent[0] + latent[1]) *
                     std::sin(2.0 * 3.14159265358979 * 40.0 * tau);
        rec.channels(0, t) = eeg + 0.05 * rng.next_gaussian();
        rec.channels(1, t) = emg + 0.05 * rng.next_gaussian();
      }
      for (int c = 0; c < 4; ++c) {
        const double r = 5.0 + 2.0 * latent[c];
        rec.ratings[c] = std::clamp(r, 1.0, 9.0);
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

}  // namespace mmae
