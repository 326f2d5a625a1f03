#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmae/autoencoder.hpp"
#include "mmae/matrix.hpp"
#include "mmae/multimodal.hpp"

namespace mmae {

// One evaluated configuration: compression ratio, per-modality distortion,
// optional classification accuracy, and enough provenance to re-run it.
struct EvalReport {
  std::string method;        // "mmae" or "dwt"
  double cr_percent = 0.0;
  double prd_eeg = 0.0;
  double prd_emg = 0.0;
  std::optional<double> accuracy_percent;
  std::string config_echo;
  double train_fraction = 0.0;
};

// Eq.-style dimensional compression ratio: (1 - m/n) * 100 with m the
// compressed and n the original length in samples.
double compression_ratio(std::size_t m, std::size_t n);

// Percentage root-mean-square difference ||r - x|| / ||x|| * 100 with
// Frobenius norms over the whole batch. Throws on a zero-norm original.
double distortion_prd(const RealMatrix& x, const RealMatrix& r);

// Column-wise PRD, one value per sample (for partition-sweep whiskers).
std::vector<double> distortion_prd_per_sample(const RealMatrix& x,
                                              const RealMatrix& r);

double accuracy(const std::vector<int>& predicted,
                const std::vector<int>& truth);

struct CurvePoint {
  double cr = 0.0;
  double prd = 0.0;
};

struct Curve {
  std::string method;
  std::string modality;  // "eeg" or "emg"
  std::vector<CurvePoint> points;  // sorted by strictly increasing cr
  std::vector<EvalReport> reports;
};

// One Table-style architecture row: per-pathway hidden size and joint
// (code) dimension.
struct ArchRow {
  std::size_t pathway_hidden = 0;
  std::size_t joint_dim = 0;
};

// Trains one multimodal model per architecture row on the train split and
// evaluates reconstruction PRD on the test split; returns one curve per
// modality, points sorted by CR. Each row trains with an independent seed
// derived from cfg.seed + row index.
std::vector<Curve> build_ae_curve(const std::vector<ArchRow>& rows,
                                  const MultimodalBatch& train,
                                  const MultimodalBatch& test,
                                  const TrainConfig& cfg);

// DWT baseline curve over a threshold sweep (one point per threshold).
struct WaveletConfig;
std::vector<Curve> build_dwt_curve(const std::vector<double>& thresholds,
                                   const MultimodalBatch& test, int order,
                                   int levels);

// Tab-separated curve rows: method, modality, cr, prd.
std::string curves_to_tsv(const std::vector<Curve>& curves);
std::vector<Curve> curves_from_tsv(const std::string& text);

}  // namespace mmae
