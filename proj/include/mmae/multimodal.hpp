#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmae/autoencoder.hpp"

namespace mmae {

struct SoftmaxHead {
  RealMatrix W;           // classes x joint dim
  std::vector<double> b;  // classes
  std::vector<std::string> labels;

  std::size_t num_classes() const { return W.rows(); }
};

// Presence of each modality in one sample.
struct Presence {
  bool eeg = true;
  bool emg = true;
  bool operator==(const Presence&) const = default;
};

// Paired two-modality batch, one sample per column. Columns of an absent
// modality are exactly zero.
struct MultimodalBatch {
  RealMatrix eeg;  // X_e x n
  RealMatrix emg;  // X_m x n
  std::vector<Presence> presence;  // n entries; empty means all present

  std::size_t samples() const { return eeg.cols(); }
};

// Two pathway stacks fused by a sum of per-modality sigmoid projections
// into a shared joint code z. Joint weights are reused transposed on the
// decode path, mirroring the tied-weight convention of the pathways.
struct MultimodalModel {
  StackedEncoder eeg_stack;
  StackedEncoder emg_stack;
  RealMatrix joint_W_e, joint_W_m;          // J x pathway top dim
  std::vector<double> joint_b_e, joint_b_m;  // J (encode)
  std::vector<double> joint_bdec_e, joint_bdec_m;  // pathway top dim (decode)
  std::optional<SoftmaxHead> head;
  double lambda = 0.0;
  bool pretrained = false;

  std::size_t joint_dim() const { return joint_W_e.rows(); }
  std::size_t eeg_input_dim() const { return eeg_stack.input_dim(); }
  std::size_t emg_input_dim() const { return emg_stack.input_dim(); }
};

// Assembles a model around two (typically pretrained) stacks with
// Glorot-initialized joint weights.
MultimodalModel make_multimodal(StackedEncoder eeg_stack,
                                StackedEncoder emg_stack,
                                std::size_t joint_dim, double lambda,
                                Rng& rng);

// Attaches a zero-initialized softmax head for the given classes.
void attach_head(MultimodalModel& model, std::vector<std::string> labels);

// Joint code z = sigmoid(W_e t_e + b_e) + sigmoid(W_m t_m + b_m); every
// entry lies strictly inside (0, 2).
RealMatrix joint_forward(const MultimodalModel& model,
                         const MultimodalBatch& batch);

// Mirror of the encode path with transposed joint and pathway weights.
std::pair<RealMatrix, RealMatrix> multimodal_decode(const MultimodalModel& model,
                                                    const RealMatrix& z);

// Modality-dropout augmentation: [both | EEG-only | EMG-only], 3n samples.
// Targets are always the clean two-modality data.
struct AugmentedBatch {
  MultimodalBatch batch;
  RealMatrix target_eeg;
  RealMatrix target_emg;
};
AugmentedBatch augment_modality_dropout(const MultimodalBatch& batch);

// Reconstruction objective: squared-error loss of both modalities against
// clean targets, plus lambda * ||W||_F^2 over pathway and joint weights.
// With labels, adds the softmax cross-entropy term (the combined
// reconstruction + classification objective used for fine-tuning).
double multimodal_objective(const MultimodalModel& model,
                            const MultimodalBatch& batch,
                            const RealMatrix& target_eeg,
                            const RealMatrix& target_emg,
                            const std::vector<int>* labels = nullptr);

// Gradient of multimodal_objective for every parameter, in the order of
// parameter_views().
struct MultimodalGradient {
  std::vector<AeGradient> eeg_layers, emg_layers;
  RealMatrix d_joint_W_e, d_joint_W_m;
  std::vector<double> d_joint_b_e, d_joint_b_m;
  std::vector<double> d_joint_bdec_e, d_joint_bdec_m;
  RealMatrix d_head_W;
  std::vector<double> d_head_b;
};
MultimodalGradient multimodal_gradient(const MultimodalModel& model,
                                       const MultimodalBatch& batch,
                                       const RealMatrix& target_eeg,
                                       const RealMatrix& target_emg,
                                       const std::vector<int>* labels = nullptr);

// Flat views over every trainable coordinate (pathways, joint, head if
// present), in a fixed canonical order. Used by the finite-difference
// oracle and by SGD.
std::vector<double*> parameter_views(MultimodalModel& model);
std::vector<double> flatten_gradient(const MultimodalModel& model,
                                     const MultimodalGradient& g);

// Gradient descent on the summed clean-target reconstruction loss over the
// modality-dropout augmented data. Requires pretrained pathways unless
// allow_unpretrained is set.
std::vector<double> train_multimodal(MultimodalModel& model,
                                     const MultimodalBatch& batch,
                                     const TrainConfig& cfg,
                                     bool allow_unpretrained = false);

// Supervised fine-tuning of all layers plus the softmax head against the
// combined reconstruction + classification objective.
std::vector<double> fine_tune(MultimodalModel& model,
                              const MultimodalBatch& batch,
                              const std::vector<int>& labels,
                              const TrainConfig& cfg);

struct ClassifyResult {
  std::vector<int> labels;  // argmax per sample, ties to the lower index
  RealMatrix probabilities;  // classes x n
};
ClassifyResult classify(const MultimodalModel& model,
                        const MultimodalBatch& batch);

}  // namespace mmae
