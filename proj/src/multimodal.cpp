#include "mmae/multimodal.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mmae/errors.hpp"

namespace mmae {

namespace {

void check_batch_dims(const MultimodalModel& model,
                      const MultimodalBatch& batch) {
  if (batch.eeg.cols() != batch.emg.cols())
    throw ShapeError("multimodal batch: EEG has " +
                     std::to_string(batch.eeg.cols()) + " samples, EMG has " +
                     std::to_string(batch.emg.cols()));
  if (batch.eeg.rows() != model.eeg_input_dim())
    throw ShapeError("multimodal batch: EEG rows " +
                     std::to_string(batch.eeg.rows()) + " vs model input " +
                     std::to_string(model.eeg_input_dim()));
  if (batch.emg.rows() != model.emg_input_dim())
    throw ShapeError("multimodal batch: EMG rows " +
                     std::to_string(batch.emg.rows()) + " vs model input " +
                     std::to_string(model.emg_input_dim()));
}

RealMatrix glorot(std::size_t rows, std::size_t cols, Rng& rng) {
  RealMatrix w(rows, cols);
  const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
  for (double& v : w.values()) v = rng.next_uniform(-bound, bound);
  return w;
}

// Everything the backward pass needs from one pathway.
struct PathwayTrace {
  std::vector<RealMatrix> encode_acts;  // a_0 = x, a_1 ... a_N
  RealMatrix joint_sig;                 // sigmoid(W_j * a_N + b_j)
  RealMatrix top_estimate;              // sigmoid(W_j^T z + bdec)
  std::vector<RealMatrix> decode_acts;  // h_N = top_estimate ... h_0 = recon
};

struct ForwardTrace {
  PathwayTrace eeg, emg;
  RealMatrix z;
};

PathwayTrace encode_pathway(const StackedEncoder& stack,
                            const RealMatrix& joint_w,
                            const std::vector<double>& joint_b,
                            const RealMatrix& x) {
  PathwayTrace t;
  t.encode_acts.push_back(x);
  for (const auto& layer : stack.layers)
    t.encode_acts.push_back(activate(
        layer.activation, affine(layer.W, t.encode_acts.back(), layer.b)));
  t.joint_sig = activate(Activation::Sigmoid,
                         affine(joint_w, t.encode_acts.back(), joint_b));
  return t;
}

void decode_pathway(const StackedEncoder& stack, const RealMatrix& joint_w,
                    const std::vector<double>& joint_bdec, const RealMatrix& z,
                    PathwayTrace& t) {
  RealMatrix pre = multiply_at_b(joint_w, z);
  add_column_vector_in_place(pre, joint_bdec);
  t.top_estimate = activate(Activation::Sigmoid, pre);
  t.decode_acts.clear();
  t.decode_acts.push_back(t.top_estimate);
  for (auto it = stack.layers.rbegin(); it != stack.layers.rend(); ++it) {
    RealMatrix q = multiply_at_b(it->W, t.decode_acts.back());
    add_column_vector_in_place(q, it->b_prime);
    t.decode_acts.push_back(activate(it->activation, q));
  }
}

ForwardTrace full_forward(const MultimodalModel& model,
                          const MultimodalBatch& batch) {
  ForwardTrace f;
  f.eeg = encode_pathway(model.eeg_stack, model.joint_W_e, model.joint_b_e,
                         batch.eeg);
  f.emg = encode_pathway(model.emg_stack, model.joint_W_m, model.joint_b_m,
                         batch.emg);
  f.z = add(f.eeg.joint_sig, f.emg.joint_sig);
  decode_pathway(model.eeg_stack, model.joint_W_e, model.joint_bdec_e, f.z,
                 f.eeg);
  decode_pathway(model.emg_stack, model.joint_W_m, model.joint_bdec_m, f.z,
                 f.emg);
  return f;
}

RealMatrix one_hot(const std::vector<int>& labels, std::size_t classes) {
  RealMatrix y(classes, labels.size());
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] < 0 || static_cast<std::size_t>(labels[j]) >= classes)
      throw DomainError("label " + std::to_string(labels[j]) +
                        " out of range 0.." + std::to_string(classes - 1));
    y(static_cast<std::size_t>(labels[j]), j) = 1.0;
  }
  return y;
}

double decay_term(const MultimodalModel& model) {
  double s = frobenius_norm_sq(model.joint_W_e) +
             frobenius_norm_sq(model.joint_W_m);
  for (const auto& l : model.eeg_stack.layers) s += frobenius_norm_sq(l.W);
  for (const auto& l : model.emg_stack.layers) s += frobenius_norm_sq(l.W);
  return model.lambda * s;
}

double classification_loss(const RealMatrix& probs,
                           const std::vector<int>& labels) {
  double total = 0.0;
  for (std::size_t j = 0; j < labels.size(); ++j)
    total -= std::log(probs(static_cast<std::size_t>(labels[j]), j));
  return total / static_cast<double>(labels.size());
}

}  // namespace

MultimodalModel make_multimodal(StackedEncoder eeg_stack,
                                StackedEncoder emg_stack,
                                std::size_t joint_dim, double lambda,
                                Rng& rng) {
  if (joint_dim == 0) throw DomainError("make_multimodal: joint dim is zero");
  MultimodalModel m;
  m.eeg_stack = std::move(eeg_stack);
  m.emg_stack = std::move(emg_stack);
  Rng re = rng.derive("joint.eeg");
  Rng rm = rng.derive("joint.emg");
  m.joint_W_e = glorot(joint_dim, m.eeg_stack.top_dim(), re);
  m.joint_W_m = glorot(joint_dim, m.emg_stack.top_dim(), rm);
  m.joint_b_e.assign(joint_dim, 0.0);
  m.joint_b_m.assign(joint_dim, 0.0);
  m.joint_bdec_e.assign(m.eeg_stack.top_dim(), 0.0);
  m.joint_bdec_m.assign(m.emg_stack.top_dim(), 0.0);
  m.lambda = lambda;
  return m;
}

void attach_head(MultimodalModel& model, std::vector<std::string> labels) {
  if (labels.size() < 2) throw DomainError("attach_head: need >= 2 classes");
  SoftmaxHead head;
  head.W = RealMatrix(labels.size(), model.joint_dim());
  head.b.assign(labels.size(), 0.0);
  head.labels = std::move(labels);
  model.head = std::move(head);
}

RealMatrix joint_forward(const MultimodalModel& model,
                         const MultimodalBatch& batch) {
  check_batch_dims(model, batch);
  const RealMatrix se = activate(
      Activation::Sigmoid,
      affine(model.joint_W_e, stack_forward(model.eeg_stack, batch.eeg),
             model.joint_b_e));
  const RealMatrix sm = activate(
      Activation::Sigmoid,
      affine(model.joint_W_m, stack_forward(model.emg_stack, batch.emg),
             model.joint_b_m));
  return add(se, sm);
}

std::pair<RealMatrix, RealMatrix> multimodal_decode(
    const MultimodalModel& model, const RealMatrix& z) {
  if (z.rows() != model.joint_dim())
    throw ShapeError("multimodal_decode: code rows " +
                     std::to_string(z.rows()) + " vs joint dim " +
                     std::to_string(model.joint_dim()));
  RealMatrix pre_e = multiply_at_b(model.joint_W_e, z);
  add_column_vector_in_place(pre_e, model.joint_bdec_e);
  RealMatrix pre_m = multiply_at_b(model.joint_W_m, z);
  add_column_vector_in_place(pre_m, model.joint_bdec_m);
  return {stack_backward(model.eeg_stack,
                         activate(Activation::Sigmoid, pre_e)),
          stack_backward(model.emg_stack,
                         activate(Activation::Sigmoid, pre_m))};
}

AugmentedBatch augment_modality_dropout(const MultimodalBatch& batch) {
  const std::size_t n = batch.samples();
  const RealMatrix zero_eeg(batch.eeg.rows(), n);
  const RealMatrix zero_emg(batch.emg.rows(), n);

  AugmentedBatch out;
  out.batch.eeg = hcat(hcat(batch.eeg, batch.eeg), zero_eeg);
  out.batch.emg = hcat(hcat(batch.emg, zero_emg), batch.emg);
  out.batch.presence.reserve(3 * n);
  for (std::size_t i = 0; i < n; ++i) out.batch.presence.push_back({true, true});
  for (std::size_t i = 0; i < n; ++i) out.batch.presence.push_back({true, false});
  for (std::size_t i = 0; i < n; ++i) out.batch.presence.push_back({false, true});
  out.target_eeg = hcat(hcat(batch.eeg, batch.eeg), batch.eeg);
  out.target_emg = hcat(hcat(batch.emg, batch.emg), batch.emg);
  return out;
}

double multimodal_objective(const MultimodalModel& model,
                            const MultimodalBatch& batch,
                            const RealMatrix& target_eeg,
                            const RealMatrix& target_emg,
                            const std::vector<int>* labels) {
  check_batch_dims(model, batch);
  const ForwardTrace f = full_forward(model, batch);
  double obj = loss(Loss::SquaredError, target_eeg, f.eeg.decode_acts.back()) +
               loss(Loss::SquaredError, target_emg, f.emg.decode_acts.back()) +
               decay_term(model);
  if (labels) {
    if (!model.head) throw DomainError("objective with labels but no head");
    const RealMatrix probs =
        softmax(affine(model.head->W, f.z, model.head->b));
    obj += classification_loss(probs, *labels);
  }
  return obj;
}

MultimodalGradient multimodal_gradient(const MultimodalModel& model,
                                       const MultimodalBatch& batch,
                                       const RealMatrix& target_eeg,
                                       const RealMatrix& target_emg,
                                       const std::vector<int>* labels) {
  check_batch_dims(model, batch);
  const ForwardTrace f = full_forward(model, batch);
  const double inv_n = 1.0 / static_cast<double>(batch.samples());

  MultimodalGradient g;
  auto init_layer_grads = [](const StackedEncoder& stack,
                             std::vector<AeGradient>& out) {
    for (const auto& l : stack.layers) {
      AeGradient lg;
      lg.dW = RealMatrix(l.hidden_dim(), l.input_dim());
      lg.db.assign(l.hidden_dim(), 0.0);
      lg.db_prime.assign(l.input_dim(), 0.0);
      out.push_back(std::move(lg));
    }
  };
  init_layer_grads(model.eeg_stack, g.eeg_layers);
  init_layer_grads(model.emg_stack, g.emg_layers);

  RealMatrix delta_z(model.joint_dim(), batch.samples());

  // Decode side of one pathway: reconstruction error back to delta_z, with
  // tied-weight contributions to the pathway layers and the joint matrix.
  auto backward_decode = [&](const StackedEncoder& stack,
                             const PathwayTrace& t, const RealMatrix& target,
                             const RealMatrix& joint_w, RealMatrix& d_joint_w,
                             std::vector<double>& d_joint_bdec,
                             std::vector<AeGradient>& layer_grads) {
    const std::size_t num_layers = stack.layers.size();
    // decode_acts: [0] = top estimate, [s+1] = sigma(W^T decode_acts[s] + b')
    // through layer N-1-s, [num_layers] = reconstruction.
    RealMatrix delta_h = scaled(
        subtract(t.decode_acts[num_layers], target), 2.0 * inv_n);
    for (std::size_t step = num_layers; step-- > 0;) {
      const auto& layer = stack.layers[num_layers - 1 - step];
      const RealMatrix& out_act = t.decode_acts[step + 1];
      const RealMatrix& in_act = t.decode_acts[step];
      const RealMatrix delta_q = hadamard(
          delta_h,
          activation_derivative_from_output(layer.activation, out_act));
      AeGradient& lg = layer_grads[num_layers - 1 - step];
      const std::vector<double> rs = row_sums(delta_q);
      for (std::size_t i = 0; i < rs.size(); ++i) lg.db_prime[i] += rs[i];
      add_in_place(lg.dW, multiply_a_bt(in_act, delta_q));
      delta_h = multiply(layer.W, delta_q);
    }
    // Joint decode: top_estimate = sigmoid(W_j^T z + bdec).
    RealMatrix delta_v = hadamard(
        delta_h,
        activation_derivative_from_output(Activation::Sigmoid, t.top_estimate));
    const std::vector<double> rs = row_sums(delta_v);
    for (std::size_t i = 0; i < rs.size(); ++i) d_joint_bdec[i] += rs[i];
    add_in_place(d_joint_w, multiply_a_bt(f.z, delta_v));
    add_in_place(delta_z, multiply(joint_w, delta_v));
  };

  g.d_joint_W_e = RealMatrix(model.joint_dim(), model.eeg_stack.top_dim());
  g.d_joint_W_m = RealMatrix(model.joint_dim(), model.emg_stack.top_dim());
  g.d_joint_b_e.assign(model.joint_dim(), 0.0);
  g.d_joint_b_m.assign(model.joint_dim(), 0.0);
  g.d_joint_bdec_e.assign(model.eeg_stack.top_dim(), 0.0);
  g.d_joint_bdec_m.assign(model.emg_stack.top_dim(), 0.0);

  backward_decode(model.eeg_stack, f.eeg, target_eeg, model.joint_W_e,
                  g.d_joint_W_e, g.d_joint_bdec_e, g.eeg_layers);
  backward_decode(model.emg_stack, f.emg, target_emg, model.joint_W_m,
                  g.d_joint_W_m, g.d_joint_bdec_m, g.emg_layers);

  if (labels) {
    if (!model.head) throw DomainError("gradient with labels but no head");
    const RealMatrix logits = affine(model.head->W, f.z, model.head->b);
    RealMatrix delta_logits = softmax(logits);
    const RealMatrix y = one_hot(*labels, model.head->num_classes());
    delta_logits = scaled(subtract(delta_logits, y), inv_n);
    g.d_head_W = multiply_a_bt(delta_logits, f.z);
    g.d_head_b = row_sums(delta_logits);
    add_in_place(delta_z, multiply_at_b(model.head->W, delta_logits));
  } else if (model.head) {
    g.d_head_W = RealMatrix(model.head->W.rows(), model.head->W.cols());
    g.d_head_b.assign(model.head->b.size(), 0.0);
  }

  // Encode side: delta_z splits identically into both sigmoid branches.
  auto backward_encode = [&](const StackedEncoder& stack,
                             const PathwayTrace& t, const RealMatrix& joint_w,
                             const std::vector<double>& joint_b,
                             RealMatrix& d_joint_w,
                             std::vector<double>& d_joint_b,
                             std::vector<AeGradient>& layer_grads) {
    (void)joint_b;
    RealMatrix delta_u = hadamard(
        delta_z,
        activation_derivative_from_output(Activation::Sigmoid, t.joint_sig));
    add_in_place(d_joint_w, multiply_a_bt(delta_u, t.encode_acts.back()));
    const std::vector<double> rs = row_sums(delta_u);
    for (std::size_t i = 0; i < rs.size(); ++i) d_joint_b[i] += rs[i];
    RealMatrix delta_a = multiply_at_b(joint_w, delta_u);
    for (std::size_t i = stack.layers.size(); i-- > 0;) {
      const auto& layer = stack.layers[i];
      RealMatrix delta_pre = hadamard(
          delta_a, activation_derivative_from_output(layer.activation,
                                                     t.encode_acts[i + 1]));
      add_in_place(layer_grads[i].dW,
                   multiply_a_bt(delta_pre, t.encode_acts[i]));
      const std::vector<double> brs = row_sums(delta_pre);
      for (std::size_t k = 0; k < brs.size(); ++k) layer_grads[i].db[k] += brs[k];
      if (i > 0) delta_a = multiply_at_b(layer.W, delta_pre);
    }
  };

  backward_encode(model.eeg_stack, f.eeg, model.joint_W_e, model.joint_b_e,
                  g.d_joint_W_e, g.d_joint_b_e, g.eeg_layers);
  backward_encode(model.emg_stack, f.emg, model.joint_W_m, model.joint_b_m,
                  g.d_joint_W_m, g.d_joint_b_m, g.emg_layers);

  // Weight decay on pathway and joint weights.
  for (std::size_t i = 0; i < model.eeg_stack.layers.size(); ++i)
    add_scaled_in_place(g.eeg_layers[i].dW, model.eeg_stack.layers[i].W,
                        2.0 * model.lambda);
  for (std::size_t i = 0; i < model.emg_stack.layers.size(); ++i)
    add_scaled_in_place(g.emg_layers[i].dW, model.emg_stack.layers[i].W,
                        2.0 * model.lambda);
  add_scaled_in_place(g.d_joint_W_e, model.joint_W_e, 2.0 * model.lambda);
  add_scaled_in_place(g.d_joint_W_m, model.joint_W_m, 2.0 * model.lambda);
  return g;
}

std::vector<double*> parameter_views(MultimodalModel& model) {
  std::vector<double*> out;
  auto push_matrix = [&out](RealMatrix& m) {
    for (double& v : m.values()) out.push_back(&v);
  };
  auto push_vector = [&out](std::vector<double>& v) {
    for (double& x : v) out.push_back(&x);
  };
  auto push_stack = [&](StackedEncoder& s) {
    for (auto& l : s.layers) {
      push_matrix(l.W);
      push_vector(l.b);
      push_vector(l.b_prime);
    }
  };
  push_stack(model.eeg_stack);
  push_stack(model.emg_stack);
  push_matrix(model.joint_W_e);
  push_vector(model.joint_b_e);
  push_vector(model.joint_bdec_e);
  push_matrix(model.joint_W_m);
  push_vector(model.joint_b_m);
  push_vector(model.joint_bdec_m);
  if (model.head) {
    push_matrix(model.head->W);
    push_vector(model.head->b);
  }
  return out;
}

std::vector<double> flatten_gradient(const MultimodalModel& model,
                                     const MultimodalGradient& g) {
  std::vector<double> out;
  auto push_matrix = [&out](const RealMatrix& m) {
    out.insert(out.end(), m.values().begin(), m.values().end());
  };
  auto push_vector = [&out](const std::vector<double>& v) {
    out.insert(out.end(), v.begin(), v.end());
  };
  auto push_layers = [&](const std::vector<AeGradient>& layers) {
    for (const auto& lg : layers) {
      push_matrix(lg.dW);
      push_vector(lg.db);
      push_vector(lg.db_prime);
    }
  };
  push_layers(g.eeg_layers);
  push_layers(g.emg_layers);
  push_matrix(g.d_joint_W_e);
  push_vector(g.d_joint_b_e);
  push_vector(g.d_joint_bdec_e);
  push_matrix(g.d_joint_W_m);
  push_vector(g.d_joint_b_m);
  push_vector(g.d_joint_bdec_m);
  if (model.head) {
    push_matrix(g.d_head_W);
    push_vector(g.d_head_b);
  }
  return out;
}

namespace {

void apply_gradient(MultimodalModel& model, const MultimodalGradient& g,
                    double lr, bool with_head) {
  auto step_stack = [lr](StackedEncoder& s, const std::vector<AeGradient>& gs) {
    for (std::size_t i = 0; i < s.layers.size(); ++i) {
      sgd_step({&s.layers[i].W}, {&gs[i].dW}, lr);
      sgd_step(s.layers[i].b, gs[i].db, lr);
      sgd_step(s.layers[i].b_prime, gs[i].db_prime, lr);
    }
  };
  step_stack(model.eeg_stack, g.eeg_layers);
  step_stack(model.emg_stack, g.emg_layers);
  sgd_step({&model.joint_W_e, &model.joint_W_m},
           {&g.d_joint_W_e, &g.d_joint_W_m}, lr);
  sgd_step(model.joint_b_e, g.d_joint_b_e, lr);
  sgd_step(model.joint_b_m, g.d_joint_b_m, lr);
  sgd_step(model.joint_bdec_e, g.d_joint_bdec_e, lr);
  sgd_step(model.joint_bdec_m, g.d_joint_bdec_m, lr);
  if (with_head && model.head) {
    sgd_step({&model.head->W}, {&g.d_head_W}, lr);
    sgd_step(model.head->b, g.d_head_b, lr);
  }
}

struct MiniBatch {
  MultimodalBatch batch;
  RealMatrix target_eeg, target_emg;
  std::vector<int> labels;
};

MiniBatch gather(const MultimodalBatch& batch, const RealMatrix& te,
                 const RealMatrix& tm, const std::vector<int>* labels,
                 const std::vector<std::size_t>& idx, std::size_t begin,
                 std::size_t end) {
  MiniBatch mb;
  const std::size_t n = end - begin;
  mb.batch.eeg = RealMatrix(batch.eeg.rows(), n);
  mb.batch.emg = RealMatrix(batch.emg.rows(), n);
  mb.target_eeg = RealMatrix(te.rows(), n);
  mb.target_emg = RealMatrix(tm.rows(), n);
  for (std::size_t j = begin; j < end; ++j) {
    const std::size_t src = idx[j], dst = j - begin;
    for (std::size_t i = 0; i < batch.eeg.rows(); ++i)
      mb.batch.eeg(i, dst) = batch.eeg(i, src);
    for (std::size_t i = 0; i < batch.emg.rows(); ++i)
      mb.batch.emg(i, dst) = batch.emg(i, src);
    for (std::size_t i = 0; i < te.rows(); ++i)
      mb.target_eeg(i, dst) = te(i, src);
    for (std::size_t i = 0; i < tm.rows(); ++i)
      mb.target_emg(i, dst) = tm(i, src);
    if (labels) mb.labels.push_back((*labels)[src]);
  }
  return mb;
}

std::vector<double> run_training(MultimodalModel& model,
                                 const MultimodalBatch& data,
                                 const RealMatrix& target_eeg,
                                 const RealMatrix& target_emg,
                                 const std::vector<int>* labels,
                                 const TrainConfig& cfg, const char* who) {
  cfg.validate();
  model.lambda = cfg.lambda;
  Rng rng = Rng(cfg.seed).derive(std::string(who) + ".shuffle");
  std::vector<std::size_t> idx(data.samples());
  std::iota(idx.begin(), idx.end(), 0);

  std::vector<double> history;
  history.reserve(cfg.epochs);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = idx.size(); i > 1; --i)
      std::swap(idx[i - 1], idx[rng.next_below(i)]);
    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < idx.size();
         start += cfg.batch_size, ++batches) {
      const std::size_t end = std::min(start + cfg.batch_size, idx.size());
      const MiniBatch mb = gather(data, target_eeg, target_emg, labels, idx,
                                  start, end);
      const std::vector<int>* mb_labels = labels ? &mb.labels : nullptr;
      const MultimodalGradient g = multimodal_gradient(
          model, mb.batch, mb.target_eeg, mb.target_emg, mb_labels);
      const double obj = multimodal_objective(model, mb.batch, mb.target_eeg,
                                              mb.target_emg, mb_labels);
      if (!std::isfinite(obj))
        throw TrainingError(std::string(who) + ": non-finite objective at epoch " +
                            std::to_string(epoch) + ", batch " +
                            std::to_string(batches));
      epoch_loss += obj;
      apply_gradient(model, g, cfg.lr, labels != nullptr);
    }
    history.push_back(epoch_loss / static_cast<double>(batches));
  }
  return history;
}

}  // namespace

std::vector<double> train_multimodal(MultimodalModel& model,
                                     const MultimodalBatch& batch,
                                     const TrainConfig& cfg,
                                     bool allow_unpretrained) {
  if (!model.pretrained && !allow_unpretrained)
    throw DomainError(
        "train_multimodal: pathways not pretrained (pass "
        "allow_unpretrained to override)");
  const AugmentedBatch aug = augment_modality_dropout(batch);
  auto history = run_training(model, aug.batch, aug.target_eeg, aug.target_emg,
                              nullptr, cfg, "multimodal");
  return history;
}

std::vector<double> fine_tune(MultimodalModel& model,
                              const MultimodalBatch& batch,
                              const std::vector<int>& labels,
                              const TrainConfig& cfg) {
  if (!model.head) throw DomainError("fine_tune: no softmax head attached");
  if (labels.size() != batch.samples())
    throw ShapeError("fine_tune: " + std::to_string(labels.size()) +
                     " labels for " + std::to_string(batch.samples()) +
                     " samples");
  return run_training(model, batch, batch.eeg, batch.emg, &labels, cfg,
                      "fine_tune");
}

ClassifyResult classify(const MultimodalModel& model,
                        const MultimodalBatch& batch) {
  if (!model.head) throw DomainError("classify: no softmax head attached");
  const RealMatrix z = joint_forward(model, batch);
  ClassifyResult res;
  res.probabilities = softmax(affine(model.head->W, z, model.head->b));
  res.labels.reserve(batch.samples());
  for (std::size_t j = 0; j < res.probabilities.cols(); ++j) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < res.probabilities.rows(); ++i)
      if (res.probabilities(i, j) > res.probabilities(best, j)) best = i;
    res.labels.push_back(static_cast<int>(best));
  }
  return res;
}

}  // namespace mmae
