#include "mmae/autoencoder.hpp"

#include <cmath>
#include <iostream>
#include <numeric>
#include <string>

#include "mmae/errors.hpp"

namespace mmae {

TiedAutoencoder make_autoencoder(std::size_t input_dim, std::size_t hidden_dim,
                                 Activation activation, double lambda,
                                 Rng& rng) {
  if (input_dim == 0 || hidden_dim == 0)
    throw DomainError("make_autoencoder: zero dimension");
  if (hidden_dim > input_dim)
    std::cerr << "warning: hidden dim " << hidden_dim << " > input dim "
              << input_dim << " (expansion, not compression)\n";
  TiedAutoencoder ae;
  ae.W = RealMatrix(hidden_dim, input_dim);
  const double bound =
      std::sqrt(6.0 / static_cast<double>(input_dim + hidden_dim));
  for (double& v : ae.W.values()) v = rng.next_uniform(-bound, bound);
  ae.b.assign(hidden_dim, 0.0);
  ae.b_prime.assign(input_dim, 0.0);
  ae.activation = activation;
  ae.lambda = lambda;
  return ae;
}

AeActivations ae_forward(const TiedAutoencoder& ae, const RealMatrix& x) {
  if (x.rows() != ae.input_dim())
    throw ShapeError("ae_forward: input rows " + std::to_string(x.rows()) +
                     " vs autoencoder input dim " +
                     std::to_string(ae.input_dim()));
  AeActivations out;
  out.h = activate(ae.activation, affine(ae.W, x, ae.b));
  RealMatrix pre = multiply_at_b(ae.W, out.h);  // W^T h
  add_column_vector_in_place(pre, ae.b_prime);
  out.r = activate(ae.activation, pre);
  return out;
}

double ae_objective(const TiedAutoencoder& ae, const RealMatrix& x) {
  const AeActivations act = ae_forward(ae, x);
  return loss(Loss::SquaredError, x, act.r) +
         ae.lambda * frobenius_norm_sq(ae.W);
}

AeGradient ae_gradient(const TiedAutoencoder& ae, const RealMatrix& x) {
  const AeActivations act = ae_forward(ae, x);
  const double inv_n = 1.0 / static_cast<double>(x.cols());

  // d(mean ||x-r||^2)/dr = (2/n)(r - x)
  RealMatrix delta_r = scaled(subtract(act.r, x), 2.0 * inv_n);
  delta_r = hadamard(delta_r,
                     activation_derivative_from_output(ae.activation, act.r));

  AeGradient g;
  g.db_prime = row_sums(delta_r);
  // Decoder role of W: pre = W^T h, so dW += h * delta_r^T.
  g.dW = multiply_a_bt(act.h, delta_r);

  RealMatrix delta_h = multiply(ae.W, delta_r);
  delta_h = hadamard(delta_h,
                     activation_derivative_from_output(ae.activation, act.h));
  g.db = row_sums(delta_h);
  add_in_place(g.dW, multiply_a_bt(delta_h, x));           // encoder role
  add_scaled_in_place(g.dW, ae.W, 2.0 * ae.lambda);        // weight decay
  return g;
}

void TrainConfig::validate() const {
  if (lr <= 0.0) throw DomainError("TrainConfig: lr must be > 0");
  if (epochs < 1) throw DomainError("TrainConfig: epochs must be >= 1");
  if (batch_size < 1) throw DomainError("TrainConfig: batch_size must be >= 1");
  if (lambda < 0.0) throw DomainError("TrainConfig: lambda must be >= 0");
}

namespace {

RealMatrix gather_columns(const RealMatrix& x,
                          const std::vector<std::size_t>& idx,
                          std::size_t begin, std::size_t end) {
  RealMatrix out(x.rows(), end - begin);
  for (std::size_t j = begin; j < end; ++j)
    for (std::size_t i = 0; i < x.rows(); ++i)
      out(i, j - begin) = x(i, idx[j]);
  return out;
}

void shuffle_indices(std::vector<std::size_t>& idx, Rng& rng) {
  for (std::size_t i = idx.size(); i > 1; --i)
    std::swap(idx[i - 1], idx[rng.next_below(i)]);
}

}  // namespace

std::vector<double> train_autoencoder(TiedAutoencoder& ae,
                                      const RealMatrix& x_train,
                                      const TrainConfig& cfg) {
  cfg.validate();
  if (x_train.cols() == 0)
    throw DomainError("train_autoencoder: empty training set");
  if (x_train.rows() != ae.input_dim())
    throw ShapeError("train_autoencoder: data rows " +
                     std::to_string(x_train.rows()) + " vs input dim " +
                     std::to_string(ae.input_dim()));
  ae.lambda = cfg.lambda;

  Rng rng = Rng(cfg.seed).derive("autoencoder.shuffle");
  std::vector<std::size_t> idx(x_train.cols());
  std::iota(idx.begin(), idx.end(), 0);

  std::vector<double> history;
  history.reserve(cfg.epochs);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_indices(idx, rng);
    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < idx.size();
         start += cfg.batch_size, ++batches) {
      const std::size_t end = std::min(start + cfg.batch_size, idx.size());
      const RealMatrix batch = gather_columns(x_train, idx, start, end);
      const AeGradient g = ae_gradient(ae, batch);
      const double obj = ae_objective(ae, batch);
      if (!std::isfinite(obj))
        throw TrainingError("train_autoencoder: non-finite objective at epoch " +
                            std::to_string(epoch) + ", batch " +
                            std::to_string(batches));
      epoch_loss += obj;
      sgd_step({&ae.W}, {&g.dW}, cfg.lr);
      sgd_step(ae.b, g.db, cfg.lr);
      sgd_step(ae.b_prime, g.db_prime, cfg.lr);
    }
    history.push_back(epoch_loss / static_cast<double>(batches));
  }
  return history;
}

std::vector<std::size_t> StackedEncoder::dims() const {
  std::vector<std::size_t> d;
  d.push_back(layers.front().input_dim());
  for (const auto& l : layers) d.push_back(l.hidden_dim());
  return d;
}

StackedEncoder greedy_pretrain(const std::vector<std::size_t>& dims,
                               const RealMatrix& x_train,
                               const TrainConfig& cfg) {
  if (dims.size() < 2)
    throw DomainError("greedy_pretrain: need at least [input, hidden] dims");
  if (dims[0] != x_train.rows())
    throw ShapeError("greedy_pretrain: dims[0]=" + std::to_string(dims[0]) +
                     " vs data rows " + std::to_string(x_train.rows()));
  StackedEncoder se;
  RealMatrix layer_input = x_train;
  for (std::size_t i = 1; i < dims.size(); ++i) {
    Rng rng = Rng(cfg.seed).derive("greedy.layer." + std::to_string(i));
    TiedAutoencoder ae = make_autoencoder(dims[i - 1], dims[i],
                                          Activation::Sigmoid, cfg.lambda, rng);
    TrainConfig layer_cfg = cfg;
    layer_cfg.seed = Rng(cfg.seed).derive("greedy.train." + std::to_string(i))
                         .next_u64();
    try {
      train_autoencoder(ae, layer_input, layer_cfg);
    } catch (const TrainingError& e) {
      throw TrainingError("greedy_pretrain: layer " + std::to_string(i) +
                          ": " + e.what());
    }
    layer_input = ae_forward(ae, layer_input).h;
    se.layers.push_back(std::move(ae));
  }
  return se;
}

RealMatrix stack_forward(const StackedEncoder& se, const RealMatrix& x) {
  RealMatrix z = x;
  for (const auto& layer : se.layers)
    z = activate(layer.activation, affine(layer.W, z, layer.b));
  return z;
}

RealMatrix stack_backward(const StackedEncoder& se, const RealMatrix& top) {
  RealMatrix h = top;
  for (auto it = se.layers.rbegin(); it != se.layers.rend(); ++it) {
    RealMatrix pre = multiply_at_b(it->W, h);
    add_column_vector_in_place(pre, it->b_prime);
    h = activate(it->activation, pre);
  }
  return h;
}

}  // namespace mmae
