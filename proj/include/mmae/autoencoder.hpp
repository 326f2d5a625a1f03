#pragma once

#include <cstdint>
#include <vector>

#include "mmae/nn_core.hpp"
#include "mmae/rng.hpp"

namespace mmae {

// One encoder/decoder pair with a shared weight matrix: h = f(Wx + b),
// r = g(W^T h + b'). The decoder weight is never stored separately.
struct TiedAutoencoder {
  RealMatrix W;                  // hidden x input
  std::vector<double> b;         // hidden
  std::vector<double> b_prime;   // input
  Activation activation = Activation::Sigmoid;
  double lambda = 0.0;           // weight decay

  std::size_t input_dim() const { return W.cols(); }
  std::size_t hidden_dim() const { return W.rows(); }
};

// Glorot-uniform weights, zero biases. Warns on stderr when hidden > input
// (expansion rather than compression).
TiedAutoencoder make_autoencoder(std::size_t input_dim, std::size_t hidden_dim,
                                 Activation activation, double lambda,
                                 Rng& rng);

struct AeActivations {
  RealMatrix h;  // hidden code
  RealMatrix r;  // reconstruction
};

AeActivations ae_forward(const TiedAutoencoder& ae, const RealMatrix& x);

// Squared-error reconstruction loss (mean over samples) plus
// lambda * ||W||_F^2.
double ae_objective(const TiedAutoencoder& ae, const RealMatrix& x);

struct AeGradient {
  RealMatrix dW;
  std::vector<double> db;
  std::vector<double> db_prime;
};

// Analytic gradient of ae_objective. dW accumulates the encoder role, the
// transposed decoder role, and 2*lambda*W.
AeGradient ae_gradient(const TiedAutoencoder& ae, const RealMatrix& x);

struct TrainConfig {
  double lr = 0.01;
  std::size_t epochs = 50;
  std::size_t batch_size = 64;
  double lambda = 1e-4;
  std::uint64_t seed = 0;

  void validate() const;  // throws DomainError on bad fields
};

// Mini-batch SGD with a seeded per-epoch shuffle. Returns the per-epoch mean
// batch objective. Aborts with TrainingError (naming epoch and batch) if the
// objective goes non-finite.
std::vector<double> train_autoencoder(TiedAutoencoder& ae,
                                      const RealMatrix& x_train,
                                      const TrainConfig& cfg);

// Encoder layers with chaining dimensions dims[0] -> dims[1] -> ...
struct StackedEncoder {
  std::vector<TiedAutoencoder> layers;

  std::vector<std::size_t> dims() const;
  std::size_t input_dim() const { return layers.front().input_dim(); }
  std::size_t top_dim() const { return layers.back().hidden_dim(); }
};

// Greedy layer-wise pretraining: each layer is trained on the hidden output
// of the one below; earlier layers are never revisited.
StackedEncoder greedy_pretrain(const std::vector<std::size_t>& dims,
                               const RealMatrix& x_train,
                               const TrainConfig& cfg);

// Composed encoder half: z_i = f(W_i z_{i-1} + b_i).
RealMatrix stack_forward(const StackedEncoder& se, const RealMatrix& x);

// Decoder half: unwinds each layer with its tied decoder, top to bottom.
RealMatrix stack_backward(const StackedEncoder& se, const RealMatrix& top);

}  // namespace mmae
