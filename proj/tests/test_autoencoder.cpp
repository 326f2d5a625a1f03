#include <cmath>

#include "doctest.h"
#include "mmae/autoencoder.hpp"
#include "mmae/errors.hpp"
#include "test_helpers.hpp"

using namespace mmae;
using mmae::testing::max_rel_error;

namespace {

RealMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng, double lo,
                         double hi) {
  RealMatrix m(r, c);
  for (double& v : m.values()) v = rng.next_uniform(lo, hi);
  return m;
}

std::vector<double*> ae_coords(TiedAutoencoder& ae) {
  std::vector<double*> coords;
  for (double& v : ae.W.values()) coords.push_back(&v);
  for (double& v : ae.b) coords.push_back(&v);
  for (double& v : ae.b_prime) coords.push_back(&v);
  return coords;
}

std::vector<double> flatten(const AeGradient& g) {
  std::vector<double> out(g.dW.values());
  out.insert(out.end(), g.db.begin(), g.db.end());
  out.insert(out.end(), g.db_prime.begin(), g.db_prime.end());
  return out;
}

}  // namespace

TEST_CASE("ae_forward: zero weights and identity round trip") {
  Rng rng(1);
  TiedAutoencoder ae;
  ae.W = RealMatrix(3, 4);
  ae.b.assign(3, 0.0);
  ae.b_prime.assign(4, 0.0);
  ae.activation = Activation::Sigmoid;
  const RealMatrix x = random_matrix(4, 2, rng, 0.0, 1.0);
  const AeActivations out = ae_forward(ae, x);
  for (double v : out.h.values()) CHECK(v == 0.5);
  for (double v : out.r.values()) CHECK(v == 0.5);

  TiedAutoencoder id;
  id.W = RealMatrix::identity(4);
  id.b.assign(4, 0.0);
  id.b_prime.assign(4, 0.0);
  id.activation = Activation::Identity;
  CHECK(ae_forward(id, x).r == x);

  CHECK_THROWS_AS(ae_forward(ae, RealMatrix(5, 2)), ShapeError);
}

TEST_CASE("ae_forward: regression-locked values for a seeded 6->3 AE") {
  Rng rng(2024);
  TiedAutoencoder ae = make_autoencoder(6, 3, Activation::Sigmoid, 0.0, rng);
  RealMatrix x(6, 1);
  for (std::size_t i = 0; i < 6; ++i) x(i, 0) = 0.1 * static_cast<double>(i + 1);
  const AeActivations out = ae_forward(ae, x);
  // Golden values computed once from this implementation and frozen.
  CHECK(out.h(0, 0) == doctest::Approx(0.39201151720677585).epsilon(1e-14));
  CHECK(out.h(1, 0) == doctest::Approx(0.55986589235847106).epsilon(1e-14));
  CHECK(out.h(2, 0) == doctest::Approx(0.43204679767246257).epsilon(1e-14));
  CHECK(out.r(0, 0) == doctest::Approx(0.47216529593810852).epsilon(1e-14));
  CHECK(out.r(5, 0) == doctest::Approx(0.58398273740720252).epsilon(1e-14));
}

TEST_CASE("ae_objective: decay term arithmetic") {
  Rng rng(7);
  TiedAutoencoder ae = make_autoencoder(5, 3, Activation::Sigmoid, 0.0, rng);
  const RealMatrix x = random_matrix(5, 4, rng, 0.0, 1.0);

  const double base = ae_objective(ae, x);
  CHECK(base == doctest::Approx(loss(Loss::SquaredError, x,
                                     ae_forward(ae, x).r)).epsilon(1e-15));

  const double w2 = frobenius_norm_sq(ae.W);
  ae.lambda = 0.3;
  const double with_decay = ae_objective(ae, x);
  CHECK(with_decay - base == doctest::Approx(0.3 * w2).epsilon(1e-12));

  // lambda=1, W=I2, identity activation, zero biases: reconstruction is
  // exact, so the objective equals ||I||_F^2 = 2.
  TiedAutoencoder lin;
  lin.W = RealMatrix::identity(2);
  lin.b.assign(2, 0.0);
  lin.b_prime.assign(2, 0.0);
  lin.activation = Activation::Identity;
  lin.lambda = 1.0;
  const RealMatrix x2 = RealMatrix::from_rows({{0.3}, {0.6}});
  CHECK(ae_objective(lin, x2) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("ae_gradient matches finite differences on a random 5->3 AE") {
  Rng rng(99);
  TiedAutoencoder ae = make_autoencoder(5, 3, Activation::Sigmoid, 0.01, rng);
  const RealMatrix x = random_matrix(5, 4, rng, 0.0, 1.0);

  const std::vector<double> analytic = flatten(ae_gradient(ae, x));
  auto obj = [&] { return ae_objective(ae, x); };
  const std::vector<double> fd =
      finite_difference_grad(obj, ae_coords(ae), 1e-5);
  CHECK(max_rel_error(analytic, fd) <= 1e-6);
}

TEST_CASE("ae_gradient: weight-decay derivative is 2*lambda*W") {
  Rng rng(3);
  TiedAutoencoder ae = make_autoencoder(4, 2, Activation::Sigmoid, 0.0, rng);
  const RealMatrix x = random_matrix(4, 3, rng, 0.0, 1.0);
  const AeGradient g0 = ae_gradient(ae, x);
  ae.lambda = 0.1;
  const AeGradient g1 = ae_gradient(ae, x);
  for (std::size_t i = 0; i < ae.W.size(); ++i)
    CHECK(g1.dW.values()[i] - g0.dW.values()[i] ==
          doctest::Approx(0.2 * ae.W.values()[i]).epsilon(1e-12));
}

TEST_CASE("tied gradient equals summed untied-network gradient") {
  // Build the equivalent untied network (independent W_enc, W_dec) and
  // check dW_tied == dW_enc + dW_dec^T by finite differences on each role.
  Rng rng(55);
  TiedAutoencoder ae = make_autoencoder(4, 2, Activation::Sigmoid, 0.0, rng);
  const RealMatrix x = random_matrix(4, 3, rng, 0.0, 1.0);

  RealMatrix w_enc = ae.W;
  RealMatrix w_dec = ae.W.transposed();
  auto untied_obj = [&] {
    RealMatrix h = activate(Activation::Sigmoid, affine(w_enc, x, ae.b));
    RealMatrix pre = multiply(w_dec, h);
    add_column_vector_in_place(pre, ae.b_prime);
    return loss(Loss::SquaredError, x, activate(Activation::Sigmoid, pre));
  };
  std::vector<double*> enc_coords, dec_coords;
  for (double& v : w_enc.values()) enc_coords.push_back(&v);
  for (double& v : w_dec.values()) dec_coords.push_back(&v);
  const std::vector<double> g_enc =
      finite_difference_grad(untied_obj, enc_coords, 1e-6);
  const std::vector<double> g_dec =
      finite_difference_grad(untied_obj, dec_coords, 1e-6);

  const AeGradient tied = ae_gradient(ae, x);
  for (std::size_t i = 0; i < ae.W.rows(); ++i)
    for (std::size_t j = 0; j < ae.W.cols(); ++j) {
      const double enc = g_enc[i * ae.W.cols() + j];
      const double dec = g_dec[j * ae.W.rows() + i];  // transposed role
      CHECK(tied.dW(i, j) == doctest::Approx(enc + dec).epsilon(1e-6));
    }
}

TEST_CASE("gradient check over 20 seeded random configurations") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed * 7919 + 1);
    const std::size_t in = 3 + seed % 4;
    const std::size_t hid = 2 + seed % 3;
    TiedAutoencoder ae = make_autoencoder(
        in, hid, seed % 2 ? Activation::Tanh : Activation::Sigmoid,
        0.001 * static_cast<double>(seed % 5), rng);
    const RealMatrix x = random_matrix(in, 3, rng, 0.0, 1.0);
    const std::vector<double> analytic = flatten(ae_gradient(ae, x));
    auto obj = [&] { return ae_objective(ae, x); };
    const std::vector<double> fd =
        finite_difference_grad(obj, ae_coords(ae), 1e-5);
    CHECK(max_rel_error(analytic, fd) <= 1e-6);
  }
}

TEST_CASE("TrainConfig validation") {
  TrainConfig cfg;
  cfg.epochs = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.epochs = 1;
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.batch_size = 1;
  cfg.lr = -1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("training is deterministic given the seed") {
  Rng rng(12);
  const RealMatrix x = random_matrix(6, 40, rng, 0.0, 1.0);
  TrainConfig cfg;
  cfg.epochs = 5;
  cfg.batch_size = 8;
  cfg.seed = 77;

  Rng ra(123), rb(123);
  TiedAutoencoder a = make_autoencoder(6, 3, Activation::Sigmoid, 0.0, ra);
  TiedAutoencoder b = make_autoencoder(6, 3, Activation::Sigmoid, 0.0, rb);
  const auto ha = train_autoencoder(a, x, cfg);
  const auto hb = train_autoencoder(b, x, cfg);
  CHECK(a.W == b.W);
  CHECK(a.b == b.b);
  CHECK(a.b_prime == b.b_prime);
  CHECK(ha == hb);
}

TEST_CASE("full-batch descent is non-increasing at small lr") {
  Rng rng(31);
  const RealMatrix x = random_matrix(5, 30, rng, 0.0, 1.0);
  Rng init(8);
  TiedAutoencoder ae = make_autoencoder(5, 3, Activation::Sigmoid, 0.0, init);
  TrainConfig cfg;
  cfg.lr = 1e-3;
  cfg.epochs = 1;
  cfg.batch_size = 30;  // full batch
  cfg.lambda = 0.0;
  double prev = ae_objective(ae, x);
  for (int it = 0; it < 50; ++it) {
    cfg.seed = static_cast<std::uint64_t>(it);
    train_autoencoder(ae, x, cfg);
    const double cur = ae_objective(ae, x);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("linear AE reaches within 5% of the PCA optimum on low-rank data") {
  // Rank-2 data in 8 dims plus small noise; identity activation, no decay.
  Rng rng(2);
  RealMatrix basis(8, 2);
  for (double& v : basis.values()) v = rng.next_gaussian();
  const std::size_t n = 100;
  RealMatrix x(8, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double c0 = rng.next_gaussian(), c1 = rng.next_gaussian();
    for (std::size_t i = 0; i < 8; ++i)
      x(i, j) = basis(i, 0) * c0 + basis(i, 1) * c1 +
                0.05 * rng.next_gaussian();
  }

  const double pca_err = mmae::testing::pca_optimal_error(x, 2);

  Rng init(4);
  TiedAutoencoder ae = make_autoencoder(8, 2, Activation::Identity, 0.0, init);
  TrainConfig cfg;
  cfg.lr = 0.01;
  cfg.epochs = 2000;
  cfg.batch_size = n;  // full batch
  cfg.lambda = 0.0;
  cfg.seed = 5;
  train_autoencoder(ae, x, cfg);
  const double err = ae_objective(ae, x);
  CHECK(err >= pca_err * (1.0 - 1e-9));  // PCA is the linear lower bound
  CHECK(err <= pca_err * 1.05);
}

TEST_CASE("greedy_pretrain: degenerate single layer equals train_autoencoder") {
  Rng rng(9);
  const RealMatrix x = random_matrix(6, 24, rng, 0.0, 1.0);
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.batch_size = 8;
  cfg.seed = 21;

  const StackedEncoder se = greedy_pretrain({6, 3}, x, cfg);

  Rng init = Rng(cfg.seed).derive("greedy.layer.1");
  TiedAutoencoder ae =
      make_autoencoder(6, 3, Activation::Sigmoid, cfg.lambda, init);
  TrainConfig layer_cfg = cfg;
  layer_cfg.seed = Rng(cfg.seed).derive("greedy.train.1").next_u64();
  train_autoencoder(ae, x, layer_cfg);

  CHECK(se.layers.size() == 1);
  CHECK(se.layers[0].W == ae.W);
  CHECK(se.layers[0].b == ae.b);
}

TEST_CASE("greedy_pretrain: layer shapes chain and layer 1 is frozen") {
  Rng rng(14);
  const RealMatrix x = random_matrix(10, 30, rng, 0.0, 1.0);
  TrainConfig cfg;
  cfg.epochs = 2;
  cfg.batch_size = 10;
  cfg.seed = 33;

  const StackedEncoder two = greedy_pretrain({10, 6, 3}, x, cfg);
  CHECK(two.dims() == std::vector<std::size_t>({10, 6, 3}));
  CHECK(stack_forward(two, x).rows() == 3);

  // Training a second layer must not perturb a first layer trained alone
  // with identical derivation.
  const StackedEncoder one = greedy_pretrain({10, 6}, x, cfg);
  CHECK(one.layers[0].W == two.layers[0].W);
  CHECK(one.layers[0].b == two.layers[0].b);
  CHECK(one.layers[0].b_prime == two.layers[0].b_prime);

  CHECK_THROWS_AS(greedy_pretrain({10}, x, cfg), DomainError);
  CHECK_THROWS_AS(greedy_pretrain({9, 5}, x, cfg), ShapeError);
}

TEST_CASE("stack_forward: zero weights give 0.5, matches manual composition") {
  StackedEncoder se;
  for (auto [in, hid] : {std::pair<std::size_t, std::size_t>{4, 3}, {3, 2}}) {
    TiedAutoencoder ae;
    ae.W = RealMatrix(hid, in);
    ae.b.assign(hid, 0.0);
    ae.b_prime.assign(in, 0.0);
    se.layers.push_back(ae);
  }
  Rng rng(6);
  const RealMatrix x = random_matrix(4, 2, rng, 0.0, 1.0);
  const RealMatrix zero_out = stack_forward(se, x);
  for (double v : zero_out.values()) CHECK(v == 0.5);

  // Random stack: composition of per-layer h outputs.
  Rng init(77);
  StackedEncoder rse;
  rse.layers.push_back(make_autoencoder(4, 3, Activation::Sigmoid, 0.0, init));
  rse.layers.push_back(make_autoencoder(3, 2, Activation::Sigmoid, 0.0, init));
  const RealMatrix direct = stack_forward(rse, x);
  const RealMatrix manual =
      ae_forward(rse.layers[1], ae_forward(rse.layers[0], x).h).h;
  CHECK(direct == manual);
}
