#include "mmae/nn_core.hpp"

#include <algorithm>
#include <cmath>

#include "mmae/errors.hpp"

namespace mmae {

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
    case Activation::Identity: return "identity";
  }
  return "?";
}

Activation activation_from_name(const std::string& name) {
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "tanh") return Activation::Tanh;
  if (name == "identity") return Activation::Identity;
  throw DomainError("unknown activation: " + name);
}

RealMatrix activate(Activation kind, const RealMatrix& z) {
  RealMatrix out = z;
  switch (kind) {
    case Activation::Sigmoid:
      for (double& v : out.values()) v = 1.0 / (1.0 + std::exp(-v));
      break;
    case Activation::Tanh:
      for (double& v : out.values()) v = std::tanh(v);
      break;
    case Activation::Identity:
      break;
  }
  return out;
}

RealMatrix activation_derivative_from_output(Activation kind,
                                             const RealMatrix& a) {
  RealMatrix out = a;
  switch (kind) {
    case Activation::Sigmoid:
      for (double& v : out.values()) v = v * (1.0 - v);
      break;
    case Activation::Tanh:
      for (double& v : out.values()) v = 1.0 - v * v;
      break;
    case Activation::Identity:
      for (double& v : out.values()) v = 1.0;
      break;
  }
  return out;
}

RealMatrix affine(const RealMatrix& w, const RealMatrix& x,
                  const std::vector<double>& b) {
  if (w.cols() != x.rows())
    throw ShapeError("affine: W is " + shape_str(w) + " but x is " +
                     shape_str(x));
  if (b.size() != w.rows())
    throw ShapeError("affine: bias length " + std::to_string(b.size()) +
                     " vs W " + shape_str(w));
  RealMatrix out = multiply(w, x);
  add_column_vector_in_place(out, b);
  return out;
}

double loss(Loss kind, const RealMatrix& x, const RealMatrix& r) {
  if (!x.same_shape(r))
    throw ShapeError("loss: shape mismatch " + shape_str(x) + " vs " +
                     shape_str(r));
  if (x.cols() == 0) throw ShapeError("loss: empty batch");
  double total = 0.0;
  if (kind == Loss::SquaredError) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x.values()[i] - r.values()[i];
      total += d * d;
    }
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double xi = x.values()[i];
      const double ri = r.values()[i];
      if (ri <= 0.0 || ri >= 1.0)
        throw DomainError("cross-entropy: reconstruction value " +
                          std::to_string(ri) + " outside open (0,1)");
      total -= xi * std::log(ri) + (1.0 - xi) * std::log(1.0 - ri);
    }
  }
  return total / static_cast<double>(x.cols());
}

RealMatrix softmax(const RealMatrix& logits) {
  RealMatrix out = logits;
  for (std::size_t j = 0; j < out.cols(); ++j) {
    double mx = out(0, j);
    for (std::size_t i = 1; i < out.rows(); ++i) mx = std::max(mx, out(i, j));
    double sum = 0.0;
    for (std::size_t i = 0; i < out.rows(); ++i) {
      out(i, j) = std::exp(out(i, j) - mx);
      sum += out(i, j);
    }
    for (std::size_t i = 0; i < out.rows(); ++i) out(i, j) /= sum;
  }
  return out;
}

void sgd_step(const std::vector<RealMatrix*>& params,
              const std::vector<const RealMatrix*>& grads, double lr) {
  if (lr <= 0.0) throw DomainError("sgd_step: learning rate must be > 0");
  if (params.size() != grads.size())
    throw ShapeError("sgd_step: parameter/gradient count mismatch");
  for (std::size_t k = 0; k < params.size(); ++k) {
    RealMatrix& p = *params[k];
    const RealMatrix& g = *grads[k];
    if (!p.same_shape(g))
      throw ShapeError("sgd_step: shape mismatch " + shape_str(p) + " vs " +
                       shape_str(g));
    for (std::size_t i = 0; i < p.size(); ++i)
      p.values()[i] -= lr * g.values()[i];
  }
}

void sgd_step(std::vector<double>& param, const std::vector<double>& grad,
              double lr) {
  if (lr <= 0.0) throw DomainError("sgd_step: learning rate must be > 0");
  if (param.size() != grad.size())
    throw ShapeError("sgd_step: vector length mismatch");
  for (std::size_t i = 0; i < param.size(); ++i) param[i] -= lr * grad[i];
}

std::vector<double> finite_difference_grad(
    const std::function<double()>& objective,
    const std::vector<double*>& coords, double h) {
  if (h <= 0.0) throw DomainError("finite_difference_grad: h must be > 0");
  std::vector<double> grad(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    double& p = *coords[i];
    const double saved = p;
    p = saved + h;
    const double fp = objective();
    p = saved - h;
    const double fm = objective();
    p = saved;
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw DomainError("finite_difference_grad: non-finite objective");
    grad[i] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

}  // namespace mmae
