#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mmae/matrix.hpp"

namespace mmae {

enum class Activation { Sigmoid, Tanh, Identity };
enum class Loss { SquaredError, CrossEntropy };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

// Elementwise activation. Sigmoid lands strictly inside (0,1) and tanh
// inside (-1,1) for finite input.
RealMatrix activate(Activation kind, const RealMatrix& z);

// Derivative expressed through the activation output a = f(z):
// sigmoid' = a(1-a), tanh' = 1-a^2, identity' = 1.
RealMatrix activation_derivative_from_output(Activation kind,
                                             const RealMatrix& a);

// W*x + b with one sample per column of x.
RealMatrix affine(const RealMatrix& w, const RealMatrix& x,
                  const std::vector<double>& b);

// Mean over samples (columns) of the per-sample loss. SquaredError is
// ||x - r||^2; CrossEntropy requires r strictly inside (0,1) and throws a
// DomainError otherwise rather than clamping.
double loss(Loss kind, const RealMatrix& x, const RealMatrix& r);

// Column-wise softmax with max subtraction.
RealMatrix softmax(const RealMatrix& logits);

// p <- p - lr * g for every aligned parameter/gradient pair. lr must be > 0.
void sgd_step(const std::vector<RealMatrix*>& params,
              const std::vector<const RealMatrix*>& grads, double lr);
void sgd_step(std::vector<double>& param, const std::vector<double>& grad,
              double lr);

// Central finite differences of a scalar objective with respect to the
// given parameter coordinates (mutated in place, restored afterwards).
// This is the independent oracle the analytic gradients are checked against.
std::vector<double> finite_difference_grad(
    const std::function<double()>& objective,
    const std::vector<double*>& coords, double h = 1e-5);

}  // namespace mmae
