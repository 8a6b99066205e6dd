#pragma once

#include <span>

#include "edgecs/nn/matrix.hpp"

namespace edgecs::nn {

// Whole-vector Huber loss. The branch is chosen by the L1 norm of the
// residual r = x - x_r:
//   ||r||_1 <= delta : 0.5 * ||r||_2^2
//   otherwise        : delta * ||r||_1 - 0.5 * delta^2
// This is not the elementwise Huber most libraries ship.
double huber_loss(std::span<const double> x, std::span<const double> x_r, double delta);

// Gradient of huber_loss with respect to x_r. Quadratic branch on the boundary.
Vector huber_grad(std::span<const double> x, std::span<const double> x_r, double delta);

}  // namespace edgecs::nn
