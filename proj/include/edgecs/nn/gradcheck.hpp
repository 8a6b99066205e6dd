#pragma once

#include <span>

#include "edgecs/nn/network.hpp"

namespace edgecs::nn {

// Central differences of huber_loss(target, forward(model, x), delta), evaluated
// by an independent extended-precision forward pass,
// with respect to every weight and bias. eps must lie in [1e-7, 1e-3].
GradientSet finite_diff_grad(const Mlp& model, std::span<const double> x,
                             std::span<const double> target, double delta, double eps);

// max_k |a_k - b_k| / max(|a_k|, |b_k|, floor)
double max_relative_error(const GradientSet& a, const GradientSet& b, double floor = 1e-6);

}  // namespace edgecs::nn
