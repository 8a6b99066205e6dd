#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace edgecs::nn {

enum class ActivationKind { Identity, Sigmoid, ReLU, Tanh };

double activate(ActivationKind kind, double x) noexcept;

// Derivative of the activation evaluated at the pre-activation value.
// ReLU'(0) is 0.
double activation_derivative(ActivationKind kind, double pre) noexcept;

std::string_view to_string(ActivationKind kind) noexcept;
std::optional<ActivationKind> parse_activation(std::string_view name) noexcept;

}  // namespace edgecs::nn
