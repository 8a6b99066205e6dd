#include "edgecs/nn/activation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace edgecs::nn {

namespace {

// Saturated values are pulled back inside the open interval.
constexpr double kBelowOne = 1.0 - std::numeric_limits<double>::epsilon() / 2;

double sigmoid(double x) noexcept {
    double s;
    if (x >= 0.0) {
        s = 1.0 / (1.0 + std::exp(-x));
    } else {
        const double e = std::exp(x);
        s = e / (1.0 + e);
    }
    return std::clamp(s, std::numeric_limits<double>::denorm_min(), kBelowOne);
}

double bounded_tanh(double x) noexcept { return std::clamp(std::tanh(x), -kBelowOne, kBelowOne); }

}  // namespace

double activate(ActivationKind kind, double x) noexcept {
    switch (kind) {
        case ActivationKind::Identity: return x;
        case ActivationKind::Sigmoid: return sigmoid(x);
        case ActivationKind::ReLU: return x > 0.0 ? x : 0.0;
        case ActivationKind::Tanh: return bounded_tanh(x);
    }
    return x;
}

double activation_derivative(ActivationKind kind, double pre) noexcept {
    switch (kind) {
        case ActivationKind::Identity: return 1.0;
        case ActivationKind::Sigmoid: {
            const double s = sigmoid(pre);
            return s * (1.0 - s);
        }
        case ActivationKind::ReLU: return pre > 0.0 ? 1.0 : 0.0;
        case ActivationKind::Tanh: {
            const double t = bounded_tanh(pre);
            return 1.0 - t * t;
        }
    }
    return 1.0;
}

std::string_view to_string(ActivationKind kind) noexcept {
    switch (kind) {
        case ActivationKind::Identity: return "identity";
        case ActivationKind::Sigmoid: return "sigmoid";
        case ActivationKind::ReLU: return "relu";
        case ActivationKind::Tanh: return "tanh";
    }
    return "identity";
}

std::optional<ActivationKind> parse_activation(std::string_view name) noexcept {
    if (name == "identity") return ActivationKind::Identity;
    if (name == "sigmoid") return ActivationKind::Sigmoid;
    if (name == "relu") return ActivationKind::ReLU;
    if (name == "tanh") return ActivationKind::Tanh;
    return std::nullopt;
}

}  // namespace edgecs::nn
