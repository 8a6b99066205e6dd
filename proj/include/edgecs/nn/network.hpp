#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "edgecs/nn/activation.hpp"
#include "edgecs/nn/matrix.hpp"

namespace edgecs::nn {

using Rng = std::mt19937_64;

struct DenseLayer {
    Matrix2 weights;  // out x in
    Vector bias;      // out
    ActivationKind activation = ActivationKind::Identity;

    std::size_t in_size() const noexcept { return weights.cols(); }
    std::size_t out_size() const noexcept { return weights.rows(); }
    std::size_t parameter_count() const noexcept { return weights.size() + bias.size(); }

    friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

// Uniform Glorot initialisation: U(-a, a), a = sqrt(6 / (fan_in + fan_out)); bias zero.
DenseLayer make_dense(std::size_t in, std::size_t out, ActivationKind activation, Rng& rng);

struct DenseOutput {
    Vector pre_activation;
    Vector output;
};

DenseOutput dense_forward(const DenseLayer& layer, std::span<const double> input);

struct Mlp {
    std::vector<DenseLayer> layers;

    std::size_t in_size() const;
    std::size_t out_size() const;
    std::size_t parameter_count() const noexcept;

    // Throws DimensionError when consecutive layers do not chain.
    void validate() const;

    friend bool operator==(const Mlp&, const Mlp&) = default;
};

// Per-layer cached values of one forward pass. inputs[k] feeds layer k;
// inputs.back() is the network output.
struct ForwardTrace {
    std::vector<Vector> inputs;
    std::vector<Vector> pre_activations;

    const Vector& output() const { return inputs.back(); }
};

ForwardTrace mlp_forward_trace(const Mlp& model, std::span<const double> input);
Vector mlp_forward(const Mlp& model, std::span<const double> input);

struct GradientSet {
    std::vector<Matrix2> weight_grads;
    std::vector<Vector> bias_grads;

    static GradientSet zeros_like(const Mlp& model);

    void check_congruent(const Mlp& model) const;
    GradientSet& operator+=(const GradientSet& other);
    GradientSet& operator*=(double factor);
    bool all_finite() const noexcept;
    // Flattened in layer order, weights before bias within a layer.
    std::vector<double> flatten() const;
};

struct BackwardResult {
    GradientSet grads;
    Vector input_grad;
};

// Reverse-mode pass over a cached trace.
BackwardResult mlp_backward(const Mlp& model, const ForwardTrace& trace,
                            std::span<const double> output_grad);

GradientSet mlp_backward(const Mlp& model, std::span<const double> input,
                         std::span<const double> output_grad);

struct SgdConfig {
    double learning_rate = 0.01;
    std::size_t batch_size = 32;
    std::size_t epochs = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

Mlp sgd_step(const Mlp& model, const GradientSet& grads, double learning_rate);

}  // namespace edgecs::nn
