#include "edgecs/nn/network.hpp"

#include <cmath>
#include <string>

#include "edgecs/error.hpp"

namespace edgecs::nn {

DenseLayer make_dense(std::size_t in, std::size_t out, ActivationKind activation, Rng& rng) {
    if (in == 0 || out == 0) throw InvalidArgument("dense layer sizes must be positive");
    const double a = std::sqrt(6.0 / static_cast<double>(in + out));
    std::uniform_real_distribution<double> dist(-a, a);
    DenseLayer layer{Matrix2(out, in), Vector(out, 0.0), activation};
    for (double& w : layer.weights.values()) w = dist(rng);
    return layer;
}

DenseOutput dense_forward(const DenseLayer& layer, std::span<const double> input) {
    require_size("dense_forward bias length", layer.weights.rows(), layer.bias.size());
    require_size("dense_forward input length", layer.weights.cols(), input.size());
    DenseOutput out;
    out.pre_activation = layer.weights.multiply(input);
    out.output.resize(out.pre_activation.size());
    for (std::size_t i = 0; i < out.pre_activation.size(); ++i) {
        out.pre_activation[i] += layer.bias[i];
        out.output[i] = activate(layer.activation, out.pre_activation[i]);
    }
    return out;
}

std::size_t Mlp::in_size() const {
    if (layers.empty()) throw InvalidArgument("empty Mlp");
    return layers.front().in_size();
}

std::size_t Mlp::out_size() const {
    if (layers.empty()) throw InvalidArgument("empty Mlp");
    return layers.back().out_size();
}

std::size_t Mlp::parameter_count() const noexcept {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.parameter_count();
    return n;
}

void Mlp::validate() const {
    if (layers.empty()) throw InvalidArgument("empty Mlp");
    for (std::size_t k = 0; k < layers.size(); ++k) {
        require_size(("layer " + std::to_string(k) + " bias length").c_str(),
                     layers[k].weights.rows(), layers[k].bias.size());
        if (k + 1 < layers.size())
            require_size(("layer " + std::to_string(k + 1) + " input size").c_str(),
                         layers[k].out_size(), layers[k + 1].in_size());
    }
}

ForwardTrace mlp_forward_trace(const Mlp& model, std::span<const double> input) {
    model.validate();
    ForwardTrace trace;
    trace.inputs.reserve(model.layers.size() + 1);
    trace.pre_activations.reserve(model.layers.size());
    trace.inputs.emplace_back(input.begin(), input.end());
    for (const auto& layer : model.layers) {
        auto out = dense_forward(layer, trace.inputs.back());
        trace.pre_activations.push_back(std::move(out.pre_activation));
        trace.inputs.push_back(std::move(out.output));
    }
    return trace;
}

Vector mlp_forward(const Mlp& model, std::span<const double> input) {
    model.validate();
    Vector x(input.begin(), input.end());
    for (const auto& layer : model.layers) x = dense_forward(layer, x).output;
    return x;
}

GradientSet GradientSet::zeros_like(const Mlp& model) {
    GradientSet g;
    for (const auto& l : model.layers) {
        g.weight_grads.emplace_back(l.weights.rows(), l.weights.cols());
        g.bias_grads.emplace_back(l.bias.size(), 0.0);
    }
    return g;
}

void GradientSet::check_congruent(const Mlp& model) const {
    require_size("gradient layer count", model.layers.size(), weight_grads.size());
    require_size("gradient bias layer count", model.layers.size(), bias_grads.size());
    for (std::size_t k = 0; k < model.layers.size(); ++k) {
        require_size("gradient weight rows", model.layers[k].weights.rows(), weight_grads[k].rows());
        require_size("gradient weight cols", model.layers[k].weights.cols(), weight_grads[k].cols());
        require_size("gradient bias length", model.layers[k].bias.size(), bias_grads[k].size());
    }
}

GradientSet& GradientSet::operator+=(const GradientSet& other) {
    require_size("gradient layer count", weight_grads.size(), other.weight_grads.size());
    for (std::size_t k = 0; k < weight_grads.size(); ++k) {
        auto dst = weight_grads[k].values();
        auto src = other.weight_grads[k].values();
        require_size("gradient weight count", dst.size(), src.size());
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
        require_size("gradient bias length", bias_grads[k].size(), other.bias_grads[k].size());
        for (std::size_t i = 0; i < bias_grads[k].size(); ++i) bias_grads[k][i] += other.bias_grads[k][i];
    }
    return *this;
}

GradientSet& GradientSet::operator*=(double factor) {
    for (auto& w : weight_grads)
        for (double& v : w.values()) v *= factor;
    for (auto& b : bias_grads)
        for (double& v : b) v *= factor;
    return *this;
}

bool GradientSet::all_finite() const noexcept {
    for (const auto& w : weight_grads)
        if (!w.all_finite()) return false;
    for (const auto& b : bias_grads)
        for (double v : b)
            if (!std::isfinite(v)) return false;
    return true;
}

std::vector<double> GradientSet::flatten() const {
    std::vector<double> out;
    for (std::size_t k = 0; k < weight_grads.size(); ++k) {
        auto w = weight_grads[k].values();
        out.insert(out.end(), w.begin(), w.end());
        out.insert(out.end(), bias_grads[k].begin(), bias_grads[k].end());
    }
    return out;
}

BackwardResult mlp_backward(const Mlp& model, const ForwardTrace& trace,
                            std::span<const double> output_grad) {
    model.validate();
    require_size("trace layer count", model.layers.size(), trace.pre_activations.size());
    require_size("output_grad length", model.out_size(), output_grad.size());

    BackwardResult result{GradientSet::zeros_like(model), {}};
    Vector upstream(output_grad.begin(), output_grad.end());
    for (std::size_t k = model.layers.size(); k-- > 0;) {
        const auto& layer = model.layers[k];
        const auto& pre = trace.pre_activations[k];
        const auto& in = trace.inputs[k];
        Vector delta(upstream.size());
        for (std::size_t j = 0; j < delta.size(); ++j)
            delta[j] = upstream[j] * activation_derivative(layer.activation, pre[j]);

        auto& dw = result.grads.weight_grads[k];
        for (std::size_t r = 0; r < dw.rows(); ++r) {
            const double d = delta[r];
            if (d == 0.0) continue;
            for (std::size_t c = 0; c < dw.cols(); ++c) dw(r, c) = d * in[c];
        }
        result.grads.bias_grads[k] = delta;
        upstream = layer.weights.multiply_transposed(delta);
    }
    result.input_grad = std::move(upstream);
    return result;
}

GradientSet mlp_backward(const Mlp& model, std::span<const double> input,
                         std::span<const double> output_grad) {
    auto trace = mlp_forward_trace(model, input);
    return mlp_backward(model, trace, output_grad).grads;
}

void SgdConfig::validate() const {
    if (!(learning_rate > 0.0)) throw InvalidArgument("learning_rate must be > 0");
    if (batch_size < 1) throw InvalidArgument("batch_size must be >= 1");
}

Mlp sgd_step(const Mlp& model, const GradientSet& grads, double learning_rate) {
    grads.check_congruent(model);
    Mlp next = model;
    for (std::size_t k = 0; k < next.layers.size(); ++k) {
        auto w = next.layers[k].weights.values();
        auto g = grads.weight_grads[k].values();
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= learning_rate * g[i];
        auto& b = next.layers[k].bias;
        for (std::size_t i = 0; i < b.size(); ++i) b[i] -= learning_rate * grads.bias_grads[k][i];
    }
    return next;
}

}  // namespace edgecs::nn
