#include "edgecs/nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "edgecs/error.hpp"

namespace edgecs::nn {

namespace {

// The oracle evaluates the network in extended precision so that the
// difference quotient is not swamped by rounding of the loss.
using Wide = long double;

struct WideLayer {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Wide> weights;
    std::vector<Wide> bias;
    ActivationKind activation = ActivationKind::Identity;
};

Wide wide_activate(ActivationKind kind, Wide v) {
    switch (kind) {
        case ActivationKind::Identity: return v;
        case ActivationKind::Sigmoid: return v >= 0 ? 1 / (1 + std::exp(-v)) : std::exp(v) / (1 + std::exp(v));
        case ActivationKind::ReLU: return v > 0 ? v : 0;
        case ActivationKind::Tanh: return std::tanh(v);
    }
    return v;
}

Wide wide_loss(const std::vector<WideLayer>& layers, std::span<const double> x, std::span<const double> target,
               Wide delta) {
    std::vector<Wide> a(x.begin(), x.end());
    for (const auto& l : layers) {
        std::vector<Wide> out(l.rows);
        for (std::size_t r = 0; r < l.rows; ++r) {
            Wide s = l.bias[r];
            for (std::size_t c = 0; c < l.cols; ++c) s += l.weights[r * l.cols + c] * a[c];
            out[r] = wide_activate(l.activation, s);
        }
        a = std::move(out);
    }
    Wide l1 = 0, l2 = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Wide r = static_cast<Wide>(target[i]) - a[i];
        l1 += std::fabs(r);
        l2 += r * r;
    }
    return l1 <= delta ? l2 / 2 : delta * l1 - delta * delta / 2;
}

}  // namespace

GradientSet finite_diff_grad(const Mlp& model, std::span<const double> x,
                             std::span<const double> target, double delta, double eps) {
    if (!(eps >= 1e-7 && eps <= 1e-3)) throw InvalidArgument("finite_diff eps outside [1e-7, 1e-3]");
    if (!(delta > 0.0)) throw InvalidArgument("huber delta must be > 0");
    model.validate();
    require_size("finite_diff input length", model.in_size(), x.size());
    require_size("finite_diff target length", model.out_size(), target.size());

    std::vector<WideLayer> probe;
    for (const auto& l : model.layers) {
        const auto w = l.weights.values();
        probe.push_back({l.out_size(), l.in_size(), std::vector<Wide>(w.begin(), w.end()),
                         std::vector<Wide>(l.bias.begin(), l.bias.end()), l.activation});
    }
    const Wide h = eps;
    auto central = [&](Wide& param) {
        const Wide saved = param;
        param = saved + h;
        const Wide up = wide_loss(probe, x, target, delta);
        param = saved - h;
        const Wide down = wide_loss(probe, x, target, delta);
        param = saved;
        return static_cast<double>((up - down) / (2 * h));
    };

    GradientSet g = GradientSet::zeros_like(model);
    for (std::size_t k = 0; k < probe.size(); ++k) {
        auto gw = g.weight_grads[k].values();
        for (std::size_t i = 0; i < probe[k].weights.size(); ++i) gw[i] = central(probe[k].weights[i]);
        for (std::size_t i = 0; i < probe[k].bias.size(); ++i) g.bias_grads[k][i] = central(probe[k].bias[i]);
    }
    return g;
}

double max_relative_error(const GradientSet& a, const GradientSet& b, double floor) {
    const auto fa = a.flatten();
    const auto fb = b.flatten();
    require_size("gradient parameter count", fa.size(), fb.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        const double denom = std::max({std::abs(fa[i]), std::abs(fb[i]), floor});
        worst = std::max(worst, std::abs(fa[i] - fb[i]) / denom);
    }
    return worst;
}

}  // namespace edgecs::nn
