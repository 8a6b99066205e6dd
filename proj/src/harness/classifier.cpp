#include "edgecs/harness/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "edgecs/error.hpp"

namespace edgecs::harness {

namespace {

std::vector<double> softmax(const std::vector<double>& logits) {
    const double top = *std::max_element(logits.begin(), logits.end());
    std::vector<double> p(logits.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) sum += (p[i] = std::exp(logits[i] - top));
    for (double& v : p) v /= sum;
    return p;
}

std::size_t argmax(const std::vector<double>& v) {
    return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

double train_classifier(const data::Dataset& train, const data::Dataset& test,
                        std::size_t hidden_size, const nn::SgdConfig& sgd) {
    if (!train.labels || !test.labels) throw InvalidArgument("classifier needs labelled datasets");
    if (train.size() == 0 || test.size() == 0) throw InvalidArgument("classifier needs nonempty datasets");
    sgd.validate();
    const std::size_t classes = std::max(train.class_count(), test.class_count());
    if (classes < 2) throw InvalidArgument("classifier needs at least two classes");
    require_size("test sample dimension", train.dimension(), test.dimension());

    nn::Rng rng(sgd.seed);
    nn::Mlp model;
    model.layers.push_back(nn::make_dense(train.dimension(), hidden_size, nn::ActivationKind::Tanh, rng));
    model.layers.push_back(nn::make_dense(hidden_size, classes, nn::ActivationKind::Identity, rng));

    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t epoch = 0; epoch < sgd.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t begin = 0; begin < order.size(); begin += sgd.batch_size) {
            const std::size_t end = std::min(order.size(), begin + sgd.batch_size);
            auto grads = nn::GradientSet::zeros_like(model);
            for (std::size_t i = begin; i < end; ++i) {
                const auto& x = train.samples[order[i]];
                const auto label = static_cast<std::size_t>((*train.labels)[order[i]]);
                auto trace = nn::mlp_forward_trace(model, x);
                auto g = softmax(trace.output());
                g[label] -= 1.0;  // d(cross-entropy)/d(logits)
                grads += nn::mlp_backward(model, trace, g).grads;
            }
            grads *= 1.0 / static_cast<double>(end - begin);
            model = nn::sgd_step(model, grads, sgd.learning_rate);
        }
    }

    std::size_t correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i)
        if (argmax(nn::mlp_forward(model, test.samples[i])) ==
            static_cast<std::size_t>((*test.labels)[i]))
            ++correct;
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace edgecs::harness
