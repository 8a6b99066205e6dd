#pragma once

#include <cstddef>

#include "edgecs/data/dataset.hpp"
#include "edgecs/nn/network.hpp"

namespace edgecs::harness {

// Two dense layers (tanh hidden, linear logits) trained with softmax
// cross-entropy and plain SGD. Returns accuracy on `test`.
double train_classifier(const data::Dataset& train, const data::Dataset& test,
                        std::size_t hidden_size, const nn::SgdConfig& sgd);

}  // namespace edgecs::harness
