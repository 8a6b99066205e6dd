#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "edgecs/nn/network.hpp"

namespace edgecs::codec {

using nn::ActivationKind;
using nn::Rng;
using nn::Vector;

struct AutoencoderConfig {
    std::size_t n_devices = 64;  // N
    std::size_t latent_dim = 16;  // M
    std::vector<std::size_t> decoder_hidden_sizes;  // empty: single-layer decoder
    ActivationKind encoder_activation = ActivationKind::Identity;
    ActivationKind decoder_hidden_activation = ActivationKind::ReLU;
    ActivationKind decoder_activation = ActivationKind::Sigmoid;
    double huber_delta = 1.0;
    double noise_sigma = 0.1;
    nn::SgdConfig sgd{};
    double finetune_threshold = 1.0;
    bool finetune_cold_start = false;

    // Throws InvalidArgument unless 1 <= M <= N, sigma >= 0, delta > 0.
    void validate() const;

    std::size_t encoder_parameter_count() const noexcept;
    std::size_t decoder_parameter_count() const noexcept;
};

// Single dense encoder layer (M x N) and a deeper decoder (M -> hidden... -> N).
struct Autoencoder {
    nn::DenseLayer encoder;
    nn::Mlp decoder;
    AutoencoderConfig config;

    // Encoder followed by the decoder layers, as one network.
    nn::Mlp composed() const;
    static Autoencoder from_composed(const nn::Mlp& stack, const AutoencoderConfig& config);
};

Autoencoder make_autoencoder(const AutoencoderConfig& config, Rng& rng);

Vector encode(const Autoencoder& ae, std::span<const double> x);
// Returns a new vector; y is never modified.
Vector add_noise(std::span<const double> y, double sigma, Rng& rng);
Vector decode(const Autoencoder& ae, std::span<const double> y_hat);
// encode then decode with no noise.
Vector reconstruct(const Autoencoder& ae, std::span<const double> x);

struct BatchGradients {
    nn::GradientSet grads;  // congruent with ae.composed()
    double mean_loss = 0.0;
};

// Mean Huber loss and its gradient over the batch; noise drawn from rng.
BatchGradients compute_gradients(const Autoencoder& ae, std::span<const Vector> batch, Rng& rng);

struct StepResult {
    Autoencoder ae;
    double mean_loss = 0.0;
};

StepResult train_step(const Autoencoder& ae, std::span<const Vector> batch, Rng& rng);

struct TrainingReport {
    std::vector<double> epoch_loss;
    std::vector<double> epoch_seconds;
    std::size_t steps = 0;
    double final_loss = 0.0;
};

struct TrainResult {
    Autoencoder ae;
    TrainingReport report;
};

// Shuffled mini-batches per epoch. ae.config.sgd is ignored in favour of cfg.
TrainResult train(const Autoencoder& ae, std::span<const Vector> dataset,
                  const nn::SgdConfig& cfg, Rng& rng);

// Mean Huber reconstruction error with the noise path disabled.
double evaluate_error(const Autoencoder& ae, std::span<const Vector> data);

// Mean over samples and coordinates of |x - x_r|, sigma = 0.
double mean_absolute_error(const Autoencoder& ae, std::span<const Vector> data);

struct FinetuneResult {
    Autoencoder ae;
    bool relaunched = false;
    double error_before = 0.0;
    double error_after = 0.0;
};

// Retrains on recent_data when its reconstruction error exceeds threshold.
FinetuneResult monitor_and_finetune(const Autoencoder& ae, std::span<const Vector> recent_data,
                                    double threshold, const nn::SgdConfig& cfg, Rng& rng);

}  // namespace edgecs::codec
