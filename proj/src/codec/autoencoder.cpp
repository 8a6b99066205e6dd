#include "edgecs/codec/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <chrono>
#include <numeric>

#include "edgecs/error.hpp"
#include "edgecs/nn/loss.hpp"

namespace edgecs::codec {

void AutoencoderConfig::validate() const {
    if (latent_dim < 1 || latent_dim > n_devices)
        throw InvalidArgument("latent_dim must satisfy 1 <= M <= N (M=" + std::to_string(latent_dim) +
                              ", N=" + std::to_string(n_devices) + ")");
    if (!(noise_sigma >= 0.0)) throw InvalidArgument("noise_sigma must be >= 0");
    if (!(huber_delta > 0.0)) throw InvalidArgument("huber_delta must be > 0");
    for (auto h : decoder_hidden_sizes)
        if (h == 0) throw InvalidArgument("decoder hidden sizes must be positive");
}

std::size_t AutoencoderConfig::encoder_parameter_count() const noexcept {
    return latent_dim * n_devices + latent_dim;
}

std::size_t AutoencoderConfig::decoder_parameter_count() const noexcept {
    std::size_t n = 0;
    std::size_t in = latent_dim;
    for (auto h : decoder_hidden_sizes) {
        n += in * h + h;
        in = h;
    }
    return n + in * n_devices + n_devices;
}

nn::Mlp Autoencoder::composed() const {
    nn::Mlp stack;
    stack.layers.reserve(decoder.layers.size() + 1);
    stack.layers.push_back(encoder);
    stack.layers.insert(stack.layers.end(), decoder.layers.begin(), decoder.layers.end());
    return stack;
}

Autoencoder Autoencoder::from_composed(const nn::Mlp& stack, const AutoencoderConfig& config) {
    if (stack.layers.size() < 2) throw InvalidArgument("composed autoencoder needs >= 2 layers");
    Autoencoder ae;
    ae.encoder = stack.layers.front();
    ae.decoder.layers.assign(stack.layers.begin() + 1, stack.layers.end());
    ae.config = config;
    return ae;
}

Autoencoder make_autoencoder(const AutoencoderConfig& config, Rng& rng) {
    config.validate();
    Autoencoder ae;
    ae.config = config;
    ae.encoder = nn::make_dense(config.n_devices, config.latent_dim, config.encoder_activation, rng);
    std::size_t in = config.latent_dim;
    for (auto h : config.decoder_hidden_sizes) {
        ae.decoder.layers.push_back(nn::make_dense(in, h, config.decoder_hidden_activation, rng));
        in = h;
    }
    ae.decoder.layers.push_back(nn::make_dense(in, config.n_devices, config.decoder_activation, rng));
    return ae;
}

Vector encode(const Autoencoder& ae, std::span<const double> x) {
    require_size("encode input length", ae.encoder.in_size(), x.size());
    return nn::dense_forward(ae.encoder, x).output;
}

Vector add_noise(std::span<const double> y, double sigma, Rng& rng) {
    if (!(sigma >= 0.0)) throw InvalidArgument("noise sigma must be >= 0");
    Vector out(y.begin(), y.end());
    if (sigma == 0.0) return out;
    std::normal_distribution<double> gauss(0.0, sigma);
    for (double& v : out) v += gauss(rng);
    return out;
}

Vector decode(const Autoencoder& ae, std::span<const double> y_hat) {
    require_size("decode input length", ae.decoder.in_size(), y_hat.size());
    return nn::mlp_forward(ae.decoder, y_hat);
}

Vector reconstruct(const Autoencoder& ae, std::span<const double> x) {
    return decode(ae, encode(ae, x));
}

BatchGradients compute_gradients(const Autoencoder& ae, std::span<const Vector> batch, Rng& rng) {
    if (batch.empty()) throw InvalidArgument("train_step: empty batch");
    const double delta = ae.config.huber_delta;
    nn::Mlp encoder_net{{ae.encoder}};

    BatchGradients out;
    out.grads = nn::GradientSet::zeros_like(ae.composed());
    double loss_sum = 0.0;
    for (const auto& x : batch) {
        require_size("training sample length", ae.config.n_devices, x.size());
        auto enc_trace = nn::mlp_forward_trace(encoder_net, x);
        const Vector y_hat = add_noise(enc_trace.output(), ae.config.noise_sigma, rng);
        auto dec_trace = nn::mlp_forward_trace(ae.decoder, y_hat);
        loss_sum += nn::huber_loss(x, dec_trace.output(), delta);

        const Vector g_out = nn::huber_grad(x, dec_trace.output(), delta);
        auto dec_back = nn::mlp_backward(ae.decoder, dec_trace, g_out);
        // Additive noise: dL/dY == dL/dY_hat.
        auto enc_back = nn::mlp_backward(encoder_net, enc_trace, dec_back.input_grad);

        nn::GradientSet sample;
        sample.weight_grads = std::move(enc_back.grads.weight_grads);
        sample.bias_grads = std::move(enc_back.grads.bias_grads);
        for (std::size_t k = 0; k < dec_back.grads.weight_grads.size(); ++k) {
            sample.weight_grads.push_back(std::move(dec_back.grads.weight_grads[k]));
            sample.bias_grads.push_back(std::move(dec_back.grads.bias_grads[k]));
        }
        out.grads += sample;
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    out.grads *= inv;
    out.mean_loss = loss_sum * inv;
    return out;
}

StepResult train_step(const Autoencoder& ae, std::span<const Vector> batch, Rng& rng) {
    auto g = compute_gradients(ae, batch, rng);
    const double lr = ae.config.sgd.learning_rate;
    if (lr == 0.0) return {ae, g.mean_loss};
    auto updated = nn::sgd_step(ae.composed(), g.grads, lr);
    return {Autoencoder::from_composed(updated, ae.config), g.mean_loss};
}

TrainResult train(const Autoencoder& ae, std::span<const Vector> dataset,
                  const nn::SgdConfig& cfg, Rng& rng) {
    if (dataset.empty()) throw InvalidArgument("train: empty dataset");
    cfg.validate();
    TrainResult result{ae, {}};
    result.ae.config.sgd = cfg;

    std::vector<std::size_t> order(dataset.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<Vector> batch;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const auto start = std::chrono::steady_clock::now();
        std::shuffle(order.begin(), order.end(), rng);
        double weighted = 0.0;
        for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
            const std::size_t end = std::min(order.size(), begin + cfg.batch_size);
            batch.clear();
            for (std::size_t i = begin; i < end; ++i) batch.push_back(dataset[order[i]]);
            auto step = train_step(result.ae, batch, rng);
            result.ae = std::move(step.ae);
            weighted += step.mean_loss * static_cast<double>(end - begin);
            ++result.report.steps;
        }
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        result.report.epoch_loss.push_back(weighted / static_cast<double>(order.size()));
        result.report.epoch_seconds.push_back(elapsed.count());
    }
    if (!result.report.epoch_loss.empty()) result.report.final_loss = result.report.epoch_loss.back();
    return result;
}

double evaluate_error(const Autoencoder& ae, std::span<const Vector> data) {
    if (data.empty()) throw InvalidArgument("evaluate_error: empty data");
    double sum = 0.0;
    for (const auto& x : data) sum += nn::huber_loss(x, reconstruct(ae, x), ae.config.huber_delta);
    return sum / static_cast<double>(data.size());
}

double mean_absolute_error(const Autoencoder& ae, std::span<const Vector> data) {
    if (data.empty()) throw InvalidArgument("mean_absolute_error: empty data");
    double sum = 0.0;
    for (const auto& x : data) {
        const auto xr = reconstruct(ae, x);
        for (std::size_t i = 0; i < x.size(); ++i) sum += std::abs(x[i] - xr[i]);
    }
    return sum / static_cast<double>(data.size() * data.front().size());
}

FinetuneResult monitor_and_finetune(const Autoencoder& ae, std::span<const Vector> recent_data,
                                    double threshold, const nn::SgdConfig& cfg, Rng& rng) {
    FinetuneResult r{ae, false, evaluate_error(ae, recent_data), 0.0};
    r.error_after = r.error_before;
    if (!(r.error_before > threshold)) return r;

    Autoencoder start = ae;
    if (ae.config.finetune_cold_start) start = make_autoencoder(ae.config, rng);
    r.ae = train(start, recent_data, cfg, rng).ae;
    r.relaunched = true;
    r.error_after = evaluate_error(r.ae, recent_data);
    return r;
}

}  // namespace edgecs::codec
