#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <limits>

#include "edgecs/codec/autoencoder.hpp"
#include "edgecs/codec/checkpoint.hpp"
#include "edgecs/data/dataset.hpp"
#include "edgecs/error.hpp"
#include "edgecs/nn/gradcheck.hpp"
#include "edgecs/nn/loss.hpp"

using namespace edgecs;
using namespace edgecs::codec;

namespace {

Autoencoder tiny(std::size_t n, std::size_t m, std::vector<std::size_t> hidden = {}, std::uint64_t seed = 1) {
    AutoencoderConfig c;
    c.n_devices = n;
    c.latent_dim = m;
    c.decoder_hidden_sizes = std::move(hidden);
    Rng rng(seed);
    return make_autoencoder(c, rng);
}

}  // namespace

TEST_CASE("config validation") {
    AutoencoderConfig c;
    c.n_devices = 4;
    c.latent_dim = 5;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.latent_dim = 0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.latent_dim = 4;
    c.noise_sigma = -0.1;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.noise_sigma = 0.0;
    c.huber_delta = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("encoder size is fixed, decoder grows with depth") {
    AutoencoderConfig c;
    c.n_devices = 10;
    c.latent_dim = 3;
    CHECK(c.encoder_parameter_count() == 33);
    CHECK(c.decoder_parameter_count() == 3 * 10 + 10);
    c.decoder_hidden_sizes = {7};
    CHECK(c.encoder_parameter_count() == 33);
    CHECK(c.decoder_parameter_count() == (3 * 7 + 7) + (7 * 10 + 10));
    c.decoder_hidden_sizes = {7, 5};
    CHECK(c.decoder_parameter_count() == (3 * 7 + 7) + (7 * 5 + 5) + (5 * 10 + 10));
    Rng rng(0);
    auto ae = make_autoencoder(c, rng);
    CHECK(ae.encoder.parameter_count() == c.encoder_parameter_count());
    CHECK(ae.decoder.parameter_count() == c.decoder_parameter_count());
    CHECK(ae.encoder.weights.rows() == 3);
    CHECK(ae.encoder.weights.cols() == 10);
    CHECK(ae.decoder.out_size() == 10);
}

TEST_CASE("encode examples") {
    auto ae = tiny(2, 1);
    ae.encoder.weights = nn::Matrix2(1, 2, std::vector<double>{1, 1});
    ae.encoder.bias = {0};
    ae.encoder.activation = ActivationKind::Identity;
    CHECK(encode(ae, std::vector<double>{0.5, 0.5}) == Vector{1.0});

    ae.encoder.bias = {0.25};
    CHECK(encode(ae, std::vector<double>{0, 0}) == Vector{0.25});

    ae.encoder.weights = nn::Matrix2(1, 2, 0.0);
    ae.encoder.bias = {0};
    ae.encoder.activation = ActivationKind::Sigmoid;
    CHECK(encode(ae, std::vector<double>{0.3, 0.9}) == Vector{0.5});

    CHECK_THROWS_AS(encode(ae, std::vector<double>{1, 2, 3}), DimensionError);
}

TEST_CASE("decode examples") {
    auto ae = tiny(3, 3);
    ae.decoder.layers[0] = nn::DenseLayer{nn::Matrix2(3, 3, 0.0), {0.1, 0.2, 0.3}, ActivationKind::Identity};
    CHECK(decode(ae, std::vector<double>{5, -5, 2}) == Vector{0.1, 0.2, 0.3});

    ae.decoder.layers[0] = nn::DenseLayer{nn::Matrix2::identity(3), {0, 0, 0}, ActivationKind::Identity};
    CHECK(decode(ae, std::vector<double>{0.4, -1.5, 7}) == Vector{0.4, -1.5, 7});
    CHECK_THROWS_AS(decode(ae, std::vector<double>{1, 2}), DimensionError);
}

TEST_CASE("two-layer decoder matches chained dense layers") {
    const auto ae = tiny(6, 3, {5}, 17);
    const Vector y{0.3, -1.1, 0.8};
    // independent re-implementation of two dense layers
    auto layer = [](const nn::DenseLayer& l, const Vector& in) {
        Vector out(l.out_size());
        for (std::size_t r = 0; r < l.out_size(); ++r) {
            double s = l.bias[r];
            for (std::size_t c = 0; c < l.in_size(); ++c) s += l.weights(r, c) * in[c];
            out[r] = nn::activate(l.activation, s);
        }
        return out;
    };
    const auto expect = layer(ae.decoder.layers[1], layer(ae.decoder.layers[0], y));
    const auto got = decode(ae, y);
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-14));
}

TEST_CASE("noise path") {
    const Vector y{0.5, -2.0, 3.25};
    Rng rng(4);
    CHECK(add_noise(y, 0.0, rng) == y);

    Rng a(99), b(99);
    CHECK(add_noise(y, 0.3, a) == add_noise(y, 0.3, b));

    Rng c(7);
    const auto noisy = add_noise(y, 0.3, c);
    CHECK(noisy.size() == y.size());
    CHECK(y == Vector{0.5, -2.0, 3.25});
}

TEST_CASE("noise mean and variance over 1e5 draws") {
    Rng rng(123456);
    const std::size_t n = 100000;
    const Vector zero(1, 0.0);
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double g = add_noise(zero, 1.0, rng)[0];
        sum += g;
        sq += g * g;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean) <= 3.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) <= 0.05);
}

TEST_CASE("train_step with zero learning rate leaves the model alone") {
    auto ae = tiny(5, 2, {4});
    ae.config.sgd.learning_rate = 0.0;
    const std::vector<Vector> batch{{0.1, 0.2, 0.3, 0.4, 0.5}, {0.9, 0.1, 0.0, 0.2, 1.0}};
    Rng rng(2);
    const auto step = train_step(ae, batch, rng);
    CHECK(step.ae.encoder == ae.encoder);
    CHECK(step.ae.decoder == ae.decoder);
    CHECK(step.mean_loss > 0.0);
    CHECK_THROWS_AS(train_step(ae, std::vector<Vector>{}, rng), InvalidArgument);
}

TEST_CASE("full-step gradient equals finite differences through encoder and decoder") {
    AutoencoderConfig c;
    c.n_devices = 7;
    c.latent_dim = 3;
    c.decoder_hidden_sizes = {5};
    c.decoder_hidden_activation = ActivationKind::Tanh;
    c.noise_sigma = 0.0;
    c.huber_delta = 0.5;
    Rng rng(31);
    const auto ae = make_autoencoder(c, rng);
    const Vector x{0.1, 0.9, 0.4, 0.0, 0.7, 0.3, 0.5};
    const auto analytic = compute_gradients(ae, std::vector<Vector>{x}, rng);
    const auto numeric = nn::finite_diff_grad(ae.composed(), x, x, c.huber_delta, 1e-6);
    CHECK(nn::max_relative_error(analytic.grads, numeric) < 1e-4);
}

TEST_CASE("overfitting one sample") {
    AutoencoderConfig c;
    c.n_devices = 8;
    c.latent_dim = 4;
    c.noise_sigma = 0.0;
    c.sgd.learning_rate = 0.5;
    Rng rng(8);
    auto ae = make_autoencoder(c, rng);
    const std::vector<Vector> one{{0.9, 0.1, 0.2, 0.8, 0.6, 0.3, 0.05, 0.7}};
    const double initial = evaluate_error(ae, one);
    for (int s = 0; s < 2000; ++s) ae = train_step(ae, one, rng).ae;
    const double final_loss = evaluate_error(ae, one);
    CHECK(final_loss < initial);
    CHECK(final_loss < 0.01 * initial);
}

TEST_CASE("train bookkeeping") {
    auto ae = tiny(6, 2);
    Rng rng(1);
    auto ds = data::synth_sparse(20, 6, 2, rng);
    nn::SgdConfig cfg;
    cfg.epochs = 0;
    const auto none = train(ae, ds.samples, cfg, rng);
    CHECK(none.report.epoch_loss.empty());
    CHECK(none.report.epoch_seconds.empty());
    CHECK(none.ae.encoder == ae.encoder);

    cfg.epochs = 3;
    cfg.batch_size = 8;
    const auto run = train(ae, ds.samples, cfg, rng);
    CHECK(run.report.epoch_loss.size() == 3);
    CHECK(run.report.epoch_seconds.size() == 3);
    CHECK(run.report.steps == 9);
    CHECK(run.report.final_loss == run.report.epoch_loss.back());
}

TEST_CASE("same seed gives identical loss sequences") {
    Rng d(5);
    const auto ds = data::synth_sparse(64, 16, 3, d);
    auto run = [&] {
        Rng rng(77);
        const auto ae = tiny(16, 4, {8}, 77);
        nn::SgdConfig cfg;
        cfg.epochs = 4;
        return train(ae, ds.samples, cfg, rng).report.epoch_loss;
    };
    CHECK(run() == run());
}

TEST_CASE("sparse dataset converges to a tenth of the first epoch loss") {
    // N=64, M=16, k=8, 512 samples, 125 epochs of 16 batches = 2000 steps.
    // delta=16 keeps most residuals on the quadratic branch; at delta=1 the
    // loss is pure L1 and training stalls at the all-zero reconstruction.
    Rng rng(7);
    const auto ds = data::synth_sparse(512, 64, 8, rng);
    AutoencoderConfig c;
    c.n_devices = 64;
    c.latent_dim = 16;
    c.huber_delta = 16.0;
    c.sgd.learning_rate = 0.1;
    c.sgd.epochs = 125;
    auto ae = make_autoencoder(c, rng);
    const auto run = train(ae, ds.samples, c.sgd, rng);
    CHECK(run.report.steps <= 2000);
    CHECK(run.report.final_loss <= 0.1 * run.report.epoch_loss.front());
}

TEST_CASE("evaluation error is a pure function of model and data") {
    const auto ae = tiny(5, 2, {3});
    const std::vector<Vector> xs{{0.1, 0.2, 0.3, 0.4, 0.5}};
    CHECK(evaluate_error(ae, xs) == evaluate_error(ae, xs));
    CHECK(reconstruct(ae, xs[0]) == reconstruct(ae, xs[0]));
    CHECK(mean_absolute_error(ae, xs) >= 0.0);
}

TEST_CASE("fine-tuning monitor") {
    Rng rng(10);
    const auto a = data::synth_sparse(256, 16, 2, rng);
    AutoencoderConfig c;
    c.n_devices = 16;
    c.latent_dim = 6;
    c.huber_delta = 4.0;
    c.sgd.learning_rate = 0.1;
    c.sgd.epochs = 40;
    auto ae = train(make_autoencoder(c, rng), a.samples, c.sgd, rng).ae;

    SUBCASE("infinite threshold never relaunches") {
        const auto r = monitor_and_finetune(ae, a.samples, std::numeric_limits<double>::infinity(), c.sgd, rng);
        CHECK_FALSE(r.relaunched);
        CHECK(r.ae.encoder == ae.encoder);
    }
    SUBCASE("zero threshold always relaunches") {
        const auto r = monitor_and_finetune(ae, a.samples, 0.0, c.sgd, rng);
        CHECK(r.relaunched);
    }
    SUBCASE("distribution shift triggers retraining that helps") {
        const auto b = data::synth_field(256, 16, 2.0, rng);
        const double err_a = evaluate_error(ae, a.samples);
        const double err_b = evaluate_error(ae, b.samples);
        REQUIRE(err_b > err_a);
        const auto r = monitor_and_finetune(ae, b.samples, 0.5 * (err_a + err_b), c.sgd, rng);
        CHECK(r.relaunched);
        CHECK(r.error_before == doctest::Approx(err_b));
        CHECK(r.error_after < r.error_before);
        CHECK(evaluate_error(r.ae, b.samples) == doctest::Approx(r.error_after));
    }
}

TEST_CASE("checkpoint round trip is bit-identical") {
    const auto ae = tiny(9, 4, {6, 5}, 1234);
    const auto path = std::filesystem::temp_directory_path() / "edgecs_ckpt_test.json";
    save_checkpoint(ae, path);
    const auto back = load_checkpoint(path);
    std::filesystem::remove(path);
    const Vector x{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    CHECK(reconstruct(back, x) == reconstruct(ae, x));
    CHECK(back.encoder == ae.encoder);
    CHECK(back.decoder == ae.decoder);
    CHECK(back.config.decoder_hidden_sizes == ae.config.decoder_hidden_sizes);

    auto j = checkpoint_json(ae);
    j["encoder"]["rows"] = 3;
    CHECK_THROWS(autoencoder_from_json(j));
}
