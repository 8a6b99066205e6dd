#include "edgecs/codec/checkpoint.hpp"

#include <fstream>

#include "edgecs/error.hpp"

using nlohmann::json;

namespace edgecs::nn {

void to_json(json& j, const SgdConfig& cfg) {
    j = json{{"learning_rate", cfg.learning_rate},
             {"batch_size", cfg.batch_size},
             {"epochs", cfg.epochs},
             {"seed", cfg.seed}};
}

void from_json(const json& j, SgdConfig& cfg) {
    cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
    cfg.batch_size = j.value("batch_size", cfg.batch_size);
    cfg.epochs = j.value("epochs", cfg.epochs);
    cfg.seed = j.value("seed", cfg.seed);
}

void to_json(json& j, const DenseLayer& layer) {
    auto w = layer.weights.values();
    j = json{{"rows", layer.weights.rows()},
             {"cols", layer.weights.cols()},
             {"activation", std::string(to_string(layer.activation))},
             {"weights", std::vector<double>(w.begin(), w.end())},
             {"bias", layer.bias}};
}

void from_json(const json& j, DenseLayer& layer) {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto act = parse_activation(j.at("activation").get<std::string>());
    if (!act) throw InvalidArgument("unknown activation in checkpoint");
    layer.weights = Matrix2(rows, cols, j.at("weights").get<std::vector<double>>());
    layer.bias = j.at("bias").get<std::vector<double>>();
    require_size("checkpoint bias length", rows, layer.bias.size());
    layer.activation = *act;
}

}  // namespace edgecs::nn

namespace edgecs::codec {

namespace {

nn::ActivationKind activation_value(const json& j, const char* key, nn::ActivationKind fallback) {
    if (!j.contains(key)) return fallback;
    auto parsed = nn::parse_activation(j.at(key).get<std::string>());
    if (!parsed) throw InvalidArgument(std::string("unknown activation for ") + key);
    return *parsed;
}

}  // namespace

void to_json(json& j, const AutoencoderConfig& cfg) {
    j = json{{"n_devices", cfg.n_devices},
             {"latent_dim", cfg.latent_dim},
             {"decoder_hidden_sizes", cfg.decoder_hidden_sizes},
             {"encoder_activation", std::string(nn::to_string(cfg.encoder_activation))},
             {"decoder_hidden_activation", std::string(nn::to_string(cfg.decoder_hidden_activation))},
             {"decoder_activation", std::string(nn::to_string(cfg.decoder_activation))},
             {"huber_delta", cfg.huber_delta},
             {"noise_sigma", cfg.noise_sigma},
             {"sgd", cfg.sgd},
             {"finetune_threshold", cfg.finetune_threshold},
             {"finetune_cold_start", cfg.finetune_cold_start}};
}

void from_json(const json& j, AutoencoderConfig& cfg) {
    cfg.n_devices = j.value("n_devices", cfg.n_devices);
    cfg.latent_dim = j.value("latent_dim", cfg.latent_dim);
    cfg.decoder_hidden_sizes = j.value("decoder_hidden_sizes", cfg.decoder_hidden_sizes);
    cfg.encoder_activation = activation_value(j, "encoder_activation", cfg.encoder_activation);
    cfg.decoder_hidden_activation =
        activation_value(j, "decoder_hidden_activation", cfg.decoder_hidden_activation);
    cfg.decoder_activation = activation_value(j, "decoder_activation", cfg.decoder_activation);
    cfg.huber_delta = j.value("huber_delta", cfg.huber_delta);
    cfg.noise_sigma = j.value("noise_sigma", cfg.noise_sigma);
    if (j.contains("sgd")) j.at("sgd").get_to(cfg.sgd);
    cfg.finetune_threshold = j.value("finetune_threshold", cfg.finetune_threshold);
    cfg.finetune_cold_start = j.value("finetune_cold_start", cfg.finetune_cold_start);
}

json checkpoint_json(const Autoencoder& ae) {
    return json{{"format", "edgecs-autoencoder"},
                {"version", 1},
                {"config", ae.config},
                {"encoder", ae.encoder},
                {"decoder", ae.decoder.layers}};
}

Autoencoder autoencoder_from_json(const json& j) {
    if (j.value("format", std::string{}) != "edgecs-autoencoder")
        throw InvalidArgument("not an autoencoder checkpoint");
    Autoencoder ae;
    j.at("config").get_to(ae.config);
    j.at("encoder").get_to(ae.encoder);
    j.at("decoder").get_to(ae.decoder.layers);
    ae.config.validate();
    ae.composed().validate();
    require_size("checkpoint encoder rows", ae.config.latent_dim, ae.encoder.out_size());
    require_size("checkpoint encoder cols", ae.config.n_devices, ae.encoder.in_size());
    require_size("checkpoint decoder output", ae.config.n_devices, ae.decoder.out_size());
    return ae;
}

void save_checkpoint(const Autoencoder& ae, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open checkpoint for writing: " + path.string());
    out << checkpoint_json(ae).dump(1) << '\n';
    if (!out) throw Error("failed writing checkpoint: " + path.string());
}

Autoencoder load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open checkpoint: " + path.string());
    return autoencoder_from_json(json::parse(in));
}

}  // namespace edgecs::codec
