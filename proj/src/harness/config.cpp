#include "edgecs/harness/config.hpp"

#include <algorithm>
#include <fstream>

#include "edgecs/codec/checkpoint.hpp"
#include "edgecs/error.hpp"

using nlohmann::json;

namespace edgecs::harness {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(DatasetSpec, kind, n_samples, dim, sparsity,
                                                correlation_length, blob_spread, images, labels,
                                                limit, train_fraction)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(TopologySpec, kind, n_devices, area, radio_range,
                                                spacing, path)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(ScheduleSpec, instance, instances, min_devices,
                                                max_devices, max_channels, brute_force_cap)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(SensitivitySpec, latent_dims, noise_sigmas,
                                                decoder_depths, hidden_width)

void to_json(json& j, const ClassifierSpec& c) {
    j = json{{"hidden", c.hidden}, {"sgd", c.sgd}, {"reconstruction_sigma", c.reconstruction_sigma}};
}

void from_json(const json& j, ClassifierSpec& c) {
    c.hidden = j.value("hidden", c.hidden);
    if (j.contains("sgd")) j.at("sgd").get_to(c.sgd);
    c.reconstruction_sigma = j.value("reconstruction_sigma", c.reconstruction_sigma);
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"train",    "aggregate", "schedule", "sensitivity",
                                                "classify", "example1",  "gradcheck"};
    return names;
}

ExperimentConfig config_from_json(const json& doc) {
    const json& j = doc.contains("config") && doc.at("config").is_object() ? doc.at("config") : doc;
    ExperimentConfig cfg;
    cfg.scenario = j.value("scenario", cfg.scenario);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.record_wall_time = j.value("record_wall_time", cfg.record_wall_time);
    cfg.compare_dcsnet_like = j.value("compare_dcsnet_like", cfg.compare_dcsnet_like);
    cfg.rounds = j.value("rounds", cfg.rounds);
    cfg.gradcheck_configs = j.value("gradcheck_configs", cfg.gradcheck_configs);
    if (j.contains("dataset")) j.at("dataset").get_to(cfg.dataset);
    if (j.contains("autoencoder")) j.at("autoencoder").get_to(cfg.autoencoder);
    if (j.contains("topology")) j.at("topology").get_to(cfg.topology);
    if (j.contains("schedule")) j.at("schedule").get_to(cfg.schedule);
    if (j.contains("sensitivity")) j.at("sensitivity").get_to(cfg.sensitivity);
    if (j.contains("classifier")) j.at("classifier").get_to(cfg.classifier);

    const auto& names = scenario_names();
    if (!cfg.scenario.empty() && std::find(names.begin(), names.end(), cfg.scenario) == names.end())
        throw InvalidArgument("unknown scenario '" + cfg.scenario + "'");
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read config: " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument("config " + path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

json config_to_json(const ExperimentConfig& cfg) {
    return json{{"scenario", cfg.scenario},
                {"seed", cfg.seed},
                {"output_dir", cfg.output_dir},
                {"record_wall_time", cfg.record_wall_time},
                {"compare_dcsnet_like", cfg.compare_dcsnet_like},
                {"rounds", cfg.rounds},
                {"gradcheck_configs", cfg.gradcheck_configs},
                {"dataset", cfg.dataset},
                {"autoencoder", cfg.autoencoder},
                {"topology", cfg.topology},
                {"schedule", cfg.schedule},
                {"sensitivity", cfg.sensitivity},
                {"classifier", cfg.classifier}};
}

codec::AutoencoderConfig dcsnet_like_config(const codec::AutoencoderConfig& base) {
    codec::AutoencoderConfig c = base;
    c.latent_dim = std::min(kDcsnetLikeLatent, base.n_devices);
    const std::size_t width = std::max<std::size_t>(c.latent_dim, 16);
    c.decoder_hidden_sizes = {width, width, width};
    return c;
}

data::Dataset make_dataset(const DatasetSpec& spec, data::Rng& rng) {
    data::Dataset ds;
    if (spec.kind == "sparse") {
        ds = data::synth_sparse(spec.n_samples, spec.dim, spec.sparsity, rng);
    } else if (spec.kind == "field") {
        ds = data::synth_field(spec.n_samples, spec.dim, spec.correlation_length, rng);
    } else if (spec.kind == "blobs") {
        if (spec.dim < 1) throw InvalidArgument("blobs need dim >= 1");
        std::vector<data::Sample> centers{data::Sample(spec.dim, 0.3), data::Sample(spec.dim, 0.7)};
        ds = data::synth_blobs(spec.n_samples, centers, spec.blob_spread, rng);
    } else if (spec.kind == "idx") {
        if (spec.images.empty()) throw InvalidArgument("idx dataset needs an images path");
        ds = spec.labels.empty() ? data::idx_load_images(spec.images, spec.limit)
                                 : data::idx_load(spec.images, spec.labels, spec.limit);
    } else {
        throw InvalidArgument("unknown dataset kind '" + spec.kind + "'");
    }
    return ds;
}

}  // namespace edgecs::harness
