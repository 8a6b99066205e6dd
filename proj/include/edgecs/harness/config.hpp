#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "edgecs/codec/autoencoder.hpp"
#include "edgecs/data/dataset.hpp"
#include "edgecs/wsn/topology.hpp"

namespace edgecs::harness {

struct DatasetSpec {
    std::string kind = "sparse";  // sparse | field | blobs | idx
    std::size_t n_samples = 512;
    std::size_t dim = 64;
    std::size_t sparsity = 8;
    double correlation_length = 3.0;
    double blob_spread = 0.08;
    std::string images;
    std::string labels;
    std::size_t limit = 1000;
    double train_fraction = 0.8;
};

struct TopologySpec {
    std::string kind = "random";  // random | chain | file
    std::size_t n_devices = 0;    // 0: autoencoder.n_devices
    double area = 100.0;
    double radio_range = 30.0;
    double spacing = 1.0;
    std::string path;
};

struct ScheduleSpec {
    std::string instance;  // CSV path; empty: random instances
    std::size_t instances = 50;
    std::size_t min_devices = 3;
    std::size_t max_devices = 8;
    std::size_t max_channels = 3;
    std::size_t brute_force_cap = 10;
};

struct SensitivitySpec {
    std::vector<std::size_t> latent_dims{4, 8, 16, 32};
    std::vector<double> noise_sigmas{0.0, 0.05, 0.1, 0.2};
    std::vector<std::size_t> decoder_depths{0, 1, 2};
    std::size_t hidden_width = 64;
};

struct ClassifierSpec {
    std::size_t hidden = 16;
    nn::SgdConfig sgd{0.1, 16, 60, 0};
    double reconstruction_sigma = 0.1;
};

struct ExperimentConfig {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    bool record_wall_time = true;
    bool compare_dcsnet_like = false;
    std::size_t rounds = 1;
    std::size_t gradcheck_configs = 20;
    DatasetSpec dataset;
    codec::AutoencoderConfig autoencoder;
    TopologySpec topology;
    ScheduleSpec schedule;
    SensitivitySpec sensitivity;
    ClassifierSpec classifier;
};

const std::vector<std::string>& scenario_names();

// Accepts either a config document or a run manifest (uses its "config").
// Missing keys take defaults; unknown scenario names are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
// Every field, defaults included.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Fixed comparison stand-in: latent 1024 (capped at N), four dense decoder
// layers, half the training data.
codec::AutoencoderConfig dcsnet_like_config(const codec::AutoencoderConfig& base);
inline constexpr std::size_t kDcsnetLikeLatent = 1024;
inline constexpr double kDcsnetLikeDataFraction = 0.5;

data::Dataset make_dataset(const DatasetSpec& spec, data::Rng& rng);

}  // namespace edgecs::harness
