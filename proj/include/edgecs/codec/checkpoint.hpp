#pragma once

#include <filesystem>

#include "json.hpp"

#include "edgecs/codec/autoencoder.hpp"

namespace edgecs::nn {
void to_json(nlohmann::json& j, const SgdConfig& cfg);
void from_json(const nlohmann::json& j, SgdConfig& cfg);
void to_json(nlohmann::json& j, const DenseLayer& layer);
void from_json(const nlohmann::json& j, DenseLayer& layer);
}  // namespace edgecs::nn

namespace edgecs::codec {

void to_json(nlohmann::json& j, const AutoencoderConfig& cfg);
// Missing keys keep their defaults.
void from_json(const nlohmann::json& j, AutoencoderConfig& cfg);

nlohmann::json checkpoint_json(const Autoencoder& ae);
Autoencoder autoencoder_from_json(const nlohmann::json& j);

void save_checkpoint(const Autoencoder& ae, const std::filesystem::path& path);
Autoencoder load_checkpoint(const std::filesystem::path& path);

}  // namespace edgecs::codec
