#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "edgecs/error.hpp"

namespace edgecs::data {

using Sample = std::vector<double>;
using Rng = std::mt19937_64;

struct Dataset {
    std::vector<Sample> samples;
    std::optional<std::vector<int>> labels;
    std::string name;
    std::uint64_t seed = 0;

    std::size_t size() const noexcept { return samples.size(); }
    std::size_t dimension() const noexcept { return samples.empty() ? 0 : samples.front().size(); }
    // Throws DimensionError on ragged samples or misaligned labels, InvalidArgument
    // on values outside [0,1].
    void validate() const;
    std::size_t class_count() const;
};

// Exactly k nonzero entries per sample at uniformly chosen positions, U(0.5, 1).
Dataset synth_sparse(std::size_t n_samples, std::size_t dim, std::size_t k, Rng& rng);

// Gaussian-kernel smoothing of white noise over the index axis, min-max
// normalised per sample to [0, 1].
Dataset synth_field(std::size_t n_samples, std::size_t dim, double correlation_length, Rng& rng);

// Labelled Gaussian blobs in [0,1]^dim (values clamped), one class per centre.
Dataset synth_blobs(std::size_t n_samples, const std::vector<Sample>& centers, double spread,
                    Rng& rng);

// Seeded shuffle then partition; labels follow their samples.
std::pair<Dataset, Dataset> split(const Dataset& ds, double fraction, Rng& rng);

class IdxError : public Error {
public:
    using Error::Error;
};

inline constexpr std::uint32_t kIdxImageMagic = 2051;
inline constexpr std::uint32_t kIdxLabelMagic = 2049;

// Big-endian IDX images (magic 2051, u8 pixels) and labels (magic 2049).
// Pixels are scaled by 1/255; at most `limit` samples are read.
Dataset idx_load(const std::filesystem::path& images, const std::filesystem::path& labels,
                 std::size_t limit);
Dataset idx_load_images(const std::filesystem::path& images, std::size_t limit);

// Pixel values are rounded to the nearest of the 256 levels.
void idx_save(const Dataset& ds, std::size_t rows, std::size_t cols,
              const std::filesystem::path& images, const std::filesystem::path& labels);
std::vector<std::uint8_t> idx_image_bytes(const Dataset& ds, std::size_t rows, std::size_t cols);
std::vector<std::uint8_t> idx_label_bytes(const Dataset& ds);
Dataset idx_parse(const std::vector<std::uint8_t>& images, const std::vector<std::uint8_t>* labels,
                  std::size_t limit);

}  // namespace edgecs::data
