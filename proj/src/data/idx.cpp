#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include "edgecs/data/dataset.hpp"

namespace edgecs::data {

namespace {

std::uint32_t read_be32(const std::vector<std::uint8_t>& buf, std::size_t offset, const char* what) {
    if (buf.size() < offset + 4) throw IdxError(std::string(what) + ": truncated header");
    return (std::uint32_t{buf[offset]} << 24) | (std::uint32_t{buf[offset + 1]} << 16) |
           (std::uint32_t{buf[offset + 2]} << 8) | std::uint32_t{buf[offset + 3]};
}

void write_be32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
    buf.push_back(static_cast<std::uint8_t>(v >> 24));
    buf.push_back(static_cast<std::uint8_t>(v >> 16));
    buf.push_back(static_cast<std::uint8_t>(v >> 8));
    buf.push_back(static_cast<std::uint8_t>(v));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IdxError("cannot open IDX file: " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IdxError("cannot write IDX file: " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

Dataset idx_parse(const std::vector<std::uint8_t>& images, const std::vector<std::uint8_t>* labels,
                  std::size_t limit) {
    const auto magic = read_be32(images, 0, "images");
    if (magic != kIdxImageMagic)
        throw IdxError("images: bad magic " + std::to_string(magic) + " (expected 2051)");
    const std::size_t count = read_be32(images, 4, "images");
    const std::size_t rows = read_be32(images, 8, "images");
    const std::size_t cols = read_be32(images, 12, "images");
    const std::size_t pixels = rows * cols;
    if (images.size() - 16 < count * pixels)
        throw IdxError("images: truncated payload (" + std::to_string(images.size() - 16) +
                       " bytes for " + std::to_string(count) + " images)");

    std::size_t label_count = 0;
    if (labels) {
        const auto lmagic = read_be32(*labels, 0, "labels");
        if (lmagic != kIdxLabelMagic)
            throw IdxError("labels: bad magic " + std::to_string(lmagic) + " (expected 2049)");
        label_count = read_be32(*labels, 4, "labels");
        if (label_count != count)
            throw IdxError("count mismatch: " + std::to_string(count) + " images vs " +
                           std::to_string(label_count) + " labels");
        if (labels->size() - 8 < label_count) throw IdxError("labels: truncated payload");
    }

    Dataset ds;
    ds.name = "idx";
    const std::size_t n = std::min(count, limit);
    ds.samples.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        Sample x(pixels);
        const std::uint8_t* p = images.data() + 16 + s * pixels;
        for (std::size_t i = 0; i < pixels; ++i) x[i] = static_cast<double>(p[i]) / 255.0;
        ds.samples.push_back(std::move(x));
    }
    if (labels) {
        ds.labels.emplace();
        for (std::size_t s = 0; s < n; ++s) ds.labels->push_back((*labels)[8 + s]);
    }
    return ds;
}

Dataset idx_load(const std::filesystem::path& images, const std::filesystem::path& labels,
                 std::size_t limit) {
    const auto img = read_file(images);
    const auto lab = read_file(labels);
    auto ds = idx_parse(img, &lab, limit);
    ds.name = images.filename().string();
    return ds;
}

Dataset idx_load_images(const std::filesystem::path& images, std::size_t limit) {
    auto ds = idx_parse(read_file(images), nullptr, limit);
    ds.name = images.filename().string();
    return ds;
}

std::vector<std::uint8_t> idx_image_bytes(const Dataset& ds, std::size_t rows, std::size_t cols) {
    ds.validate();
    if (ds.size() > 0) require_size("image pixel count", rows * cols, ds.dimension());
    std::vector<std::uint8_t> out;
    out.reserve(16 + ds.size() * rows * cols);
    write_be32(out, kIdxImageMagic);
    write_be32(out, static_cast<std::uint32_t>(ds.size()));
    write_be32(out, static_cast<std::uint32_t>(rows));
    write_be32(out, static_cast<std::uint32_t>(cols));
    for (const auto& x : ds.samples)
        for (double v : x) out.push_back(static_cast<std::uint8_t>(std::lround(v * 255.0)));
    return out;
}

std::vector<std::uint8_t> idx_label_bytes(const Dataset& ds) {
    if (!ds.labels) throw InvalidArgument("dataset has no labels");
    std::vector<std::uint8_t> out;
    write_be32(out, kIdxLabelMagic);
    write_be32(out, static_cast<std::uint32_t>(ds.labels->size()));
    for (int l : *ds.labels) {
        if (l < 0 || l > 255) throw InvalidArgument("label outside u8 range");
        out.push_back(static_cast<std::uint8_t>(l));
    }
    return out;
}

void idx_save(const Dataset& ds, std::size_t rows, std::size_t cols,
              const std::filesystem::path& images, const std::filesystem::path& labels) {
    write_file(images, idx_image_bytes(ds, rows, cols));
    if (ds.labels) write_file(labels, idx_label_bytes(ds));
}

}  // namespace edgecs::data
