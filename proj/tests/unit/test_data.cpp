#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "edgecs/data/dataset.hpp"

using namespace edgecs;
using namespace edgecs::data;

namespace {

std::vector<std::uint8_t> be32(std::uint32_t v) {
    return {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
            static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
}

std::vector<std::uint8_t> image_file(std::uint32_t magic, std::uint32_t count, std::uint32_t rows,
                                     std::uint32_t cols, std::vector<std::uint8_t> pixels) {
    std::vector<std::uint8_t> out;
    for (auto v : {magic, count, rows, cols}) {
        auto b = be32(v);
        out.insert(out.end(), b.begin(), b.end());
    }
    out.insert(out.end(), pixels.begin(), pixels.end());
    return out;
}

std::vector<std::uint8_t> label_file(std::uint32_t magic, std::vector<std::uint8_t> labels) {
    auto out = be32(magic);
    auto n = be32(static_cast<std::uint32_t>(labels.size()));
    out.insert(out.end(), n.begin(), n.end());
    out.insert(out.end(), labels.begin(), labels.end());
    return out;
}

double adjacent_correlation(const Dataset& ds) {
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, n = 0;
    for (const auto& s : ds.samples)
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            sx += s[i];
            sy += s[i + 1];
            sxx += s[i] * s[i];
            syy += s[i + 1] * s[i + 1];
            sxy += s[i] * s[i + 1];
            n += 1;
        }
    const double cov = sxy / n - (sx / n) * (sy / n);
    return cov / std::sqrt((sxx / n - (sx / n) * (sx / n)) * (syy / n - (sy / n) * (sy / n)));
}

}  // namespace

TEST_CASE("sparse generator") {
    Rng rng(1);
    const auto dense = synth_sparse(20, 10, 10, rng);
    for (const auto& s : dense.samples) CHECK(std::count(s.begin(), s.end(), 0.0) == 0);

    const auto one = synth_sparse(50, 10, 1, rng);
    for (const auto& s : one.samples) CHECK(std::count_if(s.begin(), s.end(), [](double v) { return v != 0; }) == 1);

    const auto big = synth_sparse(10000, 32, 5, rng);
    std::size_t nonzero = 0;
    for (const auto& s : big.samples)
        for (double v : s)
            if (v != 0.0) {
                ++nonzero;
                CHECK(v >= 0.5);
                CHECK(v <= 1.0);
            }
    CHECK(nonzero == 5u * 10000u);
    big.validate();

    CHECK_THROWS_AS(synth_sparse(1, 4, 5, rng), InvalidArgument);
    CHECK_THROWS_AS(synth_sparse(1, 4, 0, rng), InvalidArgument);
}

TEST_CASE("smooth field generator") {
    Rng rng(2);
    const auto white = synth_field(400, 64, 0.01, rng);
    const auto smooth = synth_field(400, 64, 3.0, rng);
    white.validate();
    smooth.validate();
    CHECK(std::abs(adjacent_correlation(white)) < 0.05);
    CHECK(adjacent_correlation(smooth) > 0.8);
    for (const auto& s : smooth.samples) {
        CHECK(*std::min_element(s.begin(), s.end()) == 0.0);
        CHECK(*std::max_element(s.begin(), s.end()) == 1.0);
    }
    CHECK_THROWS_AS(synth_field(1, 8, 0.0, rng), InvalidArgument);
}

TEST_CASE("generators are pure functions of the seed") {
    Rng a(11), b(11);
    CHECK(synth_sparse(30, 12, 3, a).samples == synth_sparse(30, 12, 3, b).samples);
    CHECK(synth_field(30, 12, 2.0, a).samples == synth_field(30, 12, 2.0, b).samples);
    const std::vector<Sample> centers{{0.2, 0.2}, {0.8, 0.8}};
    const auto ba = synth_blobs(40, centers, 0.05, a);
    const auto bb = synth_blobs(40, centers, 0.05, b);
    CHECK(ba.samples == bb.samples);
    CHECK(ba.labels == bb.labels);
    CHECK(ba.class_count() == 2);
    ba.validate();
}

TEST_CASE("split") {
    Rng rng(3);
    auto ds = synth_sparse(10, 4, 2, rng);
    ds.labels = std::vector<int>{0, 1, 0, 1, 0, 1, 0, 1, 0, 1};
    for (std::size_t i = 0; i < 10; ++i) ds.samples[i][0] = static_cast<double>(i) / 10.0;

    auto [all, none] = split(ds, 1.0, rng);
    CHECK(all.size() == 10);
    CHECK(none.size() == 0);

    auto [train, test] = split(ds, 0.5, rng);
    CHECK(train.size() == 5);
    CHECK(test.size() == 5);

    std::vector<Sample> joined = train.samples;
    joined.insert(joined.end(), test.samples.begin(), test.samples.end());
    auto original = ds.samples;
    std::sort(joined.begin(), joined.end());
    std::sort(original.begin(), original.end());
    CHECK(joined == original);

    // labels travel with their samples
    for (const auto* part : {&train, &test})
        for (std::size_t i = 0; i < part->size(); ++i) {
            const auto idx = static_cast<std::size_t>(std::lround(part->samples[i][0] * 10));
            CHECK((*part->labels)[i] == (*ds.labels)[idx]);
        }
}

TEST_CASE("validation rejects out-of-range and ragged data") {
    Dataset d;
    d.samples = {{0.1, 1.2}};
    CHECK_THROWS_AS(d.validate(), InvalidArgument);
    d.samples = {{0.1, 0.2}, {0.3}};
    CHECK_THROWS_AS(d.validate(), DimensionError);
    d.samples = {{0.1, 0.2}};
    d.labels = std::vector<int>{1, 2};
    CHECK_THROWS_AS(d.validate(), DimensionError);
}

TEST_CASE("idx parsing") {
    const auto images = image_file(2051, 1, 2, 2, {0, 128, 255, 64});
    const auto labels = label_file(2049, {7});
    const auto ds = idx_parse(images, &labels, 10);
    REQUIRE(ds.size() == 1);
    CHECK(ds.samples[0] == Sample{0.0, 128.0 / 255.0, 1.0, 64.0 / 255.0});
    CHECK(ds.labels->at(0) == 7);

    CHECK(idx_parse(images, &labels, 0).size() == 0);

    SUBCASE("bad magic") {
        CHECK_THROWS_AS(idx_parse(image_file(2049, 1, 2, 2, {0, 0, 0, 0}), nullptr, 10), IdxError);
        const auto wrong = label_file(2051, {7});
        CHECK_THROWS_AS(idx_parse(images, &wrong, 10), IdxError);
    }
    SUBCASE("truncated payload") {
        CHECK_THROWS_AS(idx_parse(image_file(2051, 2, 2, 2, {0, 1, 2, 3, 4}), nullptr, 10), IdxError);
        const std::vector<std::uint8_t> stub{0, 0, 8};
        CHECK_THROWS_AS(idx_parse(stub, nullptr, 10), IdxError);
    }
    SUBCASE("count mismatch") {
        const auto two = label_file(2049, {1, 2});
        CHECK_THROWS_AS(idx_parse(images, &two, 10), IdxError);
    }
}

TEST_CASE("idx round trip through files") {
    Rng rng(4);
    auto ds = synth_blobs(12, {{0.2, 0.4, 0.6, 0.8}, {0.9, 0.1, 0.5, 0.3}}, 0.1, rng);
    // snap to the 256 levels so the round trip is exact
    for (auto& s : ds.samples)
        for (double& v : s) v = std::round(v * 255.0) / 255.0;
    const auto dir = std::filesystem::temp_directory_path();
    const auto img = dir / "edgecs_test-images-idx3-ubyte";
    const auto lab = dir / "edgecs_test-labels-idx1-ubyte";
    idx_save(ds, 2, 2, img, lab);
    const auto back = idx_load(img, lab, 100);
    CHECK(back.samples == ds.samples);
    CHECK(back.labels == ds.labels);
    CHECK(idx_load_images(img, 5).size() == 5);
    CHECK(idx_image_bytes(back, 2, 2) == idx_image_bytes(ds, 2, 2));
    std::filesystem::remove(img);
    std::filesystem::remove(lab);
    CHECK_THROWS(idx_load(img, lab, 1));
}
