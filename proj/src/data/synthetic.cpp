#include <algorithm>
#include <cmath>
#include <numeric>

#include "edgecs/data/dataset.hpp"

namespace edgecs::data {

void Dataset::validate() const {
    const std::size_t dim = dimension();
    for (const auto& s : samples) {
        require_size("sample length", dim, s.size());
        for (double v : s)
            if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("sample value outside [0,1]");
    }
    if (labels) require_size("label count", samples.size(), labels->size());
}

std::size_t Dataset::class_count() const {
    if (!labels || labels->empty()) return 0;
    return static_cast<std::size_t>(*std::max_element(labels->begin(), labels->end())) + 1;
}

Dataset synth_sparse(std::size_t n_samples, std::size_t dim, std::size_t k, Rng& rng) {
    if (k < 1 || k > dim) throw InvalidArgument("synth_sparse needs 1 <= k <= N");
    Dataset ds;
    ds.name = "synth-sparse";
    std::uniform_real_distribution<double> amplitude(0.5, 1.0);
    std::vector<std::size_t> idx(dim);
    for (std::size_t s = 0; s < n_samples; ++s) {
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        // Partial Fisher-Yates: the first k slots become a uniform k-subset.
        for (std::size_t i = 0; i < k; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, dim - 1);
            std::swap(idx[i], idx[pick(rng)]);
        }
        Sample x(dim, 0.0);
        for (std::size_t i = 0; i < k; ++i) x[idx[i]] = amplitude(rng);
        ds.samples.push_back(std::move(x));
    }
    return ds;
}

Dataset synth_field(std::size_t n_samples, std::size_t dim, double correlation_length, Rng& rng) {
    if (!(correlation_length > 0.0)) throw InvalidArgument("correlation length must be > 0");
    if (dim == 0) throw InvalidArgument("synth_field needs dim >= 1");
    const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * correlation_length));
    std::vector<double> kernel;
    for (std::ptrdiff_t o = -radius; o <= radius; ++o) {
        const double z = static_cast<double>(o) / correlation_length;
        kernel.push_back(std::exp(-0.5 * z * z));
    }

    Dataset ds;
    ds.name = "synth-field";
    std::normal_distribution<double> white(0.0, 1.0);
    const auto n = static_cast<std::ptrdiff_t>(dim);
    std::vector<double> noise(dim + 2 * static_cast<std::size_t>(radius));
    for (std::size_t s = 0; s < n_samples; ++s) {
        for (double& v : noise) v = white(rng);
        Sample x(dim, 0.0);
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::ptrdiff_t o = -radius; o <= radius; ++o)
                acc += kernel[static_cast<std::size_t>(o + radius)] *
                       noise[static_cast<std::size_t>(i + radius + o)];
            x[static_cast<std::size_t>(i)] = acc;
        }
        const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
        const double low = *lo, span = *hi - *lo;
        for (double& v : x) v = span > 0.0 ? (v - low) / span : 0.5;
        ds.samples.push_back(std::move(x));
    }
    return ds;
}

Dataset synth_blobs(std::size_t n_samples, const std::vector<Sample>& centers, double spread,
                    Rng& rng) {
    if (centers.empty()) throw InvalidArgument("synth_blobs needs at least one centre");
    const std::size_t dim = centers.front().size();
    for (const auto& c : centers) require_size("blob centre dimension", dim, c.size());
    Dataset ds;
    ds.name = "blobs";
    ds.labels.emplace();
    std::normal_distribution<double> jitter(0.0, spread);
    for (std::size_t s = 0; s < n_samples; ++s) {
        const std::size_t cls = s % centers.size();
        Sample x(dim);
        for (std::size_t d = 0; d < dim; ++d)
            x[d] = std::clamp(centers[cls][d] + jitter(rng), 0.0, 1.0);
        ds.samples.push_back(std::move(x));
        ds.labels->push_back(static_cast<int>(cls));
    }
    return ds;
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double fraction, Rng& rng) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidArgument("split fraction outside [0,1]");
    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    const auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(ds.size())));

    std::pair<Dataset, Dataset> out;
    out.first.name = ds.name + "-train";
    out.second.name = ds.name + "-test";
    out.first.seed = out.second.seed = ds.seed;
    if (ds.labels) {
        out.first.labels.emplace();
        out.second.labels.emplace();
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        Dataset& dst = i < n_train ? out.first : out.second;
        dst.samples.push_back(ds.samples[order[i]]);
        if (ds.labels) dst.labels->push_back((*ds.labels)[order[i]]);
    }
    return out;
}

}  // namespace edgecs::data
