#include "edgecs/sched/generator.hpp"

#include <cmath>

#include "edgecs/error.hpp"

namespace edgecs::sched {

namespace {

// Uniform on (0, hi]: 1 - U[0,1) never hits zero.
double open_low(std::mt19937_64& rng, double hi) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return hi * (1.0 - u(rng));
}

}  // namespace

TrainInstance random_instance(const RandomInstanceSpec& spec, std::mt19937_64& rng) {
    if (spec.min_devices < 1 || spec.min_devices > spec.max_devices || spec.max_channels < 1)
        throw InvalidArgument("invalid random instance spec");
    std::uniform_int_distribution<std::size_t> n_dist(spec.min_devices, spec.max_devices);
    std::uniform_int_distribution<std::size_t> m_dist(1, spec.max_channels);
    std::uniform_int_distribution<int> d_dist(1, spec.max_data);
    std::uniform_real_distribution<double> w_dist(spec.min_weight, 1.0);

    TrainInstance inst;
    const std::size_t n = n_dist(rng);
    inst.channels = m_dist(rng);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        DeviceProfile d;
        d.id = static_cast<DeviceId>(i + 1);
        d.upload_time = open_low(rng, spec.max_upload_time);
        d.data_quantity = d_dist(rng);
        d.cost = open_low(rng, spec.max_cost);
        d.skewness = 0.0;
        total += d.data_quantity;
        inst.devices.push_back(d);
    }
    std::uniform_int_distribution<long> demand(1, static_cast<long>(total));
    inst.data_requirement = static_cast<double>(demand(rng));
    inst.skew_threshold = 1.0;
    inst.alpha = w_dist(rng);
    inst.beta = w_dist(rng);
    return inst;
}

}  // namespace edgecs::sched
