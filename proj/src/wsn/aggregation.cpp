#include "edgecs/wsn/aggregation.hpp"

#include <string>

#include "edgecs/error.hpp"

namespace edgecs::wsn {

RawAggregation aggregate_raw(const ClusterTopology& topo, std::span<const double> readings) {
    require_size("raw readings per device", topo.device_count(), readings.size());
    RawAggregation out;
    // Each node forwards its own reading and everything received from below,
    // so the buffer on link i->parent holds subtree_size(i) readings.
    std::vector<std::vector<int>> carried(topo.node_count());
    for (int node : topo.leaves_to_root_order()) {
        auto& buf = carried[static_cast<std::size_t>(node)];
        buf.push_back(node);
        const int p = topo.parent(node);
        out.ledger.add(node, p, Direction::Uplink, buf.size());
        auto& up = carried[static_cast<std::size_t>(p)];
        up.insert(up.end(), buf.begin(), buf.end());
        buf.clear();
    }
    out.assembled.assign(topo.device_count(), 0.0);
    for (int device : carried[static_cast<std::size_t>(topo.aggregator())]) {
        const auto r = topo.rank_of(device);
        out.assembled[r] = readings[r];
    }
    out.ledger.set_note("raw_model", "subtree forwarding");
    return out;
}

EncoderDistribution distribute_encoder(const codec::Autoencoder& ae, const ClusterTopology& topo) {
    require_size("encoder columns vs cluster devices", topo.device_count(), ae.config.n_devices);
    require_size("encoder weight columns", ae.config.n_devices, ae.encoder.weights.cols());
    EncoderDistribution out;
    const auto& devices = topo.devices();
    for (std::size_t r = 0; r < devices.size(); ++r) {
        EncoderShard shard{devices[r], ae.encoder.weights.column(r)};
        out.ledger.add(topo.aggregator(), devices[r], Direction::Downlink, shard.column.size());
        out.shards.push_back(std::move(shard));
    }
    out.ledger.set_note("broadcast_model", "per-device unicast of W_e columns, one round");
    return out;
}

CompressedAggregation aggregate_compressed(const ClusterTopology& topo,
                                           std::span<const EncoderShard> shards,
                                           std::span<const double> encoder_bias,
                                           nn::ActivationKind activation,
                                           std::span<const double> readings,
                                           CompressedMode mode) {
    require_size("compressed readings per device", topo.device_count(), readings.size());
    const std::size_t m = encoder_bias.size();
    if (m == 0) throw InvalidArgument("latent dimension must be positive");

    std::vector<const EncoderShard*> by_rank(topo.device_count(), nullptr);
    for (const auto& s : shards) {
        const auto r = topo.rank_of(s.device);
        require_size("shard column length", m, s.column.size());
        by_rank[r] = &s;
    }
    for (std::size_t r = 0; r < by_rank.size(); ++r)
        if (!by_rank[r])
            throw InvalidArgument("missing encoder shard for device " + std::to_string(topo.devices()[r]));

    CompressedAggregation out;
    std::vector<std::vector<double>> partial(topo.node_count(), std::vector<double>(m, 0.0));
    for (int node : topo.leaves_to_root_order()) {
        const auto r = topo.rank_of(node);
        auto& acc = partial[static_cast<std::size_t>(node)];
        const auto& col = by_rank[r]->column;
        for (std::size_t k = 0; k < m; ++k) {
            const double term = col[k] * readings[r];
            acc[k] += mode == CompressedMode::PartialSum ? term : nn::activate(activation, term);
        }
        const int p = topo.parent(node);
        auto& up = partial[static_cast<std::size_t>(p)];
        for (std::size_t k = 0; k < m; ++k) up[k] += acc[k];
        out.ledger.add(node, p, Direction::Uplink, m);
    }

    const auto& root = partial[static_cast<std::size_t>(topo.aggregator())];
    out.latent.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double pre = root[k] + encoder_bias[k];
        out.latent[k] = mode == CompressedMode::PartialSum ? nn::activate(activation, pre) : pre;
    }
    return out;
}

std::uint64_t cluster_to_edge_cost(EdgeMode mode, std::uint64_t n_devices,
                                   std::uint64_t latent_dim, std::uint64_t rounds) {
    return (mode == EdgeMode::Raw ? n_devices : latent_dim) * rounds;
}

}  // namespace edgecs::wsn
