#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "edgecs/codec/autoencoder.hpp"
#include "edgecs/nn/activation.hpp"
#include "edgecs/wsn/ledger.hpp"
#include "edgecs/wsn/topology.hpp"

namespace edgecs::wsn {

struct RawAggregation {
    std::vector<double> assembled;  // in device rank order
    TransmissionLedger ledger;
};

// Leaf-to-root forwarding of one scalar per device; link i->parent(i)
// carries subtree_size(i) scalars.
RawAggregation aggregate_raw(const ClusterTopology& topo, std::span<const double> readings);

struct EncoderShard {
    int device = 0;
    std::vector<double> column;  // column rank_of(device) of W_e
};

struct EncoderDistribution {
    std::vector<EncoderShard> shards;  // in device rank order
    TransmissionLedger ledger;
};

// Device i receives its column of W_e (M scalars) in one broadcast round,
// counted as a per-device unicast from the aggregator. b_e stays at the aggregator.
EncoderDistribution distribute_encoder(const codec::Autoencoder& ae, const ClusterTopology& topo);

enum class CompressedMode {
    // Partial sums flow up the tree; bias and activation applied once at the root.
    PartialSum,
    // Each device applies the activation to its own product before forwarding;
    // the root adds the bias. Not equivalent to encode() unless the activation is linear.
    PerDeviceActivation,
};

struct CompressedAggregation {
    std::vector<double> latent;  // Y at the aggregator
    TransmissionLedger ledger;
};

// Every tree link carries exactly M scalars.
CompressedAggregation aggregate_compressed(const ClusterTopology& topo,
                                           std::span<const EncoderShard> shards,
                                           std::span<const double> encoder_bias,
                                           nn::ActivationKind activation,
                                           std::span<const double> readings,
                                           CompressedMode mode = CompressedMode::PartialSum);

enum class EdgeMode { Raw, Compressed };

// Scalars on the aggregator->edge link: N per round raw, M per round compressed.
std::uint64_t cluster_to_edge_cost(EdgeMode mode, std::uint64_t n_devices,
                                   std::uint64_t latent_dim, std::uint64_t rounds);

}  // namespace edgecs::wsn
