#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <vector>

#include "edgecs/error.hpp"

namespace edgecs::wsn {

struct Point {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b) noexcept;

inline constexpr int kNoParent = -1;

// Raised when some devices cannot reach the aggregator.
class TopologyError : public Error {
public:
    TopologyError(const std::string& what, std::vector<int> unreachable)
        : Error(what), unreachable_(std::move(unreachable)) {}
    const std::vector<int>& unreachable() const noexcept { return unreachable_; }

private:
    std::vector<int> unreachable_;
};

// Aggregation tree over node ids 0..positions.size()-1. The aggregator is
// the root; every other node is a device. Device readings are indexed by
// device rank (ascending node id, aggregator skipped).
class ClusterTopology {
public:
    ClusterTopology(std::vector<Point> positions, double radio_range, int aggregator,
                    std::vector<int> parent);

    std::size_t node_count() const noexcept { return positions_.size(); }
    std::size_t device_count() const noexcept { return positions_.size() - 1; }
    int aggregator() const noexcept { return aggregator_; }
    double radio_range() const noexcept { return radio_range_; }
    const std::vector<Point>& positions() const noexcept { return positions_; }
    const std::vector<int>& parents() const noexcept { return parent_; }
    int parent(int node) const { return parent_.at(static_cast<std::size_t>(node)); }

    // Device node ids in rank order.
    const std::vector<int>& devices() const noexcept { return devices_; }
    std::size_t rank_of(int device) const;
    const std::vector<int>& children(int node) const { return children_.at(static_cast<std::size_t>(node)); }
    std::size_t depth(int node) const { return depth_.at(static_cast<std::size_t>(node)); }
    std::size_t subtree_size(int node) const { return subtree_.at(static_cast<std::size_t>(node)); }
    std::size_t max_depth() const noexcept;
    std::size_t edge_count() const noexcept { return device_count(); }
    // Devices ordered deepest first; children always precede their parent.
    std::vector<int> leaves_to_root_order() const;

    friend bool operator==(const ClusterTopology& a, const ClusterTopology& b) {
        return a.positions_ == b.positions_ && a.radio_range_ == b.radio_range_ &&
               a.aggregator_ == b.aggregator_ && a.parent_ == b.parent_;
    }

private:
    std::vector<Point> positions_;
    double radio_range_;
    int aggregator_;
    std::vector<int> parent_;
    std::vector<int> devices_;
    std::vector<std::vector<int>> children_;
    std::vector<std::size_t> depth_;
    std::vector<std::size_t> subtree_;
};

// Breadth-first shortest-hop tree over the unit-disk graph (edges of length
// <= radio_range). A node's parent is the lowest-id neighbour one hop closer.
ClusterTopology build_tree(const std::vector<Point>& positions, double radio_range,
                           int aggregator = 0);

// Uniform positions in [0, side]^2; the point nearest the centroid becomes
// node 0 (the aggregator). Resamples until connected, at most max_attempts.
ClusterTopology random_geometric(std::size_t n_devices, double side, double radio_range,
                                 std::mt19937_64& rng, std::size_t max_attempts = 1000);

// Aggregator at the origin, devices at spacing, 2*spacing, ... on the x-axis.
ClusterTopology chain(std::size_t n_devices, double spacing);

// CSV: "# radio_range=<r>", "# aggregator=<id>", then id,x,y,parent (root parent -1).
void write_topology(std::ostream& out, const ClusterTopology& topo);
void save_topology(const ClusterTopology& topo, const std::filesystem::path& path);
ClusterTopology read_topology(std::istream& in);
ClusterTopology load_topology(const std::filesystem::path& path);

}  // namespace edgecs::wsn
