#include "edgecs/wsn/topology.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

namespace edgecs::wsn {

namespace {

// Shortest text that reads back to the same double.
std::string shortest(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

}  // namespace

double distance(const Point& a, const Point& b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

ClusterTopology::ClusterTopology(std::vector<Point> positions, double radio_range, int aggregator,
                                 std::vector<int> parent)
    : positions_(std::move(positions)),
      radio_range_(radio_range),
      aggregator_(aggregator),
      parent_(std::move(parent)) {
    const std::size_t n = positions_.size();
    if (n < 2) throw InvalidArgument("topology needs an aggregator and at least one device");
    require_size("parent array length", n, parent_.size());
    if (aggregator_ < 0 || static_cast<std::size_t>(aggregator_) >= n)
        throw InvalidArgument("aggregator id out of range");
    if (parent_[static_cast<std::size_t>(aggregator_)] != kNoParent)
        throw InvalidArgument("aggregator must be the tree root");

    children_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        const int id = static_cast<int>(i);
        if (id == aggregator_) continue;
        devices_.push_back(id);
        const int p = parent_[i];
        if (p < 0 || static_cast<std::size_t>(p) >= n || p == id)
            throw InvalidArgument("device " + std::to_string(id) + " has invalid parent");
        if (distance(positions_[i], positions_[static_cast<std::size_t>(p)]) > radio_range_)
            throw InvalidArgument("tree edge " + std::to_string(id) + "->" + std::to_string(p) +
                                  " exceeds radio range");
        children_[static_cast<std::size_t>(p)].push_back(id);
    }

    // Depths by walking to the root; a walk longer than n means a cycle.
    depth_.assign(n, 0);
    for (int d : devices_) {
        std::size_t steps = 0;
        int cur = d;
        while (cur != aggregator_) {
            cur = parent_[static_cast<std::size_t>(cur)];
            if (++steps > n) throw InvalidArgument("parent links contain a cycle");
        }
        depth_[static_cast<std::size_t>(d)] = steps;
    }

    subtree_.assign(n, 1);
    for (int node : leaves_to_root_order()) {
        const int p = parent_[static_cast<std::size_t>(node)];
        subtree_[static_cast<std::size_t>(p)] += subtree_[static_cast<std::size_t>(node)];
    }
}

std::size_t ClusterTopology::rank_of(int device) const {
    auto it = std::lower_bound(devices_.begin(), devices_.end(), device);
    if (it == devices_.end() || *it != device)
        throw InvalidArgument("unknown device id " + std::to_string(device));
    return static_cast<std::size_t>(it - devices_.begin());
}

std::size_t ClusterTopology::max_depth() const noexcept {
    return depth_.empty() ? 0 : *std::max_element(depth_.begin(), depth_.end());
}

std::vector<int> ClusterTopology::leaves_to_root_order() const {
    std::vector<int> order = devices_;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return depth_[static_cast<std::size_t>(a)] > depth_[static_cast<std::size_t>(b)];
    });
    return order;
}

ClusterTopology build_tree(const std::vector<Point>& positions, double radio_range, int aggregator) {
    const std::size_t n = positions.size();
    if (n < 2) throw InvalidArgument("build_tree needs at least one device");
    if (aggregator < 0 || static_cast<std::size_t>(aggregator) >= n)
        throw InvalidArgument("aggregator id out of range");

    std::vector<int> parent(n, kNoParent);
    std::vector<bool> reached(n, false);
    reached[static_cast<std::size_t>(aggregator)] = true;
    std::vector<int> frontier{aggregator};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (std::size_t v = 0; v < n; ++v) {
            if (reached[v]) continue;
            int best = kNoParent;
            for (int u : frontier)
                if (distance(positions[v], positions[static_cast<std::size_t>(u)]) <= radio_range &&
                    (best == kNoParent || u < best))
                    best = u;
            if (best != kNoParent) {
                parent[v] = best;
                next.push_back(static_cast<int>(v));
            }
        }
        for (int v : next) reached[static_cast<std::size_t>(v)] = true;
        frontier = std::move(next);
    }

    std::vector<int> unreachable;
    for (std::size_t v = 0; v < n; ++v)
        if (!reached[v]) unreachable.push_back(static_cast<int>(v));
    if (!unreachable.empty()) {
        std::string msg = "connectivity graph is disconnected; unreachable devices:";
        for (int v : unreachable) msg += " " + std::to_string(v);
        throw TopologyError(msg, std::move(unreachable));
    }
    return ClusterTopology(positions, radio_range, aggregator, std::move(parent));
}

ClusterTopology random_geometric(std::size_t n_devices, double side, double radio_range,
                                 std::mt19937_64& rng, std::size_t max_attempts) {
    if (n_devices < 1) throw InvalidArgument("random_geometric needs at least one device");
    std::uniform_real_distribution<double> coord(0.0, side);
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Point> pts(n_devices + 1);
        for (auto& p : pts) {
            p.x = coord(rng);
            p.y = coord(rng);
        }
        Point centroid;
        for (const auto& p : pts) {
            centroid.x += p.x;
            centroid.y += p.y;
        }
        centroid.x /= static_cast<double>(pts.size());
        centroid.y /= static_cast<double>(pts.size());
        std::size_t hub = 0;
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (distance(pts[i], centroid) < distance(pts[hub], centroid)) hub = i;
        std::swap(pts[0], pts[hub]);
        try {
            return build_tree(pts, radio_range, 0);
        } catch (const TopologyError&) {
        }
    }
    throw TopologyError("no connected deployment after " + std::to_string(max_attempts) + " attempts",
                        {});
}

ClusterTopology chain(std::size_t n_devices, double spacing) {
    std::vector<Point> pts(n_devices + 1);
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = {spacing * static_cast<double>(i), 0.0};
    return build_tree(pts, spacing, 0);
}

void write_topology(std::ostream& out, const ClusterTopology& topo) {
    out << "# radio_range=" << shortest(topo.radio_range()) << '\n';
    out << "# aggregator=" << topo.aggregator() << '\n';
    out << "id,x,y,parent\n";
    for (std::size_t i = 0; i < topo.node_count(); ++i) {
        const auto& p = topo.positions()[i];
        out << i << ',' << shortest(p.x) << ',' << shortest(p.y) << ',' << topo.parents()[i] << '\n';
    }
}

void save_topology(const ClusterTopology& topo, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write topology: " + path.string());
    write_topology(out, topo);
}

ClusterTopology read_topology(std::istream& in) {
    double range = std::numeric_limits<double>::quiet_NaN();
    int aggregator = 0;
    std::vector<Point> pts;
    std::vector<int> parent;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1);
            key.erase(0, key.find_first_not_of(' '));
            const std::string value = line.substr(eq + 1);
            if (key == "radio_range") range = std::stod(value);
            else if (key == "aggregator") aggregator = std::stoi(value);
            continue;
        }
        if (!header_seen) {
            if (line != "id,x,y,parent") throw InvalidArgument("topology header must be id,x,y,parent");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell[4];
        for (auto& c : cell)
            if (!std::getline(row, c, ',')) throw InvalidArgument("malformed topology row: " + line);
        const auto id = static_cast<std::size_t>(std::stoul(cell[0]));
        require_size("topology row id", pts.size(), id);
        pts.push_back({std::stod(cell[1]), std::stod(cell[2])});
        parent.push_back(std::stoi(cell[3]));
    }
    if (std::isnan(range)) throw InvalidArgument("topology file lacks radio_range");
    return ClusterTopology(std::move(pts), range, aggregator, std::move(parent));
}

ClusterTopology load_topology(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read topology: " + path.string());
    return read_topology(in);
}

}  // namespace edgecs::wsn
