#include "edgecs/wsn/ledger.hpp"

#include <fstream>
#include <ostream>

#include "edgecs/error.hpp"

namespace edgecs::wsn {

std::string_view to_string(Direction d) noexcept {
    switch (d) {
        case Direction::Uplink: return "uplink";
        case Direction::Downlink: return "downlink";
        case Direction::ToEdge: return "cluster_to_edge";
    }
    return "uplink";
}

void TransmissionLedger::add(int src, int dst, Direction direction, std::uint64_t scalars) {
    counts_[{src, dst, direction}] += scalars;
}

void TransmissionLedger::merge(const TransmissionLedger& other) {
    for (const auto& [key, n] : other.counts_) counts_[key] += n;
    for (const auto& [k, v] : other.notes_) notes_[k] = v;
}

std::vector<LinkRecord> TransmissionLedger::records() const {
    std::vector<LinkRecord> out;
    out.reserve(counts_.size());
    for (const auto& [key, n] : counts_)
        out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), n});
    return out;
}

std::uint64_t TransmissionLedger::total(Direction direction) const {
    std::uint64_t sum = 0;
    for (const auto& [key, n] : counts_)
        if (std::get<2>(key) == direction) sum += n;
    return sum;
}

std::uint64_t TransmissionLedger::total() const {
    std::uint64_t sum = 0;
    for (const auto& [key, n] : counts_) sum += n;
    return sum;
}

std::uint64_t TransmissionLedger::link(int src, int dst, Direction direction) const {
    auto it = counts_.find({src, dst, direction});
    return it == counts_.end() ? 0 : it->second;
}

namespace {
void write_node(std::ostream& out, int id) {
    if (id == kEdgeServer) out << "edge";
    else out << id;
}
}  // namespace

void TransmissionLedger::write_csv(std::ostream& out) const {
    out << "link_src,link_dst,direction,scalars\n";
    for (const auto& r : records()) {
        write_node(out, r.src);
        out << ',';
        write_node(out, r.dst);
        out << ',' << to_string(r.direction) << ',' << r.scalars << '\n';
    }
}

void TransmissionLedger::save_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write ledger: " + path.string());
    write_csv(out);
}

}  // namespace edgecs::wsn
