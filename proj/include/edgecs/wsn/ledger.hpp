#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace edgecs::wsn {

enum class Direction { Uplink, Downlink, ToEdge };

std::string_view to_string(Direction d) noexcept;

// Node id used for the edge server in ledger records.
inline constexpr int kEdgeServer = -2;

struct LinkRecord {
    int src = 0;
    int dst = 0;
    Direction direction = Direction::Uplink;
    std::uint64_t scalars = 0;
};

// Scalar counts per (link, direction). Records for the same key accumulate.
class TransmissionLedger {
public:
    void add(int src, int dst, Direction direction, std::uint64_t scalars);
    void merge(const TransmissionLedger& other);

    std::vector<LinkRecord> records() const;
    std::uint64_t total(Direction direction) const;
    std::uint64_t total() const;
    std::uint64_t link(int src, int dst, Direction direction) const;

    void set_note(std::string key, std::string value) { notes_[std::move(key)] = std::move(value); }
    const std::map<std::string, std::string>& notes() const noexcept { return notes_; }

    // link_src,link_dst,direction,scalars
    void write_csv(std::ostream& out) const;
    void save_csv(const std::filesystem::path& path) const;

private:
    std::map<std::tuple<int, int, Direction>, std::uint64_t> counts_;
    std::map<std::string, std::string> notes_;
};

}  // namespace edgecs::wsn
