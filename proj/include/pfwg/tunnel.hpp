#ifndef PFWG_TUNNEL_HPP
#define PFWG_TUNNEL_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pfwg/types.hpp"
#include "pfwg/wheeler.hpp"

namespace pfwg {

// k parallel paths through l columns. Column j is the vertex interval
// [column_starts[j], column_starts[j] + width).
struct Block {
    std::uint64_t width = 0;
    std::vector<std::uint64_t> column_starts;

    std::uint64_t length() const { return column_starts.size(); }
    std::uint64_t saving() const { return (width - 1) * (length() - 1); }
    friend bool operator==(const Block&, const Block&) = default;
};

struct TunnelPlan {
    std::vector<Block> blocks;
    std::uint64_t projected_edge_saving = 0;
};

// Greedy block selection on an untunnelled graph (every vertex has in- and
// out-degree one). Vertex 0 never joins a block.
TunnelPlan find_blocks(const WheelerGraph& wg);

// Throws ParameterError when `block` is not a valid block of the untunnelled
// graph `wg`.
void check_block(const WheelerGraph& wg, const Block& block);

WheelerGraph apply_tunnel(const WheelerGraph& wg, const TunnelPlan& plan);

// Walks out-edges from `start` through tunnels and returns the rotation that
// begins at `start`. `start` must lie outside every tunnel.
SymbolString walk_tunnelled(const WheelerGraph& wg, std::uint64_t start);
// Walk from vertex 0, with the terminator run rotated to the end.
SymbolString decode_tunnelled(const WheelerGraph& wg);

// One line per block: "k l start_1 ... start_l".
void write_plan(std::ostream& out, const TunnelPlan& plan);
TunnelPlan read_plan(std::istream& in);

} // namespace pfwg

#endif // PFWG_TUNNEL_HPP
