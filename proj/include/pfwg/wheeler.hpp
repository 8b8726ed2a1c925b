#ifndef PFWG_WHEELER_HPP
#define PFWG_WHEELER_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pfwg/bit_vector.hpp"
#include "pfwg/suffix_bwt.hpp"
#include "pfwg/types.hpp"

namespace pfwg {

struct Edge {
    std::uint64_t source = 0;
    std::uint64_t target = 0;
    Symbol label = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Vertices are 0..n_vertices-1 in the claimed Wheeler order. Edge order is
// significant only among the out-edges of one vertex.
struct EdgeListGraph {
    std::uint64_t n_vertices = 0;
    std::vector<Edge> edges;
};

struct WheelerVerdict {
    int condition = 0; // 0 when valid, else the violated condition (1, 2 or 3)
    Edge first;
    Edge second;

    bool valid() const { return condition == 0; }
    explicit operator bool() const { return valid(); }
};

struct VertexInterval {
    std::uint64_t begin = 0;
    std::uint64_t end = 0; // exclusive

    bool empty() const { return begin >= end; }
    friend bool operator==(const VertexInterval&, const VertexInterval&) = default;
};

/*
 * Succinct (C, L, O, I) encoding of an edge-labelled Wheeler graph.
 *
 *   L  out-edge labels, grouped by source vertex in Wheeler order
 *   O  one bit per L position, set on the first out-edge of each vertex
 *   I  one bit per edge in label-then-source order, set on the first
 *      in-edge of each vertex
 *   C  C[c] = number of edges with label < c
 *
 * Edges point from a suffix to the suffix one position earlier in the text,
 * so walking out-edges spells the text backwards. Every vertex must have
 * in- and out-degree at least one.
 */
class WheelerGraph {
public:
    WheelerGraph() = default;
    WheelerGraph(SymbolString labels, BitVector out_bits, BitVector in_bits);

    std::uint64_t n_vertices() const { return out_bits_.ones(); }
    std::uint64_t n_edges() const { return labels_.size(); }
    std::uint64_t sigma() const { return counts_before_.empty() ? 0 : counts_before_.size() - 1; }

    // C[c] for c in [0, sigma]; C[sigma] = n_edges.
    std::uint64_t counts_before(Symbol c) const { return counts_before_[c]; }
    const SymbolString& labels() const { return labels_; }
    const BitVector& out_bits() const { return out_bits_; }
    const BitVector& in_bits() const { return in_bits_; }

    Symbol label(std::uint64_t pos) const { return labels_[pos]; }
    std::uint64_t out_begin(std::uint64_t v) const { return out_bits_.select1(v); }
    std::uint64_t out_end(std::uint64_t v) const;
    std::uint64_t out_degree(std::uint64_t v) const { return out_end(v) - out_begin(v); }
    std::uint64_t in_begin(std::uint64_t v) const { return in_bits_.select1(v); }
    std::uint64_t in_end(std::uint64_t v) const;
    std::uint64_t in_degree(std::uint64_t v) const { return in_end(v) - in_begin(v); }

    std::uint64_t source(std::uint64_t pos) const { return out_bits_.rank1(pos + 1) - 1; }
    // Rank of the edge at L position `pos` in label-then-source order.
    std::uint64_t f_position(std::uint64_t pos) const { return f_of_[pos]; }
    std::uint64_t target_of_f(std::uint64_t f) const { return in_bits_.rank1(f + 1) - 1; }
    std::uint64_t target(std::uint64_t pos) const { return target_of_f(f_position(pos)); }
    // L position of the edge with rank f in label-then-source order.
    std::uint64_t l_position(std::uint64_t f) const { return occ_[f]; }

    // Occurrences of c in L[0, i).
    std::uint64_t rank(Symbol c, std::uint64_t i) const;
    std::uint64_t count(Symbol c) const { return c < sigma() ? counts_before_[c + 1] - counts_before_[c] : 0; }

    // Uniform label of the incoming edges of v.
    Symbol in_label(std::uint64_t v) const;

    bool is_tunnelled() const { return n_vertices() != n_edges(); }

    // Payload of the encoding: labels at ceil(log2 sigma) bits, two bits per
    // edge for O and I, sigma words for C.
    std::uint64_t size_in_bits() const;

    friend bool operator==(const WheelerGraph& a, const WheelerGraph& b) {
        return a.labels_ == b.labels_ && a.out_bits_ == b.out_bits_ && a.in_bits_ == b.in_bits_;
    }

private:
    SymbolString labels_;
    BitVector out_bits_;
    BitVector in_bits_;
    std::vector<std::uint64_t> counts_before_;
    std::vector<std::uint64_t> occ_;  // F order -> L position
    std::vector<std::uint64_t> f_of_; // L position -> F order
};

// Cycle graph of a BWT: vertex i has one out-edge, to LF(i), labelled bwt[i].
// Rejects a BWT whose LF mapping is not a single cycle.
WheelerGraph wg_from_bwt(const BwtString& bwt);

// Exhaustive pairwise check of the three Wheeler conditions, O(|E|^2).
WheelerVerdict validate_wheeler(const EdgeListGraph& graph);
// Same verdict class by sorting, O(|E| log |E|); the witness may differ.
WheelerVerdict check_wheeler(const EdgeListGraph& graph);

EdgeListGraph succinct_to_edges(const WheelerGraph& wg);
WheelerGraph edges_to_succinct(const EdgeListGraph& graph);

// Walks out-edges from `start` and returns the rotation of the text that
// begins at `start`. Rejects tunnelled graphs.
SymbolString decode_text(const WheelerGraph& wg, std::uint64_t start);
// Walk from vertex 0, rotated so the terminator run ends the text.
SymbolString decode_text(const WheelerGraph& wg);

// Moves the leading run of terminators of a rotation to its end.
SymbolString rotate_terminators_to_end(SymbolString rotation);

// True iff some path spells `pattern` (read in text direction).
bool matches(const WheelerGraph& wg, const SymbolString& pattern);
// Interval of vertices reached after each pattern symbol, processed right
// to left; stops early at the first empty interval.
std::vector<VertexInterval> match_trace(const WheelerGraph& wg, const SymbolString& pattern);

// Index file: "PFWG", version, sizes, C, L, O, I, FNV-1a checksum.
inline constexpr std::uint8_t kIndexFormatVersion = 1;
void write_index(std::ostream& out, const WheelerGraph& wg);
WheelerGraph read_index(std::istream& in);

} // namespace pfwg

#endif // PFWG_WHEELER_HPP
