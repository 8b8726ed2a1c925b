#include "pfwg/wheeler.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>

#include "pfwg/io_util.hpp"

namespace pfwg {

WheelerGraph::WheelerGraph(SymbolString labels, BitVector out_bits, BitVector in_bits)
    : labels_(std::move(labels)), out_bits_(std::move(out_bits)), in_bits_(std::move(in_bits)) {
    const std::uint64_t m = labels_.size();
    if (out_bits_.size() != m || in_bits_.size() != m)
        throw CorruptionError("O and I must have one bit per edge");
    if (out_bits_.ones() != in_bits_.ones())
        throw CorruptionError("O and I disagree on the number of vertices");
    if (m > 0 && (!out_bits_[0] || !in_bits_[0]))
        throw CorruptionError("O and I must start with a set bit");

    Symbol sigma = 0;
    for (Symbol c : labels_)
        sigma = std::max<Symbol>(sigma, c + 1);
    counts_before_.assign(sigma + 1, 0);
    for (Symbol c : labels_)
        ++counts_before_[c + 1];
    std::partial_sum(counts_before_.begin(), counts_before_.end(), counts_before_.begin());

    occ_.resize(m);
    f_of_.resize(m);
    std::vector<std::uint64_t> next(counts_before_.begin(), counts_before_.end() - (sigma > 0 ? 1 : 0));
    for (std::uint64_t pos = 0; pos < m; ++pos) {
        const std::uint64_t f = next[labels_[pos]]++;
        occ_[f] = pos;
        f_of_[pos] = f;
    }

    // Different labels must never share a target: every label boundary in
    // F order starts a new vertex.
    for (Symbol c = 1; c < sigma; ++c) {
        const std::uint64_t f = counts_before_[c];
        if (f > 0 && f < m && !in_bits_[f])
            throw CorruptionError("vertex " + std::to_string(target_of_f(f)) + " has mixed incoming labels");
    }
}

std::uint64_t WheelerGraph::out_end(std::uint64_t v) const {
    return v + 1 < n_vertices() ? out_bits_.select1(v + 1) : n_edges();
}

std::uint64_t WheelerGraph::in_end(std::uint64_t v) const {
    return v + 1 < n_vertices() ? in_bits_.select1(v + 1) : n_edges();
}

std::uint64_t WheelerGraph::rank(Symbol c, std::uint64_t i) const {
    if (c >= sigma())
        return 0;
    const auto first = occ_.begin() + static_cast<std::ptrdiff_t>(counts_before_[c]);
    const auto last = occ_.begin() + static_cast<std::ptrdiff_t>(counts_before_[c + 1]);
    return static_cast<std::uint64_t>(std::lower_bound(first, last, i) - first);
}

Symbol WheelerGraph::in_label(std::uint64_t v) const {
    const std::uint64_t f = in_begin(v);
    const auto it = std::upper_bound(counts_before_.begin(), counts_before_.end(), f);
    return static_cast<Symbol>(it - counts_before_.begin() - 1);
}

std::uint64_t WheelerGraph::size_in_bits() const {
    const std::uint64_t label_bits = sigma() <= 1 ? 1 : std::bit_width(sigma() - 1);
    return n_edges() * label_bits + 2 * n_edges() + sigma() * 64;
}

WheelerGraph wg_from_bwt(const BwtString& bwt) {
    const std::size_t n = bwt.size();
    if (n == 0)
        throw CorruptionError("empty BWT");
    std::vector<bool> ones(n, true);
    WheelerGraph wg(bwt.symbols, BitVector(ones), BitVector(ones));
    std::uint64_t v = 0;
    std::size_t steps = 0;
    do {
        v = wg.target(v);
        ++steps;
    } while (v != 0 && steps <= n);
    if (steps != n)
        throw CorruptionError("LF mapping of the BWT is not a single cycle");
    return wg;
}

namespace {

void check_vertex_range(const EdgeListGraph& graph) {
    for (const Edge& e : graph.edges)
        if (e.source >= graph.n_vertices || e.target >= graph.n_vertices)
            throw ParameterError("edge endpoint outside the vertex range");
}

// Condition 1: zero in-degree vertices form a prefix of the order.
WheelerVerdict check_zero_in_degree_prefix(const EdgeListGraph& graph) {
    std::vector<std::int64_t> in_edge(graph.n_vertices, -1);
    std::vector<std::int64_t> out_edge(graph.n_vertices, -1);
    for (std::size_t i = 0; i < graph.edges.size(); ++i) {
        if (in_edge[graph.edges[i].target] < 0)
            in_edge[graph.edges[i].target] = static_cast<std::int64_t>(i);
        if (out_edge[graph.edges[i].source] < 0)
            out_edge[graph.edges[i].source] = static_cast<std::int64_t>(i);
    }
    std::int64_t witness = -1;
    for (std::uint64_t v = 0; v < graph.n_vertices; ++v) {
        if (in_edge[v] >= 0) {
            if (witness < 0)
                witness = in_edge[v];
        } else if (witness >= 0) {
            WheelerVerdict verdict;
            verdict.condition = 1;
            verdict.first = graph.edges[witness];
            if (out_edge[v] >= 0)
                verdict.second = graph.edges[out_edge[v]];
            else
                verdict.second = Edge{v, v, 0};
            return verdict;
        }
    }
    return {};
}

} // namespace

WheelerVerdict validate_wheeler(const EdgeListGraph& graph) {
    check_vertex_range(graph);
    if (auto verdict = check_zero_in_degree_prefix(graph); !verdict)
        return verdict;
    const auto& edges = graph.edges;
    auto violation = [](const Edge& e1, const Edge& e2) -> int {
        if (e1.label < e2.label && !(e1.target < e2.target))
            return 2;
        if (e1.label == e2.label && e1.source < e2.source && e1.target > e2.target)
            return 3;
        return 0;
    };
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            if (int c = violation(edges[i], edges[j]))
                return {c, edges[i], edges[j]};
            if (int c = violation(edges[j], edges[i]))
                return {c, edges[j], edges[i]};
        }
    }
    return {};
}

WheelerVerdict check_wheeler(const EdgeListGraph& graph) {
    check_vertex_range(graph);
    if (auto verdict = check_zero_in_degree_prefix(graph); !verdict)
        return verdict;
    std::vector<Edge> sorted = graph.edges;
    std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.label, a.source, a.target) < std::tie(b.label, b.source, b.target);
    });

    std::optional<Edge> max_earlier_label;
    for (std::size_t g = 0; g < sorted.size();) {
        std::size_t g_end = g;
        while (g_end < sorted.size() && sorted[g_end].label == sorted[g].label)
            ++g_end;

        // Condition 2 against every smaller label.
        const Edge* min_here = &sorted[g];
        for (std::size_t i = g; i < g_end; ++i)
            if (sorted[i].target < min_here->target)
                min_here = &sorted[i];
        if (max_earlier_label && !(max_earlier_label->target < min_here->target))
            return {2, *max_earlier_label, *min_here};

        // Condition 3 between smaller and larger sources of this label.
        std::optional<Edge> max_earlier_source;
        for (std::size_t s = g; s < g_end;) {
            std::size_t s_end = s;
            while (s_end < g_end && sorted[s_end].source == sorted[s].source)
                ++s_end;
            if (max_earlier_source && sorted[s].target < max_earlier_source->target)
                return {3, *max_earlier_source, sorted[s]};
            if (!max_earlier_source || sorted[s_end - 1].target > max_earlier_source->target)
                max_earlier_source = sorted[s_end - 1];
            s = s_end;
        }
        if (!max_earlier_label || max_earlier_source->target > max_earlier_label->target)
            max_earlier_label = max_earlier_source;
        g = g_end;
    }
    return {};
}

EdgeListGraph succinct_to_edges(const WheelerGraph& wg) {
    EdgeListGraph graph;
    graph.n_vertices = wg.n_vertices();
    graph.edges.reserve(wg.n_edges());
    for (std::uint64_t pos = 0; pos < wg.n_edges(); ++pos)
        graph.edges.push_back(Edge{wg.source(pos), wg.target(pos), wg.label(pos)});
    return graph;
}

WheelerGraph edges_to_succinct(const EdgeListGraph& graph) {
    if (auto verdict = check_wheeler(graph); !verdict)
        throw ParameterError("graph violates Wheeler condition " + std::to_string(verdict.condition));

    const std::size_t m = graph.edges.size();
    std::vector<std::uint64_t> out_degree(graph.n_vertices, 0);
    std::vector<std::uint64_t> in_degree(graph.n_vertices, 0);
    for (const Edge& e : graph.edges) {
        ++out_degree[e.source];
        ++in_degree[e.target];
    }
    for (std::uint64_t v = 0; v < graph.n_vertices; ++v)
        if (out_degree[v] == 0 || in_degree[v] == 0)
            throw ParameterError("vertex " + std::to_string(v) + " has zero in- or out-degree");

    // L order: by source, keeping the given order among one vertex's edges.
    std::vector<std::size_t> by_source(m);
    std::iota(by_source.begin(), by_source.end(), 0);
    std::stable_sort(by_source.begin(), by_source.end(),
                     [&](std::size_t a, std::size_t b) { return graph.edges[a].source < graph.edges[b].source; });

    SymbolString labels(m);
    std::vector<bool> out_bits(m, false);
    for (std::size_t pos = 0; pos < m; ++pos) {
        const Edge& e = graph.edges[by_source[pos]];
        labels[pos] = e.label;
        out_bits[pos] = pos == 0 || graph.edges[by_source[pos - 1]].source != e.source;
    }

    // F order: by label, then L position. Targets must be non-decreasing.
    std::vector<std::size_t> by_label(m);
    std::iota(by_label.begin(), by_label.end(), 0);
    std::stable_sort(by_label.begin(), by_label.end(),
                     [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
    std::vector<bool> in_bits(m, false);
    for (std::size_t f = 0; f < m; ++f) {
        const std::uint64_t t = graph.edges[by_source[by_label[f]]].target;
        if (f > 0) {
            const std::uint64_t prev = graph.edges[by_source[by_label[f - 1]]].target;
            if (t < prev)
                throw ParameterError("out-edge order of a vertex conflicts with the Wheeler order of targets");
            in_bits[f] = t != prev;
        } else {
            in_bits[f] = true;
        }
    }
    return WheelerGraph(std::move(labels), BitVector(out_bits), BitVector(in_bits));
}

SymbolString rotate_terminators_to_end(SymbolString rotation) {
    const auto first_other = std::find_if(rotation.begin(), rotation.end(), [](Symbol s) { return s != kTerminator; });
    std::rotate(rotation.begin(), first_other, rotation.end());
    return rotation;
}

SymbolString decode_text(const WheelerGraph& wg, std::uint64_t start) {
    if (wg.is_tunnelled())
        throw ParameterError("graph is tunnelled; decode it with decode_tunnelled");
    if (start >= wg.n_vertices())
        throw ParameterError("start vertex out of range");
    SymbolString reversed;
    reversed.reserve(wg.n_edges());
    std::uint64_t v = start;
    do {
        if (reversed.size() == wg.n_edges())
            throw CorruptionError("walk did not return to the start vertex");
        const std::uint64_t pos = wg.out_begin(v);
        reversed.push_back(wg.label(pos));
        v = wg.target(pos);
    } while (v != start);
    if (reversed.size() != wg.n_edges())
        throw CorruptionError("graph is not a single cycle");
    std::reverse(reversed.begin(), reversed.end());
    return reversed;
}

SymbolString decode_text(const WheelerGraph& wg) {
    return rotate_terminators_to_end(decode_text(wg, 0));
}

namespace {

template <typename Visitor>
bool backward_search(const WheelerGraph& wg, const SymbolString& pattern, Visitor&& visit) {
    for (Symbol c : pattern)
        if (c == kTerminator || c == kStartMarker)
            throw ParameterError("pattern contains a sentinel symbol");
    std::uint64_t lo = 0;
    std::uint64_t hi = wg.n_vertices();
    for (auto it = pattern.rbegin(); it != pattern.rend(); ++it) {
        const Symbol c = *it;
        if (c >= wg.sigma() || lo >= hi)
            return false;
        const std::uint64_t l_begin = wg.out_begin(lo);
        const std::uint64_t l_end = wg.out_end(hi - 1);
        const std::uint64_t r1 = wg.rank(c, l_begin);
        const std::uint64_t r2 = wg.rank(c, l_end);
        if (r1 == r2)
            return false;
        lo = wg.target_of_f(wg.counts_before(c) + r1);
        hi = wg.target_of_f(wg.counts_before(c) + r2 - 1) + 1;
        visit(VertexInterval{lo, hi});
    }
    return true;
}

} // namespace

bool matches(const WheelerGraph& wg, const SymbolString& pattern) {
    return backward_search(wg, pattern, [](const VertexInterval&) {});
}

std::vector<VertexInterval> match_trace(const WheelerGraph& wg, const SymbolString& pattern) {
    std::vector<VertexInterval> trace;
    backward_search(wg, pattern, [&](const VertexInterval& interval) { trace.push_back(interval); });
    return trace;
}

namespace {

constexpr char kMagic[4] = {'P', 'F', 'W', 'G'};

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void write_bits(std::ostream& out, const BitVector& bits) {
    io::write_u64(out, bits.size());
    const auto bytes = bits.to_bytes();
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

BitVector read_bits(std::istream& in, std::uint64_t expected_bits) {
    const std::uint64_t bits = io::read_u64(in);
    if (bits != expected_bits)
        throw FormatError("bit array length differs from the edge count");
    std::vector<std::uint8_t> bytes((bits + 7) / 8);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::uint64_t>(in.gcount()) != bytes.size())
        throw FormatError("truncated bit array");
    return BitVector::from_bytes(bytes, bits);
}

} // namespace

void write_index(std::ostream& out, const WheelerGraph& wg) {
    std::ostringstream body;
    body.write(kMagic, 4);
    body.put(static_cast<char>(kIndexFormatVersion));
    io::write_u64(body, wg.n_vertices());
    io::write_u64(body, wg.n_edges());
    io::write_u64(body, wg.sigma());
    for (Symbol c = 0; c < wg.sigma(); ++c)
        io::write_u64(body, wg.counts_before(c));
    const bool narrow = wg.sigma() <= 255;
    for (Symbol c : wg.labels()) {
        if (narrow)
            body.put(static_cast<char>(c));
        else
            io::write_u64(body, c);
    }
    write_bits(body, wg.out_bits());
    write_bits(body, wg.in_bits());
    const std::string payload = body.str();
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    io::write_u64(out, fnv1a(payload));
}

WheelerGraph read_index(std::istream& in) {
    const std::string file{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (file.size() < 4 + 1 + 8 || file.compare(0, 4, kMagic, 4) != 0)
        throw FormatError("not a PFWG index (bad magic)");
    if (static_cast<std::uint8_t>(file[4]) != kIndexFormatVersion)
        throw FormatError("unsupported index format version " + std::to_string(static_cast<unsigned char>(file[4])));
    const std::string_view payload(file.data(), file.size() - 8);
    std::istringstream trailer(file.substr(file.size() - 8));
    if (io::read_u64(trailer) != fnv1a(payload))
        throw FormatError("index checksum mismatch");

    std::istringstream body{std::string(payload.substr(5))};
    const std::uint64_t n_vertices = io::read_u64(body);
    const std::uint64_t n_edges = io::read_u64(body);
    const std::uint64_t sigma = io::read_u64(body);
    if (n_edges > payload.size() || sigma > payload.size() || n_vertices > n_edges)
        throw FormatError("implausible index header");
    std::vector<std::uint64_t> counts(sigma);
    for (auto& c : counts)
        c = io::read_u64(body);
    SymbolString labels(n_edges);
    for (auto& c : labels) {
        if (sigma <= 255) {
            const int ch = body.get();
            if (ch == std::char_traits<char>::eof())
                throw FormatError("truncated label sequence");
            c = static_cast<unsigned char>(ch);
        } else {
            c = io::read_u64(body);
        }
        if (c >= sigma)
            throw FormatError("label outside the declared alphabet");
    }
    BitVector out_bits = read_bits(body, n_edges);
    BitVector in_bits = read_bits(body, n_edges);
    if (body.peek() != std::char_traits<char>::eof())
        throw FormatError("trailing bytes after index payload");

    WheelerGraph wg(std::move(labels), std::move(out_bits), std::move(in_bits));
    if (wg.n_vertices() != n_vertices || wg.sigma() != sigma)
        throw FormatError("index header disagrees with its payload");
    for (Symbol c = 0; c < sigma; ++c)
        if (wg.counts_before(c) != counts[c])
            throw FormatError("C array disagrees with the label sequence");
    return wg;
}

} // namespace pfwg
