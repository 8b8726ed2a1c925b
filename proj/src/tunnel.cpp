#include "pfwg/tunnel.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

namespace pfwg {

namespace {

void require_untunnelled(const WheelerGraph& wg) {
    if (wg.is_tunnelled())
        throw ParameterError("block search needs an untunnelled graph");
}

// In an untunnelled graph vertex v owns exactly L position v.
struct CycleView {
    const WheelerGraph& wg;
    std::vector<Symbol> in_label;     // F label per vertex
    std::vector<std::uint64_t> l_end; // end of the run of equal L labels holding v

    explicit CycleView(const WheelerGraph& g) : wg(g) {
        const std::uint64_t n = g.n_vertices();
        in_label.resize(n);
        for (Symbol c = 0; c < g.sigma(); ++c)
            for (std::uint64_t v = g.counts_before(c); v < g.counts_before(c + 1); ++v)
                in_label[v] = c;
        l_end.resize(n);
        for (std::uint64_t v = n; v-- > 0;)
            l_end[v] = (v + 1 < n && g.label(v + 1) == g.label(v)) ? l_end[v + 1] : v + 1;
    }

    std::uint64_t size() const { return in_label.size(); }
    std::uint64_t lf(std::uint64_t v) const { return wg.target(v); }
    bool l_constant(std::uint64_t a, std::uint64_t k) const { return l_end[a] >= a + k; }
};

struct Candidate {
    std::uint64_t start = 0;
    std::uint64_t width = 0;
    std::uint64_t length = 0;

    std::uint64_t weight() const { return (width - 1) * (length - 1); }
};

struct CandidateOrder {
    bool operator()(const Candidate& a, const Candidate& b) const {
        // priority_queue pops the largest; "largest" = heaviest, then smallest start
        if (a.weight() != b.weight())
            return a.weight() < b.weight();
        if (a.start != b.start)
            return a.start > b.start;
        return a.width < b.width;
    }
};

std::vector<std::uint64_t> column_starts(const CycleView& view, std::uint64_t start, std::uint64_t length) {
    std::vector<std::uint64_t> starts(length);
    starts[0] = start;
    for (std::uint64_t j = 1; j < length; ++j)
        starts[j] = view.lf(starts[j - 1]);
    return starts;
}

// Extends (F, L)-constant runs column by column, recording every block that
// cannot be widened or lengthened further. A skipped run is only covered when
// some growth carries it at full width and never stops on an overlap; reached
// tracks this so the leftovers can be grown on their own.
struct BlockGrower {
    const CycleView& view;
    std::vector<std::uint64_t> run_end; // end of the (F, L)-run starting at v, 0 elsewhere
    std::vector<bool> reached;
    std::vector<Candidate> out;

    struct TrailEntry {
        std::uint64_t run;
        std::uint64_t parent;
        bool dead;
    };
    static constexpr std::uint64_t kNoTrail = ~std::uint64_t{0};
    std::vector<TrailEntry> trail;

    explicit BlockGrower(const CycleView& v) : view(v), run_end(v.size(), 0), reached(v.size(), false) {}

    void forget_trail(std::uint64_t t) {
        for (; t != kNoTrail && !trail[t].dead; t = trail[t].parent) {
            trail[t].dead = true;
            reached[trail[t].run] = false;
        }
    }

    void grow(std::uint64_t run_start, std::uint64_t run_width) {
        struct Node {
            std::uint64_t first;  // start of column 1
            std::uint64_t width;
            std::uint64_t length; // columns so far
            std::uint64_t last;   // start of the last column; L constant on it
            std::uint64_t trail;
        };
        std::vector<Node> stack{{run_start, run_width, 1, run_start, kNoTrail}};
        while (!stack.empty()) {
            Node node = stack.back();
            stack.pop_back();
            while (true) {
                const std::uint64_t next = view.lf(node.last);
                const bool overlaps_first = next < node.first + node.width && node.first < next + node.width;
                if (overlaps_first || next == 0) {
                    if (node.length >= 2)
                        out.push_back({node.first, node.width, node.length});
                    if (next == 0)
                        break;
                    forget_trail(node.trail);
                    // tiles no wider than the shift cannot overlap their own image
                    const std::uint64_t shift = next > node.first ? next - node.first : node.first - next;
                    if (shift < 2)
                        break;
                    for (std::uint64_t a = 0; a + 2 <= node.width; a += shift)
                        stack.push_back({node.first + a, std::min(shift, node.width - a), node.length,
                                         node.last + a, kNoTrail});
                    if (node.width % shift != 0)
                        for (std::uint64_t b = node.width; b >= 2; b = b > shift ? b - shift : 0) {
                            const std::uint64_t a = b > shift ? b - shift : 0;
                            stack.push_back({node.first + a, b - a, node.length, node.last + a, kNoTrail});
                        }
                    break;
                }
                ++node.length;
                node.last = next;
                if (run_end[next] == next + node.width) {
                    reached[next] = true;
                    trail.push_back({next, node.trail, false});
                    node.trail = trail.size() - 1;
                }
                if (view.l_constant(next, node.width))
                    continue;
                out.push_back({node.first, node.width, node.length});
                for (std::uint64_t a = next; a < next + node.width;) {
                    const std::uint64_t b = std::min(view.l_end[a], next + node.width);
                    if (b - a >= 2)
                        stack.push_back({node.first + (a - next), b - a, node.length, a, node.trail});
                    a = b;
                }
                break;
            }
        }
    }
};

// A run is skipped when its preimage is itself a run that extends into it.
bool extendable_to_the_left(const CycleView& view, std::uint64_t s, std::uint64_t k) {
    const std::uint64_t p = view.wg.l_position(s);
    if (view.wg.l_position(s + k - 1) != p + k - 1)
        return false;
    return p != 0 && view.in_label[p] == view.in_label[p + k - 1];
}

} // namespace

void check_block(const WheelerGraph& wg, const Block& block) {
    require_untunnelled(wg);
    const std::uint64_t n = wg.n_vertices();
    const std::uint64_t k = block.width;
    if (k < 2 || block.length() < 2)
        throw ParameterError("block needs width and length of at least 2");
    std::vector<bool> seen(n, false);
    for (std::uint64_t j = 0; j < block.length(); ++j) {
        const std::uint64_t s = block.column_starts[j];
        if (s == 0 || s + k > n)
            throw ParameterError("block column out of range or holding vertex 0");
        for (std::uint64_t v = s; v < s + k; ++v) {
            if (seen[v])
                throw ParameterError("block columns overlap");
            seen[v] = true;
        }
        if (j + 1 < block.length()) {
            for (std::uint64_t v = s + 1; v < s + k; ++v)
                if (wg.label(v) != wg.label(s))
                    throw ParameterError("block paths spell different labels");
            if (wg.target(s) != block.column_starts[j + 1])
                throw ParameterError("block columns are not linked by LF");
        }
    }
    const std::uint64_t s = block.column_starts[0];
    if (wg.in_label(s) != wg.in_label(s + k - 1))
        throw ParameterError("first block column has mixed incoming labels");
}

TunnelPlan find_blocks(const WheelerGraph& wg) {
    require_untunnelled(wg);
    TunnelPlan plan;
    const CycleView view(wg);
    const std::uint64_t n = view.size();
    if (n < 3)
        return plan;

    BlockGrower grower(view);
    std::vector<std::uint64_t> skipped;
    for (std::uint64_t s = 1; s < n;) {
        std::uint64_t e = s + 1;
        while (e < n && wg.label(e) == wg.label(s) && view.in_label[e] == view.in_label[s])
            ++e;
        grower.run_end[s] = e;
        s = e;
    }
    for (std::uint64_t s = 1; s < n; s = grower.run_end[s]) {
        const std::uint64_t k = grower.run_end[s] - s;
        if (k < 2)
            continue;
        if (extendable_to_the_left(view, s, k))
            skipped.push_back(s);
        else
            grower.grow(s, k);
    }
    for (std::uint64_t s : skipped)
        if (!grower.reached[s])
            grower.grow(s, grower.run_end[s] - s);
    std::vector<Candidate> candidates = std::move(grower.out);

    std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> queue(CandidateOrder{},
                                                                                 std::move(candidates));
    std::vector<bool> used(n, false);
    while (!queue.empty()) {
        const Candidate cand = queue.top();
        queue.pop();
        const auto starts = column_starts(view, cand.start, cand.length);
        std::vector<bool> column_free(cand.length, true);
        std::vector<bool> path_free(cand.width, true);
        bool all_free = true;
        for (std::uint64_t j = 0; j < cand.length; ++j) {
            for (std::uint64_t o = 0; o < cand.width; ++o) {
                if (used[starts[j] + o]) {
                    column_free[j] = false;
                    path_free[o] = false;
                    all_free = false;
                }
            }
        }
        if (all_free) {
            for (std::uint64_t s : starts)
                std::fill(used.begin() + static_cast<std::ptrdiff_t>(s),
                          used.begin() + static_cast<std::ptrdiff_t>(s + cand.width), true);
            plan.blocks.push_back({cand.width, starts});
            plan.projected_edge_saving += cand.weight();
            continue;
        }

        auto longest_true_run = [](const std::vector<bool>& flags) {
            std::uint64_t best_begin = 0, best_len = 0;
            for (std::uint64_t i = 0; i < flags.size();) {
                if (!flags[i]) {
                    ++i;
                    continue;
                }
                std::uint64_t j = i;
                while (j < flags.size() && flags[j])
                    ++j;
                if (j - i > best_len) {
                    best_begin = i;
                    best_len = j - i;
                }
                i = j;
            }
            return std::pair{best_begin, best_len};
        };
        const auto [col_begin, col_len] = longest_true_run(column_free);
        const auto [path_begin, path_len] = longest_true_run(path_free);
        Candidate shorter{col_len >= 2 ? starts[col_begin] : 0, cand.width, col_len};
        Candidate narrower{cand.start + path_begin, path_len, cand.length};
        const bool shorter_ok = col_len >= 2;
        const bool narrower_ok = path_len >= 2;
        if (shorter_ok && (!narrower_ok || shorter.weight() >= narrower.weight()))
            queue.push(shorter);
        else if (narrower_ok)
            queue.push(narrower);
    }
    return plan;
}

WheelerGraph apply_tunnel(const WheelerGraph& wg, const TunnelPlan& plan) {
    require_untunnelled(wg);
    const std::uint64_t n = wg.n_vertices();
    if (plan.blocks.empty())
        return wg;

    constexpr std::uint64_t kNone = ~std::uint64_t{0};
    std::vector<std::uint64_t> column_first(n);
    std::vector<std::uint64_t> column_index(n, kNone); // position of v's column in its block
    std::vector<std::uint64_t> block_length(n, 0);
    for (std::uint64_t v = 0; v < n; ++v)
        column_first[v] = v;
    for (const Block& block : plan.blocks) {
        check_block(wg, block);
        for (std::uint64_t j = 0; j < block.length(); ++j) {
            const std::uint64_t s = block.column_starts[j];
            for (std::uint64_t v = s; v < s + block.width; ++v) {
                if (column_index[v] != kNone)
                    throw ParameterError("tunnel plan has overlapping blocks");
                column_first[v] = s;
                column_index[v] = j;
                block_length[v] = block.length();
            }
        }
    }

    std::vector<std::uint64_t> new_id(n);
    std::uint64_t next_id = 0;
    for (std::uint64_t v = 0; v < n; ++v)
        new_id[v] = column_first[v] == v ? next_id++ : new_id[column_first[v]];

    EdgeListGraph graph;
    graph.n_vertices = next_id;
    graph.edges.reserve(n);
    for (std::uint64_t v = 0; v < n; ++v) {
        const bool merged_away = column_first[v] != v;
        const bool inner = column_index[v] != kNone && column_index[v] + 1 < block_length[v];
        if (merged_away && inner)
            continue;
        graph.edges.push_back(Edge{new_id[v], new_id[wg.target(v)], wg.label(v)});
    }
    WheelerGraph result = edges_to_succinct(graph);
    if (result.n_edges() + plan.projected_edge_saving != wg.n_edges())
        throw ParameterError("tunnel plan saving does not match its blocks");
    return result;
}

SymbolString walk_tunnelled(const WheelerGraph& wg, std::uint64_t start) {
    if (start >= wg.n_vertices())
        throw ParameterError("start vertex out of range");
    std::uint64_t max_in_degree = 1;
    {
        std::uint64_t run = 0;
        for (std::uint64_t f = 0; f < wg.n_edges(); ++f) {
            run = wg.in_bits()[f] ? 1 : run + 1;
            max_in_degree = std::max(max_in_degree, run);
        }
    }
    const std::uint64_t step_limit = wg.n_edges() * max_in_degree;

    SymbolString reversed;
    std::uint64_t v = start;
    std::uint64_t offset = 0;
    bool in_tunnel = false;
    do {
        if (reversed.size() >= step_limit)
            throw CorruptionError("walk did not return to the start vertex");
        std::uint64_t pos = wg.out_begin(v);
        const std::uint64_t out_degree = wg.out_degree(v);
        if (out_degree > 1) {
            if (!in_tunnel)
                throw CorruptionError("branching vertex " + std::to_string(v) + " reached outside a tunnel");
            if (offset >= out_degree)
                throw CorruptionError("tunnel offset exceeds the exit multiplicity at vertex " + std::to_string(v));
            pos += offset;
            offset = 0;
            in_tunnel = false;
        }
        reversed.push_back(wg.label(pos));
        const std::uint64_t f = wg.f_position(pos);
        v = wg.target_of_f(f);
        if (wg.in_degree(v) > 1) {
            if (in_tunnel)
                throw CorruptionError("tunnel entered twice before exiting at vertex " + std::to_string(v));
            offset = f - wg.in_begin(v);
            in_tunnel = true;
        }
    } while (v != start || in_tunnel);
    std::reverse(reversed.begin(), reversed.end());
    return reversed;
}

SymbolString decode_tunnelled(const WheelerGraph& wg) {
    if (wg.n_vertices() == 0)
        throw ParameterError("empty graph");
    return rotate_terminators_to_end(walk_tunnelled(wg, 0));
}

void write_plan(std::ostream& out, const TunnelPlan& plan) {
    for (const Block& block : plan.blocks) {
        out << block.width << ' ' << block.length();
        for (std::uint64_t s : block.column_starts)
            out << ' ' << s;
        out << '\n';
    }
}

TunnelPlan read_plan(std::istream& in) {
    TunnelPlan plan;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream fields(line);
        Block block;
        std::uint64_t length = 0;
        if (!(fields >> block.width >> length))
            throw FormatError("malformed tunnel plan line: " + line);
        block.column_starts.resize(length);
        for (auto& s : block.column_starts)
            if (!(fields >> s))
                throw FormatError("tunnel plan line has too few column starts: " + line);
        std::string extra;
        if (fields >> extra)
            throw FormatError("tunnel plan line has extra fields: " + line);
        if (block.width >= 2 && length >= 2)
            plan.projected_edge_saving += block.saving();
        plan.blocks.push_back(std::move(block));
    }
    return plan;
}

} // namespace pfwg
