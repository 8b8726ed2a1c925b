// Brute-force reference implementations used only by tests. None of these
// call into the library except for plain data types.
#ifndef PFWG_TESTS_ORACLES_HPP
#define PFWG_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "pfwg/types.hpp"
#include "pfwg/wheeler.hpp"

namespace oracle {

using pfwg::Symbol;
using pfwg::SymbolString;

inline std::string random_text(std::mt19937_64& rng, std::size_t n, unsigned sigma) {
    std::string s(n, 'a');
    for (char& c : s)
        c = static_cast<char>('a' + rng() % sigma);
    return s;
}

// Text built from a short random block repeated with sparse edits.
inline std::string repetitive_text(std::mt19937_64& rng, std::size_t n, unsigned sigma) {
    const std::size_t unit = 1 + rng() % std::max<std::size_t>(1, n / 4 + 1);
    const std::string base = random_text(rng, unit, sigma);
    std::string s;
    while (s.size() < n)
        s += base;
    s.resize(n);
    for (std::size_t e = rng() % 4; e > 0 && n > 0; --e)
        s[rng() % n] = static_cast<char>('a' + rng() % sigma);
    return s;
}

// 0-based suffix array by direct comparison.
inline std::vector<std::uint64_t> suffix_array(const SymbolString& t) {
    std::vector<std::uint64_t> sa(t.size());
    std::iota(sa.begin(), sa.end(), 0);
    std::sort(sa.begin(), sa.end(), [&](std::uint64_t a, std::uint64_t b) {
        return std::lexicographical_compare(t.begin() + a, t.end(), t.begin() + b, t.end());
    });
    return sa;
}

inline SymbolString rotation(const SymbolString& t, std::size_t i) {
    SymbolString r(t.begin() + i, t.end());
    r.insert(r.end(), t.begin(), t.begin() + i);
    return r;
}

// Start positions of all rotations in sorted order (stable for equal ones).
inline std::vector<std::uint64_t> sorted_rotations(const SymbolString& t) {
    std::vector<SymbolString> rots;
    for (std::size_t i = 0; i < t.size(); ++i)
        rots.push_back(rotation(t, i));
    std::vector<std::uint64_t> order(t.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) { return rots[a] < rots[b]; });
    return order;
}

inline SymbolString rotation_bwt(const SymbolString& t) {
    SymbolString out;
    for (std::uint64_t i : sorted_rotations(t))
        out.push_back(t[(i + t.size() - 1) % t.size()]);
    return out;
}

// Karp-Rabin value of a window by Horner's rule, modulo 2^61 - 1.
inline std::uint64_t karp_rabin(const SymbolString& window) {
    constexpr unsigned __int128 mod = (std::uint64_t{1} << 61) - 1;
    constexpr unsigned __int128 base = 0x5bd1e995;
    unsigned __int128 h = 0;
    for (Symbol s : window)
        h = (h * base + s + 1) % mod;
    return static_cast<std::uint64_t>(h);
}

struct Parse {
    std::vector<SymbolString> dictionary;
    std::vector<std::uint64_t> parse;
    std::vector<std::uint64_t> starts; // text position of each parsed phrase
};

// Prefix-free parse straight from the definition.
inline Parse pfp(const SymbolString& framed, std::size_t w, const std::function<bool(const SymbolString&)>& trigger) {
    const std::size_t n = framed.size();
    std::vector<SymbolString> phrases;
    Parse out;
    std::size_t begin = 0;
    for (std::size_t pos = 1; pos + w <= n; ++pos) {
        const SymbolString window(framed.begin() + pos, framed.begin() + pos + w);
        if (pos + w == n || trigger(window)) {
            phrases.emplace_back(framed.begin() + begin, framed.begin() + pos + w);
            out.starts.push_back(begin);
            begin = pos;
        }
    }
    if (phrases.empty()) {
        phrases.push_back(framed);
        out.starts.push_back(0);
    }
    std::set<SymbolString> unique(phrases.begin(), phrases.end());
    out.dictionary.assign(unique.begin(), unique.end());
    for (const auto& ph : phrases)
        out.parse.push_back(std::lower_bound(out.dictionary.begin(), out.dictionary.end(), ph) - out.dictionary.begin());
    return out;
}

inline bool contains(const SymbolString& text, const SymbolString& pattern) {
    return std::search(text.begin(), text.end(), pattern.begin(), pattern.end()) != text.end();
}

// Block of an untunnelled cycle graph, described by explicit vertex columns.
struct Block {
    std::uint64_t start = 0; // first column start
    std::uint64_t width = 0;
    std::uint64_t length = 0;
    std::vector<std::uint64_t> vertices;

    std::uint64_t saving() const { return (width - 1) * (length - 1); }
};

// All valid blocks of a cycle graph given as an edge list (one out-edge
// per vertex), checked against the block definition directly.
inline std::vector<Block> all_blocks(const pfwg::EdgeListGraph& g) {
    const std::uint64_t n = g.n_vertices;
    std::vector<std::uint64_t> next(n);
    std::vector<Symbol> out_label(n), in_label(n);
    for (const auto& e : g.edges) {
        next[e.source] = e.target;
        out_label[e.source] = e.label;
        in_label[e.target] = e.label;
    }
    std::vector<Block> blocks;
    for (std::uint64_t s = 1; s < n; ++s) {
        for (std::uint64_t k = 2; s + k <= n; ++k) {
            bool uniform_in = true;
            for (std::uint64_t v = s; v < s + k; ++v)
                uniform_in = uniform_in && in_label[v] == in_label[s];
            if (!uniform_in)
                break;
            std::vector<std::uint64_t> column(k);
            std::iota(column.begin(), column.end(), s);
            std::set<std::uint64_t> used(column.begin(), column.end());
            std::vector<std::uint64_t> vertices = column;
            for (std::uint64_t len = 2;; ++len) {
                // previous column must share one out-label; next column must be contiguous
                bool same_label = true;
                for (std::uint64_t v : column)
                    same_label = same_label && out_label[v] == out_label[column[0]];
                if (!same_label)
                    break;
                std::vector<std::uint64_t> nxt;
                for (std::uint64_t v : column)
                    nxt.push_back(next[v]);
                bool ok = true;
                for (std::uint64_t i = 1; i < k; ++i)
                    ok = ok && nxt[i] == nxt[0] + i;
                for (std::uint64_t v : nxt)
                    ok = ok && v != 0 && !used.count(v);
                if (!ok)
                    break;
                used.insert(nxt.begin(), nxt.end());
                vertices.insert(vertices.end(), nxt.begin(), nxt.end());
                column = nxt;
                blocks.push_back({s, k, len, vertices});
            }
        }
    }
    return blocks;
}

// Largest total saving of pairwise vertex-disjoint blocks (n <= ~20).
inline std::uint64_t optimal_saving(std::uint64_t n, const std::vector<Block>& blocks) {
    std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> by_min(n); // (mask, saving)
    for (const auto& b : blocks) {
        std::uint64_t mask = 0;
        for (std::uint64_t v : b.vertices)
            mask |= std::uint64_t{1} << v;
        by_min[*std::min_element(b.vertices.begin(), b.vertices.end())].push_back({mask, b.saving()});
    }
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::vector<std::int64_t> memo(std::size_t{1} << n, -1);
    std::function<std::uint64_t(std::uint64_t)> best = [&](std::uint64_t mask) -> std::uint64_t {
        if (mask == full)
            return 0;
        if (memo[mask] >= 0)
            return static_cast<std::uint64_t>(memo[mask]);
        std::uint64_t v = 0;
        while (mask >> v & 1)
            ++v;
        std::uint64_t result = best(mask | (std::uint64_t{1} << v));
        for (const auto& [bm, saving] : by_min[v])
            if ((bm & mask) == 0)
                result = std::max(result, saving + best(mask | bm));
        memo[mask] = static_cast<std::int64_t>(result);
        return result;
    };
    return best(0);
}

} // namespace oracle

#endif // PFWG_TESTS_ORACLES_HPP
