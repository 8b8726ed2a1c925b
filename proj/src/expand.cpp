#include "pfwg/expand.hpp"

#include <algorithm>
#include <queue>
#include <string>
#include <tuple>

namespace pfwg {

SuffixEntry DictionarySuffixIndex::locate(std::uint64_t concat_pos) const {
    const auto it = std::upper_bound(phrase_start.begin(), phrase_start.end(), concat_pos);
    const std::uint64_t phrase = static_cast<std::uint64_t>(it - phrase_start.begin()) - 1;
    return {phrase, concat_pos - phrase_start[phrase]};
}

namespace {

std::vector<std::uint64_t> kasai_lcp(std::span<const Symbol> text, const SuffixArray& sa) {
    const std::size_t n = text.size();
    std::vector<std::uint64_t> rank(n), lcp(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        rank[sa[i]] = i;
    std::uint64_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        const std::uint64_t j = sa[rank[i] - 1];
        while (i + h < n && j + h < n && text[i + h] == text[j + h])
            ++h;
        lcp[rank[i]] = h;
        if (h > 0)
            --h;
    }
    return lcp;
}

} // namespace

DictionarySuffixIndex build_dictionary_index(const PfpOutput& pfp) {
    DictionarySuffixIndex idx;
    idx.w = pfp.w;
    const std::uint64_t m = pfp.dictionary.size();
    if (m == 0)
        throw ParameterError("empty dictionary");
    Symbol max_symbol = 0;
    idx.concat.reserve(pfp.dictionary_symbols() + m);
    idx.phrase_start.reserve(m);
    for (std::uint64_t j = 0; j < m; ++j) {
        idx.phrase_start.push_back(idx.concat.size());
        for (Symbol s : pfp.dictionary[j]) {
            idx.concat.push_back(s + m);
            max_symbol = std::max(max_symbol, s);
        }
        idx.concat.push_back(m - 1 - j);
    }
    idx.sa = induced_sort(idx.concat, m + max_symbol + 1);
    idx.lcp = kasai_lcp(idx.concat, idx.sa);

    std::uint64_t previous_length = 0;
    std::uint64_t lcp_since_previous = 0;
    for (std::size_t i = 0; i < idx.sa.size(); ++i) {
        lcp_since_previous = std::min(lcp_since_previous, idx.lcp[i]);
        const std::uint64_t p = idx.sa[i];
        if (idx.concat[p] < m)
            continue;
        const SuffixEntry entry = idx.locate(p);
        const std::uint64_t length = pfp.dictionary[entry.phrase].size() - entry.offset;
        if (length <= pfp.w)
            continue;
        const bool same_class =
            !idx.entries.empty() && length == previous_length && lcp_since_previous >= length;
        if (!same_class)
            idx.class_starts.push_back(idx.entries.size());
        idx.entries.push_back(entry);
        previous_length = length;
        lcp_since_previous = ~std::uint64_t{0};
    }
    idx.class_starts.push_back(idx.entries.size());
    return idx;
}

WheelerGraph build_parse_graph(const PfpOutput& pfp) {
    const std::size_t m = pfp.parse.size();
    if (m == 0)
        throw ParameterError("empty parse");
    SymbolString shifted(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i)
        shifted[i] = pfp.parse[i] + 1;
    const SuffixArray sa = build_suffix_array(shifted);
    // The last phrase occurs once, so suffix order is rotation order.
    SymbolString bwt(m);
    for (std::size_t r = 0; r < m; ++r) {
        const std::uint64_t i = sa[r + 1];
        bwt[r] = pfp.parse[(i + m - 1) % m];
    }
    return wg_from_bwt(BwtString::from(std::move(bwt)));
}

std::uint64_t expanded_length(const PfpOutput& pfp, std::uint64_t phrase) {
    const std::uint64_t length = pfp.dictionary[phrase].size();
    return phrase == pfp.parse.back() ? length : length - pfp.w;
}

namespace {

void check_consistency(const WheelerGraph& g_p, const PfpOutput& pfp, const DictionarySuffixIndex& idx) {
    const std::uint64_t m = pfp.dictionary.size();
    const std::size_t w = pfp.w;
    if (idx.w != w || idx.phrase_start.size() != m)
        throw ParameterError("dictionary index does not belong to this parse");
    if (pfp.parse.empty())
        throw ParameterError("empty parse");
    if (g_p.sigma() != m)
        throw CorruptionError("parse graph labels do not cover the dictionary");
    for (const auto& phrase : pfp.dictionary)
        if (phrase.size() <= w)
            throw CorruptionError("dictionary phrase shorter than w + 1");
    for (std::uint64_t rank : pfp.parse)
        if (rank >= m)
            throw CorruptionError("parse rank " + std::to_string(rank) + " outside the dictionary");
    for (std::size_t i = 0; i + 1 < pfp.parse.size(); ++i) {
        const auto& a = pfp.dictionary[pfp.parse[i]];
        const auto& b = pfp.dictionary[pfp.parse[i + 1]];
        if (!std::equal(a.end() - static_cast<std::ptrdiff_t>(w), a.end(), b.begin()))
            throw CorruptionError("phrases " + std::to_string(i) + " and " + std::to_string(i + 1) +
                                  " do not overlap by w symbols");
    }
    const auto& last = pfp.dictionary[pfp.parse.back()];
    if (!std::all_of(last.end() - static_cast<std::ptrdiff_t>(w), last.end(),
                     [](Symbol s) { return s == kTerminator; }))
        throw CorruptionError("last phrase does not end with the terminator run");
    if (g_p.count(pfp.parse.back()) != 1)
        throw CorruptionError("last phrase must label exactly one parse edge");
}

} // namespace

void order_phrase_suffixes(const DictionarySuffixIndex& idx, const PfpOutput& pfp, const WheelerGraph& g_p,
                           const std::function<void(const OrderedSuffix&)>& visit) {
    check_consistency(g_p, pfp, idx);
    const std::uint64_t last = pfp.parse.back();
    const std::uint64_t last_length = pfp.dictionary[last].size();
    const std::uint64_t last_edge = g_p.l_position(g_p.counts_before(last));
    for (std::uint64_t t = last_length - pfp.w; t < last_length; ++t)
        visit({last, t, last_edge});

    using Cursor = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>; // L position, F position, member
    std::priority_queue<Cursor, std::vector<Cursor>, std::greater<>> heap;
    for (std::size_t c = 0; c < idx.n_classes(); ++c) {
        const auto members = idx.ambiguity_class(c);
        if (members.size() == 1) {
            const SuffixEntry& e = members[0];
            for (std::uint64_t f = g_p.counts_before(e.phrase); f < g_p.counts_before(e.phrase + 1); ++f)
                visit({e.phrase, e.offset, g_p.l_position(f)});
            continue;
        }
        for (std::size_t k = 0; k < members.size(); ++k) {
            const std::uint64_t f = g_p.counts_before(members[k].phrase);
            heap.emplace(g_p.l_position(f), f, k);
        }
        while (!heap.empty()) {
            const auto [pos, f, k] = heap.top();
            heap.pop();
            visit({members[k].phrase, members[k].offset, pos});
            if (f + 1 < g_p.counts_before(members[k].phrase + 1))
                heap.emplace(g_p.l_position(f + 1), f + 1, k);
        }
    }
}

std::vector<OrderedSuffix> order_phrase_suffixes(const DictionarySuffixIndex& idx, const PfpOutput& pfp,
                                                 const WheelerGraph& g_p) {
    std::vector<OrderedSuffix> out;
    order_phrase_suffixes(idx, pfp, g_p, [&](const OrderedSuffix& s) { out.push_back(s); });
    return out;
}

WheelerGraph expand_wg(const WheelerGraph& g_p, const PfpOutput& pfp, const DictionarySuffixIndex& idx) {
    SymbolString labels;
    std::vector<bool> out_bits;
    std::vector<bool> in_bits;
    const auto first_label = [&](std::uint64_t phrase) {
        return pfp.dictionary[phrase][expanded_length(pfp, phrase) - 1];
    };

    order_phrase_suffixes(idx, pfp, g_p, [&](const OrderedSuffix& s) {
        if (s.offset > 0) {
            labels.push_back(pfp.dictionary[s.phrase][s.offset - 1]);
            out_bits.push_back(true);
            in_bits.push_back(true);
            return;
        }
        // Whole phrase: the parse vertex this edge enters, once per vertex.
        const std::uint64_t f = g_p.f_position(s.edge);
        if (!g_p.in_bits()[f])
            return;
        const std::uint64_t v = g_p.target_of_f(f);
        for (std::uint64_t pos = g_p.out_begin(v); pos < g_p.out_end(v); ++pos) {
            labels.push_back(first_label(g_p.label(pos)));
            out_bits.push_back(pos == g_p.out_begin(v));
        }
        const std::uint64_t in_degree = g_p.in_degree(v);
        in_bits.push_back(true);
        in_bits.insert(in_bits.end(), in_degree - 1, false);
    });

    if (labels.size() != in_bits.size())
        throw CorruptionError("expanded graph has unbalanced in- and out-degrees");
    return WheelerGraph(std::move(labels), BitVector(out_bits), BitVector(in_bits));
}

} // namespace pfwg
