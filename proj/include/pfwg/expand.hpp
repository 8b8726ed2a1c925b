#ifndef PFWG_EXPAND_HPP
#define PFWG_EXPAND_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "pfwg/pfp.hpp"
#include "pfwg/suffix_bwt.hpp"
#include "pfwg/types.hpp"
#include "pfwg/wheeler.hpp"

namespace pfwg {

struct SuffixEntry {
    std::uint64_t phrase = 0;
    std::uint64_t offset = 0;
    friend bool operator==(const SuffixEntry&, const SuffixEntry&) = default;
};

/*
 * Suffix array of the dictionary. concat holds every phrase followed by its
 * own separator; separators decrease along the concatenation and sort below
 * all phrase symbols, which are shifted up by the number of phrases.
 *
 * entries lists the phrase suffixes longer than w in lexicographic order;
 * class_starts cuts it into runs of equal suffixes.
 */
struct DictionarySuffixIndex {
    SymbolString concat;
    SuffixArray sa;
    std::vector<std::uint64_t> lcp; // lcp[i] = lcp(sa[i-1], sa[i]); lcp[0] = 0
    std::vector<std::uint64_t> phrase_start;
    std::vector<SuffixEntry> entries;
    std::vector<std::uint64_t> class_starts; // ends with entries.size()
    std::size_t w = 0;

    std::size_t n_classes() const { return class_starts.size() - 1; }
    std::span<const SuffixEntry> ambiguity_class(std::size_t c) const {
        return {entries.data() + class_starts[c], entries.data() + class_starts[c + 1]};
    }
    SuffixEntry locate(std::uint64_t concat_pos) const;
};

DictionarySuffixIndex build_dictionary_index(const PfpOutput& pfp);

// Cycle graph over the rotations of the parse; labels are phrase ranks.
WheelerGraph build_parse_graph(const PfpOutput& pfp);

// One vertex of the expanded graph before parse vertices are merged: phrase
// suffix `offset` of the phrase labelling the parse edge at `edge`
// (an L position of the parse graph).
struct OrderedSuffix {
    std::uint64_t phrase = 0;
    std::uint64_t offset = 0;
    std::uint64_t edge = 0;
    friend bool operator==(const OrderedSuffix&, const OrderedSuffix&) = default;
};

// Visits (phrase suffix, parse edge) pairs in expanded-vertex order: the
// terminator tail of the last phrase first, then by suffix, then by the
// parse edge's L position.
void order_phrase_suffixes(const DictionarySuffixIndex& idx, const PfpOutput& pfp, const WheelerGraph& g_p,
                           const std::function<void(const OrderedSuffix&)>& visit);
std::vector<OrderedSuffix> order_phrase_suffixes(const DictionarySuffixIndex& idx, const PfpOutput& pfp,
                                                 const WheelerGraph& g_p);

// Replaces every parse edge by the path spelling its phrase. The last
// phrase is spelled in full, so the result has one edge per symbol of the
// framed text when g_p is untunnelled.
WheelerGraph expand_wg(const WheelerGraph& g_p, const PfpOutput& pfp, const DictionarySuffixIndex& idx);

// Number of expanded edges contributed by a parse edge labelled `phrase`.
std::uint64_t expanded_length(const PfpOutput& pfp, std::uint64_t phrase);

} // namespace pfwg

#endif // PFWG_EXPAND_HPP
