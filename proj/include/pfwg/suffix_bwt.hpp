#ifndef PFWG_SUFFIX_BWT_HPP
#define PFWG_SUFFIX_BWT_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pfwg/types.hpp"

namespace pfwg {

// 0-based suffix start positions in lexicographic order.
using SuffixArray = std::vector<std::uint64_t>;

struct BwtString {
    SymbolString symbols;
    std::vector<std::uint64_t> counts; // counts[c] = occurrences of code c

    static BwtString from(SymbolString symbols);
    std::size_t size() const { return symbols.size(); }
};

// Induced sorting over an integer alphabet [0, alphabet_size). The last
// symbol must be the unique minimum.
SuffixArray induced_sort(std::span<const Symbol> text, std::size_t alphabet_size);

// Suffix array of a null-terminated text; rejects a missing or repeated
// terminator.
SuffixArray build_suffix_array(std::span<const Symbol> text);

BwtString bwt_from_sa(std::span<const Symbol> text, const SuffixArray& sa);

// Inverse of bwt_from_sa for texts with exactly one terminator.
SymbolString invert_bwt(const BwtString& bwt);

// Last column of the explicitly sorted rotation matrix. Quadratic; test scale only.
BwtString naive_bwt_oracle(std::span<const Symbol> text);

void write_suffix_array(std::ostream& out, const SuffixArray& sa);

} // namespace pfwg

#endif // PFWG_SUFFIX_BWT_HPP
