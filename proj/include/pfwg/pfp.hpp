#ifndef PFWG_PFP_HPP
#define PFWG_PFP_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "pfwg/corpus.hpp"
#include "pfwg/types.hpp"

namespace pfwg {

/// Karp-Rabin fingerprint over a fixed-length window, modulo the Mersenne
/// prime 2^61 - 1. Symbols are hashed as `code + 1` so runs of the
/// terminator do not collapse to zero.
class RollingHash {
public:
    static constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;
    static constexpr std::uint64_t kBase = 0x5bd1e995;

    explicit RollingHash(std::size_t window);

    // Hashes `window` from scratch and makes it the current window.
    std::uint64_t reset(std::span<const Symbol> window);
    // Drops `outgoing` from the front, appends `incoming`.
    std::uint64_t roll(Symbol outgoing, Symbol incoming);

    std::uint64_t value() const { return value_; }
    std::size_t window() const { return window_; }

    static std::uint64_t of(std::span<const Symbol> window);

private:
    std::size_t window_;
    std::uint64_t value_ = 0;
    std::uint64_t top_power_ = 1; // kBase^(window-1)
};

// Residue of the window hash modulo p; a window is a trigger when this is 0.
std::uint64_t rolling_hash(std::span<const Symbol> window, std::uint64_t p);

struct PfpParams {
    std::size_t w = 4;
    std::uint64_t p = 50;
    // Explicit trigger words; when set, hashing is not used.
    std::optional<std::vector<SymbolString>> triggers;
};

struct PfpOutput {
    std::vector<SymbolString> dictionary; // strictly increasing
    std::vector<std::uint64_t> parse;     // ranks into dictionary
    std::size_t w = 0;
    std::vector<std::uint64_t> occurrences;

    std::size_t dictionary_symbols() const;
};

PfpOutput parse_pfp(const Text& framed, const PfpParams& params);

// Rejoins the phrases, checking every w-symbol overlap.
SymbolString reconstruct(const PfpOutput& pfp);

// .dict: phrase bytes each followed by 0x01, then a final 0x00.
void write_dictionary(std::ostream& out, const PfpOutput& pfp, const Alphabet& alphabet);
// .parse: little-endian 64-bit ranks.
void write_parse(std::ostream& out, const PfpOutput& pfp);
std::vector<SymbolString> read_dictionary(std::istream& in, const Alphabet& alphabet);
std::vector<std::uint64_t> read_parse(std::istream& in);

// Size in bytes of the .dict file for this dictionary.
std::size_t dictionary_file_bytes(const PfpOutput& pfp);

} // namespace pfwg

#endif // PFWG_PFP_HPP
