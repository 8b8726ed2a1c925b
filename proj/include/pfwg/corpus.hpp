#ifndef PFWG_CORPUS_HPP
#define PFWG_CORPUS_HPP

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pfwg/types.hpp"

namespace pfwg {

/// Ordered byte alphabet. Byte `b` maps to code `2 + rank(b)`; codes 0 and 1
/// are reserved for the terminator `$` and the start marker `#`, so the
/// terminator is the smallest symbol by plain integer comparison.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<unsigned char> bytes);

    static Alphabet dna();
    static Alphabet of(std::string_view bytes);

    bool contains(unsigned char byte) const { return code_of_[byte] != 0; }
    Symbol encode(unsigned char byte) const;
    unsigned char decode(Symbol code) const;

    // Number of corpus symbols, sentinels excluded.
    std::size_t size() const { return bytes_.size(); }
    const std::vector<unsigned char>& bytes() const { return bytes_; }

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.bytes_ == b.bytes_; }

private:
    std::vector<unsigned char> bytes_;
    std::array<Symbol, 256> code_of_{}; // 0 = absent
};

struct Text {
    SymbolString symbols;
    Alphabet alphabet;
    bool framed = false;
    std::size_t padding = 0; // number of trailing terminators when framed

    std::size_t size() const { return symbols.size(); }
    std::string to_string() const;

    // '$' and '#' become the sentinels unless the alphabet holds them.
    static Text from_string(std::string_view bytes, const Alphabet& alphabet);
    // Alphabet = the distinct bytes of `bytes` other than '$' and '#'.
    static Text from_string(std::string_view bytes);
};

// Drops header lines and every symbol outside {A,C,G,T} (case-folded) and
// concatenates the records. Throws ParameterError("empty corpus").
Text ingest_fasta(std::string_view raw);

// `#` + text + `$`^w.
Text frame(const Text& text, std::size_t w);

} // namespace pfwg

#endif // PFWG_CORPUS_HPP
