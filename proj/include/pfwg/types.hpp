#ifndef PFWG_TYPES_HPP
#define PFWG_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pfwg {

// Labels of every graph in the library are 64-bit codes, so byte texts and
// the integer alphabet of a parse share one code path.
using Symbol = std::uint64_t;
using SymbolString = std::vector<Symbol>;

inline constexpr Symbol kTerminator = 0;
inline constexpr Symbol kStartMarker = 1;
inline constexpr Symbol kFirstCorpusSymbol = 2;

// Malformed arguments or parameters.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Structurally inconsistent data: a bad BWT, a broken walk, mismatched overlaps.
class CorruptionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unreadable or mis-versioned files.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pfwg

#endif // PFWG_TYPES_HPP
