#ifndef PFWG_IO_UTIL_HPP
#define PFWG_IO_UTIL_HPP

#include <cstdint>
#include <istream>
#include <ostream>

#include "pfwg/types.hpp"

namespace pfwg::io {

inline void write_u64(std::ostream& out, std::uint64_t value) {
    char bytes[8];
    for (int i = 0; i < 8; ++i)
        bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
    out.write(bytes, 8);
}

inline bool try_read_u64(std::istream& in, std::uint64_t& value) {
    char bytes[8];
    in.read(bytes, 8);
    if (in.gcount() == 0)
        return false;
    if (in.gcount() != 8)
        throw FormatError("truncated 64-bit value");
    value = 0;
    for (int i = 0; i < 8; ++i)
        value |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i])) << (8 * i);
    return true;
}

inline std::uint64_t read_u64(std::istream& in) {
    std::uint64_t value = 0;
    if (!try_read_u64(in, value))
        throw FormatError("unexpected end of file");
    return value;
}

} // namespace pfwg::io

#endif // PFWG_IO_UTIL_HPP
