#ifndef PFWG_MEMORY_HPP
#define PFWG_MEMORY_HPP

#include <cstddef>

// High-water mark of heap bytes requested through operator new. Linking
// this translation unit replaces the global allocation functions.
namespace pfwg::memory {

std::size_t current_bytes();
std::size_t peak_bytes();
// Sets the peak to the current usage.
void reset_peak();

} // namespace pfwg::memory

#endif // PFWG_MEMORY_HPP
