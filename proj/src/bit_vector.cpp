#include "pfwg/bit_vector.hpp"

#include <bit>
#include <stdexcept>

#include "pfwg/types.hpp"

namespace pfwg {

BitVector::BitVector(const std::vector<bool>& bits) : size_(bits.size()) {
    const std::size_t blocks = size_ / kBitsPerBlock + 1;
    data_.assign(blocks * kStride, 0);
    for (std::size_t i = 0; i < size_; ++i) {
        if (bits[i]) {
            const std::size_t w = i / 64;
            data_[(w / kWordsPerBlock) * kStride + 1 + w % kWordsPerBlock] |= std::uint64_t{1} << (i % 64);
        }
    }
    std::size_t running = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
        data_[b * kStride] = running;
        for (std::size_t j = 0; j < kWordsPerBlock; ++j)
            running += std::popcount(data_[b * kStride + 1 + j]);
    }
    ones_ = running;
}

bool BitVector::operator[](std::size_t i) const {
    return (word(i / 64) >> (i % 64)) & 1U;
}

std::size_t BitVector::rank1(std::size_t i) const {
    if (i > size_)
        throw std::out_of_range("rank1 beyond bitvector end");
    const std::size_t block = i / kBitsPerBlock;
    const std::uint64_t* base = &data_[block * kStride];
    std::size_t r = base[0];
    const std::size_t in_block = i % kBitsPerBlock;
    const std::size_t full_words = in_block / 64;
    for (std::size_t j = 0; j < full_words; ++j)
        r += std::popcount(base[1 + j]);
    if (const std::size_t rest = in_block % 64; rest != 0)
        r += std::popcount(base[1 + full_words] & ((std::uint64_t{1} << rest) - 1));
    return r;
}

std::size_t BitVector::select1(std::size_t k) const {
    if (k >= ones_)
        throw std::out_of_range("select1 beyond the number of ones");
    std::size_t lo = 0;
    std::size_t hi = data_.size() / kStride; // first block whose count exceeds k lies in (lo, hi]
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (data_[mid * kStride] <= k)
            lo = mid;
        else
            hi = mid;
    }
    std::size_t remaining = k - data_[lo * kStride];
    for (std::size_t j = 0; j < kWordsPerBlock; ++j) {
        std::uint64_t w = data_[lo * kStride + 1 + j];
        const std::size_t count = std::popcount(w);
        if (remaining < count) {
            for (std::size_t t = 0; t < remaining; ++t)
                w &= w - 1;
            return lo * kBitsPerBlock + j * 64 + std::countr_zero(w);
        }
        remaining -= count;
    }
    throw CorruptionError("select1 rank directory is inconsistent");
}

std::vector<std::uint8_t> BitVector::to_bytes() const {
    std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
    for (std::size_t i = 0; i < size_; ++i)
        if ((*this)[i])
            out[i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
    return out;
}

BitVector BitVector::from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t bits) {
    if (bytes.size() != (bits + 7) / 8)
        throw FormatError("bit array length does not match its bit count");
    std::vector<bool> v(bits);
    for (std::size_t i = 0; i < bits; ++i)
        v[i] = (bytes[i / 8] >> (i % 8)) & 1U;
    if (bits % 8 != 0 && (bytes.back() >> (bits % 8)) != 0)
        throw FormatError("non-zero padding in bit array");
    return BitVector(v);
}

std::vector<bool> BitVector::bits() const {
    std::vector<bool> v(size_);
    for (std::size_t i = 0; i < size_; ++i)
        v[i] = (*this)[i];
    return v;
}

} // namespace pfwg
