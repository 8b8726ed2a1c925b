#ifndef PFWG_BIT_VECTOR_HPP
#define PFWG_BIT_VECTOR_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pfwg {

/*
 * Plain bitvector with rank and select. Every 512-bit block is stored as one
 * cumulative popcount word followed by its eight payload words, so a rank
 * query touches one cache line. Select is a binary search over the block
 * counts followed by an in-block scan.
 */
class BitVector {
public:
    BitVector() : BitVector(std::vector<bool>{}) {}
    explicit BitVector(const std::vector<bool>& bits);

    std::size_t size() const { return size_; }
    std::size_t ones() const { return ones_; }
    bool operator[](std::size_t i) const;

    // Ones in [0, i).
    std::size_t rank1(std::size_t i) const;
    // Position of the k-th one, k counted from 0. Requires k < ones().
    std::size_t select1(std::size_t k) const;

    // Packed least-significant-bit first, trailing padding zero.
    std::vector<std::uint8_t> to_bytes() const;
    static BitVector from_bytes(const std::vector<std::uint8_t>& bytes, std::size_t bits);

    std::vector<bool> bits() const;

    friend bool operator==(const BitVector& a, const BitVector& b) {
        return a.size_ == b.size_ && a.data_ == b.data_;
    }

private:
    static constexpr std::size_t kWordsPerBlock = 8;
    static constexpr std::size_t kBitsPerBlock = 64 * kWordsPerBlock;
    static constexpr std::size_t kStride = kWordsPerBlock + 1;

    std::uint64_t word(std::size_t w) const {
        return data_[(w / kWordsPerBlock) * kStride + 1 + w % kWordsPerBlock];
    }

    std::vector<std::uint64_t> data_;
    std::size_t size_ = 0;
    std::size_t ones_ = 0;
};

} // namespace pfwg

#endif // PFWG_BIT_VECTOR_HPP
