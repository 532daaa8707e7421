#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace latlin::detail {

/// Dense rows-by-cols bit matrix. Used for order relations (row x = the set
/// of elements related to x) so that bound computations are word-parallel.
class BitRel {
public:
    BitRel() = default;
    BitRel(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words() const { return words_; }

    bool test(std::size_t i, std::size_t j) const {
        return (bits_[i * words_ + (j >> 6)] >> (j & 63)) & 1u;
    }
    void set(std::size_t i, std::size_t j) {
        bits_[i * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
    }

    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
    std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }

    /// row(i) |= row(j)
    void or_row(std::size_t i, std::size_t j) {
        std::uint64_t* a = row(i);
        const std::uint64_t* b = row(j);
        for (std::size_t w = 0; w < words_; ++w) a[w] |= b[w];
    }

    bool operator==(const BitRel&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// One standalone bit row, for scratch intersections.
class BitRow {
public:
    BitRow() = default;
    explicit BitRow(std::size_t cols) : cols_(cols), bits_((cols + 63) / 64, 0) {}

    std::size_t cols() const { return cols_; }
    std::size_t words() const { return bits_.size(); }
    const std::uint64_t* data() const { return bits_.data(); }
    std::uint64_t* data() { return bits_.data(); }

    bool test(std::size_t j) const { return (bits_[j >> 6] >> (j & 63)) & 1u; }
    void set(std::size_t j) { bits_[j >> 6] |= std::uint64_t{1} << (j & 63); }
    void clear() { std::fill(bits_.begin(), bits_.end(), 0); }

    void assign_and(const std::uint64_t* a, const std::uint64_t* b) {
        for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] = a[w] & b[w];
    }

    bool empty() const {
        for (std::uint64_t w : bits_)
            if (w) return false;
        return true;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : bits_) c += std::popcount(w);
        return c;
    }

    /// this ⊆ other (other given as a raw row of the same width)
    bool subset_of(const std::uint64_t* other) const {
        for (std::size_t w = 0; w < bits_.size(); ++w)
            if (bits_[w] & ~other[w]) return false;
        return true;
    }

    int lowest() const {
        for (std::size_t w = 0; w < bits_.size(); ++w)
            if (bits_[w]) return static_cast<int>(w * 64 + std::countr_zero(bits_[w]));
        return -1;
    }

    int highest() const {
        for (std::size_t w = bits_.size(); w-- > 0;)
            if (bits_[w]) return static_cast<int>(w * 64 + 63 - std::countl_zero(bits_[w]));
        return -1;
    }

private:
    std::size_t cols_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Calls f(index) for every set bit of the given row, in ascending order.
template <class F>
void for_each_bit(const std::uint64_t* row, std::size_t words, F&& f) {
    for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t m = row[w];
        while (m) {
            f(static_cast<int>(w * 64 + std::countr_zero(m)));
            m &= m - 1;
        }
    }
}

}  // namespace latlin::detail
