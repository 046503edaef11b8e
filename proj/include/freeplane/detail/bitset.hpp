#ifndef FREEPLANE_DETAIL_BITSET_HPP
#define FREEPLANE_DETAIL_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace freeplane::detail {

class DynamicBitset {
  public:
    explicit DynamicBitset(std::size_t n = 0) : size_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return size_; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void clear() { std::fill(words_.begin(), words_.end(), 0); }

    /// Number of set bits with index > i.
    std::size_t count_above(std::size_t i) const {
        std::size_t first = i + 1;
        if (first >= size_) return 0;
        std::size_t w = first >> 6;
        std::size_t total = std::popcount(words_[w] & (~std::uint64_t{0} << (first & 63)));
        for (++w; w < words_.size(); ++w) total += std::popcount(words_[w]);
        return total;
    }

  private:
    std::size_t size_;
    std::vector<std::uint64_t> words_;
};

} // namespace freeplane::detail

#endif
