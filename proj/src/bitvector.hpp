#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace stanley::detail {

/// Growable dense set of non-negative integers.
class BitVector {
   public:
    void insert(std::int64_t v) {
        const auto word = static_cast<std::size_t>(v) >> 6;
        if (word >= words_.size()) words_.resize(std::max(word + 1, words_.size() * 2), 0);
        words_[word] |= std::uint64_t{1} << (v & 63);
    }

    bool contains(std::int64_t v) const {
        const auto word = static_cast<std::size_t>(v) >> 6;
        return word < words_.size() && ((words_[word] >> (v & 63)) & 1u);
    }

    void reserve_values(std::int64_t max_value) {
        words_.reserve((static_cast<std::size_t>(max_value) >> 6) + 1);
    }

   private:
    std::vector<std::uint64_t> words_;
};

}  // namespace stanley::detail
