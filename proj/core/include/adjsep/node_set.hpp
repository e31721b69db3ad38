#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace adjsep {

using NodeId = std::uint32_t;

// Fixed-universe bitset over dense node indices. Iteration is ascending index,
// which is node insertion order.
class NodeSet {
public:
    class iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = NodeId;
        using difference_type = std::ptrdiff_t;
        using pointer = const NodeId*;
        using reference = NodeId;

        iterator() = default;
        iterator(const std::uint64_t* words, std::size_t nwords, std::size_t pos)
            : words_(words), nwords_(nwords), pos_(pos) { advance_to_set(); }

        NodeId operator*() const { return static_cast<NodeId>(pos_); }
        iterator& operator++() {
            ++pos_;
            advance_to_set();
            return *this;
        }
        iterator operator++(int) {
            iterator t = *this;
            ++*this;
            return t;
        }
        bool operator==(const iterator& o) const { return pos_ == o.pos_; }

    private:
        void advance_to_set() {
            std::size_t w = pos_ >> 6;
            if (w >= nwords_) {
                pos_ = nwords_ << 6;
                return;
            }
            std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (pos_ & 63));
            while (cur == 0) {
                if (++w >= nwords_) {
                    pos_ = nwords_ << 6;
                    return;
                }
                cur = words_[w];
            }
            pos_ = (w << 6) + static_cast<std::size_t>(std::countr_zero(cur));
        }

        const std::uint64_t* words_ = nullptr;
        std::size_t nwords_ = 0;
        std::size_t pos_ = 0;
    };

    NodeSet() = default;
    explicit NodeSet(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}
    NodeSet(std::size_t universe, std::initializer_list<NodeId> ids) : NodeSet(universe) {
        for (NodeId v : ids) insert(v);
    }
    template <class It>
    NodeSet(std::size_t universe, It first, It last) : NodeSet(universe) {
        for (; first != last; ++first) insert(*first);
    }

    static NodeSet full(std::size_t universe) {
        NodeSet s(universe);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    std::size_t universe() const { return universe_; }

    bool contains(NodeId v) const {
        return v < universe_ && ((words_[v >> 6] >> (v & 63)) & 1u);
    }
    void insert(NodeId v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void erase(NodeId v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    void clear() {
        for (auto& w : words_) w = 0;
    }

    std::size_t size() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    NodeSet& operator|=(const NodeSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    NodeSet& operator&=(const NodeSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    NodeSet& operator-=(const NodeSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
    friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
    friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

    NodeSet complement() const {
        NodeSet s(universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
        s.trim();
        return s;
    }

    bool is_subset_of(const NodeSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    bool intersects(const NodeSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    // smallest member, or universe() if empty
    NodeId first() const { return *begin(); }

    iterator begin() const { return iterator(words_.data(), words_.size(), 0); }
    iterator end() const { return iterator(words_.data(), words_.size(), words_.size() << 6); }

    std::vector<NodeId> to_vector() const { return {begin(), end()}; }

    bool operator==(const NodeSet& o) const = default;

    std::size_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ universe_;
        for (auto w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }

    // strict total order (lowest differing member decides), for ordered containers
    bool operator<(const NodeSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t a = words_[i], b = o.words_[i];
            if (a == b) continue;
            std::uint64_t diff = a ^ b;
            std::uint64_t low = diff & (~diff + 1);
            return (b & low) != 0;
        }
        return false;
    }

private:
    void trim() {
        if (universe_ & 63) words_.back() &= (std::uint64_t{1} << (universe_ & 63)) - 1;
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

struct NodeSetHash {
    std::size_t operator()(const NodeSet& s) const { return s.hash(); }
};

}  // namespace adjsep
