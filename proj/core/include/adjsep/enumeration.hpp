#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "adjsep/graph.hpp"
#include "adjsep/separation.hpp"

namespace adjsep {

// Pull-based cursor over node sets. Work happens only inside next().
class SepStream {
public:
    class Source {
    public:
        virtual ~Source() = default;
        virtual std::optional<NodeSet> pull() = 0;
    };

    SepStream() = default;
    explicit SepStream(std::unique_ptr<Source> src) : src_(std::move(src)) {}

    std::optional<NodeSet> next();
    // number of sets produced so far
    std::size_t emitted() const { return emitted_; }
    bool exhausted() const { return done_; }

    std::vector<NodeSet> take(std::size_t limit = std::numeric_limits<std::size_t>::max());

private:
    std::unique_ptr<Source> src_;
    std::size_t emitted_ = 0;
    bool done_ = false;
};

// all separators Z with I ⊆ Z ⊆ R; delay O(n(n+m))
SepStream list_sep(std::shared_ptr<const MixedGraph> g, const SepQuery& q);
SepStream list_sep(const MixedGraph& g, const SepQuery& q);

// all I-minimal separators Z with I ⊆ Z ⊆ R; delay O(n^3)
SepStream list_min_sep(std::shared_ptr<const MixedGraph> g, const SepQuery& q);
SepStream list_min_sep(const MixedGraph& g, const SepQuery& q);

}  // namespace adjsep
