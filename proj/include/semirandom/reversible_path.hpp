#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "semirandom/graph.hpp"

namespace semirandom {

/// Vertex sequence backed by an implicit treap keyed by position. Node ids are
/// the vertex ids themselves, so position lookup, indexing and suffix reversal
/// are all O(log h) expected. A Posá rotation is one suffix reversal.
class ReversiblePath {
public:
    explicit ReversiblePath(std::size_t vertex_count, std::uint64_t seed = 0x5eedULL);

    void assign(std::span<const Vertex> seq);
    void append(Vertex v);

    std::size_t size() const noexcept { return root_ == kNoVertex ? 0 : size_[root_]; }
    bool contains(Vertex v) const noexcept { return in_[v] != 0; }

    std::size_t index_of(Vertex v);
    Vertex at(std::size_t k);
    Vertex front() { return at(0); }
    Vertex back() { return at(size() - 1); }

    /// Reverses positions [from, size).
    void reverse_suffix(std::size_t from);

    std::vector<Vertex> to_vector();

private:
    void push(Vertex x) noexcept;
    void pull(Vertex x) noexcept;
    std::size_t sz(Vertex x) const noexcept { return x == kNoVertex ? 0 : size_[x]; }
    void split(Vertex t, std::size_t k, Vertex& a, Vertex& b);
    Vertex merge(Vertex a, Vertex b);

    std::vector<Vertex> left_, right_, parent_;
    std::vector<std::uint64_t> prio_;
    std::vector<std::uint32_t> size_;
    std::vector<std::uint8_t> rev_, in_;
    std::vector<Vertex> chain_;
    Vertex root_ = kNoVertex;
};

}  // namespace semirandom
