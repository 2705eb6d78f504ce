#include "semirandom/reversible_path.hpp"

#include <stdexcept>
#include <utility>

namespace semirandom {

ReversiblePath::ReversiblePath(std::size_t vertex_count, std::uint64_t seed)
    : left_(vertex_count, kNoVertex),
      right_(vertex_count, kNoVertex),
      parent_(vertex_count, kNoVertex),
      prio_(vertex_count),
      size_(vertex_count, 1),
      rev_(vertex_count, 0),
      in_(vertex_count, 0) {
    Rng rng(seed, 0x7265);
    for (auto& p : prio_) p = rng.next();
}

void ReversiblePath::push(Vertex x) noexcept {
    if (!rev_[x]) return;
    std::swap(left_[x], right_[x]);
    if (left_[x] != kNoVertex) rev_[left_[x]] ^= 1;
    if (right_[x] != kNoVertex) rev_[right_[x]] ^= 1;
    rev_[x] = 0;
}

void ReversiblePath::pull(Vertex x) noexcept {
    size_[x] = static_cast<std::uint32_t>(1 + sz(left_[x]) + sz(right_[x]));
    if (left_[x] != kNoVertex) parent_[left_[x]] = x;
    if (right_[x] != kNoVertex) parent_[right_[x]] = x;
}

void ReversiblePath::split(Vertex t, std::size_t k, Vertex& a, Vertex& b) {
    if (t == kNoVertex) {
        a = b = kNoVertex;
        return;
    }
    push(t);
    if (sz(left_[t]) < k) {
        Vertex r;
        split(right_[t], k - sz(left_[t]) - 1, r, b);
        right_[t] = r;
        pull(t);
        a = t;
    } else {
        Vertex l;
        split(left_[t], k, a, l);
        left_[t] = l;
        pull(t);
        b = t;
    }
    if (a != kNoVertex) parent_[a] = kNoVertex;
    if (b != kNoVertex) parent_[b] = kNoVertex;
}

Vertex ReversiblePath::merge(Vertex a, Vertex b) {
    if (a == kNoVertex) return b;
    if (b == kNoVertex) return a;
    if (prio_[a] > prio_[b]) {
        push(a);
        right_[a] = merge(right_[a], b);
        pull(a);
        parent_[a] = kNoVertex;
        return a;
    }
    push(b);
    left_[b] = merge(a, left_[b]);
    pull(b);
    parent_[b] = kNoVertex;
    return b;
}

void ReversiblePath::assign(std::span<const Vertex> seq) {
    if (root_ != kNoVertex) {
        for (Vertex v : to_vector()) in_[v] = 0;
    }
    root_ = kNoVertex;
    for (Vertex v : seq) append(v);
}

void ReversiblePath::append(Vertex v) {
    if (in_[v]) throw std::logic_error("vertex already on path");
    in_[v] = 1;
    left_[v] = right_[v] = parent_[v] = kNoVertex;
    size_[v] = 1;
    rev_[v] = 0;
    root_ = merge(root_, v);
}

std::size_t ReversiblePath::index_of(Vertex v) {
    if (!in_[v]) throw std::out_of_range("vertex not on path");
    chain_.clear();
    for (Vertex x = v; x != kNoVertex; x = parent_[x]) chain_.push_back(x);
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) push(*it);
    std::size_t idx = sz(left_[v]);
    for (Vertex x = v; parent_[x] != kNoVertex; x = parent_[x]) {
        const Vertex p = parent_[x];
        if (right_[p] == x) idx += sz(left_[p]) + 1;
    }
    return idx;
}

Vertex ReversiblePath::at(std::size_t k) {
    if (k >= size()) throw std::out_of_range("path index");
    Vertex x = root_;
    for (;;) {
        push(x);
        const std::size_t ls = sz(left_[x]);
        if (k < ls) {
            x = left_[x];
        } else if (k == ls) {
            return x;
        } else {
            k -= ls + 1;
            x = right_[x];
        }
    }
}

void ReversiblePath::reverse_suffix(std::size_t from) {
    if (from >= size()) return;
    Vertex a, b;
    split(root_, from, a, b);
    rev_[b] ^= 1;
    root_ = merge(a, b);
}

std::vector<Vertex> ReversiblePath::to_vector() {
    std::vector<Vertex> out;
    out.reserve(size());
    std::vector<Vertex> stack;
    Vertex x = root_;
    while (x != kNoVertex || !stack.empty()) {
        while (x != kNoVertex) {
            push(x);
            stack.push_back(x);
            x = left_[x];
        }
        x = stack.back();
        stack.pop_back();
        out.push_back(x);
        x = right_[x];
    }
    return out;
}

}  // namespace semirandom
