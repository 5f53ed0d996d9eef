#ifndef YBX_DETAIL_UNION_FIND_HPP
#define YBX_DETAIL_UNION_FIND_HPP

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace ybx::detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns true when two distinct classes were merged.  The smaller root
  // survives, so roots are always class minima.
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  std::size_t size() const { return parent_.size(); }

  // Class label per point, numbered by first appearance (equivalently by
  // class minimum).
  std::vector<std::uint32_t> labels() {
    std::vector<std::uint32_t> out(parent_.size());
    std::vector<std::uint32_t> id(parent_.size(), UINT32_MAX);
    std::uint32_t next = 0;
    for (std::uint32_t x = 0; x < parent_.size(); ++x) {
      auto r = find(x);
      if (id[r] == UINT32_MAX) id[r] = next++;
      out[x] = id[r];
    }
    return out;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace ybx::detail

#endif  // YBX_DETAIL_UNION_FIND_HPP
