#ifndef YBX_CANONICAL_HPP
#define YBX_CANONICAL_HPP

/// \file canonical.hpp
/// \brief Canonical forms of cycle sets: the lexicographically least table
/// over all relabelings, and isomorphism testing built on it.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ybx/cycleset.hpp"
#include "ybx/perm.hpp"

namespace ybx {

/// Least conjugate image sequence of `p` under relabelings sending `a` to 0:
/// the cycle through a first, then the fixed points, then the remaining
/// cycles by increasing length.
inline std::vector<Point> least_rooted_conjugate(Permutation const& p, Point a) {
  std::size_t const n = p.degree();
  std::size_t root_len = 1;
  for (Point y = p(a); y != a; y = p(y)) ++root_len;
  std::vector<std::size_t> rest;
  {
    std::vector<bool> seen(n, false);
    for (Point y = a; !seen[y]; y = p(y)) seen[y] = true;
    for (Point s = 0; s < n; ++s) {
      if (seen[s]) continue;
      std::size_t len = 0;
      for (Point y = s; !seen[y]; y = p(y)) {
        seen[y] = true;
        ++len;
      }
      rest.push_back(len);
    }
  }
  std::sort(rest.begin(), rest.end());
  std::vector<Point> out;
  out.reserve(n);
  auto emit_cycle = [&](std::size_t len) {
    Point start = static_cast<Point>(out.size());
    for (std::size_t i = 1; i < len; ++i) out.push_back(start + static_cast<Point>(i));
    out.push_back(start);
  };
  emit_cycle(root_len);
  for (auto len : rest) emit_cycle(len);
  return out;
}

struct CanonicalLabeling {
  CycleSet form;
  Permutation relabel;  // old point -> canonical point
};

namespace detail {

class CanonicalSearch {
 public:
  explicit CanonicalSearch(CycleSet const& x)
      : x_(x),
        n_(x.size()),
        new_to_old_(n_, kNone),
        old_to_new_(n_, kNone),
        cur_(n_ * n_),
        best_(n_ * n_) {}

  CanonicalLabeling run() {
    // Only roots whose row can become the least first row are worth trying.
    std::vector<std::vector<Point>> sig(n_);
    for (Point a = 0; a < n_; ++a) sig[a] = least_rooted_conjugate(x_.sigma(a), a);
    auto least = *std::min_element(sig.begin(), sig.end());
    for (Point a = 0; a < n_; ++a) {
      if (sig[a] != least) continue;
      bool tight = has_best_;
      label(a);
      dfs(0, tight);
      unlabel(a);
    }
    std::vector<Point> relabel(best_map_.begin(), best_map_.end());
    return {CycleSet::from_table_nc(n_, best_), Permutation(std::move(relabel))};
  }

 private:
  static constexpr Point kNone = UINT32_MAX;

  void label(Point old) {
    new_to_old_[next_] = old;
    old_to_new_[old] = next_;
    ++next_;
  }

  void unlabel(Point old) {
    --next_;
    new_to_old_[next_] = kNone;
    old_to_new_[old] = kNone;
  }

  // `tight`: the current prefix equals best_'s prefix (only meaningful once a
  // best exists).
  void dfs(std::size_t pos, bool tight) {
    if (pos == n_ * n_) {
      if (!has_best_ || !tight) {
        best_ = cur_;
        best_map_ = old_to_new_;
        has_best_ = true;
        ++version_;
      }
      return;
    }
    Point i = static_cast<Point>(pos / n_), j = static_cast<Point>(pos % n_);
    if (j == next_) {
      // Column label j is not assigned yet: branch on which point receives it.
      std::uint64_t v = version_;
      for (Point e = 0; e < n_; ++e) {
        if (old_to_new_[e] != kNone) continue;
        label(e);
        dfs(pos, has_best_ && (tight || version_ != v));
        unlabel(e);
      }
      return;
    }
    Point val_old = x_.op(new_to_old_[i], new_to_old_[j]);
    bool fresh = old_to_new_[val_old] == kNone;
    if (fresh) label(val_old);
    Point val = old_to_new_[val_old];
    bool next_tight = false;
    bool prune = false;
    if (has_best_ && tight) {
      if (val > best_[pos]) {
        prune = true;
      } else {
        next_tight = val == best_[pos];
      }
    }
    if (!prune) {
      cur_[pos] = val;
      dfs(pos + 1, next_tight);
    }
    if (fresh) unlabel(val_old);
  }

  CycleSet const& x_;
  std::size_t n_;
  std::vector<Point> new_to_old_, old_to_new_;
  Point next_ = 0;
  std::vector<Point> cur_, best_;
  std::vector<Point> best_map_;
  bool has_best_ = false;
  std::uint64_t version_ = 0;
};

}  // namespace detail

inline CanonicalLabeling canonical_labeling(CycleSet const& x) {
  return detail::CanonicalSearch(x).run();
}

inline CycleSet canonical_form(CycleSet const& x) { return canonical_labeling(x).form; }

/// Sorted multiset of row cycle types; equal for isomorphic cycle sets.
inline std::vector<std::vector<std::size_t>> row_cycle_types(CycleSet const& x) {
  std::vector<std::vector<std::size_t>> out;
  for (Point a = 0; a < x.size(); ++a) out.push_back(cycle_decomposition(x.sigma(a)));
  std::sort(out.begin(), out.end());
  return out;
}

/// A bijection f : A -> B with f(a.b) = f(a).f(b), if one exists.
inline std::optional<Permutation> are_isomorphic(CycleSet const& a, CycleSet const& b) {
  if (a.size() != b.size()) return std::nullopt;
  if (row_cycle_types(a) != row_cycle_types(b)) return std::nullopt;
  auto ca = canonical_labeling(a);
  auto cb = canonical_labeling(b);
  if (ca.form != cb.form) return std::nullopt;
  return cb.relabel.inverse() * ca.relabel;
}

}  // namespace ybx

#endif  // YBX_CANONICAL_HPP
