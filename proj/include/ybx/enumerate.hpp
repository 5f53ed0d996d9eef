#ifndef YBX_ENUMERATE_HPP
#define YBX_ENUMERATE_HPP

/// \file enumerate.hpp
/// \brief Isomorph-free generation of indecomposable cycle sets of small size.
///
/// The search fills the multiplication table cell by cell in row-major order.
/// Every assignment is propagated through the cycle-set law
///   (x.y).(x.z) = (y.x).(y.z),
/// rows are kept injective, and the diagonal is kept injective
/// (non-degeneracy).  Two prunings cut the tree:
///   - lex-leader: whenever a new row completes, a relabeling search looks for
///     a relabeled table that is strictly smaller on the completed prefix;
///   - transitivity: an over-approximation of the G(X)-orbits (unknown cells
///     of a row may map any open position to any unused value) must be a
///     single block.
/// Leaves are accepted iff the table is transitive and equal to its own
/// canonical form, so exactly one representative per class is produced.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ybx/canonical.hpp"
#include "ybx/congruence.hpp"
#include "ybx/cycleset.hpp"
#include "ybx/detail/union_find.hpp"

namespace ybx {

inline constexpr std::size_t kMaxEnumerationSize = 10;

namespace detail {

class OrderlySearch {
 public:
  static constexpr int kMax = static_cast<int>(kMaxEnumerationSize);
  using Choices = std::vector<std::uint8_t>;

  explicit OrderlySearch(int n) : n_(n) {
    for (auto& r : t_) r.fill(-1);
    for (auto& r : inv_) r.fill(-1);
    row_used_.fill(0);
    row_unknown_.fill(n);
  }

  // Collects every live decision prefix of length `depth` (or shorter, if a
  // leaf is reached first) without descending further.
  void collect_prefixes(std::size_t depth, std::vector<Choices>& out) {
    Choices path;
    split_depth_ = depth;
    split_out_ = &out;
    dfs(path);
    split_out_ = nullptr;
  }

  // Replays `prefix` and searches the subtree below it.
  void solve(Choices const& prefix, std::vector<std::vector<Point>>& out) {
    leaves_ = &out;
    Choices path;
    replay_ = &prefix;
    dfs(path);
    replay_ = nullptr;
    leaves_ = nullptr;
  }

 private:
  using Cell = std::pair<std::int8_t, std::int8_t>;

  bool assign(int x, int y, int v) {
    if (t_[x][y] >= 0) return t_[x][y] == v;
    std::uint16_t bit = static_cast<std::uint16_t>(1u << v);
    if (row_used_[x] & bit) return false;
    if (x == y) {
      if (diag_used_ & bit) return false;
      diag_used_ |= bit;
    }
    t_[x][y] = static_cast<std::int8_t>(v);
    inv_[x][v] = static_cast<std::int8_t>(y);
    row_used_[x] |= bit;
    --row_unknown_[x];
    trail_.emplace_back(static_cast<std::int8_t>(x), static_cast<std::int8_t>(y));
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [x, y] = trail_.back();
      trail_.pop_back();
      int v = t_[x][y];
      std::uint16_t bit = static_cast<std::uint16_t>(1u << v);
      if (x == y) diag_used_ &= static_cast<std::uint16_t>(~bit);
      row_used_[x] &= static_cast<std::uint16_t>(~bit);
      inv_[x][v] = -1;
      t_[x][y] = -1;
      ++row_unknown_[x];
    }
    qhead_ = std::min(qhead_, trail_.size());
  }

  bool law(int x, int y, int z) {
    int a = t_[x][y], b = t_[x][z], c = t_[y][x], d = t_[y][z];
    if ((a | b | c | d) < 0) return true;
    int e = t_[a][b], f = t_[c][d];
    if (e < 0) return f < 0 || assign(a, b, f);
    if (f < 0) return assign(c, d, e);
    return e == f;
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      auto [p, q] = trail_[qhead_++];
      if (row_unknown_[p] == 1) {
        int y = 0;
        while (t_[p][y] >= 0) ++y;
        std::uint16_t free = static_cast<std::uint16_t>(~row_used_[p] & ((1u << n_) - 1));
        if (!assign(p, y, __builtin_ctz(free))) return false;
      }
      if (p != q) {
        for (int z = 0; z < n_; ++z) {
          if (!law(p, q, z)) return false;
        }
      }
      for (int y = 0; y < n_; ++y) {
        if (y != p && !law(p, y, q)) return false;
      }
      for (int x = 0; x < n_; ++x) {
        int y = inv_[x][p], z = inv_[x][q];
        if (y >= 0 && z >= 0 && y != x && !law(x, y, z)) return false;
      }
    }
    return true;
  }

  // Over-approximated orbits of G(X) must form one block.
  bool may_be_transitive() {
    UnionFind uf(static_cast<std::size_t>(n_));
    for (int x = 0; x < n_; ++x) {
      int anchor = -1;
      for (int y = 0; y < n_; ++y) {
        if (t_[x][y] >= 0) {
          uf.unite(static_cast<std::uint32_t>(y), static_cast<std::uint32_t>(t_[x][y]));
        } else {
          if (anchor >= 0) uf.unite(static_cast<std::uint32_t>(anchor), static_cast<std::uint32_t>(y));
          anchor = y;
        }
      }
      if (anchor < 0) continue;
      for (int v = 0; v < n_; ++v) {
        if (!(row_used_[x] & (1u << v))) {
          uf.unite(static_cast<std::uint32_t>(anchor), static_cast<std::uint32_t>(v));
        }
      }
    }
    for (int y = 1; y < n_; ++y) {
      if (uf.find(static_cast<std::uint32_t>(y)) != 0) return false;
    }
    return true;
  }

  // --- lex-leader test -----------------------------------------------------

  // True if some relabeling produces a table strictly smaller than the
  // current one on the first `prefix` (fully known) cells.
  bool beaten(int prefix) {
    prefix_ = prefix;
    std::array<Point, kMax> row0{};
    bool row0_known = row_unknown_[0] == 0;
    for (int a = 0; a < n_; ++a) {
      if (row0_known && row_unknown_[a] == 0) {
        std::vector<Point> img(static_cast<std::size_t>(n_));
        for (int y = 0; y < n_; ++y) img[y] = static_cast<Point>(t_[a][y]);
        auto sig = least_rooted_conjugate(Permutation(std::move(img)), static_cast<Point>(a));
        for (int y = 0; y < n_; ++y) row0[y] = static_cast<Point>(t_[0][y]);
        int cmp = 0;
        for (int y = 0; y < n_ && cmp == 0; ++y) {
          if (sig[y] != row0[y]) cmp = sig[y] < row0[y] ? -1 : 1;
        }
        if (cmp < 0) return true;
        if (cmp > 0) continue;
      }
      lab_next_ = 0;
      std::fill(n2o_.begin(), n2o_.end(), -1);
      std::fill(o2n_.begin(), o2n_.end(), -1);
      label(a);
      bool hit = beat_dfs(0);
      unlabel(a);
      if (hit) return true;
    }
    return false;
  }

  void label(int old) {
    n2o_[lab_next_] = static_cast<std::int8_t>(old);
    o2n_[old] = static_cast<std::int8_t>(lab_next_);
    ++lab_next_;
  }

  void unlabel(int old) {
    --lab_next_;
    n2o_[lab_next_] = -1;
    o2n_[old] = -1;
  }

  bool beat_dfs(int pos) {
    if (pos >= prefix_) return false;
    int i = pos / n_, j = pos % n_;
    if (j == lab_next_) {
      for (int e = 0; e < n_; ++e) {
        if (o2n_[e] >= 0) continue;
        label(e);
        bool hit = beat_dfs(pos);
        unlabel(e);
        if (hit) return true;
      }
      return false;
    }
    int v = t_[n2o_[i]][n2o_[j]];
    if (v < 0) return false;
    bool fresh = o2n_[v] < 0;
    if (fresh) label(v);
    int val = o2n_[v];
    int mine = t_[i][j];
    bool hit = false;
    if (val < mine) {
      hit = true;
    } else if (val == mine) {
      hit = beat_dfs(pos + 1);
    }
    if (fresh) unlabel(v);
    return hit;
  }

  // --- search --------------------------------------------------------------

  int known_prefix() const {
    for (int x = 0; x < n_; ++x) {
      for (int y = 0; y < n_; ++y) {
        if (t_[x][y] < 0) return x * n_ + y;
      }
    }
    return n_ * n_;
  }

  bool transitive_leaf() const {
    std::uint16_t seen = 1, frontier = 1;
    while (frontier) {
      std::uint16_t next = 0;
      for (int y = 0; y < n_; ++y) {
        if (!(frontier & (1u << y))) continue;
        for (int x = 0; x < n_; ++x) next |= static_cast<std::uint16_t>(1u << t_[x][y]);
      }
      frontier = static_cast<std::uint16_t>(next & ~seen);
      seen |= next;
    }
    return seen == (1u << n_) - 1;
  }

  void dfs(Choices& path) {
    if (!may_be_transitive()) return;
    int prefix = known_prefix();
    // A row has just been completed (or the table is full): lex-leader test.
    if (prefix / n_ > checked_rows_ || prefix == n_ * n_) {
      int saved = checked_rows_;
      if (prefix == n_ * n_ && !transitive_leaf()) return;
      if (beaten(prefix)) return;
      checked_rows_ = prefix / n_;
      if (prefix == n_ * n_) {
        if (split_out_) {
          split_out_->push_back(path);
        } else if (leaves_) {
          std::vector<Point> flat;
          flat.reserve(static_cast<std::size_t>(n_ * n_));
          for (int x = 0; x < n_; ++x) {
            for (int y = 0; y < n_; ++y) flat.push_back(static_cast<Point>(t_[x][y]));
          }
          leaves_->push_back(std::move(flat));
        }
        checked_rows_ = saved;
        return;
      }
      descend(path, prefix);
      checked_rows_ = saved;
      return;
    }
    descend(path, prefix);
  }

  void descend(Choices& path, int prefix) {
    if (split_out_ && path.size() == split_depth_) {
      split_out_->push_back(path);
      return;
    }
    int x = prefix / n_, y = prefix % n_;
    bool replaying = replay_ && path.size() < replay_->size();
    for (int v = 0; v < n_; ++v) {
      if (replaying && v != (*replay_)[path.size()]) continue;
      if (row_used_[x] & (1u << v)) continue;
      if (x == y && (diag_used_ & (1u << v))) continue;
      std::size_t mark = trail_.size();
      qhead_ = mark;
      if (assign(x, y, v) && propagate()) {
        path.push_back(static_cast<std::uint8_t>(v));
        dfs(path);
        path.pop_back();
      }
      undo(mark);
    }
  }

  int n_;
  std::array<std::array<std::int8_t, kMax>, kMax> t_{};
  std::array<std::array<std::int8_t, kMax>, kMax> inv_{};
  std::array<std::uint16_t, kMax> row_used_{};
  std::array<int, kMax> row_unknown_{};
  std::uint16_t diag_used_ = 0;
  std::vector<Cell> trail_;
  std::size_t qhead_ = 0;
  int checked_rows_ = 0;

  std::array<std::int8_t, kMax> n2o_{}, o2n_{};
  int lab_next_ = 0;
  int prefix_ = 0;

  std::size_t split_depth_ = 0;
  std::vector<Choices>* split_out_ = nullptr;
  std::vector<std::vector<Point>>* leaves_ = nullptr;
  Choices const* replay_ = nullptr;
};

}  // namespace detail

struct EnumerationOptions {
  unsigned jobs = 1;
  // Called from worker threads with (finished tasks, total tasks).
  std::function<void(std::size_t, std::size_t)> progress;
};

/// One canonical representative per isomorphism class of indecomposable cycle
/// sets of size n, sorted.  The result does not depend on `jobs`.
inline std::vector<CycleSet> enumerate_indecomposable(std::size_t n,
                                                      EnumerationOptions const& opt = {}) {
  if (n < 1 || n > kMaxEnumerationSize) {
    throw std::invalid_argument("enumerate_indecomposable: size out of range");
  }
  int const ni = static_cast<int>(n);
  std::vector<detail::OrderlySearch::Choices> tasks;
  {
    // Split deep enough to give every worker a handful of subtrees.
    std::size_t want = 16 * std::max(1u, opt.jobs);
    for (std::size_t depth = 1;; ++depth) {
      tasks.clear();
      detail::OrderlySearch s(ni);
      s.collect_prefixes(depth, tasks);
      if (tasks.size() >= want || depth >= n * n) break;
    }
  }

  std::vector<std::vector<std::vector<Point>>> results(tasks.size());
  std::atomic<std::size_t> next{0}, done{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      detail::OrderlySearch s(ni);
      s.solve(tasks[i], results[i]);
      std::size_t d = done.fetch_add(1) + 1;
      if (opt.progress) opt.progress(d, tasks.size());
    }
  };
  unsigned jobs = std::max(1u, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<CycleSet> out;
  for (auto& r : results) {
    for (auto& t : r) out.push_back(CycleSet::from_table_nc(n, std::move(t)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}


struct EnumerationReport {
  std::size_t n = 0;
  std::size_t c = 0;   // classes
  std::size_t m = 0;   // finite multipermutation level
  std::size_t fp = 0;  // finite primitive level (Dis(X) intransitive)
  std::chrono::duration<double> elapsed{};
  std::vector<CycleSet> forms;
};

inline EnumerationReport tabulate(std::size_t n, EnumerationOptions const& opt = {}) {
  auto start = std::chrono::steady_clock::now();
  EnumerationReport r;
  r.n = n;
  r.forms = enumerate_indecomposable(n, opt);
  r.c = r.forms.size();
  for (auto const& x : r.forms) {
    if (mpl(x)) ++r.m;
    if (!is_transitive(displacement_group(x))) ++r.fp;
  }
  r.elapsed = std::chrono::steady_clock::now() - start;
  return r;
}

}  // namespace ybx

#endif  // YBX_ENUMERATE_HPP
