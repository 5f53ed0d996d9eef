#ifndef YBX_CONGRUENCE_HPP
#define YBX_CONGRUENCE_HPP

/// \file congruence.hpp
/// \brief Congruences of a cycle set, quotients, retraction and the
/// multipermutation level.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ybx/cycleset.hpp"
#include "ybx/detail/union_find.hpp"
#include "ybx/errors.hpp"
#include "ybx/perm.hpp"

namespace ybx {

/// A partition of {0,...,n-1}; classes are numbered by their least point.
class Congruence {
 public:
  /// Any labelling works; it is renumbered by first appearance.
  static Congruence from_labels(std::vector<std::uint32_t> const& labels) {
    Congruence c;
    std::vector<std::uint32_t> id;
    c.class_of_.resize(labels.size());
    for (std::size_t x = 0; x < labels.size(); ++x) {
      if (labels[x] >= id.size()) id.resize(labels[x] + 1, UINT32_MAX);
      if (id[labels[x]] == UINT32_MAX) {
        id[labels[x]] = static_cast<std::uint32_t>(c.classes_.size());
        c.classes_.emplace_back();
      }
      c.class_of_[x] = id[labels[x]];
      c.classes_[c.class_of_[x]].push_back(static_cast<Point>(x));
    }
    return c;
  }

  static Congruence from_classes(std::size_t n,
                                 std::vector<std::vector<Point>> const& classes) {
    std::vector<std::uint32_t> lab(n, UINT32_MAX);
    for (std::uint32_t i = 0; i < classes.size(); ++i) {
      for (Point x : classes[i]) {
        if (x >= n || lab[x] != UINT32_MAX) {
          throw std::invalid_argument("classes do not partition the points");
        }
        lab[x] = i;
      }
    }
    if (std::find(lab.begin(), lab.end(), UINT32_MAX) != lab.end()) {
      throw std::invalid_argument("classes do not cover the points");
    }
    return from_labels(lab);
  }

  static Congruence discrete(std::size_t n) {
    std::vector<std::uint32_t> lab(n);
    std::iota(lab.begin(), lab.end(), 0u);
    return from_labels(lab);
  }

  static Congruence full(std::size_t n) {
    return from_labels(std::vector<std::uint32_t>(n, 0));
  }

  std::size_t size() const { return class_of_.size(); }
  std::size_t num_classes() const { return classes_.size(); }
  std::uint32_t class_of(Point x) const { return class_of_[x]; }
  std::vector<std::uint32_t> const& labels() const { return class_of_; }
  std::vector<std::vector<Point>> const& classes() const { return classes_; }
  bool is_discrete() const { return classes_.size() == class_of_.size(); }
  bool is_full() const { return classes_.size() == 1; }

  friend bool operator==(Congruence const& a, Congruence const& b) {
    return a.class_of_ == b.class_of_;
  }
  friend auto operator<=>(Congruence const& a, Congruence const& b) {
    return a.class_of_ <=> b.class_of_;
  }

 private:
  std::vector<std::uint32_t> class_of_;
  std::vector<std::vector<Point>> classes_;
};

/// x ~ y and u ~ v imply x.u ~ y.v.
inline bool is_congruence(CycleSet const& x, Congruence const& c) {
  std::size_t const n = x.size();
  if (c.size() != n) return false;
  // Compatibility on each side separately is equivalent to the two-sided
  // condition.
  for (auto const& cls : c.classes()) {
    for (std::size_t i = 1; i < cls.size(); ++i) {
      Point a = cls[0], b = cls[i];
      for (Point u = 0; u < n; ++u) {
        if (c.class_of(x.op(a, u)) != c.class_of(x.op(b, u))) return false;
        if (c.class_of(x.op(u, a)) != c.class_of(x.op(u, b))) return false;
      }
    }
  }
  return true;
}

namespace detail {

// Closes the pairs already merged in `uf` (listed in `queue`) to the least
// congruence containing them.
inline Congruence close_congruence(CycleSet const& x, UnionFind& uf,
                                   std::vector<std::pair<Point, Point>> queue) {
  std::size_t const n = x.size();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [a, b] = queue[head];
    for (Point u = 0; u < n; ++u) {
      Point p = x.op(a, u), q = x.op(b, u);
      if (uf.unite(p, q)) queue.emplace_back(p, q);
      p = x.op(u, a);
      q = x.op(u, b);
      if (uf.unite(p, q)) queue.emplace_back(p, q);
    }
  }
  return Congruence::from_labels(uf.labels());
}

}  // namespace detail

/// Least congruence identifying a and b.
inline Congruence principal_congruence(CycleSet const& x, Point a, Point b) {
  detail::UnionFind uf(x.size());
  std::vector<std::pair<Point, Point>> q;
  if (uf.unite(a, b)) q.emplace_back(a, b);
  return detail::close_congruence(x, uf, std::move(q));
}

/// Least congruence containing both.
inline Congruence join(CycleSet const& x, Congruence const& c1, Congruence const& c2) {
  detail::UnionFind uf(x.size());
  std::vector<std::pair<Point, Point>> q;
  for (auto const* c : {&c1, &c2}) {
    for (auto const& cls : c->classes()) {
      for (std::size_t i = 1; i < cls.size(); ++i) {
        if (uf.unite(cls[0], cls[i])) q.emplace_back(cls[0], cls[i]);
      }
    }
  }
  return detail::close_congruence(x, uf, std::move(q));
}

inline constexpr std::size_t kMaxCongruenceSize = 40;

/// The whole congruence lattice, sorted by class labelling.  Every congruence
/// is a join of principal ones, so closing the principal congruences under
/// joins with principal congruences reaches all of them.
inline std::vector<Congruence> all_congruences(CycleSet const& x) {
  std::size_t const n = x.size();
  if (n > kMaxCongruenceSize) {
    throw CapExceeded("all_congruences: size exceeds " +
                      std::to_string(kMaxCongruenceSize));
  }
  std::set<Congruence> principal_set;
  for (Point a = 0; a < n; ++a) {
    for (Point b = a + 1; b < n; ++b) principal_set.insert(principal_congruence(x, a, b));
  }
  std::vector<Congruence> principal(principal_set.begin(), principal_set.end());
  std::set<Congruence> all(principal.begin(), principal.end());
  all.insert(Congruence::discrete(n));
  std::vector<Congruence> work(principal.begin(), principal.end());
  while (!work.empty()) {
    Congruence c = std::move(work.back());
    work.pop_back();
    if (c.is_full()) continue;
    for (auto const& p : principal) {
      Congruence j = join(x, c, p);
      if (all.insert(j).second) work.push_back(std::move(j));
    }
  }
  return {all.begin(), all.end()};
}

/// Kernel of a map: points with equal images.
inline Congruence kernel(CycleSetHom const& h) {
  return Congruence::from_labels(
      std::vector<std::uint32_t>(h.map.begin(), h.map.end()));
}

struct Quotient {
  CycleSet set;
  CycleSetHom map;  // the class map, an epimorphism
};

/// X / c with classes numbered by least point.  Throws ValidationError if c
/// is not a congruence.
inline Quotient quotient(CycleSet const& x, Congruence const& c) {
  if (!is_congruence(x, c)) throw ValidationError("partition is not a congruence");
  std::size_t const m = c.num_classes();
  std::vector<Point> table(m * m);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) {
      table[i * m + j] = c.class_of(x.op(c.classes()[i][0], c.classes()[j][0]));
    }
  }
  CycleSet q = CycleSet::from_table(m, std::move(table));
  std::vector<Point> map(c.labels().begin(), c.labels().end());
  return {q, CycleSetHom{x, q, std::move(map)}};
}

/// Quotient by the orbits of a group of permutations of X.
inline Quotient quotient_by_group(CycleSet const& x, PermutationGroup const& g) {
  if (g.degree() != x.size()) throw std::invalid_argument("degree mismatch");
  auto orb = orbits(g);
  auto c = Congruence::from_classes(x.size(), orb);
  if (!is_congruence(x, c)) {
    throw ValidationError("orbit partition is not a congruence");
  }
  return quotient(x, c);
}

/// x ~ y iff sigma_x = sigma_y.
inline Congruence retraction_congruence(CycleSet const& x) {
  std::size_t const n = x.size();
  auto const& t = x.table();
  std::vector<std::uint32_t> lab(n);
  for (Point a = 0; a < n; ++a) {
    lab[a] = a;
    for (Point b = 0; b < a; ++b) {
      if (std::equal(t.begin() + a * n, t.begin() + (a + 1) * n, t.begin() + b * n)) {
        lab[a] = lab[b];
        break;
      }
    }
  }
  return Congruence::from_labels(lab);
}

inline Quotient retraction(CycleSet const& x) {
  return quotient(x, retraction_congruence(x));
}

inline bool is_irretractable(CycleSet const& x) {
  return retraction_congruence(x).is_discrete();
}

/// Multipermutation level; nullopt when the retraction sequence stabilizes
/// above size 1.
inline std::optional<unsigned> mpl(CycleSet const& x) {
  CycleSet cur = x;
  unsigned level = 0;
  while (cur.size() > 1) {
    auto c = retraction_congruence(cur);
    if (c.is_discrete()) return std::nullopt;
    cur = quotient(cur, c).set;
    ++level;
  }
  return level;
}

}  // namespace ybx

#endif  // YBX_CONGRUENCE_HPP
