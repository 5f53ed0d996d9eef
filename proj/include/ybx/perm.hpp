#ifndef YBX_PERM_HPP
#define YBX_PERM_HPP

/// \file perm.hpp
/// \brief Small-degree permutations and permutation groups.
///
/// Groups are given by generators and materialize their full element set on
/// demand (capped).  Orders and membership go through a stabilizer chain and
/// need no materialization.  Aimed at degrees of a few dozen points.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ybx/detail/union_find.hpp"
#include "ybx/errors.hpp"

namespace ybx {

using Point = std::uint32_t;

/// A bijection of {0,...,n-1}, stored as its image sequence.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point y : images_) {
      if (y >= images_.size() || seen[y]) {
        throw std::invalid_argument("image sequence is not a bijection");
      }
      seen[y] = true;
    }
  }

  /// Builds a permutation from disjoint cycles; unmentioned points are fixed.
  static Permutation from_cycles(std::size_t degree,
                                 std::vector<std::vector<Point>> const& cycles) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<bool> used(degree, false);
    for (auto const& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= degree || used[c[i]]) {
          throw std::invalid_argument("cycles are not disjoint or out of range");
        }
        used[c[i]] = true;
        img[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return Permutation(std::move(img));
  }

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point y) const { return images_[y]; }
  Point operator[](Point y) const { return images_[y]; }
  std::vector<Point> const& images() const { return images_; }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (Point y = 0; y < images_.size(); ++y) r.images_[images_[y]] = y;
    return r;
  }

  bool is_identity() const {
    for (Point y = 0; y < images_.size(); ++y) {
      if (images_[y] != y) return false;
    }
    return true;
  }

  /// Cycles including fixed points, each starting at its least point, sorted
  /// by that point.
  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(images_.size(), false);
    for (Point s = 0; s < images_.size(); ++s) {
      if (seen[s]) continue;
      std::vector<Point> c;
      for (Point y = s; !seen[y]; y = images_[y]) {
        seen[y] = true;
        c.push_back(y);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  std::size_t order() const {
    std::size_t o = 1;
    for (auto const& c : cycles()) o = std::lcm(o, c.size());
    return o;
  }

  /// Cycle notation with 0-based points, e.g. "(0 3)(1 2)"; "()" for identity.
  std::string to_string() const {
    std::ostringstream os;
    bool any = false;
    for (auto const& c : cycles()) {
      if (c.size() < 2) continue;
      any = true;
      os << '(';
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
      os << ')';
    }
    if (!any) os << "()";
    return os.str();
  }

  friend bool operator==(Permutation const&, Permutation const&) = default;
  friend auto operator<=>(Permutation const& a, Permutation const& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<Point> images_;
};

/// y -> p(q(y)).
inline Permutation compose(Permutation const& p, Permutation const& q) {
  if (p.degree() != q.degree()) {
    throw std::invalid_argument("compose: degree mismatch");
  }
  std::vector<Point> img(p.degree());
  for (Point y = 0; y < img.size(); ++y) img[y] = p(q(y));
  return Permutation(std::move(img));
}

inline Permutation operator*(Permutation const& p, Permutation const& q) {
  return compose(p, q);
}

struct PermutationHash {
  std::size_t operator()(Permutation const& p) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Point y : p.images()) {
      h ^= y;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Multiset of cycle lengths (fixed points count as 1), ascending.
inline std::vector<std::size_t> cycle_decomposition(Permutation const& p) {
  std::vector<std::size_t> out;
  for (auto const& c : p.cycles()) out.push_back(c.size());
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

inline std::vector<Permutation> close_under(std::size_t degree,
                                            std::vector<Permutation> const& gens,
                                            std::size_t cap) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<Permutation> queue;
  Permutation id(degree);
  seen.insert(id);
  queue.push_back(id);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto const& g : gens) {
      Permutation h = g * queue[head];
      if (seen.insert(h).second) {
        if (seen.size() > cap) {
          throw CapExceeded("group has more than " + std::to_string(cap) +
                            " elements");
        }
        queue.push_back(std::move(h));
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}


// Base and strong generating set built by Schreier-Sims with explicit coset
// representatives.
class StabChain {
 public:
  StabChain(std::size_t degree, std::vector<Permutation> const& gens) : n_(degree) {
    for (auto const& g : gens) {
      if (!g.is_identity()) add_strong(g);
    }
    for (;;) {
      rebuild();
      if (!schreier_pass()) break;
    }
  }

  std::vector<std::size_t> basic_orbit_lengths() const {
    std::vector<std::size_t> out;
    for (auto const& l : levels_) out.push_back(l.orbit.size());
    return out;
  }

  bool contains(Permutation const& g) const {
    return sift(g, 0).first.is_identity();
  }

 private:
  struct Level {
    Point beta;
    std::vector<Permutation> gens;
    std::vector<Point> orbit;
    std::vector<std::optional<Permutation>> rep;  // rep[x](beta) = x
  };

  void add_strong(Permutation const& g) {
    strong_.push_back(g);
    for (Point b : base_) {
      if (g(b) != b) return;
    }
    for (Point y = 0; y < n_; ++y) {
      if (g(y) != y) {
        base_.push_back(y);
        return;
      }
    }
  }

  void rebuild() {
    levels_.clear();
    for (std::size_t k = 0; k < base_.size(); ++k) {
      Level l;
      l.beta = base_[k];
      for (auto const& s : strong_) {
        bool fixes = true;
        for (std::size_t i = 0; i < k && fixes; ++i) fixes = s(base_[i]) == base_[i];
        if (fixes) l.gens.push_back(s);
      }
      l.rep.assign(n_, std::nullopt);
      l.rep[l.beta] = Permutation(n_);
      l.orbit.push_back(l.beta);
      for (std::size_t head = 0; head < l.orbit.size(); ++head) {
        Point x = l.orbit[head];
        for (auto const& s : l.gens) {
          Point y = s(x);
          if (!l.rep[y]) {
            l.rep[y] = s * *l.rep[x];
            l.orbit.push_back(y);
          }
        }
      }
      levels_.push_back(std::move(l));
    }
  }

  std::pair<Permutation, std::size_t> sift(Permutation h, std::size_t from) const {
    for (std::size_t k = from; k < levels_.size(); ++k) {
      auto const& r = levels_[k].rep[h(levels_[k].beta)];
      if (!r) return {h, k};
      h = r->inverse() * h;
    }
    return {h, levels_.size()};
  }

  // Adds the first non-sifting Schreier generator; false when none remain.
  bool schreier_pass() {
    for (std::size_t k = levels_.size(); k-- > 0;) {
      auto const& l = levels_[k];
      for (Point x : l.orbit) {
        for (auto const& s : l.gens) {
          Permutation sch = l.rep[s(x)]->inverse() * s * *l.rep[x];
          auto residue = sift(std::move(sch), k + 1).first;
          if (!residue.is_identity()) {
            add_strong(residue);
            return true;
          }
        }
      }
    }
    return false;
  }

  std::size_t n_;
  std::vector<Point> base_;
  std::vector<Permutation> strong_;
  std::vector<Level> levels_;
};

}  // namespace detail

/// Permutation group given by generators.  The element set is materialized
/// lazily, at most once, and is safe to request from several threads.
class PermutationGroup {
 public:
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators,
                   std::size_t cap = max_group_elements())
      : degree_(degree), cap_(cap), cache_(std::make_shared<Cache>()) {
    for (auto const& g : generators) {
      if (g.degree() != degree) {
        throw std::invalid_argument("generator degree mismatch");
      }
    }
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()),
                     generators.end());
    std::erase_if(generators, [](Permutation const& g) { return g.is_identity(); });
    if (generators.empty()) generators.emplace_back(degree);
    generators_ = std::move(generators);
  }

  static PermutationGroup trivial(std::size_t degree) {
    return PermutationGroup(degree, {Permutation(degree)});
  }

  std::size_t degree() const { return degree_; }
  std::vector<Permutation> const& generators() const { return generators_; }
  std::size_t cap() const { return cap_; }

  /// Sorted (lexicographic on image sequences), duplicate-free.
  /// Throws CapExceeded if the group is larger than the cap.
  std::vector<Permutation> const& elements() const {
    std::call_once(cache_->once, [this] {
      cache_->elements = detail::close_under(degree_, generators_, cap_);
    });
    return cache_->elements;
  }

  /// Product of the basic orbit lengths of a stabilizer chain.  Throws
  /// CapExceeded only if the order does not fit in size_t.
  std::size_t order() const {
    std::size_t o = 1;
    for (auto len : chain().basic_orbit_lengths()) {
      if (o > SIZE_MAX / len) throw CapExceeded("group order overflows");
      o *= len;
    }
    return o;
  }

  /// Primes dividing the order (never overflows).
  std::vector<std::size_t> order_primes() const {
    std::vector<std::size_t> out;
    for (auto len : chain().basic_orbit_lengths()) {
      for (std::size_t p = 2; p <= len; ++p) {
        bool prime = true;
        for (std::size_t d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
        if (prime && len % p == 0) out.push_back(p);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool contains(Permutation const& p) const {
    if (p.degree() != degree_) return false;
    return chain().contains(p);
  }

  bool is_trivial() const {
    return generators_.size() == 1 && generators_[0].is_identity();
  }

 private:
  detail::StabChain const& chain() const {
    std::call_once(cache_->chain_once, [this] {
      cache_->chain.emplace(degree_, generators_);
    });
    return *cache_->chain;
  }

  struct Cache {
    std::once_flag once;
    std::vector<Permutation> elements;
    std::once_flag chain_once;
    std::optional<detail::StabChain> chain;
  };

  std::size_t degree_;
  std::size_t cap_;
  std::vector<Permutation> generators_;
  std::shared_ptr<Cache> cache_;
};

inline std::vector<Permutation> const& group_elements(PermutationGroup const& g) {
  return g.elements();
}

/// Orbits as sorted blocks, ordered by their least point.
inline std::vector<std::vector<Point>> orbits(PermutationGroup const& g) {
  detail::UnionFind uf(g.degree());
  for (auto const& s : g.generators()) {
    for (Point y = 0; y < g.degree(); ++y) uf.unite(y, s(y));
  }
  auto lab = uf.labels();
  std::vector<std::vector<Point>> out;
  for (Point y = 0; y < g.degree(); ++y) {
    if (lab[y] >= out.size()) out.resize(lab[y] + 1);
    out[lab[y]].push_back(y);
  }
  return out;
}

inline bool is_transitive(PermutationGroup const& g) {
  return orbits(g).size() == 1;
}

/// Class labels of the finest G-invariant partition in which a and b share
/// a block (the minimal block system generated by {a, b}).
inline std::vector<std::uint32_t> minimal_block_system(PermutationGroup const& g,
                                                       Point a, Point b) {
  detail::UnionFind uf(g.degree());
  std::vector<std::pair<Point, Point>> queue;
  if (uf.unite(a, b)) queue.emplace_back(a, b);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [x, y] = queue[head];
    for (auto const& s : g.generators()) {
      if (uf.unite(s(x), s(y))) queue.emplace_back(s(x), s(y));
    }
  }
  return uf.labels();
}

inline bool is_primitive(PermutationGroup const& g) {
  if (!is_transitive(g)) return false;
  for (Point k = 1; k < g.degree(); ++k) {
    auto lab = minimal_block_system(g, 0, k);
    if (*std::max_element(lab.begin(), lab.end()) != 0) return false;
  }
  return true;
}

/// Subgroup of `g` generated by `gens` (same degree and cap).
inline PermutationGroup subgroup(PermutationGroup const& g,
                                 std::vector<Permutation> gens) {
  return PermutationGroup(g.degree(), std::move(gens), g.cap());
}

inline bool is_subgroup(PermutationGroup const& h, PermutationGroup const& g) {
  if (h.degree() != g.degree()) return false;
  return std::all_of(h.generators().begin(), h.generators().end(),
                     [&](Permutation const& x) { return g.contains(x); });
}

struct NormalStructure {
  bool is_normal = false;
  std::size_t index = 0;
  bool quotient_is_cyclic = false;
};

/// Normality of H in G, the index, and whether G/H is cyclic.
/// quotient_is_cyclic is only meaningful (and only set) when H is normal.
inline NormalStructure normal_structure(PermutationGroup const& g,
                                        PermutationGroup const& h) {
  if (!is_subgroup(h, g)) {
    throw std::invalid_argument("normal_structure: H is not a subgroup of G");
  }
  NormalStructure out;
  out.index = g.order() / h.order();
  out.is_normal = true;
  for (auto const& x : g.generators()) {
    auto xi = x.inverse();
    for (auto const& y : h.generators()) {
      if (!h.contains(x * y * xi)) {
        out.is_normal = false;
        break;
      }
    }
    if (!out.is_normal) break;
  }
  if (!out.is_normal) return out;

  // Order of xH in G/H: least k with x^k in H.
  auto coset_order = [&](Permutation const& x) {
    Permutation p = x;
    std::size_t k = 1;
    while (!h.contains(p)) {
      p = p * x;
      ++k;
    }
    return k;
  };
  if (out.index == 1) {
    out.quotient_is_cyclic = true;
    return out;
  }
  for (auto const& x : g.generators()) {
    if (coset_order(x) == out.index) {
      out.quotient_is_cyclic = true;
      return out;
    }
  }
  for (auto const& x : g.elements()) {
    if (coset_order(x) == out.index) {
      out.quotient_is_cyclic = true;
      return out;
    }
  }
  return out;
}

inline constexpr std::size_t kMaxSubgroupLattice = 4096;

/// Every subgroup H of U with K < H <= U, each given by generators, ordered by
/// (order, element list).
inline std::vector<PermutationGroup> intermediate_subgroups(
    PermutationGroup const& g, PermutationGroup const& k,
    PermutationGroup const& u) {
  if (!is_subgroup(k, u) || !is_subgroup(u, g)) {
    throw std::invalid_argument("intermediate_subgroups: need K <= U <= G");
  }
  auto const& ue = u.elements();
  std::size_t const m = ue.size();
  if (m > kMaxSubgroupLattice) {
    throw CapExceeded("intermediate_subgroups: |U| exceeds " +
                      std::to_string(kMaxSubgroupLattice));
  }
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
  for (std::uint32_t i = 0; i < m; ++i) index.emplace(ue[i], i);
  std::vector<std::uint32_t> mul(m * m);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) mul[i * m + j] = index.at(ue[i] * ue[j]);
  }

  using Bits = std::vector<bool>;
  auto close = [&](std::vector<std::uint32_t> const& gens) {
    Bits in(m, false);
    std::vector<std::uint32_t> queue;
    std::uint32_t id = index.at(Permutation(g.degree()));
    in[id] = true;
    queue.push_back(id);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (auto s : gens) {
        auto z = mul[s * m + queue[head]];
        if (!in[z]) {
          in[z] = true;
          queue.push_back(z);
        }
      }
    }
    return in;
  };

  std::vector<std::uint32_t> kgens;
  for (auto const& x : k.generators()) kgens.push_back(index.at(x));
  Bits kbits = close(kgens);

  std::vector<std::pair<Bits, std::vector<std::uint32_t>>> found;
  std::unordered_set<Bits> seen{kbits};
  std::vector<std::pair<Bits, std::vector<std::uint32_t>>> work{{kbits, kgens}};
  for (std::size_t head = 0; head < work.size(); ++head) {
    auto const cur = work[head];
    for (std::uint32_t x = 0; x < m; ++x) {
      if (cur.first[x]) continue;
      auto gens = cur.second;
      gens.push_back(x);
      Bits b = close(gens);
      if (seen.insert(b).second) {
        work.emplace_back(b, gens);
        found.emplace_back(std::move(b), std::move(gens));
      }
    }
  }

  std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> keyed;
  for (auto& [bits, gens] : found) {
    std::vector<std::uint32_t> els;
    for (std::uint32_t i = 0; i < m; ++i) {
      if (bits[i]) els.push_back(i);
    }
    keyed.emplace_back(std::move(els), std::move(gens));
  }
  std::sort(keyed.begin(), keyed.end(), [](auto const& a, auto const& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::vector<PermutationGroup> out;
  for (auto const& [els, gens] : keyed) {
    std::vector<Permutation> pg;
    for (auto i : gens) pg.push_back(ue[i]);
    out.push_back(subgroup(g, std::move(pg)));
  }
  return out;
}

/// True iff the normal core of K in G (intersection of all conjugates) is trivial.
inline bool core_is_trivial(PermutationGroup const& g, PermutationGroup const& k) {
  if (!is_subgroup(k, g)) {
    throw std::invalid_argument("core_is_trivial: K is not a subgroup of G");
  }
  std::vector<Permutation> core = k.elements();
  bool changed = true;
  while (changed && core.size() > 1) {
    changed = false;
    for (auto const& x : g.generators()) {
      auto xi = x.inverse();
      std::vector<Permutation> conj;
      conj.reserve(core.size());
      for (auto const& c : core) conj.push_back(x * c * xi);
      std::sort(conj.begin(), conj.end());
      std::vector<Permutation> meet;
      std::set_intersection(core.begin(), core.end(), conj.begin(), conj.end(),
                            std::back_inserter(meet));
      if (meet.size() != core.size()) {
        core = std::move(meet);
        changed = true;
      }
    }
  }
  return core.size() == 1;
}

}  // namespace ybx

#endif  // YBX_PERM_HPP
