#ifndef YBX_CYCLESET_HPP
#define YBX_CYCLESET_HPP

/// \file cycleset.hpp
/// \brief Finite cycle sets: validation, the associated solution, G(X), Dis(X)
/// and the basic predicates.
///
/// A cycle set is stored as its n x n multiplication table, row-major, with
/// table[x*n + y] = x.y; row x is the left multiplication sigma_x.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ybx/errors.hpp"
#include "ybx/perm.hpp"

namespace ybx {

/// First axiom a candidate table violates, with its witness.
struct AxiomViolation {
  enum class Kind { shape, entry_range, row_not_bijective, law, degenerate };
  Kind kind = Kind::shape;
  Point x = 0, y = 0, z = 0;

  std::string describe() const {
    auto s = [](Point v) { return std::to_string(v); };
    switch (kind) {
      case Kind::shape:
        return "table is not square";
      case Kind::entry_range:
        return "entry out of range at (" + s(x) + "," + s(y) + ")";
      case Kind::row_not_bijective:
        return "row " + s(x) + " is not a bijection (value " + s(y) + " repeated)";
      case Kind::law:
        return "cycle set law fails at (x,y,z)=(" + s(x) + "," + s(y) + "," + s(z) + ")";
      case Kind::degenerate:
        return "squaring map is not injective (" + s(x) + "." + s(x) + " = " + s(y) +
               "." + s(y) + ")";
    }
    return "unknown violation";
  }
};

class CycleSetError : public ValidationError {
 public:
  explicit CycleSetError(AxiomViolation v)
      : ValidationError("invalid cycle set: " + v.describe()), violation_(v) {}
  AxiomViolation const& violation() const { return violation_; }

 private:
  AxiomViolation violation_;
};

/// Checks a flat row-major table of size n*n against the cycle-set axioms in
/// the order: shape, entry range, row bijectivity, law, non-degeneracy.
inline std::optional<AxiomViolation> check_cycle_set(std::size_t n,
                                                     std::vector<Point> const& t) {
  using K = AxiomViolation::Kind;
  if (n == 0 || t.size() != n * n) return AxiomViolation{K::shape};
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) {
      if (t[x * n + y] >= n) return AxiomViolation{K::entry_range, x, y};
    }
  }
  for (Point x = 0; x < n; ++x) {
    std::vector<bool> seen(n, false);
    for (Point y = 0; y < n; ++y) {
      Point v = t[x * n + y];
      if (seen[v]) return AxiomViolation{K::row_not_bijective, x, v};
      seen[v] = true;
    }
  }
  auto op = [&](Point a, Point b) { return t[a * n + b]; };
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) {
      if (x == y) continue;
      for (Point z = 0; z < n; ++z) {
        if (op(op(x, y), op(x, z)) != op(op(y, x), op(y, z))) {
          return AxiomViolation{K::law, x, y, z};
        }
      }
    }
  }
  std::vector<Point> who(n, static_cast<Point>(n));
  for (Point x = 0; x < n; ++x) {
    Point q = op(x, x);
    if (who[q] != n) return AxiomViolation{K::degenerate, who[q], x};
    who[q] = x;
  }
  return std::nullopt;
}

class CycleSet {
 public:
  CycleSet() : n_(1), table_{0} {}

  /// Validating constructor from a flat row-major table; throws CycleSetError.
  static CycleSet from_table(std::size_t n, std::vector<Point> table) {
    if (auto v = check_cycle_set(n, table)) throw CycleSetError(*v);
    return CycleSet(n, std::move(table));
  }

  static CycleSet from_rows(std::vector<std::vector<Point>> const& rows) {
    std::size_t const n = rows.size();
    std::vector<Point> flat;
    flat.reserve(n * n);
    for (auto const& r : rows) {
      if (r.size() != n) throw CycleSetError(AxiomViolation{});
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return from_table(n, std::move(flat));
  }

  /// Rows given as permutations sigma_0, ..., sigma_{n-1}.
  static CycleSet from_sigmas(std::vector<Permutation> const& sigmas) {
    std::vector<std::vector<Point>> rows;
    for (auto const& s : sigmas) rows.push_back(s.images());
    return from_rows(rows);
  }

  /// No checks; the caller guarantees the axioms (used on tables produced by
  /// code that already validated them).
  static CycleSet from_table_nc(std::size_t n, std::vector<Point> table) {
    return CycleSet(n, std::move(table));
  }

  std::size_t size() const { return n_; }
  Point op(Point x, Point y) const { return table_[x * n_ + y]; }
  std::vector<Point> const& table() const { return table_; }

  Permutation sigma(Point x) const {
    return Permutation(std::vector<Point>(table_.begin() + x * n_,
                                          table_.begin() + (x + 1) * n_));
  }

  std::vector<Permutation> sigmas() const {
    std::vector<Permutation> out;
    for (Point x = 0; x < n_; ++x) out.push_back(sigma(x));
    return out;
  }

  std::vector<std::vector<Point>> rows() const {
    std::vector<std::vector<Point>> out(n_);
    for (Point x = 0; x < n_; ++x) {
      out[x].assign(table_.begin() + x * n_, table_.begin() + (x + 1) * n_);
    }
    return out;
  }

  friend bool operator==(CycleSet const&, CycleSet const&) = default;
  friend auto operator<=>(CycleSet const& a, CycleSet const& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.table_ <=> b.table_;
  }

 private:
  CycleSet(std::size_t n, std::vector<Point> table) : n_(n), table_(std::move(table)) {}

  std::size_t n_;
  std::vector<Point> table_;
};

/// A map between cycle sets, by point images.
struct CycleSetHom {
  CycleSet source;
  CycleSet target;
  std::vector<Point> map;

  Point operator()(Point x) const { return map[x]; }

  bool is_homomorphism() const {
    if (map.size() != source.size()) return false;
    for (Point v : map) {
      if (v >= target.size()) return false;
    }
    for (Point x = 0; x < source.size(); ++x) {
      for (Point y = 0; y < source.size(); ++y) {
        if (map[source.op(x, y)] != target.op(map[x], map[y])) return false;
      }
    }
    return true;
  }

  bool is_surjective() const {
    std::vector<bool> hit(target.size(), false);
    for (Point v : map) {
      if (v < hit.size()) hit[v] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

  bool is_epimorphism() const { return is_homomorphism() && is_surjective(); }
};

inline CycleSetHom identity_hom(CycleSet const& x) {
  std::vector<Point> m(x.size());
  std::iota(m.begin(), m.end(), Point{0});
  return {x, x, std::move(m)};
}

// ---------------------------------------------------------------------------
// Involutive solutions

/// r(x,y) on pairs, stored row-major over (x,y).
struct Solution {
  std::size_t n = 0;
  std::vector<std::pair<Point, Point>> r;

  std::pair<Point, Point> operator()(Point x, Point y) const { return r[x * n + y]; }
};

/// r(x,y) = (sigma_x^{-1}(y), sigma_x^{-1}(y).x).
inline Solution to_solution(CycleSet const& x) {
  std::size_t const n = x.size();
  Solution s{n, std::vector<std::pair<Point, Point>>(n * n)};
  for (Point a = 0; a < n; ++a) {
    auto inv = x.sigma(a).inverse();
    for (Point b = 0; b < n; ++b) {
      Point u = inv(b);
      s.r[a * n + b] = {u, x.op(u, a)};
    }
  }
  return s;
}

inline bool is_involutive(Solution const& s) {
  for (Point x = 0; x < s.n; ++x) {
    for (Point y = 0; y < s.n; ++y) {
      auto [u, v] = s(x, y);
      if (s(u, v) != std::pair<Point, Point>{x, y}) return false;
    }
  }
  return true;
}

/// r1 r2 r1 = r2 r1 r2 on all triples, with r1 = r x id, r2 = id x r.
inline bool satisfies_braid_relation(Solution const& s) {
  using Triple = std::array<Point, 3>;
  auto r1 = [&](Triple t) {
    auto [a, b] = s(t[0], t[1]);
    return Triple{a, b, t[2]};
  };
  auto r2 = [&](Triple t) {
    auto [b, c] = s(t[1], t[2]);
    return Triple{t[0], b, c};
  };
  for (Point x = 0; x < s.n; ++x) {
    for (Point y = 0; y < s.n; ++y) {
      for (Point z = 0; z < s.n; ++z) {
        Triple t{x, y, z};
        if (r1(r2(r1(t))) != r2(r1(r2(t)))) return false;
      }
    }
  }
  return true;
}

/// Inverse of to_solution.  Rejects solutions that are not left
/// non-degenerate, not involutive, or whose cycle set does not reproduce r.
inline CycleSet from_solution(Solution const& s) {
  std::size_t const n = s.n;
  if (n == 0 || s.r.size() != n * n) throw ValidationError("solution: bad shape");
  for (auto [u, v] : s.r) {
    if (u >= n || v >= n) throw ValidationError("solution: entry out of range");
  }
  if (!is_involutive(s)) throw ValidationError("solution is not involutive");
  // lambda_x(y) is the first component; sigma_x = lambda_x^{-1}.
  std::vector<Point> table(n * n);
  for (Point x = 0; x < n; ++x) {
    std::vector<Point> lam(n);
    for (Point y = 0; y < n; ++y) lam[y] = s(x, y).first;
    Permutation l;
    try {
      l = Permutation(lam);
    } catch (std::invalid_argument const&) {
      throw ValidationError("solution is not left non-degenerate");
    }
    auto sig = l.inverse();
    for (Point y = 0; y < n; ++y) table[x * n + y] = sig(y);
  }
  CycleSet out = CycleSet::from_table(n, std::move(table));
  if (to_solution(out).r != s.r) {
    throw ValidationError("solution does not come from a cycle set");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Groups and predicates

/// G(X) = <sigma_x>.
inline PermutationGroup permutation_group(CycleSet const& x) {
  return PermutationGroup(x.size(), x.sigmas());
}

/// Dis(X) = <sigma_x sigma_y^{-1}> = <sigma_x sigma_0^{-1}>.
inline PermutationGroup displacement_group(CycleSet const& x) {
  auto s0i = x.sigma(0).inverse();
  std::vector<Permutation> gens;
  for (Point a = 0; a < x.size(); ++a) gens.push_back(x.sigma(a) * s0i);
  return PermutationGroup(x.size(), std::move(gens));
}

inline bool is_indecomposable(CycleSet const& x) {
  return is_transitive(permutation_group(x));
}

inline bool is_primitive_cycle_set(CycleSet const& x) {
  return is_primitive(permutation_group(x));
}

/// All rows equal, i.e. x.y = alpha(y).
inline bool is_trivial(CycleSet const& x) {
  std::size_t const n = x.size();
  auto const& t = x.table();
  for (Point a = 1; a < n; ++a) {
    if (!std::equal(t.begin(), t.begin() + n, t.begin() + a * n)) return false;
  }
  return true;
}

/// Every right multiplication y -> y.x is a bijection.
inline bool is_latin(CycleSet const& x) {
  std::size_t const n = x.size();
  for (Point c = 0; c < n; ++c) {
    std::vector<bool> seen(n, false);
    for (Point y = 0; y < n; ++y) {
      Point v = x.op(y, c);
      if (seen[v]) return false;
      seen[v] = true;
    }
  }
  return true;
}

/// Some sigma_x fixes some point.
inline bool has_fixed_point(CycleSet const& x) {
  for (Point a = 0; a < x.size(); ++a) {
    for (Point b = 0; b < x.size(); ++b) {
      if (x.op(a, b) == b) return true;
    }
  }
  return false;
}

}  // namespace ybx

#endif  // YBX_CYCLESET_HPP
