#ifndef YBX_CONSTRUCT_HPP
#define YBX_CONSTRUCT_HPP

/// \file construct.hpp
/// \brief Builders: trivial cycle sets, direct products, dynamical extensions
/// and the named examples.

#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ybx/cycleset.hpp"
#include "ybx/errors.hpp"
#include "ybx/perm.hpp"

namespace ybx {

/// x.y = alpha(y).
inline CycleSet trivial_cycle_set(Permutation const& alpha) {
  std::size_t const n = alpha.degree();
  std::vector<Point> t(n * n);
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) t[x * n + y] = alpha(y);
  }
  return CycleSet::from_table(n, std::move(t));
}

/// x.y = y + 1 mod n.
inline CycleSet trivial_shift(std::size_t n) {
  if (n == 0) throw ValidationError("trivial_shift: n must be positive");
  std::vector<Point> img(n);
  for (Point y = 0; y < n; ++y) img[y] = static_cast<Point>((y + 1) % n);
  return trivial_cycle_set(Permutation(std::move(img)));
}

/// Componentwise product; (a, b) is labelled a*|Y| + b.
inline CycleSet direct_product(CycleSet const& x, CycleSet const& y) {
  std::size_t const n = x.size(), m = y.size(), nm = n * m;
  std::vector<Point> t(nm * nm);
  for (Point a = 0; a < n; ++a) {
    for (Point b = 0; b < m; ++b) {
      for (Point c = 0; c < n; ++c) {
        for (Point d = 0; d < m; ++d) {
          t[(a * m + b) * nm + (c * m + d)] =
              static_cast<Point>(x.op(a, c) * m + y.op(b, d));
        }
      }
    }
  }
  return CycleSet::from_table(nm, std::move(t));
}

// ---------------------------------------------------------------------------
// Dynamical extensions

struct CocycleViolation {
  enum class Kind { not_permutation, identity };
  Kind kind;
  Point x, y, z;      // base points
  Point r, s, t;      // fiber points
};

class CocycleError : public ValidationError {
 public:
  explicit CocycleError(CocycleViolation v)
      : ValidationError(describe(v)), violation_(v) {}
  CocycleViolation const& violation() const { return violation_; }

 private:
  static std::string describe(CocycleViolation const& v) {
    auto s = [](Point p) { return std::to_string(p); };
    if (v.kind == CocycleViolation::Kind::not_permutation) {
      return "cocycle: alpha_(" + s(v.x) + "," + s(v.y) + ")(" + s(v.r) +
             ",-) is not a permutation";
    }
    return "cocycle identity fails at (x,y,z,r,s,t)=(" + s(v.x) + "," + s(v.y) + "," +
           s(v.z) + "," + s(v.r) + "," + s(v.s) + "," + s(v.t) + ")";
  }
  CocycleViolation violation_;
};

/// alpha : X x X x S -> Sym(S), stored as alpha_(x,y)(s,t).
class DynamicalCocycle {
 public:
  using Fn = std::function<Point(Point x, Point y, Point s, Point t)>;

  DynamicalCocycle(CycleSet base, std::size_t fiber, Fn const& alpha)
      : base_(std::move(base)), m_(fiber) {
    std::size_t const n = base_.size();
    values_.resize(n * n * m_ * m_);
    for (Point x = 0; x < n; ++x) {
      for (Point y = 0; y < n; ++y) {
        for (Point s = 0; s < m_; ++s) {
          for (Point t = 0; t < m_; ++t) {
            Point v = alpha(x, y, s, t);
            if (v >= m_) throw ValidationError("cocycle value out of range");
            values_[index(x, y, s, t)] = v;
          }
        }
      }
    }
  }

  CycleSet const& base() const { return base_; }
  std::size_t fiber_size() const { return m_; }

  Point operator()(Point x, Point y, Point s, Point t) const {
    return values_[index(x, y, s, t)];
  }

  /// First violation of bijectivity or of
  ///   a_(x.y,x.z)(a_(x,y)(r,s), a_(x,z)(r,t)) = a_(y.x,y.z)(a_(y,x)(s,r), a_(y,z)(s,t)).
  std::optional<CocycleViolation> check() const {
    std::size_t const n = base_.size();
    for (Point x = 0; x < n; ++x) {
      for (Point y = 0; y < n; ++y) {
        for (Point r = 0; r < m_; ++r) {
          std::vector<bool> seen(m_, false);
          for (Point t = 0; t < m_; ++t) {
            Point v = (*this)(x, y, r, t);
            if (seen[v]) {
              return CocycleViolation{CocycleViolation::Kind::not_permutation, x, y, 0, r, 0, 0};
            }
            seen[v] = true;
          }
        }
      }
    }
    auto const& X = base_;
    for (Point x = 0; x < n; ++x) {
      for (Point y = 0; y < n; ++y) {
        for (Point z = 0; z < n; ++z) {
          for (Point r = 0; r < m_; ++r) {
            for (Point s = 0; s < m_; ++s) {
              for (Point t = 0; t < m_; ++t) {
                Point lhs = (*this)(X.op(x, y), X.op(x, z), (*this)(x, y, r, s),
                                    (*this)(x, z, r, t));
                Point rhs = (*this)(X.op(y, x), X.op(y, z), (*this)(y, x, s, r),
                                    (*this)(y, z, s, t));
                if (lhs != rhs) {
                  return CocycleViolation{CocycleViolation::Kind::identity, x, y, z, r, s, t};
                }
              }
            }
          }
        }
      }
    }
    return std::nullopt;
  }

 private:
  std::size_t index(Point x, Point y, Point s, Point t) const {
    std::size_t const n = base_.size();
    return ((static_cast<std::size_t>(x) * n + y) * m_ + s) * m_ + t;
  }

  CycleSet base_;
  std::size_t m_;
  std::vector<Point> values_;
};

/// X x_alpha S with (x,s).(y,t) = (x.y, alpha_(x,y)(s,t)); (x,s) is labelled
/// x*|S| + s.  Throws CocycleError on an invalid cocycle.
inline CycleSet dynamical_extension(DynamicalCocycle const& c) {
  if (auto v = c.check()) throw CocycleError(*v);
  auto const& X = c.base();
  std::size_t const n = X.size(), m = c.fiber_size(), nm = n * m;
  std::vector<Point> t(nm * nm);
  for (Point x = 0; x < n; ++x) {
    for (Point s = 0; s < m; ++s) {
      for (Point y = 0; y < n; ++y) {
        for (Point u = 0; u < m; ++u) {
          t[(x * m + s) * nm + (y * m + u)] =
              static_cast<Point>(X.op(x, y) * m + c(x, y, s, u));
        }
      }
    }
  }
  return CycleSet::from_table(nm, std::move(t));
}

/// Projection (x,s) -> x of an extension onto its base.
inline CycleSetHom extension_projection(DynamicalCocycle const& c, CycleSet const& ext) {
  std::vector<Point> map(ext.size());
  for (Point p = 0; p < ext.size(); ++p) {
    map[p] = static_cast<Point>(p / c.fiber_size());
  }
  return {ext, c.base(), std::move(map)};
}

/// Indecomposability through the fiber criterion: the base is indecomposable
/// and the stabilizer of the fiber {0} x S in G(X x_alpha S) is transitive on
/// it.  The fibers form a block system, so an element maps (0,0) into the
/// fiber iff it stabilizes the fiber; the stabilizer orbit of (0,0) is the
/// G-orbit of (0,0) cut down to the fiber.
inline bool extension_indecomposable_by_fibers(DynamicalCocycle const& c,
                                               CycleSet const& ext) {
  if (!is_indecomposable(c.base())) return false;
  std::size_t const m = c.fiber_size();
  for (auto const& orb : orbits(permutation_group(ext))) {
    if (orb[0] != 0) continue;
    std::size_t in_fiber = 0;
    for (Point p : orb) in_fiber += p < m;
    return in_fiber == m;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Named examples (all 0-based)

/// Size-4 irretractable cycle set with sigma_0=(0 3), sigma_1=(0 2 3 1),
/// sigma_2=(1 2), sigma_3=(0 1 3 2).
inline CycleSet esfin3_I() {
  return CycleSet::from_sigmas({
      Permutation::from_cycles(4, {{0, 3}}),
      Permutation::from_cycles(4, {{0, 2, 3, 1}}),
      Permutation::from_cycles(4, {{1, 2}}),
      Permutation::from_cycles(4, {{0, 1, 3, 2}}),
  });
}

/// (Z/k, y -> y+1) x esfin3_I for odd k.
inline CycleSet esfin3_product(std::size_t k) {
  if (k == 0 || k % 2 == 0) throw ValidationError("esfin3_product: k must be odd");
  return direct_product(trivial_shift(k), esfin3_I());
}

/// Z/6 x Z/6 with (i,j).(k,l) = (k - j, l + t_{k-i}), t_0 = 1 and t_x = 3
/// otherwise; (i,j) is labelled 6i + j.
inline CycleSet esfin4() {
  constexpr int m = 6;
  std::vector<Point> t(36 * 36);
  auto mod = [](int v) { return ((v % m) + m) % m; };
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
          int tk = mod(k - i) == 0 ? 1 : 3;
          int a = mod(k - j), b = mod(l + tk);
          t[(i * m + j) * 36 + (k * m + l)] = static_cast<Point>(a * m + b);
        }
      }
    }
  }
  return CycleSet::from_table(36, std::move(t));
}

/// The size-8 singular cycle set: |G(X)| = 24.
inline CycleSet rump_singular8() {
  auto c = [](std::vector<std::vector<Point>> cyc) {
    return Permutation::from_cycles(8, cyc);
  };
  return CycleSet::from_sigmas({
      c({{0, 7}, {1, 3}, {2, 5}, {4, 6}}),
      c({{0, 2, 6, 4}, {1, 3, 7, 5}}),
      c({{0, 1}, {2, 5}, {3, 4}, {6, 7}}),
      c({{0, 2}, {1, 6}, {3, 4}, {5, 7}}),
      c({{0, 4, 6, 2}, {1, 5, 7, 3}}),
      c({{0, 4, 5, 1}, {2, 6, 7, 3}}),
      c({{0, 1, 5, 4}, {2, 3, 7, 6}}),
      c({{0, 7}, {1, 6}, {2, 3}, {4, 5}}),
  });
}

/// Cocycle over rump_singular8 with fiber A = Z/k x Z/k ((a,b) labelled a*k+b):
///   (c, d+1)      if x = y and a != c
///   (c, d)        if x = y and a = c
///   (c - b - 1, d) if x != y
inline DynamicalCocycle rump_singular_cocycle(std::size_t k) {
  if (k == 0 || std::gcd(k, std::size_t{3}) != 1) {
    throw ValidationError("rump_singular_ext: k must be coprime to 3");
  }
  auto kk = static_cast<Point>(k);
  return DynamicalCocycle(rump_singular8(), k * k, [kk](Point x, Point y, Point s, Point t) {
    Point a = s / kk, b = s % kk, c = t / kk, d = t % kk;
    if (x == y) {
      if (a != c) return c * kk + (d + 1) % kk;
      return c * kk + d;
    }
    Point nc = (c + 2 * kk - b - 1) % kk;
    return nc * kk + d;
  });
}

inline CycleSet rump_singular_ext(std::size_t k) {
  return dynamical_extension(rump_singular_cocycle(k));
}

/// x.y = 2x - y mod n.  This only satisfies the cycle-set law when n divides
/// 4; other n are rejected by validation.
inline CycleSet latin_2x_minus_y(std::size_t n) {
  if (n == 0) throw ValidationError("latin_2x_minus_y: n must be positive");
  std::vector<Point> t(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) t[x * n + y] = static_cast<Point>((2 * x + n - y) % n);
  }
  return CycleSet::from_table(n, std::move(t));
}

inline std::vector<std::string> builtin_names() {
  return {"esfin3_I",       "esfin3_product", "esfin4",       "rump_singular8",
          "rump_singular_ext", "latin_2x_minus_y", "trivial_shift"};
}

/// Named example; parameterized names take `param` or a "name(k)" suffix.
inline CycleSet builtin(std::string_view name, std::optional<std::size_t> param = {}) {
  if (auto open = name.find('('); open != std::string_view::npos) {
    auto close = name.find(')', open);
    if (close == std::string_view::npos) throw ValidationError("bad builtin name");
    std::size_t v = 0;
    auto inner = name.substr(open + 1, close - open - 1);
    auto [p, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), v);
    if (ec != std::errc{} || p != inner.data() + inner.size()) {
      throw ValidationError("bad builtin parameter");
    }
    param = v;
    name = name.substr(0, open);
  }
  auto need = [&]() -> std::size_t {
    if (!param) throw ValidationError(std::string(name) + " needs a parameter");
    return *param;
  };
  if (name == "esfin3_I") return esfin3_I();
  if (name == "esfin3_product") return esfin3_product(need());
  if (name == "esfin4") return esfin4();
  if (name == "rump_singular8") return rump_singular8();
  if (name == "rump_singular_ext") return rump_singular_ext(need());
  if (name == "latin_2x_minus_y") return latin_2x_minus_y(need());
  if (name == "trivial_shift") return trivial_shift(need());
  throw ValidationError("unknown builtin: " + std::string(name));
}

}  // namespace ybx

#endif  // YBX_CONSTRUCT_HPP
