#ifndef YBX_BRACE_HPP
#define YBX_BRACE_HPP

/// \file brace.hpp
/// \brief Finite left braces given by Cayley tables, the permutation brace of
/// a cycle set, and the usual derived objects (lambda maps, B^2, socle,
/// ideals, quotients, isomorphism).

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ybx/cycleset.hpp"
#include "ybx/errors.hpp"
#include "ybx/perm.hpp"

namespace ybx {

/// Brace elements are 0..n-1; 0 is the common identity.
using Elem = std::uint32_t;

struct BraceViolation {
  enum class Kind {
    shape,
    entry_range,
    identity,
    add_not_latin,
    mul_not_latin,
    add_not_associative,
    mul_not_associative,
    add_not_abelian,
    distributivity,
  };
  Kind kind;
  Elem a = 0, b = 0, c = 0;

  std::string describe() const {
    auto s = [](Elem v) { return std::to_string(v); };
    auto triple = "(" + s(a) + "," + s(b) + "," + s(c) + ")";
    switch (kind) {
      case Kind::shape: return "tables are not square of the same size";
      case Kind::entry_range: return "table entry out of range";
      case Kind::identity: return "0 is not an identity for both operations (at " + s(a) + ")";
      case Kind::add_not_latin: return "addition table is not a latin square (row " + s(a) + ")";
      case Kind::mul_not_latin: return "multiplication table is not a latin square (row " + s(a) + ")";
      case Kind::add_not_associative: return "addition is not associative at " + triple;
      case Kind::mul_not_associative: return "multiplication is not associative at " + triple;
      case Kind::add_not_abelian: return "addition is not commutative at (" + s(a) + "," + s(b) + ")";
      case Kind::distributivity: return "a*(b+c)+a != a*b+a*c at " + triple;
    }
    return "brace violation";
  }
};

class BraceError : public ValidationError {
 public:
  explicit BraceError(BraceViolation v)
      : ValidationError("invalid brace: " + v.describe()), violation_(v) {}
  BraceViolation const& violation() const { return violation_; }

 private:
  BraceViolation violation_;
};

namespace detail {

inline std::optional<std::size_t> latin_violation(std::size_t n, std::vector<Elem> const& t) {
  std::vector<std::uint32_t> stamp(n, 0);
  std::uint32_t cur = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ++cur;
    for (std::size_t j = 0; j < n; ++j) {
      if (stamp[t[i * n + j]] == cur) return i;
      stamp[t[i * n + j]] = cur;
    }
    ++cur;
    for (std::size_t j = 0; j < n; ++j) {
      if (stamp[t[j * n + i]] == cur) return i;
      stamp[t[j * n + i]] = cur;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// First violated axiom, or nullopt.  Exhaustive (cubic in n).
inline std::optional<BraceViolation> check_brace(std::size_t n, std::vector<Elem> const& add,
                                                 std::vector<Elem> const& mul) {
  using K = BraceViolation::Kind;
  if (n == 0 || add.size() != n * n || mul.size() != n * n) return BraceViolation{K::shape};
  for (std::size_t i = 0; i < n * n; ++i) {
    if (add[i] >= n || mul[i] >= n) return BraceViolation{K::entry_range};
  }
  for (Elem a = 0; a < n; ++a) {
    if (add[a] != a || add[a * n] != a || mul[a] != a || mul[a * n] != a) {
      return BraceViolation{K::identity, a};
    }
  }
  if (auto r = detail::latin_violation(n, add)) {
    return BraceViolation{K::add_not_latin, static_cast<Elem>(*r)};
  }
  if (auto r = detail::latin_violation(n, mul)) {
    return BraceViolation{K::mul_not_latin, static_cast<Elem>(*r)};
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (add[a * n + b] != add[b * n + a]) return BraceViolation{K::add_not_abelian, a, b};
    }
  }
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      for (Elem c = 0; c < n; ++c) {
        if (add[add[a * n + b] * n + c] != add[a * n + add[b * n + c]]) {
          return BraceViolation{K::add_not_associative, a, b, c};
        }
        if (mul[mul[a * n + b] * n + c] != mul[a * n + mul[b * n + c]]) {
          return BraceViolation{K::mul_not_associative, a, b, c};
        }
        Elem lhs = add[mul[a * n + add[b * n + c]] * n + a];
        Elem rhs = add[mul[a * n + b] * n + mul[a * n + c]];
        if (lhs != rhs) return BraceViolation{K::distributivity, a, b, c};
      }
    }
  }
  return std::nullopt;
}

class FiniteBrace {
 public:
  /// The one-element brace.
  FiniteBrace() : FiniteBrace(from_tables_nc(1, {0}, {0})) {}

  /// Validates; throws BraceError with the first violation.
  static FiniteBrace from_tables(std::size_t n, std::vector<Elem> add, std::vector<Elem> mul) {
    if (auto v = check_brace(n, add, mul)) throw BraceError(*v);
    return from_tables_nc(n, std::move(add), std::move(mul));
  }

  /// No validation; for tables known to be correct by construction.
  static FiniteBrace from_tables_nc(std::size_t n, std::vector<Elem> add, std::vector<Elem> mul) {
    FiniteBrace b(0);
    b.n_ = n;
    b.add_ = std::move(add);
    b.mul_ = std::move(mul);
    b.neg_.resize(n);
    b.inv_.resize(n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem c = 0; c < n; ++c) {
        if (b.add_[a * n + c] == 0) b.neg_[a] = c;
        if (b.mul_[a * n + c] == 0) b.inv_[a] = c;
      }
    }
    return b;
  }

  std::size_t size() const { return n_; }
  Elem add(Elem a, Elem b) const { return add_[a * n_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * n_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  std::vector<Elem> const& add_table() const { return add_; }
  std::vector<Elem> const& mul_table() const { return mul_; }

  /// lambda_a(b) = -a + a o b
  Elem lambda(Elem a, Elem b) const { return add(neg(a), mul(a, b)); }

  friend bool operator==(FiniteBrace const& x, FiniteBrace const& y) {
    return x.n_ == y.n_ && x.add_ == y.add_ && x.mul_ == y.mul_;
  }

 private:
  explicit FiniteBrace(int) {}

  std::size_t n_ = 0;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

inline FiniteBrace validate_brace(std::size_t n, std::vector<Elem> add, std::vector<Elem> mul) {
  return FiniteBrace::from_tables(n, std::move(add), std::move(mul));
}

/// Z/m_1 x ... x Z/m_r, elements labelled in mixed radix (first factor most
/// significant).
inline std::vector<Elem> abelian_group_table(std::vector<std::size_t> const& orders) {
  std::size_t n = 1;
  for (auto m : orders) {
    if (m == 0) throw ValidationError("cyclic factor of order 0");
    n *= m;
  }
  auto digits = [&](std::size_t v) {
    std::vector<std::size_t> d(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      d[i] = v % orders[i];
      v /= orders[i];
    }
    return d;
  };
  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    auto da = digits(a);
    for (std::size_t b = 0; b < n; ++b) {
      auto db = digits(b);
      std::size_t v = 0;
      for (std::size_t i = 0; i < orders.size(); ++i) v = v * orders[i] + (da[i] + db[i]) % orders[i];
      t[a * n + b] = static_cast<Elem>(v);
    }
  }
  return t;
}

/// a o b = a + b.
inline FiniteBrace trivial_brace(std::vector<std::size_t> const& orders) {
  auto t = abelian_group_table(orders);
  std::size_t n = 1;
  for (auto m : orders) n *= m;
  return FiniteBrace::from_tables(n, t, t);
}

inline FiniteBrace trivial_brace(std::size_t n) { return trivial_brace(std::vector<std::size_t>{n}); }

inline bool is_trivial_brace(FiniteBrace const& b) { return b.add_table() == b.mul_table(); }

/// (a, c) is labelled a*|B2| + c.
inline FiniteBrace direct_product(FiniteBrace const& b1, FiniteBrace const& b2) {
  std::size_t const n1 = b1.size(), n2 = b2.size(), n = n1 * n2;
  std::vector<Elem> add(n * n), mul(n * n);
  for (Elem a = 0; a < n1; ++a) {
    for (Elem c = 0; c < n2; ++c) {
      for (Elem a2 = 0; a2 < n1; ++a2) {
        for (Elem c2 = 0; c2 < n2; ++c2) {
          std::size_t i = (a * n2 + c) * n + a2 * n2 + c2;
          add[i] = static_cast<Elem>(b1.add(a, a2) * n2 + b2.add(c, c2));
          mul[i] = static_cast<Elem>(b1.mul(a, a2) * n2 + b2.mul(c, c2));
        }
      }
    }
  }
  return FiniteBrace::from_tables(n, std::move(add), std::move(mul));
}

inline Permutation lambda(FiniteBrace const& b, Elem a) {
  std::vector<Point> img(b.size());
  for (Elem x = 0; x < b.size(); ++x) img[x] = b.lambda(a, x);
  return Permutation(std::move(img));
}

/// a * b = -a + a o b - b
inline Elem star(FiniteBrace const& b, Elem x, Elem y) {
  return b.sub(b.lambda(x, y), y);
}

// ---------------------------------------------------------------------------
// Subsets, closures, ideals

/// Sorted element set.
using ElemSet = std::vector<Elem>;

namespace detail {

template <class Op>
ElemSet close_set(std::size_t n, ElemSet const& gens, Op op) {
  std::vector<bool> in(n, false);
  ElemSet queue{0};
  in[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Elem g : gens) {
      Elem z = op(queue[head], g);
      if (!in[z]) {
        in[z] = true;
        queue.push_back(z);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

inline bool contains(ElemSet const& s, Elem x) { return std::binary_search(s.begin(), s.end(), x); }

}  // namespace detail

inline ElemSet additive_closure(FiniteBrace const& b, ElemSet const& gens) {
  return detail::close_set(b.size(), gens, [&](Elem x, Elem y) { return b.add(x, y); });
}

/// Subgroup of (B,o) generated by gens.
inline ElemSet multiplicative_closure(FiniteBrace const& b, ElemSet const& gens) {
  return detail::close_set(b.size(), gens, [&](Elem x, Elem y) { return b.mul(x, y); });
}

/// Normal subgroup of (B,o), invariant under every lambda_a.
inline bool is_ideal(FiniteBrace const& b, ElemSet const& s) {
  if (s.empty() || s[0] != 0) return false;
  for (Elem x : s) {
    for (Elem y : s) {
      if (!detail::contains(s, b.mul(x, y))) return false;
    }
  }
  for (Elem g = 0; g < b.size(); ++g) {
    for (Elem x : s) {
      if (!detail::contains(s, b.mul(b.mul(g, x), b.inv(g)))) return false;
      if (!detail::contains(s, b.lambda(g, x))) return false;
    }
  }
  return true;
}

/// Additive subgroup generated by all a * b.
inline ElemSet b_squared(FiniteBrace const& b) {
  std::vector<bool> seen(b.size(), false);
  ElemSet gens;
  for (Elem x = 0; x < b.size(); ++x) {
    for (Elem y = 0; y < b.size(); ++y) {
      Elem s = star(b, x, y);
      if (!seen[s]) {
        seen[s] = true;
        gens.push_back(s);
      }
    }
  }
  return additive_closure(b, gens);
}

/// {a : lambda_a = id}
inline ElemSet socle(FiniteBrace const& b) {
  ElemSet out;
  for (Elem a = 0; a < b.size(); ++a) {
    bool id = true;
    for (Elem x = 0; x < b.size() && id; ++x) id = b.lambda(a, x) == x;
    if (id) out.push_back(a);
  }
  return out;
}

inline constexpr std::size_t kMaxIdealBraceSize = 512;

/// All ideals, sorted by (size, elements).  Normal subgroups of (B,o) are
/// grown one conjugacy class at a time and then filtered by
/// lambda-invariance.
inline std::vector<ElemSet> ideals(FiniteBrace const& b) {
  std::size_t const n = b.size();
  if (n > kMaxIdealBraceSize) {
    throw CapExceeded("ideals: brace order exceeds " + std::to_string(kMaxIdealBraceSize));
  }
  std::vector<ElemSet> classes;
  {
    std::vector<bool> seen(n, false);
    for (Elem x = 0; x < n; ++x) {
      if (seen[x]) continue;
      ElemSet cls;
      for (Elem g = 0; g < n; ++g) {
        Elem c = b.mul(b.mul(g, x), b.inv(g));
        if (!seen[c]) {
          seen[c] = true;
          cls.push_back(c);
        }
      }
      classes.push_back(std::move(cls));
    }
  }
  std::map<ElemSet, bool> normal;  // value unused; ordered for determinism
  std::vector<ElemSet> work{ElemSet{0}};
  normal.emplace(ElemSet{0}, true);
  while (!work.empty()) {
    ElemSet cur = std::move(work.back());
    work.pop_back();
    for (auto const& cls : classes) {
      if (detail::contains(cur, cls[0])) continue;
      ElemSet gens = cur;
      gens.insert(gens.end(), cls.begin(), cls.end());
      ElemSet next = multiplicative_closure(b, gens);
      if (normal.emplace(next, true).second) work.push_back(std::move(next));
    }
  }
  std::vector<ElemSet> out;
  for (auto const& [s, unused] : normal) {
    bool inv = true;
    for (Elem a = 0; a < n && inv; ++a) {
      for (Elem x : s) {
        if (!detail::contains(s, b.lambda(a, x))) {
          inv = false;
          break;
        }
      }
    }
    if (inv) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](ElemSet const& x, ElemSet const& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

/// Class of each element modulo an ideal, numbered by least element.
inline std::vector<Elem> coset_labels(FiniteBrace const& b, ElemSet const& j) {
  std::vector<Elem> lab(b.size(), UINT32_MAX);
  Elem next = 0;
  for (Elem x = 0; x < b.size(); ++x) {
    if (lab[x] != UINT32_MAX) continue;
    for (Elem y : j) lab[b.mul(x, y)] = next;
    ++next;
  }
  return lab;
}

/// B / J.  Throws ValidationError if J is not an ideal.
inline FiniteBrace quotient_brace(FiniteBrace const& b, ElemSet const& j) {
  if (!is_ideal(b, j)) throw ValidationError("quotient_brace: subset is not an ideal");
  auto lab = coset_labels(b, j);
  std::size_t const m = b.size() / j.size();
  std::vector<Elem> rep(m);
  for (Elem x = b.size(); x-- > 0;) rep[lab[x]] = x;
  std::vector<Elem> add(m * m), mul(m * m);
  for (Elem u = 0; u < m; ++u) {
    for (Elem v = 0; v < m; ++v) {
      add[u * m + v] = lab[b.add(rep[u], rep[v])];
      mul[u * m + v] = lab[b.mul(rep[u], rep[v])];
    }
  }
  return FiniteBrace::from_tables(m, std::move(add), std::move(mul));
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace detail {

inline std::size_t element_order(Elem x, auto op) {
  std::size_t k = 1;
  for (Elem y = x; y != 0; y = op(y, x)) ++k;
  return k;
}

inline std::vector<std::array<std::size_t, 3>> brace_signature(FiniteBrace const& b) {
  std::vector<std::array<std::size_t, 3>> sig(b.size());
  for (Elem x = 0; x < b.size(); ++x) {
    std::size_t fixed = 0;
    for (Elem y = 0; y < b.size(); ++y) fixed += b.lambda(x, y) == y;
    sig[x] = {element_order(x, [&](Elem u, Elem v) { return b.add(u, v); }),
              element_order(x, [&](Elem u, Elem v) { return b.mul(u, v); }), fixed};
  }
  return sig;
}

}  // namespace detail

inline constexpr std::size_t kMaxBraceIsoOrder = 128;

/// f with f(a+b) = f(a)+f(b) and f(a o b) = f(a) o f(b), if any.  Backtracks
/// over images of an additive generating set.
inline std::optional<std::vector<Elem>> brace_isomorphism(FiniteBrace const& x,
                                                          FiniteBrace const& y) {
  std::size_t const n = x.size();
  if (y.size() != n) return std::nullopt;
  if (n > kMaxBraceIsoOrder) {
    throw CapExceeded("brace_isomorphism: order exceeds " + std::to_string(kMaxBraceIsoOrder));
  }
  auto sx = detail::brace_signature(x), sy = detail::brace_signature(y);
  {
    auto a = sx, b = sy;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  ElemSet gens;
  {
    ElemSet span{0};
    for (Elem g = 1; g < n && span.size() < n; ++g) {
      if (detail::contains(span, g)) continue;
      gens.push_back(g);
      span = additive_closure(x, gens);
    }
  }
  constexpr Elem kNone = UINT32_MAX;
  std::vector<Elem> f(n, kNone);
  f[0] = 0;

  // Extends f from span(gens[0..k)) to span(gens[0..k]) with f(g) = img.
  auto extend = [&](Elem g, Elem img, std::vector<Elem>& added) {
    std::vector<bool> used(n, false);
    for (Elem a = 0; a < n; ++a) {
      if (f[a] != kNone) used[f[a]] = true;
    }
    ElemSet domain;
    for (Elem a = 0; a < n; ++a) {
      if (f[a] != kNone) domain.push_back(a);
    }
    Elem step = g, istep = img;
    for (;;) {
      if (f[step] != kNone) {
        if (f[step] != istep) return false;
        break;
      }
      for (Elem d : domain) {
        Elem a = x.add(d, step), fa = y.add(f[d], istep);
        if (f[a] != kNone || used[fa]) return false;
        f[a] = fa;
        used[fa] = true;
        added.push_back(a);
      }
      step = x.add(step, g);
      istep = y.add(istep, img);
    }
    for (Elem a = 0; a < n; ++a) {
      if (f[a] == kNone) continue;
      for (Elem c = 0; c < n; ++c) {
        if (f[c] == kNone) continue;
        Elem p = x.mul(a, c);
        if (f[p] != kNone && f[p] != y.mul(f[a], f[c])) return false;
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> go = [&](std::size_t k) {
    if (k == gens.size()) return true;
    for (Elem img = 1; img < n; ++img) {
      if (sy[img] != sx[gens[k]]) continue;
      std::vector<Elem> added;
      if (extend(gens[k], img, added) && go(k + 1)) return true;
      for (Elem a : added) f[a] = kNone;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return f;
}

inline bool are_isomorphic_braces(FiniteBrace const& x, FiniteBrace const& y) {
  return brace_isomorphism(x, y).has_value();
}

// ---------------------------------------------------------------------------
// Permutation brace of a cycle set

struct PermutationBrace {
  FiniteBrace brace;
  std::vector<Permutation> elements;  // sorted; elements[0] is the identity

  Elem index_of(Permutation const& p) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), p);
    if (it == elements.end() || *it != p) throw std::invalid_argument("not a group element");
    return static_cast<Elem>(it - elements.begin());
  }
};

inline constexpr std::size_t kFullBraceValidation = 256;

/// Brace on G(X) with o = composition.  Addition comes from the action of
/// Z^X on G(X) by the increment rule f -> f o sigma^{-1}_{f^{-1}(y)}; the
/// action is checked to be well defined (increments commute pairwise and the
/// decrement rule inverts them) on every element.  For |G| up to 256 the
/// resulting tables are also validated as a brace.
inline PermutationBrace permutation_brace(CycleSet const& x) {
  std::size_t const deg = x.size();
  auto const group = permutation_group(x);
  auto const& els = group.elements();
  std::size_t const n = els.size();
  std::unordered_map<Permutation, Elem, PermutationHash> index;
  index.reserve(n * 2);
  for (Elem i = 0; i < n; ++i) index.emplace(els[i], i);

  std::vector<Permutation> sig_inv(deg), sig(deg);
  for (Point a = 0; a < deg; ++a) {
    sig[a] = x.sigma(a);
    sig_inv[a] = sig[a].inverse();
  }
  std::vector<Point> q_inv(deg);
  for (Point a = 0; a < deg; ++a) q_inv[x.op(a, a)] = a;

  // inc[i*deg + y] = index of f_i o sigma^{-1}_{f_i^{-1}(y)}
  std::vector<Elem> inc(n * deg), dec(n * deg);
  for (Elem i = 0; i < n; ++i) {
    auto fi = els[i].inverse();
    for (Point y = 0; y < deg; ++y) {
      inc[i * deg + y] = index.at(els[i] * sig_inv[fi(y)]);
      dec[i * deg + y] = index.at(els[i] * sig[q_inv[fi(y)]]);
    }
  }
  for (Elem i = 0; i < n; ++i) {
    for (Point y = 0; y < deg; ++y) {
      Elem iy = inc[i * deg + y];
      if (dec[iy * deg + y] != i) {
        throw ValidationError("permutation brace: decrement does not invert increment");
      }
      for (Point z = y + 1; z < deg; ++z) {
        if (inc[iy * deg + z] != inc[inc[i * deg + z] * deg + y]) {
          throw ValidationError("permutation brace: increments do not commute");
        }
      }
    }
  }

  // BFS tree over increments from the identity.
  constexpr Elem kNone = UINT32_MAX;
  std::vector<Elem> parent(n, kNone);
  std::vector<Point> via(n, 0);
  std::vector<Elem> order{0};
  parent[0] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    Elem i = order[head];
    for (Point y = 0; y < deg; ++y) {
      Elem j = inc[i * deg + y];
      if (parent[j] == kNone) {
        parent[j] = i;
        via[j] = y;
        order.push_back(j);
      }
    }
  }
  if (order.size() != n) throw ValidationError("permutation brace: increments do not reach G");

  std::vector<Elem> add(n * n), mul(n * n);
  for (Elem g = 0; g < n; ++g) {
    add[g * n] = g;
    for (std::size_t k = 1; k < n; ++k) {
      Elem h = order[k];
      add[g * n + h] = inc[add[g * n + parent[h]] * deg + via[h]];
    }
    for (Elem h = 0; h < n; ++h) mul[g * n + h] = index.at(els[g] * els[h]);
  }
  FiniteBrace b = n <= kFullBraceValidation
                      ? FiniteBrace::from_tables(n, std::move(add), std::move(mul))
                      : FiniteBrace::from_tables_nc(n, std::move(add), std::move(mul));
  return {std::move(b), els};
}

/// Orbits on X of the permutations listed by `subset` (indices into pb).
inline std::vector<std::vector<Point>> orbits_of(PermutationBrace const& pb, ElemSet const& subset,
                                                 std::size_t degree) {
  std::vector<Permutation> gens;
  for (Elem e : subset) gens.push_back(pb.elements[e]);
  return orbits(PermutationGroup(degree, std::move(gens)));
}

}  // namespace ybx

#endif  // YBX_BRACE_HPP
