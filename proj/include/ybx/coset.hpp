#ifndef YBX_COSET_HPP
#define YBX_COSET_HPP

/// \file coset.hpp
/// \brief Cycle sets on left cosets of a brace, the level-2 criterion, and a
/// search for all braces over a small abelian group.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ybx/brace.hpp"
#include "ybx/cycleset.hpp"
#include "ybx/errors.hpp"
#include "ybx/level.hpp"

namespace ybx {

struct CycleBase {
  ElemSet orbit;
  Elem representative;  // least element of the orbit
};

/// lambda-orbit of b.
inline ElemSet lambda_orbit(FiniteBrace const& b, Elem x) {
  std::vector<bool> in(b.size(), false);
  ElemSet out;
  for (Elem a = 0; a < b.size(); ++a) {
    Elem y = b.lambda(a, x);
    if (!in[y]) {
      in[y] = true;
      out.push_back(y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// lambda-orbits that generate (B,o), ordered by representative.
inline std::vector<CycleBase> transitive_cycle_bases(FiniteBrace const& b) {
  std::vector<CycleBase> out;
  std::vector<bool> seen(b.size(), false);
  for (Elem x = 0; x < b.size(); ++x) {
    if (seen[x]) continue;
    auto orb = lambda_orbit(b, x);
    for (Elem y : orb) seen[y] = true;
    if (multiplicative_closure(b, orb).size() == b.size()) out.push_back({orb, x});
  }
  return out;
}

/// {b : lambda_b(a) = a}, a subgroup of (B,o).
inline ElemSet lambda_stabilizer(FiniteBrace const& b, Elem a) {
  ElemSet out;
  for (Elem x = 0; x < b.size(); ++x) {
    if (b.lambda(x, a) == a) out.push_back(x);
  }
  return out;
}

/// Intersection of all conjugates g K g^-1 in (B,o).
inline ElemSet core(FiniteBrace const& b, ElemSet const& k) {
  ElemSet c = k;
  for (Elem g = 0; g < b.size() && c.size() > 1; ++g) {
    ElemSet next;
    for (Elem x : c) {
      if (detail::contains(k, b.mul(b.mul(b.inv(g), x), g))) next.push_back(x);
    }
    c = std::move(next);
  }
  return c;
}

inline bool is_core_free(FiniteBrace const& b, ElemSet const& k) { return core(b, k).size() == 1; }

/// Left cosets x o K, numbered by least element; label[x] is the coset of x.
inline std::vector<Elem> left_coset_labels(FiniteBrace const& b, ElemSet const& k) {
  std::vector<Elem> lab(b.size(), UINT32_MAX);
  Elem next = 0;
  for (Elem x = 0; x < b.size(); ++x) {
    if (lab[x] != UINT32_MAX) continue;
    for (Elem y : k) lab[b.mul(x, y)] = next;
    ++next;
  }
  return lab;
}

/// Cycle set on B/K with sigma_{xK}(yK) = lambda_x(a1)^- o y o K (^- is the
/// o-inverse).  K is given by generators and closed first.  Throws
/// ValidationError when a1 lies in no generating lambda-orbit, K is not
/// core-free or does not fix a1, and CycleSetError if the output fails the
/// axioms.
inline CycleSet cosmod(FiniteBrace const& b, ElemSet const& k_gens, Elem a1) {
  if (a1 >= b.size()) throw ValidationError("cosmod: base element out of range");
  ElemSet k = multiplicative_closure(b, k_gens);
  auto orb = lambda_orbit(b, a1);
  if (multiplicative_closure(b, orb).size() != b.size()) {
    throw ValidationError("cosmod: the lambda-orbit of a1 does not generate (B,o)");
  }
  if (!is_core_free(b, k)) throw ValidationError("cosmod: K is not core-free");
  for (Elem x : k) {
    if (b.lambda(x, a1) != a1) throw ValidationError("cosmod: K does not stabilize a1");
  }
  auto lab = left_coset_labels(b, k);
  std::size_t const m = b.size() / k.size();
  std::vector<Elem> rep(m);
  for (Elem x = b.size(); x-- > 0;) rep[lab[x]] = x;
  std::vector<Point> t(m * m);
  for (Elem u = 0; u < m; ++u) {
    Elem shift = b.inv(b.lambda(rep[u], a1));
    for (Elem v = 0; v < m; ++v) t[u * m + v] = lab[b.mul(shift, rep[v])];
  }
  return CycleSet::from_table(m, std::move(t));
}

/// Whether the permutation brace of X is isomorphic to B.
inline bool permutation_brace_matches(CycleSet const& x, FiniteBrace const& b) {
  if (permutation_group(x).order() != b.size()) return false;
  return are_isomorphic_braces(permutation_brace(x).brace, b);
}

inline constexpr std::size_t kMaxLiv2Stabilizer = 64;

/// Subgroups H of (B,o) with K < H <= U (K <= U, both as element sets),
/// sorted by (size, elements).
inline std::vector<ElemSet> intermediate_subgroups(FiniteBrace const& b, ElemSet const& k,
                                                   ElemSet const& u) {
  if (u.size() > kMaxLiv2Stabilizer) {
    throw CapExceeded("subgroup enumeration: |U| exceeds " + std::to_string(kMaxLiv2Stabilizer));
  }
  std::set<ElemSet> seen{k};
  std::vector<ElemSet> work{k}, out;
  while (!work.empty()) {
    ElemSet cur = std::move(work.back());
    work.pop_back();
    for (Elem x : u) {
      if (detail::contains(cur, x)) continue;
      ElemSet gens = cur;
      gens.push_back(x);
      ElemSet h = multiplicative_closure(b, gens);
      if (seen.insert(h).second) {
        out.push_back(h);
        work.push_back(std::move(h));
      }
    }
  }
  std::sort(out.begin(), out.end(), [](ElemSet const& x, ElemSet const& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  return out;
}

/// |S o T| for subsets of (B,o).
inline std::size_t product_size(FiniteBrace const& b, ElemSet const& s, ElemSet const& t) {
  std::vector<bool> in(b.size(), false);
  std::size_t count = 0;
  for (Elem x : s) {
    for (Elem y : t) {
      Elem z = b.mul(x, y);
      if (!in[z]) {
        in[z] = true;
        ++count;
      }
    }
  }
  return count;
}

struct Liv2Report {
  bool applicable = true;  // false for a trivial brace
  bool condition1 = false;
  bool condition2 = false;
  bool condition3 = false;
  bool holds = false;
  std::optional<std::size_t> p;
  std::size_t index = 0;                    // index of B^2 o K
  std::optional<ElemSet> condition2_witness;  // H where B^2 is not transitive on B/H
  std::optional<ElemSet> condition3_witness;  // J violating condition 3
  Level fpl_value;                          // fpl of cosmod(B, K, a1)
  bool agrees = false;                      // holds == (fpl_value == 2)
};

/// Evaluates the three level-2 conditions for cosmod(B, K, a1) and compares
/// with the level computed from the cycle set itself.  The coset stabilizer
/// in condition 1 is taken at x = 0, i.e. K; other cosets give conjugate
/// subgroups and the same index since B^2 is normal.  Condition 3 ranges over
/// the non-zero ideals J.
inline Liv2Report liv2_check(FiniteBrace const& b, ElemSet const& k_gens, Elem a1) {
  Liv2Report r;
  if (is_trivial_brace(b)) {
    r.applicable = false;
    return r;
  }
  CycleSet x = cosmod(b, k_gens, a1);
  ElemSet k = multiplicative_closure(b, k_gens);
  ElemSet b2 = b_squared(b);
  std::size_t const n = b.size();

  std::size_t b2k = product_size(b, b2, k);
  r.index = n / b2k;
  r.condition1 = r.index > 1 && is_prime(r.index);
  if (r.condition1) r.p = r.index;

  r.condition2 = true;
  for (auto const& h : intermediate_subgroups(b, k, lambda_stabilizer(b, a1))) {
    if (!is_core_free(b, h)) continue;
    if (product_size(b, b2, h) != n) {
      r.condition2 = false;
      r.condition2_witness = h;
      break;
    }
  }

  r.condition3 = true;
  if (r.condition1) {
    for (auto const& j : ideals(b)) {
      // The zero ideal has |B/K| orbits and B^2 is never transitive on them
      // once condition 1 holds, so only non-zero ideals are meaningful.
      if (j.size() == 1) continue;
      std::size_t jk = product_size(b, j, k);
      std::size_t orbits_j = n / jk;
      if (orbits_j <= *r.p) continue;
      ElemSet b2j = multiplicative_closure(b, [&] {
        ElemSet g = b2;
        g.insert(g.end(), j.begin(), j.end());
        return g;
      }());
      if (product_size(b, b2j, k) != n) {
        r.condition3 = false;
        r.condition3_witness = j;
        break;
      }
    }
  }
  r.holds = r.condition1 && r.condition2 && r.condition3;
  r.fpl_value = fpl(x);
  r.agrees = r.holds == (r.fpl_value == Level{2u});
  return r;
}

// ---------------------------------------------------------------------------
// Braces over a given additive group

inline constexpr std::size_t kMaxHolomorphOrder = 8;

/// Automorphisms of the abelian group with table `add`, as image sequences,
/// sorted.
inline std::vector<std::vector<Elem>> automorphisms(std::size_t n, std::vector<Elem> const& add) {
  ElemSet gens;
  {
    ElemSet span{0};
    for (Elem g = 1; g < n && span.size() < n; ++g) {
      if (detail::contains(span, g)) continue;
      gens.push_back(g);
      span = detail::close_set(n, gens, [&](Elem x, Elem y) { return add[x * n + y]; });
    }
  }
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> img(gens.size(), 0);
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k < gens.size()) {
      for (Elem v = 1; v < n; ++v) {
        img[k] = v;
        go(k + 1);
      }
      return;
    }
    // Extend along the BFS spanning tree of the generators.
    constexpr Elem kNone = UINT32_MAX;
    std::vector<Elem> f(n, kNone);
    f[0] = 0;
    ElemSet queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Elem a = queue[head];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Elem c = add[a * n + gens[i]];
        Elem fc = add[f[a] * n + img[i]];
        if (f[c] == kNone) {
          f[c] = fc;
          queue.push_back(c);
        } else if (f[c] != fc) {
          return;
        }
      }
    }
    std::vector<bool> used(n, false);
    for (Elem v : f) {
      if (used[v]) return;
      used[v] = true;
    }
    for (Elem a = 0; a < n; ++a) {
      for (Elem c = 0; c < n; ++c) {
        if (f[add[a * n + c]] != add[f[a] * n + f[c]]) return;
      }
    }
    out.push_back(std::move(f));
  };
  go(0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// All left braces with additive group Z/m_1 x ... x Z/m_r (order <= 8), one
/// per isomorphism class.  Solutions are maps b -> phi_b in Aut(A) with
/// phi_{a + phi_a(b)} = phi_a phi_b, giving a o b = a + phi_a(b); this is the
/// same as a regular subgroup of the holomorph.
inline std::vector<FiniteBrace> holomorph_brace_search(std::vector<std::size_t> const& orders) {
  auto add = abelian_group_table(orders);
  std::size_t n = 1;
  for (auto m : orders) n *= m;
  if (n > kMaxHolomorphOrder) {
    throw CapExceeded("holomorph_brace_search: order exceeds " +
                      std::to_string(kMaxHolomorphOrder));
  }
  auto auts = automorphisms(n, add);
  std::size_t const na = auts.size();
  std::size_t id = 0;
  while (auts[id] != [&] {
    std::vector<Elem> e(n);
    for (Elem a = 0; a < n; ++a) e[a] = a;
    return e;
  }()) {
    ++id;
  }
  std::vector<std::size_t> comp(na * na);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      std::vector<Elem> c(n);
      for (Elem a = 0; a < n; ++a) c[a] = auts[i][auts[j][a]];
      comp[i * na + j] = static_cast<std::size_t>(
          std::lower_bound(auts.begin(), auts.end(), c) - auts.begin());
    }
  }

  constexpr std::size_t kNone = SIZE_MAX;
  std::vector<std::size_t> phi(n, kNone);
  std::vector<std::vector<std::size_t>> solutions;

  // Assigns phi[b] = v and closes under the defining identity; records
  // assignments in `trail`.
  auto assign = [&](Elem b0, std::size_t v0, std::vector<Elem>& trail) {
    std::vector<std::pair<Elem, std::size_t>> queue{{b0, v0}};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto [b, v] = queue[head];
      if (phi[b] != kNone) {
        if (phi[b] != v) return false;
        continue;
      }
      phi[b] = v;
      trail.push_back(b);
      for (Elem a = 0; a < n; ++a) {
        if (phi[a] == kNone) continue;
        for (auto [u, w] : {std::pair<Elem, Elem>{a, b}, std::pair<Elem, Elem>{b, a}}) {
          Elem c = add[u * n + auts[phi[u]][w]];
          queue.emplace_back(c, comp[phi[u] * na + phi[w]]);
        }
      }
    }
    return true;
  };

  std::function<void()> go = [&] {
    Elem next = 0;
    while (next < n && phi[next] != kNone) ++next;
    if (next == n) {
      solutions.push_back(phi);
      return;
    }
    for (std::size_t v = 0; v < na; ++v) {
      std::vector<Elem> trail;
      if (assign(next, v, trail)) go();
      for (Elem b : trail) phi[b] = kNone;
    }
  };
  {
    std::vector<Elem> trail;
    assign(0, id, trail);
    go();
  }

  std::vector<FiniteBrace> classes;
  for (auto const& s : solutions) {
    std::vector<Elem> mul(n * n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) mul[a * n + b] = add[a * n + auts[s[a]][b]];
    }
    auto candidate = FiniteBrace::from_tables(n, add, std::move(mul));
    bool known = std::any_of(classes.begin(), classes.end(), [&](FiniteBrace const& c) {
      return are_isomorphic_braces(c, candidate);
    });
    if (!known) classes.push_back(std::move(candidate));
  }
  return classes;
}

/// (B,o) is the dihedral group of order 8: non-abelian with five involutions.
inline bool has_dihedral8_mul_group(FiniteBrace const& b) {
  if (b.size() != 8) return false;
  bool abelian = true;
  std::size_t involutions = 0;
  for (Elem x = 0; x < 8; ++x) {
    for (Elem y = 0; y < 8; ++y) abelian = abelian && b.mul(x, y) == b.mul(y, x);
    if (x != 0 && b.mul(x, x) == 0) ++involutions;
  }
  return !abelian && involutions == 5;
}


struct Level2Example {
  FiniteBrace b1;     // order 8, dihedral multiplicative group
  ElemSet base1;      // size-4 generating lambda-orbit of b1
  FiniteBrace b;      // b1 x trivial Z/p
  ElemSet k_gens;     // K' x {0} with |K'| = 2
  Elem a1;            // (a, 1)
};

/// The order-8p brace with a level-2 coset cycle set of size 4p: searches the
/// braces over Z/2^3, then Z/4 x Z/2, for a dihedral one with a size-4
/// generating lambda-orbit whose points are fixed by core-free subgroups of
/// order 2.  First hit in search order; p must be an odd prime.
inline std::optional<Level2Example> level2_example(std::size_t p) {
  if (p == 2 || !is_prime(p)) throw ValidationError("level2_example: p must be an odd prime");
  for (auto const& orders : {std::vector<std::size_t>{2, 2, 2}, std::vector<std::size_t>{4, 2}}) {
    for (auto const& b1 : holomorph_brace_search(orders)) {
      if (!has_dihedral8_mul_group(b1)) continue;
      for (auto const& base : transitive_cycle_bases(b1)) {
        if (base.orbit.size() != 4) continue;
        std::vector<Elem> involution;
        for (Elem a : base.orbit) {
          Elem found = 0;
          for (Elem k : lambda_stabilizer(b1, a)) {
            if (k != 0 && b1.mul(k, k) == 0 && is_core_free(b1, {0, k})) {
              found = k;
              break;
            }
          }
          if (found == 0) break;
          involution.push_back(found);
        }
        if (involution.size() != base.orbit.size()) continue;
        auto pe = static_cast<Elem>(p);
        return Level2Example{b1, base.orbit, direct_product(b1, trivial_brace(p)),
                             ElemSet{involution[0] * pe}, base.orbit[0] * pe + 1};
      }
    }
  }
  return std::nullopt;
}

}  // namespace ybx

#endif  // YBX_COSET_HPP
