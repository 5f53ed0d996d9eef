#ifndef YBX_LEVEL_HPP
#define YBX_LEVEL_HPP

/// \file level.hpp
/// \brief Primitive level of indecomposable cycle sets and the invariants
/// that go with it: the displacement-group test, the exact level by
/// recursion over epimorphic images, cycle-length primes, singular primes,
/// solubility, and the ideal/covering factorization of an epimorphism.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "ybx/canonical.hpp"
#include "ybx/congruence.hpp"
#include "ybx/cycleset.hpp"
#include "ybx/errors.hpp"
#include "ybx/perm.hpp"

namespace ybx {

/// nullopt stands for an infinite level.
using Level = std::optional<unsigned>;

inline std::vector<std::size_t> prime_factors(std::size_t m) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    out.push_back(p);
    while (m % p == 0) m /= p;
  }
  if (m > 1) out.push_back(m);
  return out;
}

inline bool is_prime(std::size_t m) {
  auto f = prime_factors(m);
  return f.size() == 1 && f[0] == m;
}

inline void require_indecomposable(CycleSet const& x, char const* what) {
  if (!is_indecomposable(x)) {
    throw ValidationError(std::string(what) + ": cycle set is decomposable");
  }
}

/// Finite primitive level iff Dis(X) is intransitive.
inline bool has_finite_primitive_level(CycleSet const& x) {
  require_indecomposable(x, "has_finite_primitive_level");
  return !is_transitive(displacement_group(x));
}

/// Memo for fpl keyed on canonical tables; safe to share between threads.
inline constexpr std::size_t kFplMemoMaxSize = 16;

class FplMemo {
 public:
  std::optional<Level> find(CycleSet const& canon) const {
    std::lock_guard lock(mu_);
    auto it = map_.find(canon);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void insert(CycleSet const& canon, Level v) {
    std::lock_guard lock(mu_);
    map_.emplace(canon, v);
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return map_.size();
  }

 private:
  mutable std::mutex mu_;
  std::map<CycleSet, Level> map_;
};

/// Primitive level from the definition: the longest chain of proper
/// epimorphic images of decreasing size > 1 ending in a primitive cycle set.
/// Images are congruence quotients.  fpl(singleton) = 0; decomposable input
/// is rejected.
inline Level fpl(CycleSet const& x, FplMemo* memo = nullptr) {
  if (x.size() == 1) return 0u;
  require_indecomposable(x, "fpl");
  std::optional<CycleSet> key;
  // canonical forms get expensive quickly, so large inputs bypass the memo
  if (memo && x.size() <= kFplMemoMaxSize) {
    key = canonical_form(x);
    if (auto hit = memo->find(*key)) return *hit;
  }
  Level result;
  if (is_primitive_cycle_set(x)) {
    result = 1u;
  } else {
    for (auto const& c : all_congruences(x)) {
      if (c.is_discrete() || c.is_full()) continue;
      Level sub = fpl(quotient(x, c).set, memo);
      if (sub && (!result || *sub + 1 > *result)) result = *sub + 1;
    }
  }
  if (key) memo->insert(*key, result);
  return result;
}

/// Primes p dividing |X| that divide the length of every cycle (fixed points
/// included) of every sigma_x.
inline std::vector<std::size_t> common_cycle_primes(CycleSet const& x) {
  std::size_t g = 0;
  for (Point a = 0; a < x.size(); ++a) {
    for (auto len : cycle_decomposition(x.sigma(a))) g = std::gcd(g, len);
  }
  std::vector<std::size_t> out;
  for (auto p : prime_factors(x.size())) {
    if (g % p == 0) out.push_back(p);
  }
  return out;
}

struct DecomposabilityHint {
  bool decomposable = false;
  Point witness_row = 0;
  std::size_t cycle_length = 0;
  std::string text;
};

/// Multipermutation X with a non-trivial cycle of length coprime to |X| in
/// some sigma_x is decomposable; otherwise there is no conclusion.
inline DecomposabilityHint decomposability_hint(CycleSet const& x) {
  DecomposabilityHint h;
  h.text = "no conclusion";
  if (!mpl(x)) return h;
  for (Point a = 0; a < x.size(); ++a) {
    for (auto len : cycle_decomposition(x.sigma(a))) {
      if (len > 1 && std::gcd(len, x.size()) == 1) {
        h.decomposable = true;
        h.witness_row = a;
        h.cycle_length = len;
        h.text = "decomposable: multipermutation and sigma_" + std::to_string(a) +
                 " has a cycle of length " + std::to_string(len) +
                 " coprime to " + std::to_string(x.size());
        return h;
      }
    }
  }
  return h;
}

/// Primes dividing |G(X)| but not |X|.
inline std::vector<std::size_t> singular_primes(CycleSet const& x) {
  require_indecomposable(x, "singular_primes");
  std::vector<std::size_t> out;
  for (auto p : permutation_group(x).order_primes()) {
    if (x.size() % p) out.push_back(p);
  }
  return out;
}

/// Searches chains X = X_0 >= X_1 >= ... >= X_t = {x_t} where each X_i is a
/// class of some congruence theta_i whose quotient maps X_{i-1} onto a subset
/// with u.v = v.  Exhaustive over the congruence lattice.
inline bool is_soluble(CycleSet const& x) {
  std::size_t const n = x.size();
  if (n > 64) throw CapExceeded("is_soluble: size exceeds 64");
  auto congs = all_congruences(x);
  using Mask = std::uint64_t;
  auto bit = [](Point p) { return Mask{1} << p; };
  std::unordered_set<Mask> visited;
  std::vector<Mask> stack;
  Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  stack.push_back(all);
  visited.insert(all);
  while (!stack.empty()) {
    Mask s = stack.back();
    stack.pop_back();
    for (auto const& c : congs) {
      std::vector<std::uint32_t> hit;
      std::vector<bool> meets(c.num_classes(), false);
      for (Point p = 0; p < n; ++p) {
        if ((s & bit(p)) && !meets[c.class_of(p)]) {
          meets[c.class_of(p)] = true;
          hit.push_back(c.class_of(p));
        }
      }
      bool projection = true;
      for (auto u : hit) {
        for (auto v : hit) {
          Point r = x.op(c.classes()[u][0], c.classes()[v][0]);
          if (c.class_of(r) != v) projection = false;
        }
      }
      if (!projection) continue;
      for (auto const& cls : c.classes()) {
        Mask m = 0;
        for (Point p : cls) m |= bit(p);
        if ((m & s) != m) continue;
        if (cls.size() == 1) return true;
        if (visited.insert(m).second) stack.push_back(m);
      }
    }
  }
  return false;
}

struct EpimorphismFactorization {
  PermutationGroup ideal_part;  // I(p) = {g in G(X) : p(g(x)) = p(x) for all x}
  Quotient by_ideal;            // X -> X/I(p)
  CycleSetHom residual;         // X/I(p) -> Y
  bool residual_is_covering = false;
};

/// p = q o p_I with I = I(p).  The residual q is flagged as a covering when
/// the induced surjection G(X/I) -> G(Y) is a bijection.
inline EpimorphismFactorization factor_epimorphism(CycleSetHom const& p) {
  if (!p.is_homomorphism()) throw ValidationError("map is not a homomorphism");
  if (!p.is_surjective()) throw ValidationError("map is not surjective");
  CycleSet const& x = p.source;
  std::size_t const n = x.size();
  std::vector<Permutation> ideal;
  auto const group = permutation_group(x);
  for (auto const& g : group.elements()) {
    bool keeps = true;
    for (Point a = 0; a < n && keeps; ++a) keeps = p(g(a)) == p(a);
    if (keeps) ideal.push_back(g);
  }
  PermutationGroup i_group(n, ideal);
  Quotient q = quotient_by_group(x, i_group);
  std::vector<Point> res(q.set.size());
  for (std::uint32_t c = 0; c < q.set.size(); ++c) {
    Point rep = 0;
    while (q.map(rep) != c) ++rep;
    res[c] = p(rep);
  }
  CycleSetHom residual{q.set, p.target, std::move(res)};
  if (!residual.is_epimorphism()) {
    throw ValidationError("residual map is not an epimorphism");
  }
  bool covering =
      permutation_group(q.set).order() == permutation_group(p.target).order();
  return {std::move(i_group), std::move(q), std::move(residual), covering};
}

}  // namespace ybx

#endif  // YBX_LEVEL_HPP
