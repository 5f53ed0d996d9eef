#ifndef YBX_CHECKS_HPP
#define YBX_CHECKS_HPP

/// \file checks.hpp
/// \brief Cross-checks between independently computed invariants of a cycle
/// set.  Each check either does not apply, passes, fails with a witness, or
/// is skipped because a cap was hit.

#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ybx/brace.hpp"
#include "ybx/congruence.hpp"
#include "ybx/cycleset.hpp"
#include "ybx/errors.hpp"
#include "ybx/level.hpp"

namespace ybx {

struct CheckResult {
  enum class Status { pass, fail, not_applicable, skipped };
  std::string name;
  Status status = Status::not_applicable;
  std::string detail;
};

inline char const* to_string(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::pass: return "pass";
    case CheckResult::Status::fail: return "FAIL";
    case CheckResult::Status::not_applicable: return "n/a";
    case CheckResult::Status::skipped: return "skipped";
  }
  return "?";
}

inline constexpr std::size_t kB2CheckMaxGroup = 5000;
inline constexpr std::size_t kSolutionCheckMaxSize = 12;

namespace detail {

inline std::string join_primes(std::vector<std::size_t> const& ps) {
  std::string s = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + std::to_string(ps[i]);
  return s + "}";
}

inline std::string level_str(Level l) { return l ? std::to_string(*l) : "infinite"; }

// Shared, lazily computed facts about one cycle set.
struct Facts {
  CycleSet const& x;
  FplMemo* memo;
  std::optional<bool> indec;
  std::optional<Level> level;
  std::optional<std::vector<Congruence>> congs;

  bool indecomposable() {
    if (!indec) indec = is_indecomposable(x);
    return *indec;
  }
  Level fpl_value() {
    if (!level) level = fpl(x, memo);
    return *level;
  }
  std::vector<Congruence> const& congruences() {
    if (!congs) congs = all_congruences(x);
    return *congs;
  }
  std::size_t dis_orbits() { return orbits(displacement_group(x)).size(); }
};

}  // namespace detail

/// Runs every applicable check on X.  `memo` may be shared across calls.
inline std::vector<CheckResult> run_theorem_checks(CycleSet const& x, FplMemo* memo = nullptr) {
  using S = CheckResult::Status;
  std::vector<CheckResult> out;
  detail::Facts f{x, memo, {}, {}, {}};
  std::size_t const n = x.size();

  auto run = [&](std::string name, auto body) {
    CheckResult r{std::move(name), S::not_applicable, {}};
    try {
      body(r);
    } catch (CapExceeded const& e) {
      r.status = S::skipped;
      r.detail = e.what();
    } catch (ValidationError const& e) {
      r.status = S::fail;
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  };
  auto verdict = [](CheckResult& r, bool ok, std::string const& witness) {
    r.status = ok ? S::pass : S::fail;
    if (!ok) r.detail = witness;
  };

  run("law", [&](CheckResult& r) {
    auto v = check_cycle_set(n, x.table());
    verdict(r, !v, v ? v->describe() : "");
  });

  run("solution", [&](CheckResult& r) {
    if (n > kSolutionCheckMaxSize) return;
    auto s = to_solution(x);
    bool ok = is_involutive(s) && satisfies_braid_relation(s) && from_solution(s) == x;
    verdict(r, ok, "solution round trip, involutivity or braid relation fails");
  });

  run("finite_level_criterion", [&](CheckResult& r) {
    if (!f.indecomposable() || n < 2) return;
    bool by_dis = has_finite_primitive_level(x);
    bool by_def = f.fpl_value().has_value();
    verdict(r, by_dis == by_def,
            "Dis intransitive=" + std::to_string(by_dis) + " but fpl=" + detail::level_str(f.fpl_value()));
  });

  run("b2_is_dis", [&](CheckResult& r) {
    if (!f.indecomposable()) return;
    auto g = permutation_group(x);
    if (g.order() > kB2CheckMaxGroup) return;
    auto pb = permutation_brace(x);
    auto b2 = b_squared(pb.brace);
    auto dis = displacement_group(x);
    std::vector<Permutation> b2_perms;
    for (Elem e : b2) b2_perms.push_back(pb.elements[e]);
    bool equal = b2_perms == dis.elements();
    auto ns = normal_structure(g, dis);
    bool ok = equal && ns.is_normal && ns.quotient_is_cyclic;
    std::string w = "|B^2|=" + std::to_string(b2.size()) + " |Dis|=" + std::to_string(dis.order()) +
                    " equal=" + std::to_string(equal) + " normal=" + std::to_string(ns.is_normal) +
                    " cyclic=" + std::to_string(ns.quotient_is_cyclic);
    verdict(r, ok, w);
  });

  run("squarefree_level", [&](CheckResult& r) {
    if (!f.indecomposable() || n < 2) return;
    auto ps = prime_factors(n);
    std::size_t prod = std::accumulate(ps.begin(), ps.end(), std::size_t{1},
                                       [](std::size_t a, std::size_t b) { return a * b; });
    if (prod != n) return;
    verdict(r, f.fpl_value() == Level{static_cast<unsigned>(ps.size())},
            "square-free size with " + std::to_string(ps.size()) + " primes but fpl=" +
                detail::level_str(f.fpl_value()));
  });

  run("prime_size_trivial", [&](CheckResult& r) {
    if (!f.indecomposable() || !is_prime(n)) return;
    verdict(r, is_trivial(x) && is_primitive_cycle_set(x), "prime size but not trivial and primitive");
  });

  run("fixed_point_free", [&](CheckResult& r) {
    if (!f.indecomposable() || n < 2 || !has_finite_primitive_level(x)) return;
    std::string w;
    for (Point a = 0; a < n && w.empty(); ++a) {
      for (Point b = 0; b < n; ++b) {
        if (x.op(a, b) == b) {
          w = "sigma_" + std::to_string(a) + " fixes " + std::to_string(b);
          break;
        }
      }
    }
    verdict(r, w.empty(), w);
  });

  run("common_cycle_prime", [&](CheckResult& r) {
    if (!f.indecomposable() || n < 2 || !has_finite_primitive_level(x)) return;
    verdict(r, !common_cycle_primes(x).empty(), "no prime divides every cycle length");
  });

  run("latin_infinite_level", [&](CheckResult& r) {
    if (n < 2 || !is_latin(x)) return;
    verdict(r, is_transitive(displacement_group(x)), "latin but Dis intransitive");
  });

  run("mpl_le_fpl", [&](CheckResult& r) {
    if (!f.indecomposable() || n < 2) return;
    auto m = mpl(x);
    auto l = f.fpl_value();
    if (!m || !l) return;
    verdict(r, *m <= *l, "mpl=" + std::to_string(*m) + " > fpl=" + std::to_string(*l));
  });

  run("cycle_length_hint", [&](CheckResult& r) {
    auto h = decomposability_hint(x);
    if (!h.decomposable) return;
    verdict(r, !f.indecomposable(), "hint says decomposable but G(X) is transitive");
  });

  run("soluble_infinite_level", [&](CheckResult& r) {
    if (!f.indecomposable() || n < 2 || !is_soluble(x)) return;
    verdict(r, !f.fpl_value().has_value(), "soluble and indecomposable but fpl finite");
  });

  run("trivial_image_divides", [&](CheckResult& r) {
    if (!f.indecomposable() || n < 2) return;
    std::size_t orbs = f.dis_orbits();
    std::string w;
    bool any = false;
    for (auto const& c : f.congruences()) {
      if (c.is_full()) continue;
      auto y = quotient(x, c).set;
      if (!is_trivial(y) || !is_indecomposable(y)) continue;
      any = true;
      if (orbs % y.size() != 0) {
        w = "trivial image of size " + std::to_string(y.size()) + " does not divide " +
            std::to_string(orbs) + " Dis-orbits";
        break;
      }
    }
    if (any) verdict(r, w.empty(), w);
  });

  run("level2_prime_image", [&](CheckResult& r) {
    if (!f.indecomposable() || is_trivial(x) || f.fpl_value() != Level{2u}) return;
    std::size_t orbs = f.dis_orbits();
    if (!is_prime(orbs)) {
      verdict(r, false, "level 2 but " + std::to_string(orbs) + " Dis-orbits");
      return;
    }
    for (auto const& c : f.congruences()) {
      std::size_t k = c.num_classes();
      if (is_prime(k) && k != orbs) {
        verdict(r, false, "prime-size image of size " + std::to_string(k) + " besides p=" +
                              std::to_string(orbs));
        return;
      }
    }
    verdict(r, true, "");
  });

  run("trivial_two_primes", [&](CheckResult& r) {
    if (!f.indecomposable() || !is_trivial(x) || n < 2) return;
    auto ps = prime_factors(n);
    std::size_t rest = n;
    std::size_t count = 0;
    for (auto p : ps) {
      while (rest % p == 0) {
        rest /= p;
        ++count;
      }
    }
    bool pq = count == 2;
    verdict(r, pq == (f.fpl_value() == Level{2u}),
            "size " + std::to_string(n) + " has " + std::to_string(count) +
                " prime factors but fpl=" + detail::level_str(f.fpl_value()));
  });

  return out;
}

inline bool all_passed(std::vector<CheckResult> const& rs) {
  for (auto const& r : rs) {
    if (r.status == CheckResult::Status::fail) return false;
  }
  return true;
}

}  // namespace ybx

#endif  // YBX_CHECKS_HPP
