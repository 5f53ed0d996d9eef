// Command-line front end: invariants, enumeration, theorem checks and
// constructions.  Exit codes: 0 success, 1 validation or mathematical
// failure, 2 resource cap exceeded.

#include <cstddef>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ybx/brace.hpp"
#include "ybx/checks.hpp"
#include "ybx/construct.hpp"
#include "ybx/coset.hpp"
#include "ybx/enumerate.hpp"
#include "ybx/io.hpp"
#include "ybx/level.hpp"

namespace {

using namespace ybx;

constexpr int kExitFailure = 1;
constexpr int kExitCap = 2;

void emit(std::string const& text, std::string const& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string primes_str(std::vector<std::size_t> const& ps) {
  std::string s = "{";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + std::to_string(ps[i]);
  return s + "}";
}

std::string level_str(std::optional<unsigned> l) { return l ? std::to_string(*l) : "infinite"; }

// Evaluates `f`, turning a cap into a marker instead of aborting the report.
template <class F>
std::string capped(F f, bool& hit) {
  try {
    return f();
  } catch (CapExceeded const& e) {
    hit = true;
    return std::string("skipped (") + e.what() + ")";
  }
}

ElemSet parse_elements(std::string const& list) {
  ElemSet out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      unsigned long v = std::stoul(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<Elem>(v));
    } catch (std::logic_error const&) {
      throw ValidationError("bad element index '" + item + "'");
    }
  }
  return out;
}

void check_elements(FiniteBrace const& b, ElemSet const& s, Elem base) {
  for (Elem e : s) {
    if (e >= b.size()) throw ValidationError("subgroup generator out of range");
  }
  if (base >= b.size()) throw ValidationError("base element out of range");
}

int cmd_invariants(std::string const& path) {
  CycleSet x;
  try {
    x = parse_cycle_set(read_file(path));
  } catch (ValidationError const& e) {
    std::cout << "valid: no (" << e.what() << ")\n";
    return kExitFailure;
  }
  bool indec = is_indecomposable(x);
  bool hit = false;
  auto g = permutation_group(x);
  auto dis = displacement_group(x);
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("n", std::to_string(x.size()));
  rows.emplace_back("valid", "yes");
  rows.emplace_back("indecomposable", yes_no(indec));
  rows.emplace_back("trivial", yes_no(is_trivial(x)));
  rows.emplace_back("latin", yes_no(is_latin(x)));
  rows.emplace_back("|G|", capped([&] { return std::to_string(g.order()); }, hit));
  rows.emplace_back("|Dis|", capped([&] { return std::to_string(dis.order()); }, hit));
  {
    std::string s;
    for (auto const& o : orbits(dis)) s += (s.empty() ? "" : " ") + std::to_string(o.size());
    rows.emplace_back("Dis orbit sizes", s);
  }
  rows.emplace_back("primitive", yes_no(is_primitive_cycle_set(x)));
  rows.emplace_back("mpl", level_str(mpl(x)));
  rows.emplace_back("fpl", indec ? capped([&] { return level_str(fpl(x)); }, hit)
                                 : std::string("n/a (decomposable)"));
  rows.emplace_back("fixed-point-free", yes_no(!has_fixed_point(x)));
  rows.emplace_back("common cycle primes", primes_str(common_cycle_primes(x)));
  rows.emplace_back("singular primes",
                    indec ? capped([&] { return primes_str(singular_primes(x)); }, hit)
                          : std::string("n/a (decomposable)"));
  rows.emplace_back("soluble", capped([&] { return yes_no(is_soluble(x)); }, hit));
  for (auto const& [k, v] : rows) std::cout << k << ": " << v << '\n';
  // the report is complete apart from the skipped fields
  return hit ? kExitCap : 0;
}

int cmd_enumerate(std::size_t n, std::string const& out, unsigned jobs, std::string const& filter,
                  bool progress) {
  if (n < 2 || n > 9) throw ValidationError("--size must be between 2 and 9");
  EnumerationOptions opt;
  opt.jobs = jobs;
  std::mutex mu;
  if (progress) {
    opt.progress = [&](std::size_t done, std::size_t total) {
      std::lock_guard lock(mu);
      std::cerr << "\r" << done << "/" << total << std::flush;
      if (done == total) std::cerr << '\n';
    };
  }
  auto rep = tabulate(n, opt);
  std::vector<CycleSet> kept;
  for (auto const& x : rep.forms) {
    bool keep = filter == "all" || (filter == "fpl-finite" && !is_transitive(displacement_group(x))) ||
                (filter == "mpl-finite" && mpl(x).has_value());
    if (keep) kept.push_back(x);
  }
  if (!out.empty()) write_file(out, serialize_corpus(kept));
  std::cout << "n=" << n << " c=" << rep.c << " m=" << rep.m << " fp=" << rep.fp << '\n';
  return 0;
}

int cmd_check(std::string const& path, bool verbose) {
  auto xs = parse_cycle_sets(read_file(path));
  FplMemo memo;
  std::size_t failures = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    auto results = run_theorem_checks(xs[i], &memo);
    for (auto const& r : results) {
      bool fail = r.status == CheckResult::Status::fail;
      if (fail) ++failures;
      if (fail || verbose) {
        std::cout << "record " << i << ' ' << r.name << ": " << to_string(r.status);
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << '\n';
      }
      if (fail) std::cout << serialize(xs[i]);
    }
  }
  std::cout << (failures ? "FAIL" : "PASS") << ": " << xs.size() << " record(s), " << failures
            << " violation(s)\n";
  return failures ? kExitFailure : 0;
}

int cmd_cosmod(std::string const& brace_path, std::string const& subgroup, Elem base,
               std::string const& out) {
  auto b = parse_brace(read_file(brace_path));
  auto k = parse_elements(subgroup);
  check_elements(b, k, base);
  emit(serialize(cosmod(b, k, base)), out);
  return 0;
}

int cmd_liv2(std::string const& brace_path, std::string const& subgroup, Elem base) {
  auto b = parse_brace(read_file(brace_path));
  auto k = parse_elements(subgroup);
  check_elements(b, k, base);
  auto r = liv2_check(b, k, base);
  if (!r.applicable) {
    std::cout << "applicable: no (trivial brace)\n";
    return 0;
  }
  auto set_str = [](ElemSet const& s) {
    std::string t = "{";
    for (std::size_t i = 0; i < s.size(); ++i) t += (i ? "," : "") + std::to_string(s[i]);
    return t + "}";
  };
  std::cout << "condition 1: " << yes_no(r.condition1) << " (index " << r.index << ")\n";
  std::cout << "condition 2: " << yes_no(r.condition2);
  if (r.condition2_witness) std::cout << " (H=" << set_str(*r.condition2_witness) << ")";
  std::cout << '\n';
  std::cout << "condition 3: " << yes_no(r.condition3);
  if (r.condition3_witness) std::cout << " (J=" << set_str(*r.condition3_witness) << ")";
  std::cout << '\n';
  std::cout << "p: " << (r.p ? std::to_string(*r.p) : "none") << '\n';
  std::cout << "holds: " << yes_no(r.holds) << '\n';
  std::cout << "fpl: " << level_str(r.fpl_value) << '\n';
  std::cout << "agrees: " << yes_no(r.agrees) << '\n';
  return r.agrees ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle sets, braces and primitive levels"};
  app.require_subcommand(1);

  std::string path, out, filter = "all", subgroup, name, left, right, brace_path;
  std::size_t size = 0, n = 0, p = 3;
  std::optional<std::size_t> k;
  unsigned jobs = 1;
  Elem base = 0;
  bool progress = false, verbose = false;

  auto* inv = app.add_subcommand("invariants", "Report invariants of a cycle-set file");
  inv->add_option("path", path, "cycle-set file")->required();

  auto* en = app.add_subcommand("enumerate", "Enumerate indecomposable cycle sets of one size");
  en->add_option("--size", size, "size (2-9)")->required();
  en->add_option("--out", out, "corpus file to write");
  en->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));
  en->add_option("--filter", filter, "records to keep")
      ->check(CLI::IsMember({"all", "fpl-finite", "mpl-finite"}));
  en->add_flag("--progress", progress, "progress on standard error");

  auto* ch = app.add_subcommand("check", "Run cross-checks on a cycle-set or corpus file");
  std::string suite = "theorems";
  ch->add_option("--suite", suite, "check suite")->check(CLI::IsMember({"theorems"}));
  ch->add_option("path", path, "cycle-set or corpus file")->required();
  ch->add_flag("--verbose", verbose, "print every check");

  auto* co = app.add_subcommand("construct", "Build a cycle set or brace");
  co->require_subcommand(1);
  auto* co_triv = co->add_subcommand("trivial", "trivial shift x.y = y+1 on Z/n");
  co_triv->add_option("--n", n, "size")->required();
  co_triv->add_option("--out", out, "output file");
  auto* co_built = co->add_subcommand("builtin", "named example");
  co_built->add_option("--name", name, "one of: " + [] {
    std::string s;
    for (auto const& b : builtin_names()) s += (s.empty() ? "" : ", ") + b;
    return s;
  }())->required();
  co_built->add_option("--k", k, "parameter for parameterized examples");
  co_built->add_option("--out", out, "output file");
  auto* co_prod = co->add_subcommand("product", "direct product of two cycle-set files");
  co_prod->add_option("--left", left, "first factor")->required();
  co_prod->add_option("--right", right, "second factor")->required();
  co_prod->add_option("--out", out, "output file");
  auto* co_l2 = co->add_subcommand("level2-brace",
                                   "order-8p brace with a level-2 coset cycle set of size 4p");
  co_l2->add_option("--p", p, "odd prime")->required();
  co_l2->add_option("--out", out, "output file");

  auto* cm = app.add_subcommand("cosmod", "Cycle set on the left cosets of a brace");
  cm->add_option("--brace", brace_path, "brace file")->required();
  cm->add_option("--subgroup", subgroup, "generators of K, e.g. \"0,12\"")->required();
  cm->add_option("--base", base, "a1")->required();
  cm->add_option("--out", out, "output file");

  auto* lv = app.add_subcommand("liv2", "Level-2 criterion for a coset cycle set");
  lv->add_option("--brace", brace_path, "brace file")->required();
  lv->add_option("--subgroup", subgroup, "generators of K")->required();
  lv->add_option("--base", base, "a1")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitFailure;
  }

  try {
    if (inv->parsed()) return cmd_invariants(path);
    if (en->parsed()) return cmd_enumerate(size, out, jobs, filter, progress);
    if (ch->parsed()) return cmd_check(path, verbose);
    if (co_triv->parsed()) {
      emit(serialize(trivial_shift(n)), out);
      return 0;
    }
    if (co_built->parsed()) {
      emit(serialize(builtin(name, k)), out);
      return 0;
    }
    if (co_prod->parsed()) {
      auto a = parse_cycle_set(read_file(left));
      auto b = parse_cycle_set(read_file(right));
      emit(serialize(direct_product(a, b)), out);
      return 0;
    }
    if (co_l2->parsed()) {
      auto ex = level2_example(p);
      if (!ex) throw ValidationError("no suitable order-8 brace found");
      emit(serialize(ex->b), out);
      std::cerr << "subgroup=";
      for (std::size_t i = 0; i < ex->k_gens.size(); ++i) std::cerr << (i ? "," : "") << ex->k_gens[i];
      std::cerr << " base=" << ex->a1 << '\n';
      return 0;
    }
    if (cm->parsed()) return cmd_cosmod(brace_path, subgroup, base, out);
    if (lv->parsed()) return cmd_liv2(brace_path, subgroup, base);
  } catch (CapExceeded const& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return kExitCap;
  } catch (ValidationError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}
