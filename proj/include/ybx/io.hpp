#ifndef YBX_IO_HPP
#define YBX_IO_HPP

/// \file io.hpp
/// \brief Plain-text formats for cycle sets, braces and corpora.
///
///   cycleset v1            brace v1               corpus v1 count=<k>
///   n <N>                  n <N>                  <cycleset record>
///   <N rows of N ints>     add                    <blank line>
///                          <N rows>               <cycleset record>
///                          mul                    ...
///                          <N rows>
///
/// Rows are space-separated 0-based integers; every line ends in '\n'.

#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ybx/brace.hpp"
#include "ybx/canonical.hpp"
#include "ybx/cycleset.hpp"
#include "ybx/errors.hpp"

namespace ybx {

class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, std::string const& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline void write_rows(std::ostringstream& os, std::size_t n, std::vector<std::uint32_t> const& t) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) os << (j ? " " : "") << t[i * n + j];
    os << '\n';
  }
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  std::size_t line_no() const { return line_; }

  std::string_view next() {
    if (done()) throw ParseError(line_ + 1, "unexpected end of input");
    auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) {
      throw ParseError(line_ + 1, "missing final newline");
    }
    auto line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    return line;
  }

  void expect(std::string_view want) {
    auto got = next();
    if (got != want) {
      throw ParseError(line_, "expected '" + std::string(want) + "', got '" + std::string(got) + "'");
    }
  }

  std::size_t keyed_number(std::string_view key) {
    auto got = next();
    if (got.substr(0, key.size()) != key) {
      throw ParseError(line_, "expected '" + std::string(key) + "<number>'");
    }
    return number(got.substr(key.size()));
  }

  std::size_t number(std::string_view s) const {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
      throw ParseError(line_, "bad number '" + std::string(s) + "'");
    }
    return v;
  }

  std::vector<std::uint32_t> rows(std::size_t n) {
    std::vector<std::uint32_t> t;
    t.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      auto line = next();
      std::size_t count = 0;
      std::size_t p = 0;
      while (p <= line.size()) {
        auto q = line.find(' ', p);
        if (q == std::string_view::npos) q = line.size();
        t.push_back(static_cast<std::uint32_t>(number(line.substr(p, q - p))));
        ++count;
        p = q + 1;
      }
      if (count != n) {
        throw ParseError(line_, "expected " + std::to_string(n) + " entries, got " +
                                    std::to_string(count));
      }
    }
    return t;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

inline CycleSet read_cycle_set(LineReader& r) {
  r.expect("cycleset v1");
  std::size_t n = r.keyed_number("n ");
  if (n == 0) throw ParseError(r.line_no(), "n must be positive");
  return CycleSet::from_table(n, r.rows(n));
}

}  // namespace detail

inline std::string serialize(CycleSet const& x) {
  std::ostringstream os;
  os << "cycleset v1\nn " << x.size() << '\n';
  detail::write_rows(os, x.size(), x.table());
  return os.str();
}

/// Parses and validates (CycleSetError on axiom failure, ParseError on
/// malformed text).
inline CycleSet parse_cycle_set(std::string_view text) {
  detail::LineReader r(text);
  auto x = detail::read_cycle_set(r);
  if (!r.done()) throw ParseError(r.line_no() + 1, "trailing content");
  return x;
}

inline std::string serialize(FiniteBrace const& b) {
  std::ostringstream os;
  os << "brace v1\nn " << b.size() << "\nadd\n";
  detail::write_rows(os, b.size(), b.add_table());
  os << "mul\n";
  detail::write_rows(os, b.size(), b.mul_table());
  return os.str();
}

inline FiniteBrace parse_brace(std::string_view text) {
  detail::LineReader r(text);
  r.expect("brace v1");
  std::size_t n = r.keyed_number("n ");
  if (n == 0) throw ParseError(r.line_no(), "n must be positive");
  r.expect("add");
  auto add = r.rows(n);
  r.expect("mul");
  auto mul = r.rows(n);
  if (!r.done()) throw ParseError(r.line_no() + 1, "trailing content");
  return FiniteBrace::from_tables(n, std::move(add), std::move(mul));
}

inline std::string serialize_corpus(std::vector<CycleSet> const& xs) {
  std::string out = "corpus v1 count=" + std::to_string(xs.size()) + "\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += '\n';
    out += serialize(xs[i]);
  }
  return out;
}

/// Checks the count, sorted order and that every record is canonical.
inline std::vector<CycleSet> parse_corpus(std::string_view text) {
  detail::LineReader r(text);
  auto head = r.next();
  constexpr std::string_view prefix = "corpus v1 count=";
  if (head.substr(0, prefix.size()) != prefix) throw ParseError(1, "expected corpus header");
  std::size_t k = r.number(head.substr(prefix.size()));
  std::vector<CycleSet> out;
  for (std::size_t i = 0; i < k; ++i) {
    if (i) r.expect("");
    std::size_t line = r.line_no() + 1;
    out.push_back(detail::read_cycle_set(r));
    if (canonical_form(out.back()) != out.back()) {
      throw ParseError(line, "record is not in canonical form");
    }
    if (i && !(out[i - 1] < out[i])) throw ParseError(line, "records are not strictly sorted");
  }
  if (!r.done()) throw ParseError(r.line_no() + 1, "more records than count");
  return out;
}

/// Any of the three formats, by header; corpora come back whole, single cycle
/// sets as a one-element list.
inline std::vector<CycleSet> parse_cycle_sets(std::string_view text) {
  if (text.substr(0, 7) == "corpus ") return parse_corpus(text);
  return {parse_cycle_set(text)};
}

inline std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(std::string const& path, std::string const& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace ybx

#endif  // YBX_IO_HPP
