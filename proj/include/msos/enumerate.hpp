#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "msos/language.hpp"
#include "msos/term.hpp"

namespace msos {

// Bounded term enumeration over a language's registered constructs, with
// literal leaves drawn from the language seeds. Terms are produced by
// height, ascending, then language construct order; subterms are shared, so
// structurally equal terms are pointer-equal across one Enumerator.
class Enumerator {
public:
  explicit Enumerator(const Language& lang)
      : lang_(lang), exact_(5), lit_values_(lang.seeds().lit_values()) {}

  const Language& language() const { return lang_; }

  // All terms of sort s with height exactly h, memoized.
  const std::vector<Term>& exact(Sort s, std::uint32_t h) {
    auto& levels = exact_[static_cast<std::size_t>(s)];
    while (levels.size() <= h) {
      std::uint32_t next = static_cast<std::uint32_t>(levels.size());
      if (next == 0) {
        levels.emplace_back();
        continue;
      }
      std::vector<Term> out;
      generate(s, next, [&out](Term t) { out.push_back(std::move(t)); });
      // generate() recursion only touches strictly lower levels, so the
      // push_back cannot interleave with another level of this sort.
      levels.push_back(std::move(out));
    }
    return levels[h];
  }

  std::vector<Term> upto(Sort s, std::uint32_t depth) {
    std::vector<Term> out;
    for (std::uint32_t h = 1; h <= depth; ++h) {
      const std::vector<Term>& lvl = exact(s, h);
      out.insert(out.end(), lvl.begin(), lvl.end());
    }
    return out;
  }

  // Visits every term of height <= depth without materializing the top
  // level (the dominant one); lower levels are memoized as children.
  template <typename F>
  void visit(Sort s, std::uint32_t depth, F&& fn) {
    for (std::uint32_t h = 1; h + 1 <= depth; ++h)
      for (const Term& t : exact(s, h)) fn(t);
    if (depth >= 1) {
      auto& levels = exact_[static_cast<std::size_t>(s)];
      if (depth < levels.size()) {
        for (const Term& t : levels[depth]) fn(t);
      } else {
        if (depth >= 2) exact(s, depth - 1);
        generate(s, depth, fn);
      }
    }
  }

  std::uint64_t count(Sort s, std::uint32_t depth) {
    std::uint64_t n = 0;
    visit(s, depth, [&n](const Term&) { ++n; });
    return n;
  }

private:
  struct Options {
    std::vector<Arg> args;
    std::size_t lo = 0;  // prefix of options with height <= h-2
  };

  Options options_for(const ArgSort& as, std::uint32_t h) {
    Options o;
    const std::uint32_t cap = h - 1;
    const std::uint32_t locap = h - 2;
    switch (as.kind) {
      case ArgSort::Kind::Child:
        for (std::uint32_t k = 1; k <= cap; ++k) {
          for (const Term& t : exact(as.sort, k)) o.args.emplace_back(t);
          if (k == locap) o.lo = o.args.size();
        }
        break;
      case ArgSort::Kind::ValueLit:
        for (const Value& v : lit_values_) o.args.emplace_back(v);
        o.lo = locap >= 1 ? o.args.size() : 0;
        break;
      case ArgSort::Kind::IdentLit:
        for (const std::string& x : lang_.seeds().idents) o.args.emplace_back(x);
        o.lo = locap >= 1 ? o.args.size() : 0;
        break;
      case ArgSort::Kind::EnvLit:
        for (const ValueMap& m : lang_.seeds().envs) o.args.emplace_back(Value(m));
        o.lo = locap >= 1 ? o.args.size() : 0;
        break;
    }
    return o;
  }

  // Emits every term of sort s with height exactly h: per construct, tuples
  // over args of height <= h-1 where some arg reaches h-1 exactly.
  template <typename F>
  void generate(Sort s, std::uint32_t h, F&& fn) {
    for (const Construct* c : lang_.constructs_of(s)) {
      if (c->arg_sorts.empty()) {
        if (h == 1) fn(inject(*c, {}));
        continue;
      }
      if (h < 2) continue;

      std::vector<Options> opts;
      opts.reserve(c->arg_sorts.size());
      bool feasible = true;
      for (const ArgSort& as : c->arg_sorts) {
        opts.push_back(options_for(as, h));
        if (opts.back().args.empty()) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;

      const std::size_t n = opts.size();
      std::vector<std::size_t> ix(n, 0);
      std::vector<Arg> tuple(n);
      while (true) {
        bool witness = false;
        for (std::size_t i = 0; i < n; ++i)
          if (ix[i] >= opts[i].lo) {
            witness = true;
            break;
          }
        if (witness) {
          for (std::size_t i = 0; i < n; ++i) tuple[i] = opts[i].args[ix[i]];
          fn(inject(*c, tuple));
        }
        std::size_t p = n;
        for (;;) {
          if (p == 0) goto next_construct;
          --p;
          if (++ix[p] < opts[p].args.size()) break;
          ix[p] = 0;
        }
      }
    next_construct:;
    }
  }

  const Language& lang_;
  std::vector<std::vector<std::vector<Term>>> exact_;  // [sort][height]
  std::vector<Value> lit_values_;
};

// Materializing wrapper: every term of the sort with height <= depth, each
// exactly once, deterministic order.
inline std::vector<Term> enumerate_terms(const Language& lang, Sort sort, std::uint32_t depth) {
  Enumerator e(lang);
  return e.upto(sort, depth);
}

}  // namespace msos
