#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "msos/component.hpp"
#include "msos/enumerate.hpp"
#include "msos/error.hpp"
#include "msos/jsonio.hpp"
#include "msos/label.hpp"
#include "msos/language.hpp"
#include "msos/seedgrid.hpp"
#include "msos/term.hpp"

namespace msos {

// Determinism on one configuration: two transitions from the same term and
// source objects must agree on target and on the whole label (wo emissions
// included).
inline bool det_pair_check(const Transition& a, const Transition& b) {
  if (!(a.source == b.source) || !(source_objects(a.label) == source_objects(b.label)))
    throw HarnessError("det_pair_check: transitions start from different configurations");
  return a.target == b.target && a.label == b.label;
}

enum class DetMode { Modular, Brute, Both, Local };

inline std::string_view det_mode_name(DetMode m) {
  switch (m) {
    case DetMode::Modular: return "modular";
    case DetMode::Brute: return "brute";
    case DetMode::Both: return "both";
    case DetMode::Local: return "local";
  }
  return "?";
}

inline DetMode det_mode_from_name(std::string_view s) {
  if (s == "modular") return DetMode::Modular;
  if (s == "brute") return DetMode::Brute;
  if (s == "both") return DetMode::Both;
  throw Error("unknown determinism mode: " + std::string(s) + " (expected modular|brute|both)");
}

struct DetCounterexample {
  Term term;
  Transition t1;
  Transition t2;
};

struct DeterminismReport {
  DetMode mode = DetMode::Brute;
  Sort sort = Sort::Cmd;
  std::uint32_t depth = 0;
  std::uint64_t terms_checked = 0;
  std::vector<DetCounterexample> counterexamples;

  bool deterministic() const { return counterexamples.empty(); }
};

inline json det_report_to_json(const DeterminismReport& r) {
  json o = json::object();
  o["mode"] = std::string(det_mode_name(r.mode));
  o["sort"] = std::string(sort_name(r.sort));
  o["depth"] = r.depth;
  o["terms_checked"] = r.terms_checked;
  json cxs = json::array();
  for (const DetCounterexample& c : r.counterexamples) {
    json cx = json::object();
    cx["term"] = to_sexp(c.term);
    for (const auto* t : {&c.t1, &c.t2}) {
      json tj = json::object();
      tj["rule"] = t->rule->qualified;
      tj["label"] = label_to_json(t->label);
      tj["to"] = to_sexp(t->target);
      cx[t == &c.t1 ? "t1" : "t2"] = std::move(tj);
    }
    cxs.push_back(std::move(cx));
  }
  o["counterexamples"] = std::move(cxs);
  return o;
}

// Step provider that memoizes transitions per (context index, term node).
// Terms produced by one Enumerator share subterm nodes, so node identity
// coincides with structural identity. Off-grid contexts (e.g. block's
// overridden environment that leaves the seed grid) fall back to uncached
// evaluation with stable scratch storage.
class MemoProvider : public StepProvider {
public:
  MemoProvider(const Language& lang, const SeedGrid& grid)
      : lang_(lang), grid_(grid), memo_(grid.contexts().size()) {}

  std::span<const Transition> step(const Term& t, int ctx_index, const Objects& objs) override {
    if (ctx_index >= 0) return cached(t, ctx_index, objs);
    return uncached(t, objs);
  }

  std::span<const Transition> step_objects(const Term& t, const Objects& objs) override {
    int i = grid_.index_of(objs);
    if (i >= 0) return cached(t, i, objs);
    return uncached(t, objs);
  }

private:
  std::span<const Transition> cached(const Term& t, int ci, const Objects& objs) {
    auto& m = memo_[static_cast<std::size_t>(ci)];
    auto it = m.find(t.raw());
    if (it == m.end()) {
      std::vector<Transition> out;
      lang_.global_step(t, objs, ci, *this, out);
      it = m.emplace(t.raw(), std::move(out)).first;
    }
    return {it->second.data(), it->second.size()};
  }

  std::span<const Transition> uncached(const Term& t, const Objects& objs) {
    scratch_.emplace_back();
    std::vector<Transition>& out = scratch_.back();
    lang_.global_step(t, objs, -1, *this, out);
    return {out.data(), out.size()};
  }

  const Language& lang_;
  const SeedGrid& grid_;
  std::vector<std::unordered_map<const TermNode*, std::vector<Transition>>> memo_;
  std::deque<std::vector<Transition>> scratch_;
};

// Label-discipline audit over generated transitions: unlabeled rules must
// be unobservable; mentioned-axiom rules must be identity outside the
// component's mentioned set; pass-through rules must preserve the opaque
// projection of their premise exactly.
struct AuditReport {
  std::uint64_t transitions = 0;
  std::uint64_t unlabeled = 0;
  std::uint64_t mentioned = 0;
  std::uint64_t pass_through = 0;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }

  void check(const Transition& tr) {
    ++transitions;
    const RuleInfo& rule = *tr.rule;
    std::vector<std::string> names;
    for (const EntitySpec& e : rule.component->mentioned) names.push_back(e.name);
    switch (rule.audit) {
      case AuditClass::Unlabeled:
        ++unlabeled;
        if (!is_unobservable(tr.label))
          violations.push_back(rule.qualified + ": unlabeled rule with observable label on " +
                               to_sexp(tr.source));
        break;
      case AuditClass::Mentioned:
        ++mentioned;
        if (!project_unmentioned(tr.label, names).is_unobservable())
          violations.push_back(rule.qualified + ": wrote outside its mentioned entities on " +
                               to_sexp(tr.source));
        break;
      case AuditClass::PassThrough:
        ++pass_through;
        if (!tr.premise) {
          violations.push_back(rule.qualified + ": pass-through rule recorded no premise");
        } else if (!(project_unmentioned(tr.label, names) ==
                     project_unmentioned(*tr.premise, names))) {
          violations.push_back(rule.qualified + ": opaque part not passed through on " +
                               to_sexp(tr.source));
        }
        break;
    }
  }
};

using TransitionSink = std::function<void(const Transition&)>;

namespace detail {

inline void collect_subterms(const Term& t, std::vector<Term>& out) {
  for (const Arg& a : t->args)
    if (const Term* child = std::get_if<Term>(&a)) {
      out.push_back(*child);
      collect_subterms(*child, out);
    }
}

// First failing pair, if any; transitions all share (source, objects).
inline bool find_det_violation(std::span<const Transition> ts,
                               std::pair<const Transition*, const Transition*>& out) {
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 1; j < ts.size(); ++j)
      if (!det_pair_check(ts[i], ts[j])) {
        out = {&ts[i], &ts[j]};
        return true;
      }
  return false;
}

}  // namespace detail

// Global determinism over all terms of the sort up to the depth and every
// seed object assignment. Modular mode realizes the induction step: at each
// node, det_global reduces to det_local of the owning component, whose
// certificate (pairwise det_pair_check over its local transitions) runs
// directly; nodes are visited children-first by height. Brute mode
// enumerates global_step and checks pairs. Both runs the two and demands
// identical transitions and counterexamples; disagreement is a harness
// soundness failure. At most one counterexample is recorded per term.
inline DeterminismReport check_global_determinism(const Language& lang, Sort sort,
                                                  std::uint32_t depth, DetMode mode,
                                                  const TransitionSink& sink = {}) {
  if (mode == DetMode::Local) throw Error("check_global_determinism: use modular, brute, or both");
  SeedGrid grid(lang.signature());
  Enumerator en(lang);
  MemoProvider provider(lang, grid);
  DeterminismReport rep;
  rep.mode = mode;
  rep.sort = sort;
  rep.depth = depth;

  std::vector<Transition> brute;
  std::vector<Transition> modular;
  en.visit(sort, depth, [&](const Term& t) {
    ++rep.terms_checked;
    bool recorded = false;
    const ComponentDef* comp = lang.component_for(t->construct);
    for (int ci = 0; ci < static_cast<int>(grid.contexts().size()) && !recorded; ++ci) {
      const Objects& ctx = grid.contexts()[static_cast<std::size_t>(ci)];
      const std::vector<Transition>* primary = nullptr;
      if (mode != DetMode::Modular) {
        brute.clear();
        lang.global_step(t, ctx, ci, provider, brute);
        primary = &brute;
      }
      if (mode != DetMode::Brute) {
        modular.clear();
        if (comp) {
          RestrictedTerm rt{t->construct, t};
          LocalContext cx(lang.signature(), *comp, t, ctx, ci, provider, modular);
          comp->step(rt, cx);
        }
        if (!primary) primary = &modular;
      }
      if (mode == DetMode::Both) {
        bool agree = brute.size() == modular.size();
        for (std::size_t i = 0; agree && i < brute.size(); ++i)
          agree = brute[i] == modular[i] && brute[i].rule == modular[i].rule;
        if (!agree)
          throw HarnessError("modular and brute global_step disagree on " + to_sexp(t));
      }
      if (sink)
        for (const Transition& tr : *primary) sink(tr);
      std::pair<const Transition*, const Transition*> pair;
      if (detail::find_det_violation({primary->data(), primary->size()}, pair)) {
        if (mode == DetMode::Both) {
          std::pair<const Transition*, const Transition*> mpair;
          if (!detail::find_det_violation({modular.data(), modular.size()}, mpair) ||
              !(*mpair.first == *pair.first) || !(*mpair.second == *pair.second))
            throw HarnessError("modular and brute counterexamples disagree on " + to_sexp(t));
        }
        rep.counterexamples.push_back({t, *pair.first, *pair.second});
        recorded = true;
      }
    }
  });
  return rep;
}

// Local determinism certificate of one component, under the structural
// induction hypothesis: configurations whose proper subterms step
// nondeterministically (checked by the brute oracle over the grid) are
// outside the certificate's obligation and are skipped, mirroring the
// subterm-determinism premise of the pen-and-paper proof.
inline DeterminismReport check_local_determinism(const Language& lang, const ComponentDef& comp,
                                                 std::uint32_t depth) {
  if (!lang.has_construct(comp.construct) || lang.component_for(comp.construct) != &comp)
    throw Error("component not registered in this language: " + comp.construct->id);
  SeedGrid grid(lang.signature());
  Enumerator en(lang);
  MemoProvider provider(lang, grid);
  DeterminismReport rep;
  rep.mode = DetMode::Local;
  rep.sort = comp.construct->sort;
  rep.depth = depth;

  std::vector<Term> subterms;
  std::vector<Transition> local;
  en.visit(comp.construct->sort, depth, [&](const Term& t) {
    if (t->construct != comp.construct) return;
    subterms.clear();
    detail::collect_subterms(t, subterms);
    for (const Term& s : subterms)
      for (int ci = 0; ci < static_cast<int>(grid.contexts().size()); ++ci) {
        std::span<const Transition> ts =
            provider.step(s, ci, grid.contexts()[static_cast<std::size_t>(ci)]);
        std::pair<const Transition*, const Transition*> pair;
        if (detail::find_det_violation(ts, pair)) return;  // hypothesis unavailable
      }
    ++rep.terms_checked;
    RestrictedTerm rt{comp.construct, t};
    for (int ci = 0; ci < static_cast<int>(grid.contexts().size()); ++ci) {
      local.clear();
      LocalContext cx(lang.signature(), comp, t, grid.contexts()[static_cast<std::size_t>(ci)],
                      ci, provider, local);
      comp.step(rt, cx);
      std::pair<const Transition*, const Transition*> pair;
      if (detail::find_det_violation({local.data(), local.size()}, pair)) {
        rep.counterexamples.push_back({t, *pair.first, *pair.second});
        return;
      }
    }
  });
  return rep;
}

}  // namespace msos
