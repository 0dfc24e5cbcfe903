#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msos/error.hpp"
#include "msos/label.hpp"
#include "msos/term.hpp"

namespace msos {

struct ComponentDef;

// Audit classification of a rule, used by the label-discipline checks.
// Unlabeled rules must produce unobservable labels; PassThrough rules must
// preserve the opaque projection of the premise label exactly; Mentioned
// rules may shape their mentioned arrows freely.
enum class AuditClass : std::uint8_t { Unlabeled, Mentioned, PassThrough };

enum class RuleKind : std::uint8_t { Axiom, OnePremise };

struct RuleInfo {
  std::string name;       // "seq_1"
  std::string qualified;  // "Cmd.seq/seq_1"
  RuleKind kind = RuleKind::Axiom;
  AuditClass audit = AuditClass::Unlabeled;
  const ComponentDef* component = nullptr;  // patched at registration
};

// One element of a step relation. The premise label is kept for the
// label-discipline audit; it is never part of transition equality.
struct Transition {
  Term source;
  Label label;
  const RuleInfo* rule = nullptr;
  Term target;
  std::optional<Label> premise;

  // Determinism compares the (label, target) pair only.
  friend bool operator==(const Transition& a, const Transition& b) {
    return a.source == b.source && a.label == b.label && a.target == b.target;
  }
};

// Recursive access to the global step relation. ctx_index identifies the
// source objects within a seed grid when the caller runs over one (negative
// otherwise); providers may memoize on it.
class StepProvider {
public:
  virtual ~StepProvider() = default;
  virtual std::span<const Transition> step(const Term& t, int ctx_index, const Objects& objs) = 0;
  virtual std::span<const Transition> step_objects(const Term& t, const Objects& objs) = 0;
};

// View of one premise transition handed to a rule body. Rules may read the
// target configuration; the premise label stays with the machinery.
class Premise {
public:
  const Term& target() const { return t_->target; }

private:
  explicit Premise(const Transition* t) : t_(t) {}
  const Transition* t_;
  friend class LocalContext;
  friend class PremiseList;
};

class PremiseList {
public:
  std::size_t size() const { return s_.size(); }
  Premise operator[](std::size_t i) const { return Premise(&s_[i]); }

  class iterator {
  public:
    explicit iterator(const Transition* p) : p_(p) {}
    Premise operator*() const { return Premise(p_); }
    iterator& operator++() { ++p_; return *this; }
    bool operator!=(const iterator& o) const { return p_ != o.p_; }

  private:
    const Transition* p_;
  };
  iterator begin() const { return iterator(s_.data()); }
  iterator end() const { return iterator(s_.data() + s_.size()); }

private:
  explicit PremiseList(std::span<const Transition> s) : s_(s) {}
  std::span<const Transition> s_;
  friend class LocalContext;
};

// Everything a rule body may touch: source objects of its mentioned
// entities, premise stepping on subterms, and the transition emitters. Full
// labels are assembled here, so rules cannot inspect or bend the unmentioned
// part.
class LocalContext {
public:
  LocalContext(const SignatureRef& sig, const ComponentDef& comp, const Term& source,
               const Objects& ctx, int ctx_index, StepProvider& provider,
               std::vector<Transition>& out)
      : sig_(sig), comp_(comp), source_(source), ctx_(ctx), ctx_index_(ctx_index),
        provider_(provider), out_(out) {}

  const Value& mentioned_object(std::string_view name) const;

  PremiseList step_same(const Term& t) {
    return PremiseList(provider_.step(t, ctx_index_, ctx_));
  }

  PremiseList step_override(const Term& t, std::string_view entity, const Value& object);

  // Axiom with a fully unobservable (identity) label.
  void axiom(const RuleInfo& rule, Term target) {
    out_.push_back(Transition{source_, identity_label(sig_, ctx_), &rule, std::move(target),
                              std::nullopt});
  }

  // Axiom whose mentioned arrows are given; the unmentioned rest is the
  // identity at the source objects.
  void axiom_mentioned(const RuleInfo& rule, const MentionedLabel& m, Term target) {
    out_.push_back(Transition{source_, with_mentioned(m, nullptr), &rule, std::move(target),
                              std::nullopt});
  }

  // One-premise rule passing the whole premise label through unchanged.
  void pass_through(const RuleInfo& rule, const Premise& p, Term target) {
    out_.push_back(Transition{source_, p.t_->label, &rule, std::move(target), p.t_->label});
  }

  // One-premise rule replacing the mentioned part of the premise label; the
  // opaque rest passes through exactly.
  void premise_mentioned(const RuleInfo& rule, const Premise& p, const MentionedLabel& m,
                         Term target) {
    out_.push_back(Transition{source_, with_mentioned(m, &p.t_->label), &rule, std::move(target),
                              p.t_->label});
  }

private:
  // Full label: mentioned arrows from m (validated against the component's
  // mentioned set), remaining arrows from the base label, or identities at
  // the source objects when base is null.
  Label with_mentioned(const MentionedLabel& m, const Label* base) const;

  const SignatureRef& sig_;
  const ComponentDef& comp_;
  const Term& source_;
  const Objects& ctx_;
  int ctx_index_;
  StepProvider& provider_;
  std::vector<Transition>& out_;
};

using StepFn = void (*)(const RestrictedTerm&, LocalContext&);

// A language component: one construct, its mentioned entities (the Label
// box, with required kinds), declared imports, rule metadata, and the step
// function firing those rules.
struct ComponentDef {
  const Construct* construct = nullptr;
  std::vector<EntitySpec> mentioned;
  std::vector<const Construct*> imports;
  std::vector<RuleInfo> rules;
  StepFn step = nullptr;
  bool fixture = false;  // excluded from the shipped repository listing

  const RuleInfo& rule(std::string_view name) const {
    for (const RuleInfo& r : rules)
      if (r.name == name) return r;
    throw Error("unknown rule: " + std::string(name));
  }
};

inline const Value& LocalContext::mentioned_object(std::string_view name) const {
  for (const EntitySpec& m : comp_.mentioned) {
    if (m.name == name) return ctx_.per_entity[sig_->require(name)];
  }
  throw SignatureError("entity not mentioned by component: " + std::string(name));
}

inline PremiseList LocalContext::step_override(const Term& t, std::string_view entity,
                                               const Value& object) {
  bool mentioned = false;
  for (const EntitySpec& m : comp_.mentioned) mentioned |= (m.name == entity);
  if (!mentioned)
    throw SignatureError("cannot override unmentioned entity: " + std::string(entity));
  Objects objs = ctx_;
  objs.per_entity[sig_->require(entity)] = object;
  return PremiseList(provider_.step_objects(t, objs));
}

inline Label LocalContext::with_mentioned(const MentionedLabel& m, const Label* base) const {
  for (const std::string& name : m.names()) {
    bool ok = false;
    for (const EntitySpec& mm : comp_.mentioned) ok |= (mm.name == name);
    if (!ok) throw SignatureError("rule mentions undeclared entity: " + name);
  }
  std::vector<EntityArrow> arrows;
  arrows.reserve(sig_->size());
  std::size_t mi = 0;
  for (std::size_t i = 0; i < sig_->size(); ++i) {
    const EntitySpec& e = sig_->entities()[i];
    if (mi < m.names().size() && m.names()[mi] == e.name) {
      if (arrow_kind(m.arrows()[mi]) != e.kind)
        throw SignatureError("mentioned arrow kind mismatch at entity: " + e.name);
      arrows.push_back(m.arrows()[mi]);
      ++mi;
      continue;
    }
    if (base) {
      arrows.push_back(base->arrows()[i]);
      continue;
    }
    switch (e.kind) {
      case EntityKind::ReadOnly: arrows.push_back(RoArrow{ctx_.per_entity[i]}); break;
      case EntityKind::ReadWrite:
        arrows.push_back(RwArrow{ctx_.per_entity[i], ctx_.per_entity[i]});
        break;
      case EntityKind::WriteOnly: arrows.push_back(WoArrow{}); break;
    }
  }
  if (mi != m.names().size())
    throw SignatureError("mentioned arrows must follow signature order");
  return Label(sig_, std::move(arrows));
}

}  // namespace msos
