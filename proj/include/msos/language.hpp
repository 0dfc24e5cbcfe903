#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msos/component.hpp"
#include "msos/label.hpp"
#include "msos/repository.hpp"
#include "msos/term.hpp"

namespace msos {

// Literal leaves for bounded enumeration, declared per language definition.
struct Seeds {
  std::vector<std::int64_t> ints{0, 1};
  std::vector<bool> bools{true, false};
  std::vector<std::string> symbols{"breaking"};
  std::vector<std::string> idents{"x", "y"};
  std::vector<ValueMap> envs{{}, {{"x", Value(1)}}};

  // Values admitted in lit/throwing literal positions, in declaration order.
  std::vector<Value> lit_values() const {
    std::vector<Value> out;
    for (std::int64_t i : ints) out.push_back(Value(i));
    for (bool b : bools) out.push_back(Value(b));
    for (const std::string& s : symbols) out.push_back(Value(s));
    return out;
  }
};

// Build input for a language: entities, component enumeration per sort,
// literal seeds.
struct LanguageDef {
  std::string name;
  std::vector<EntitySpec> entities;
  std::vector<std::pair<Sort, std::vector<std::string>>> components;
  Seeds seeds;
};

class Language;
Language build_language(const LanguageDef& def);

// A composed language: signature, ordered component registry, and the
// constructs reachable from it (component-owning plus imported value forms).
// Immutable after build.
class Language {
public:
  const std::string& name() const { return name_; }
  const SignatureRef& signature() const { return sig_; }
  const Seeds& seeds() const { return seeds_; }
  const std::vector<const ComponentDef*>& components() const { return comps_; }
  const std::vector<const Construct*>& constructs() const { return constructs_; }
  const std::vector<const Construct*>& constructs_of(Sort s) const {
    return by_sort_[static_cast<std::size_t>(s)];
  }

  bool has_construct(const Construct* c) const {
    return c->index < by_construct_.size() && registered_[c->index];
  }
  const ComponentDef* component_for(const Construct* c) const {
    return c->index < by_construct_.size() ? by_construct_[c->index] : nullptr;
  }
  const Construct* construct_by_name(std::string_view name) const {
    for (const Construct* c : constructs_)
      if (c->name == name) return c;
    return nullptr;
  }

  // Global step relation: dispatch to the unique component whose construct
  // built t. Construct disjointness makes this the union of all globalized
  // local steps; value forms and terminal terms yield no transitions.
  void global_step(const Term& t, const Objects& ctx, int ctx_index, StepProvider& provider,
                   std::vector<Transition>& out) const {
    const ComponentDef* comp = component_for(t->construct);
    if (!comp) return;
    RestrictedTerm rt{t->construct, t};
    LocalContext cx(sig_, *comp, t, ctx, ctx_index, provider, out);
    comp->step(rt, cx);
  }

  std::vector<Transition> global_step(const Term& t, const Objects& ctx) const;

  Objects objects_from(const std::vector<std::pair<std::string, Value>>& named) const {
    return make_objects(*sig_, named);
  }

private:
  Language() = default;
  friend Language build_language(const LanguageDef& def);

  std::string name_;
  SignatureRef sig_;
  Seeds seeds_;
  std::vector<const ComponentDef*> comps_;
  std::vector<const Construct*> constructs_;
  std::vector<std::vector<const Construct*>> by_sort_{5};
  std::vector<const ComponentDef*> by_construct_;
  std::vector<bool> registered_;
};

// Plain recursive evaluation of the step relation; each call computes its
// transitions directly. Storage stays alive for the provider lifetime so
// premise spans remain valid during rule bodies.
class DirectProvider : public StepProvider {
public:
  explicit DirectProvider(const Language& lang) : lang_(lang) {}

  std::span<const Transition> step(const Term& t, int, const Objects& objs) override {
    return compute(t, objs);
  }
  std::span<const Transition> step_objects(const Term& t, const Objects& objs) override {
    return compute(t, objs);
  }

private:
  std::span<const Transition> compute(const Term& t, const Objects& objs) {
    storage_.emplace_back();
    std::vector<Transition>& out = storage_.back();
    lang_.global_step(t, objs, -1, *this, out);
    return {out.data(), out.size()};
  }

  const Language& lang_;
  std::deque<std::vector<Transition>> storage_;
};

inline std::vector<Transition> Language::global_step(const Term& t, const Objects& ctx) const {
  DirectProvider provider(*this);
  std::vector<Transition> out;
  global_step(t, ctx, -1, provider, out);
  return out;
}

// Test oracle: the explicit union over every registered component's
// globalized local step. Equal to global_step by construct disjointness.
inline std::vector<Transition> global_step_union(const Language& lang, const Term& t,
                                                 const Objects& ctx) {
  std::vector<Transition> out;
  for (const ComponentDef* comp : lang.components()) {
    auto rt = restrict_term(*comp->construct, t);
    if (!rt) continue;
    DirectProvider provider(lang);
    LocalContext cx(lang.signature(), *comp, t, ctx, -1, provider, out);
    comp->step(*rt, cx);
  }
  return out;
}

inline Language build_language(const LanguageDef& def) {
  const Repository& repo = builtin_repository();
  Language lang;
  lang.name_ = def.name;
  lang.sig_ = make_signature(def.entities);
  lang.seeds_ = def.seeds;
  lang.by_construct_.assign(repo.constructs().size(), nullptr);
  lang.registered_.assign(repo.constructs().size(), false);

  auto add_construct = [&](const Construct* c) {
    if (lang.registered_[c->index]) return;
    lang.registered_[c->index] = true;
    lang.constructs_.push_back(c);
    lang.by_sort_[static_cast<std::size_t>(c->sort)].push_back(c);
  };

  // Resolve the component enumeration.
  for (const auto& [sort, names] : def.components) {
    for (const std::string& name : names) {
      const Construct* c = repo.construct_by_id(name);
      if (!c) c = repo.construct_by_name(name);
      if (!c || c->sort != sort)
        throw BuildError(BuildError::Code::UnknownComponent,
                         "unknown component: " + std::string(sort_name(sort)) + "." + name);
      const ComponentDef* comp = repo.component_for(c);
      if (!comp)
        throw BuildError(BuildError::Code::UnknownComponent,
                         "not a component (value form): " + c->id);
      if (lang.registered_[c->index])
        throw BuildError(BuildError::Code::BadDefinition, "component listed twice: " + c->id);
      add_construct(c);
      lang.comps_.push_back(comp);
      lang.by_construct_[c->index] = comp;
    }
  }

  // Imports must be declared: component-owning imports must appear in the
  // enumeration; value-form imports register their construct.
  for (const ComponentDef* comp : lang.comps_) {
    for (const Construct* imp : comp->imports) {
      if (repo.component_for(imp)) {
        if (!lang.registered_[imp->index])
          throw BuildError(BuildError::Code::MissingImport,
                           comp->construct->id + " imports " + imp->id +
                               ", which is not in the language");
      } else {
        add_construct(imp);
      }
    }
  }

  // Mentioned entities must exist with the right kind and domain (the label
  // coverage obligations, checked once at build time).
  for (const ComponentDef* comp : lang.comps_) {
    for (const EntitySpec& m : comp->mentioned) {
      std::size_t i = lang.sig_->find(m.name);
      if (i == LabelSignature::npos)
        throw BuildError(BuildError::Code::EntityMismatch,
                         comp->construct->id + " requires entity " + m.name + " (" +
                             std::string(kind_name(m.kind)) + ")");
      const EntitySpec& e = lang.sig_->entities()[i];
      if (e.kind != m.kind || e.domain != m.domain)
        throw BuildError(BuildError::Code::EntityMismatch,
                         comp->construct->id + " requires entity " + m.name + " to be " +
                             std::string(kind_name(m.kind)));
    }
  }
  return lang;
}

// Global step relation handle; lang is null for synthetic handles built by
// globalize.
struct Step {
  using Fn = std::function<std::vector<Transition>(const Term&, const Objects&)>;
  const Language* lang = nullptr;
  Fn fn;

  std::vector<Transition> operator()(const Term& t, const Objects& objs) const {
    return fn(t, objs);
  }
};

inline Step global_step_of(const Language& lang) {
  return Step{&lang, [&lang](const Term& t, const Objects& objs) {
                return lang.global_step(t, objs);
              }};
}

// Local step relation of one construct.
struct LocalStep {
  using Fn = std::function<std::vector<Transition>(const RestrictedTerm&, const Objects&)>;
  const Construct* construct = nullptr;
  Fn fn;

  std::vector<Transition> operator()(const RestrictedTerm& rt, const Objects& objs) const {
    return fn(rt, objs);
  }
};

// The component's own local step relation, evaluated through its rules.
inline LocalStep local_step_of(const Language& lang, const ComponentDef& comp) {
  return LocalStep{comp.construct,
                   [&lang, &comp](const RestrictedTerm& rt, const Objects& objs) {
                     DirectProvider provider(lang);
                     std::vector<Transition> out;
                     LocalContext cx(lang.signature(), comp, rt.term, objs, -1, provider, out);
                     comp.step(rt, cx);
                     return out;
                   }};
}

// Restriction of a global step to terms built by c: rt maps to S(I(rt)).
inline LocalStep localize(const Construct& c, const Step& S) {
  if (S.lang && !S.lang->has_construct(&c))
    throw Error("construct not registered in the step's language: " + c.id);
  return LocalStep{&c, [S](const RestrictedTerm& rt, const Objects& objs) {
                     return S(rt.term, objs);
                   }};
}

// Extension of a local step to the full sort: empty on terms not built by
// the local step's construct.
inline Step globalize(const LocalStep& ls) {
  return Step{nullptr, [ls](const Term& t, const Objects& objs) -> std::vector<Transition> {
                auto rt = restrict_term(*ls.construct, t);
                if (!rt) return {};
                return ls(*rt, objs);
              }};
}

}  // namespace msos
