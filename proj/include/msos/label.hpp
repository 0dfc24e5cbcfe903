#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "msos/error.hpp"
#include "msos/value.hpp"

namespace msos {

// Entity permission kind. Each kind fixes the shape of the entity's arrow
// category: read_only is discrete, read_write is the codiscrete pre-order,
// write_only is a single object with the free monoid of emission lists.
enum class EntityKind { ReadOnly, ReadWrite, WriteOnly };

// Object domain of an entity: finite map for read_only/read_write objects,
// value list for write_only emissions.
enum class ObjectDomain { Map, List };

inline std::string_view kind_name(EntityKind k) {
  switch (k) {
    case EntityKind::ReadOnly: return "read_only";
    case EntityKind::ReadWrite: return "read_write";
    case EntityKind::WriteOnly: return "write_only";
  }
  return "?";
}

struct EntitySpec {
  std::string name;
  EntityKind kind = EntityKind::ReadOnly;
  ObjectDomain domain = ObjectDomain::Map;
};

// Ordered entity declarations. Declaration order is canonical: every label
// operation, projection, and JSON encoding follows it.
class LabelSignature {
public:
  LabelSignature() = default;
  explicit LabelSignature(std::vector<EntitySpec> entities) : entities_(std::move(entities)) {
    for (std::size_t i = 0; i < entities_.size(); ++i) {
      for (std::size_t j = i + 1; j < entities_.size(); ++j) {
        if (entities_[i].name == entities_[j].name)
          throw SignatureError("duplicate entity name: " + entities_[i].name);
      }
      if (entities_[i].kind == EntityKind::WriteOnly && entities_[i].domain != ObjectDomain::List)
        throw SignatureError("write_only entity must have a list domain: " + entities_[i].name);
    }
  }

  const std::vector<EntitySpec>& entities() const { return entities_; }
  std::size_t size() const { return entities_.size(); }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(std::string_view name) const {
    for (std::size_t i = 0; i < entities_.size(); ++i)
      if (entities_[i].name == name) return i;
    return npos;
  }

  std::size_t require(std::string_view name) const {
    std::size_t i = find(name);
    if (i == npos) throw SignatureError("unknown entity: " + std::string(name));
    return i;
  }

  friend bool operator==(const LabelSignature& a, const LabelSignature& b) {
    if (a.entities_.size() != b.entities_.size()) return false;
    for (std::size_t i = 0; i < a.entities_.size(); ++i) {
      if (a.entities_[i].name != b.entities_[i].name) return false;
      if (a.entities_[i].kind != b.entities_[i].kind) return false;
      if (a.entities_[i].domain != b.entities_[i].domain) return false;
    }
    return true;
  }

private:
  std::vector<EntitySpec> entities_;
};

using SignatureRef = std::shared_ptr<const LabelSignature>;

inline SignatureRef make_signature(std::vector<EntitySpec> entities) {
  return std::make_shared<const LabelSignature>(std::move(entities));
}

// Arrow of a read_only entity: an identity on its object.
struct RoArrow {
  Value object;
  friend bool operator==(const RoArrow& a, const RoArrow& b) { return a.object == b.object; }
};

// Arrow of a read_write entity: any (pre, post) pair of objects.
struct RwArrow {
  Value pre, post;
  friend bool operator==(const RwArrow& a, const RwArrow& b) {
    return a.pre == b.pre && a.post == b.post;
  }
};

// Arrow of a write_only entity: an emission list, an element of the free
// monoid; source and target are both the single formal object.
struct WoArrow {
  std::vector<Value> emitted;
  friend bool operator==(const WoArrow& a, const WoArrow& b) { return a.emitted == b.emitted; }
};

using EntityArrow = std::variant<RoArrow, RwArrow, WoArrow>;

inline EntityKind arrow_kind(const EntityArrow& a) {
  if (std::holds_alternative<RoArrow>(a)) return EntityKind::ReadOnly;
  if (std::holds_alternative<RwArrow>(a)) return EntityKind::ReadWrite;
  return EntityKind::WriteOnly;
}

inline bool arrow_is_identity(const EntityArrow& a) {
  if (const auto* rw = std::get_if<RwArrow>(&a)) return rw->pre == rw->post;
  if (const auto* wo = std::get_if<WoArrow>(&a)) return wo->emitted.empty();
  return true;
}

// Per-entity source object assignment, aligned with a signature; write_only
// slots hold unit. Ordered comparison supports object grids.
struct Objects {
  std::vector<Value> per_entity;

  friend bool operator==(const Objects& a, const Objects& b) {
    return a.per_entity == b.per_entity;
  }
  friend bool operator<(const Objects& a, const Objects& b) {
    return std::lexicographical_compare(a.per_entity.begin(), a.per_entity.end(),
                                        b.per_entity.begin(), b.per_entity.end());
  }
};

// Builds an Objects row from named assignments, validating domain membership.
// Write_only entities take no object; missing or mismatched ro/rw objects are
// signature errors.
inline Objects make_objects(const LabelSignature& sig,
                            const std::vector<std::pair<std::string, Value>>& named) {
  Objects out;
  out.per_entity.assign(sig.size(), Value());
  std::vector<bool> seen(sig.size(), false);
  for (const auto& [name, v] : named) {
    std::size_t i = sig.require(name);
    const EntitySpec& e = sig.entities()[i];
    if (e.kind == EntityKind::WriteOnly)
      throw SignatureError("write_only entity takes no object: " + name);
    if (e.domain == ObjectDomain::Map && !v.is_map())
      throw SignatureError("object for entity " + name + " must be a map");
    out.per_entity[i] = v;
    seen[i] = true;
  }
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const EntitySpec& e = sig.entities()[i];
    if (e.kind == EntityKind::WriteOnly) continue;
    if (!seen[i]) {
      if (e.domain != ObjectDomain::Map)
        throw SignatureError("missing object for entity: " + e.name);
      out.per_entity[i] = Value(ValueMap{});
    }
  }
  return out;
}

// One arrow of the product category: an EntityArrow per declared entity.
// Labels are immutable; the arrow vector is shared between copies.
class Label {
public:
  Label() = default;
  Label(SignatureRef sig, std::vector<EntityArrow> arrows)
      : sig_(std::move(sig)),
        arrows_(std::make_shared<const std::vector<EntityArrow>>(std::move(arrows))) {
    check_shape();
  }
  Label(SignatureRef sig, std::shared_ptr<const std::vector<EntityArrow>> arrows)
      : sig_(std::move(sig)), arrows_(std::move(arrows)) {
    check_shape();
  }

  const LabelSignature& signature() const { return *sig_; }
  const SignatureRef& signature_ref() const { return sig_; }
  const std::vector<EntityArrow>& arrows() const { return *arrows_; }
  const std::shared_ptr<const std::vector<EntityArrow>>& arrows_ptr() const { return arrows_; }

  friend bool operator==(const Label& a, const Label& b) {
    if (a.arrows_ == b.arrows_) return true;
    return *a.arrows_ == *b.arrows_;
  }
  friend bool operator!=(const Label& a, const Label& b) { return !(a == b); }

private:
  void check_shape() const {
    if (!sig_ || !arrows_) throw SignatureError("label requires a signature and arrows");
    if (arrows_->size() != sig_->size())
      throw SignatureError("label arrow count does not match signature");
    for (std::size_t i = 0; i < sig_->size(); ++i) {
      if (arrow_kind((*arrows_)[i]) != sig_->entities()[i].kind)
        throw SignatureError("arrow kind mismatch at entity: " + sig_->entities()[i].name);
    }
  }

  SignatureRef sig_;
  std::shared_ptr<const std::vector<EntityArrow>> arrows_;
};

// Identity arrow at the given source objects: ro arrows carry the object,
// rw arrows have pre = post, wo arrows are the empty emission.
inline Label identity_label(const SignatureRef& sig, const Objects& objects) {
  if (objects.per_entity.size() != sig->size())
    throw SignatureError("object assignment does not match signature");
  std::vector<EntityArrow> arrows;
  arrows.reserve(sig->size());
  for (std::size_t i = 0; i < sig->size(); ++i) {
    const EntitySpec& e = sig->entities()[i];
    const Value& obj = objects.per_entity[i];
    switch (e.kind) {
      case EntityKind::ReadOnly:
        if (e.domain == ObjectDomain::Map && !obj.is_map())
          throw SignatureError("object for entity " + e.name + " must be a map");
        arrows.push_back(RoArrow{obj});
        break;
      case EntityKind::ReadWrite:
        if (e.domain == ObjectDomain::Map && !obj.is_map())
          throw SignatureError("object for entity " + e.name + " must be a map");
        arrows.push_back(RwArrow{obj, obj});
        break;
      case EntityKind::WriteOnly:
        arrows.push_back(WoArrow{});
        break;
    }
  }
  return Label(sig, std::move(arrows));
}

// Source objects of a label: ro object, rw pre, unit for wo.
inline Objects source_objects(const Label& l) {
  Objects out;
  out.per_entity.reserve(l.arrows().size());
  for (const EntityArrow& a : l.arrows()) {
    if (const auto* ro = std::get_if<RoArrow>(&a)) out.per_entity.push_back(ro->object);
    else if (const auto* rw = std::get_if<RwArrow>(&a)) out.per_entity.push_back(rw->pre);
    else out.per_entity.push_back(Value());
  }
  return out;
}

// Target objects of a label: ro object, rw post, unit for wo.
inline Objects target_objects(const Label& l) {
  Objects out;
  out.per_entity.reserve(l.arrows().size());
  for (const EntityArrow& a : l.arrows()) {
    if (const auto* ro = std::get_if<RoArrow>(&a)) out.per_entity.push_back(ro->object);
    else if (const auto* rw = std::get_if<RwArrow>(&a)) out.per_entity.push_back(rw->post);
    else out.per_entity.push_back(Value());
  }
  return out;
}

// Composition in the product category. Defined iff per entity: ro objects
// equal, rw post of a equals pre of b. Result: ro unchanged, rw spans
// (a.pre, b.post), wo concatenates.
inline Label compose(const Label& a, const Label& b) {
  if (!(a.signature() == b.signature()))
    throw SignatureError("compose requires labels over the same signature");
  const auto& ea = a.arrows();
  const auto& eb = b.arrows();
  std::vector<EntityArrow> arrows;
  arrows.reserve(ea.size());
  for (std::size_t i = 0; i < ea.size(); ++i) {
    const std::string& name = a.signature().entities()[i].name;
    if (const auto* ro = std::get_if<RoArrow>(&ea[i])) {
      const auto& rb = std::get<RoArrow>(eb[i]);
      if (!(ro->object == rb.object))
        throw ComposeError(name, "labels do not compose at read_only entity " + name);
      arrows.push_back(*ro);
    } else if (const auto* rw = std::get_if<RwArrow>(&ea[i])) {
      const auto& rb = std::get<RwArrow>(eb[i]);
      if (!(rw->post == rb.pre))
        throw ComposeError(name, "labels do not compose at read_write entity " + name);
      arrows.push_back(RwArrow{rw->pre, rb.post});
    } else {
      const auto& wa = std::get<WoArrow>(ea[i]);
      const auto& wb = std::get<WoArrow>(eb[i]);
      WoArrow w;
      w.emitted.reserve(wa.emitted.size() + wb.emitted.size());
      w.emitted.insert(w.emitted.end(), wa.emitted.begin(), wa.emitted.end());
      w.emitted.insert(w.emitted.end(), wb.emitted.begin(), wb.emitted.end());
      arrows.push_back(std::move(w));
    }
  }
  return Label(a.signature_ref(), std::move(arrows));
}

inline bool composable(const Label& a, const Label& b) {
  if (!(a.signature() == b.signature())) return false;
  const auto& ea = a.arrows();
  const auto& eb = b.arrows();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (const auto* ro = std::get_if<RoArrow>(&ea[i])) {
      if (!(ro->object == std::get<RoArrow>(eb[i]).object)) return false;
    } else if (const auto* rw = std::get_if<RwArrow>(&ea[i])) {
      if (!(rw->post == std::get<RwArrow>(eb[i]).pre)) return false;
    }
  }
  return true;
}

// A label is unobservable iff it is an identity arrow: every rw arrow has
// pre = post and every wo emission list is empty. Ro arrows are identities
// by construction.
inline bool is_unobservable(const Label& l) {
  for (const EntityArrow& a : l.arrows())
    if (!arrow_is_identity(a)) return false;
  return true;
}

namespace detail {
// Canonical index set for a mentioned-name set: signature order, validated.
inline std::vector<std::size_t> mentioned_indices(const LabelSignature& sig,
                                                  const std::vector<std::string>& mentioned) {
  std::vector<bool> mark(sig.size(), false);
  for (const std::string& name : mentioned) mark[sig.require(name)] = true;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (mark[i]) idx.push_back(i);
  return idx;
}
}  // namespace detail

// Projection of a label onto a mentioned entity set: the arrows a component
// is allowed to read and write, in canonical signature order.
class MentionedLabel {
public:
  MentionedLabel() = default;

  // Single-entity builders used by rule bodies.
  static MentionedLabel ro(std::string name, Value object) {
    MentionedLabel m;
    m.names_.push_back(std::move(name));
    m.arrows_.push_back(RoArrow{std::move(object)});
    return m;
  }
  static MentionedLabel rw(std::string name, Value pre, Value post) {
    MentionedLabel m;
    m.names_.push_back(std::move(name));
    m.arrows_.push_back(RwArrow{std::move(pre), std::move(post)});
    return m;
  }
  static MentionedLabel wo(std::string name, std::vector<Value> emitted) {
    MentionedLabel m;
    m.names_.push_back(std::move(name));
    m.arrows_.push_back(WoArrow{std::move(emitted)});
    return m;
  }

  void add_ro(std::string name, Value object) {
    names_.push_back(std::move(name));
    arrows_.push_back(RoArrow{std::move(object)});
  }
  void add_rw(std::string name, Value pre, Value post) {
    names_.push_back(std::move(name));
    arrows_.push_back(RwArrow{std::move(pre), std::move(post)});
  }
  void add_wo(std::string name, std::vector<Value> emitted) {
    names_.push_back(std::move(name));
    arrows_.push_back(WoArrow{std::move(emitted)});
  }

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<EntityArrow>& arrows() const { return arrows_; }
  bool empty() const { return names_.empty(); }

  friend bool operator==(const MentionedLabel& a, const MentionedLabel& b) {
    return a.names_ == b.names_ && a.arrows_ == b.arrows_;
  }
  friend bool operator!=(const MentionedLabel& a, const MentionedLabel& b) { return !(a == b); }

private:
  std::vector<std::string> names_;
  std::vector<EntityArrow> arrows_;
};

// Entity-wise composition of mentioned projections; same laws as compose.
inline MentionedLabel compose(const MentionedLabel& a, const MentionedLabel& b) {
  if (a.names() != b.names())
    throw SignatureError("mentioned compose requires the same mentioned set");
  MentionedLabel out;
  for (std::size_t i = 0; i < a.arrows().size(); ++i) {
    const std::string& name = a.names()[i];
    if (const auto* ro = std::get_if<RoArrow>(&a.arrows()[i])) {
      const auto& rb = std::get<RoArrow>(b.arrows()[i]);
      if (!(ro->object == rb.object))
        throw ComposeError(name, "mentioned parts do not compose at " + name);
      out.add_ro(name, ro->object);
    } else if (const auto* rw = std::get_if<RwArrow>(&a.arrows()[i])) {
      const auto& rb = std::get<RwArrow>(b.arrows()[i]);
      if (!(rw->post == rb.pre))
        throw ComposeError(name, "mentioned parts do not compose at " + name);
      out.add_rw(name, rw->pre, rb.post);
    } else {
      const auto& wa = std::get<WoArrow>(a.arrows()[i]);
      const auto& wb = std::get<WoArrow>(b.arrows()[i]);
      std::vector<Value> e = wa.emitted;
      e.insert(e.end(), wb.emitted.begin(), wb.emitted.end());
      out.add_wo(name, std::move(e));
    }
  }
  return out;
}

class OpaqueLabel;
inline OpaqueLabel project_unmentioned(const Label& l, const std::vector<std::string>& mentioned);
inline Label assemble(const MentionedLabel& m, const OpaqueLabel& u, const SignatureRef& sig);
inline OpaqueLabel compose(const OpaqueLabel& a, const OpaqueLabel& b);

// The unmentioned rest of a label. Components may only test it for equality
// and unobservability; the arrows stay private to the label machinery.
class OpaqueLabel {
public:
  OpaqueLabel() = default;

  bool is_unobservable() const {
    for (const EntityArrow& a : arrows_)
      if (!arrow_is_identity(a)) return false;
    return true;
  }
  bool empty() const { return names_.empty(); }

  friend bool operator==(const OpaqueLabel& a, const OpaqueLabel& b) {
    return a.names_ == b.names_ && a.arrows_ == b.arrows_;
  }
  friend bool operator!=(const OpaqueLabel& a, const OpaqueLabel& b) { return !(a == b); }

private:
  std::vector<std::string> names_;
  std::vector<EntityArrow> arrows_;

  friend OpaqueLabel project_unmentioned(const Label& l, const std::vector<std::string>& mentioned);
  friend Label assemble(const MentionedLabel& m, const OpaqueLabel& u, const SignatureRef& sig);
  friend OpaqueLabel compose(const OpaqueLabel& a, const OpaqueLabel& b);
};

// P_M: arrows of the mentioned entities, in canonical signature order.
inline MentionedLabel project_mentioned(const Label& l, const std::vector<std::string>& mentioned) {
  std::vector<std::size_t> idx = detail::mentioned_indices(l.signature(), mentioned);
  MentionedLabel out;
  for (std::size_t i : idx) {
    const EntityArrow& a = l.arrows()[i];
    const std::string& name = l.signature().entities()[i].name;
    if (const auto* ro = std::get_if<RoArrow>(&a)) out.add_ro(name, ro->object);
    else if (const auto* rw = std::get_if<RwArrow>(&a)) out.add_rw(name, rw->pre, rw->post);
    else out.add_wo(name, std::get<WoArrow>(a).emitted);
  }
  return out;
}

// P_U: arrows of the complement of the mentioned set, wrapped opaque.
inline OpaqueLabel project_unmentioned(const Label& l, const std::vector<std::string>& mentioned) {
  std::vector<bool> mark(l.signature().size(), false);
  for (const std::string& name : mentioned) mark[l.signature().require(name)] = true;
  OpaqueLabel out;
  for (std::size_t i = 0; i < l.signature().size(); ++i) {
    if (mark[i]) continue;
    out.names_.push_back(l.signature().entities()[i].name);
    out.arrows_.push_back(l.arrows()[i]);
  }
  return out;
}

// Entity-wise composition of opaque parts; results stay opaque.
inline OpaqueLabel compose(const OpaqueLabel& a, const OpaqueLabel& b) {
  if (a.names_ != b.names_)
    throw SignatureError("opaque compose requires the same unmentioned set");
  OpaqueLabel out;
  out.names_ = a.names_;
  out.arrows_.reserve(a.arrows_.size());
  for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
    const std::string& name = a.names_[i];
    if (const auto* ro = std::get_if<RoArrow>(&a.arrows_[i])) {
      const auto& rb = std::get<RoArrow>(b.arrows_[i]);
      if (!(ro->object == rb.object))
        throw ComposeError(name, "opaque parts do not compose at " + name);
      out.arrows_.push_back(*ro);
    } else if (const auto* rw = std::get_if<RwArrow>(&a.arrows_[i])) {
      const auto& rb = std::get<RwArrow>(b.arrows_[i]);
      if (!(rw->post == rb.pre))
        throw ComposeError(name, "opaque parts do not compose at " + name);
      out.arrows_.push_back(RwArrow{rw->pre, rb.post});
    } else {
      const auto& wa = std::get<WoArrow>(a.arrows_[i]);
      const auto& wb = std::get<WoArrow>(b.arrows_[i]);
      WoArrow w;
      w.emitted = wa.emitted;
      w.emitted.insert(w.emitted.end(), wb.emitted.begin(), wb.emitted.end());
      out.arrows_.push_back(std::move(w));
    }
  }
  return out;
}

// Inverse of the projection pair: mentioned and opaque parts must exactly
// tile the signature. Round-trips with project_mentioned/project_unmentioned.
inline Label assemble(const MentionedLabel& m, const OpaqueLabel& u, const SignatureRef& sig) {
  std::vector<EntityArrow> arrows;
  arrows.reserve(sig->size());
  std::size_t mi = 0, ui = 0;
  for (std::size_t i = 0; i < sig->size(); ++i) {
    const EntitySpec& e = sig->entities()[i];
    if (mi < m.names().size() && m.names()[mi] == e.name) {
      if (arrow_kind(m.arrows()[mi]) != e.kind)
        throw SignatureError("mentioned arrow kind mismatch at entity: " + e.name);
      arrows.push_back(m.arrows()[mi]);
      ++mi;
    } else if (ui < u.names_.size() && u.names_[ui] == e.name) {
      arrows.push_back(u.arrows_[ui]);
      ++ui;
    } else {
      throw SignatureError("mentioned and opaque parts do not tile entity: " + e.name);
    }
  }
  if (mi != m.names().size() || ui != u.names_.size())
    throw SignatureError("mentioned and opaque parts do not tile the signature");
  return Label(sig, std::move(arrows));
}

}  // namespace msos
