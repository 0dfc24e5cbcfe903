#pragma once

#include <map>
#include <vector>

#include "msos/label.hpp"
#include "msos/value.hpp"

namespace msos {

// Seed object assignments for exhaustive checks: all maps over {x, y} with
// values {0, 1} — 9 per ro/rw entity, small enough for full products yet
// able to distinguish ro/rw misuse.
inline const std::vector<ValueMap>& seed_maps() {
  static const std::vector<ValueMap> maps = [] {
    std::vector<ValueMap> out;
    out.push_back({});
    for (int vx = 0; vx <= 1; ++vx) out.push_back({{"x", Value(vx)}});
    for (int vy = 0; vy <= 1; ++vy) out.push_back({{"y", Value(vy)}});
    for (int vx = 0; vx <= 1; ++vx)
      for (int vy = 0; vy <= 1; ++vy) out.push_back({{"x", Value(vx)}, {"y", Value(vy)}});
    return out;
  }();
  return maps;
}

// Product of seed maps across the signature's ro/rw entities (wo entities
// contribute their single object). Contexts are indexable so providers can
// memoize per context.
class SeedGrid {
public:
  explicit SeedGrid(SignatureRef sig) : sig_(std::move(sig)) {
    const auto& maps = seed_maps();
    std::vector<Objects> acc;
    acc.emplace_back();
    for (const EntitySpec& e : sig_->entities()) {
      std::vector<Objects> next;
      if (e.kind == EntityKind::WriteOnly) {
        for (Objects& o : acc) o.per_entity.emplace_back();
        next = std::move(acc);
      } else {
        next.reserve(acc.size() * maps.size());
        for (const Objects& o : acc)
          for (const ValueMap& m : maps) {
            Objects ext = o;
            ext.per_entity.emplace_back(m);
            next.push_back(std::move(ext));
          }
      }
      acc = std::move(next);
    }
    contexts_ = std::move(acc);
    for (std::size_t i = 0; i < contexts_.size(); ++i)
      index_.emplace(contexts_[i], static_cast<int>(i));
  }

  const SignatureRef& signature() const { return sig_; }
  const std::vector<Objects>& contexts() const { return contexts_; }

  int index_of(const Objects& o) const {
    auto it = index_.find(o);
    return it == index_.end() ? -1 : it->second;
  }

private:
  SignatureRef sig_;
  std::vector<Objects> contexts_;
  std::map<Objects, int> index_;
};

}  // namespace msos
