#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace msos {

class Value;

// Environment and store objects are finite maps identifier -> Value.
// std::map keeps entries in key order, so equality is canonical-form equality.
using ValueMap = std::map<std::string, Value>;

// Ground value: unit, integer, boolean, symbol, or a finite map.
// Values are immutable; maps are shared and compared by content.
class Value {
public:
  Value() : v_(std::monostate{}) {}
  Value(std::int64_t i) : v_(i) {}
  Value(int i) : v_(static_cast<std::int64_t>(i)) {}
  Value(bool b) : v_(b) {}
  Value(std::string symbol) : v_(std::move(symbol)) {}
  Value(const char* symbol) : v_(std::string(symbol)) {}
  Value(ValueMap m) : v_(std::make_shared<const ValueMap>(std::move(m))) {}

  bool is_unit() const { return std::holds_alternative<std::monostate>(v_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_symbol() const { return std::holds_alternative<std::string>(v_); }
  bool is_map() const { return std::holds_alternative<MapPtr>(v_); }

  std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  bool as_bool() const { return std::get<bool>(v_); }
  const std::string& as_symbol() const { return std::get<std::string>(v_); }
  const ValueMap& as_map() const { return *std::get<MapPtr>(v_); }

  friend bool operator==(const Value& a, const Value& b) {
    if (a.v_.index() != b.v_.index()) return false;
    if (a.is_map()) {
      const MapPtr& pa = std::get<MapPtr>(a.v_);
      const MapPtr& pb = std::get<MapPtr>(b.v_);
      return pa == pb || *pa == *pb;
    }
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

  // Total order used by ordered containers (object grids, canonical maps).
  friend bool operator<(const Value& a, const Value& b) {
    if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index();
    if (a.is_map()) return a.as_map() < b.as_map();
    return a.v_ < b.v_;
  }

private:
  using MapPtr = std::shared_ptr<const ValueMap>;
  std::variant<std::monostate, std::int64_t, bool, std::string, MapPtr> v_;
};

// Map update, right biased: entries of b win over entries of a.
inline ValueMap update(const ValueMap& a, const ValueMap& b) {
  ValueMap r = a;
  for (const auto& [k, v] : b) r[k] = v;
  return r;
}

// Concrete-syntax form of a value; symbols print bare, maps as (k v) pairs.
inline std::string to_text(const Value& v) {
  if (v.is_unit()) return "()";
  if (v.is_int()) return std::to_string(v.as_int());
  if (v.is_bool()) return v.as_bool() ? "true" : "false";
  if (v.is_symbol()) return v.as_symbol();
  std::string s = "(";
  bool first = true;
  for (const auto& [k, e] : v.as_map()) {
    if (!first) s += ' ';
    first = false;
    s += '(' + k + ' ' + to_text(e) + ')';
  }
  return s + ")";
}

}  // namespace msos
