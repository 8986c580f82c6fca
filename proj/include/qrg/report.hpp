#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrg/dyadic.hpp"

namespace qrg {

/// 17-significant-digit decimal token for a finite double.
inline std::string format_double17(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot serialize non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Write-only JSON tree with insertion-ordered objects, %.17g doubles,
/// and arbitrary-precision integers emitted as untruncated number tokens.
/// Serialization is deterministic, so identical trees give identical bytes.
class JsonValue {
 public:
  JsonValue() : kind_(Kind::Null) {}

  static JsonValue boolean(bool b) {
    JsonValue v;
    v.kind_ = Kind::Token;
    v.token_ = b ? "true" : "false";
    return v;
  }
  static JsonValue number(double x) {
    JsonValue v;
    v.kind_ = Kind::Token;
    v.token_ = format_double17(x);
    return v;
  }
  static JsonValue integer(const Int& n) {
    JsonValue v;
    v.kind_ = Kind::Token;
    v.token_ = n.str();
    return v;
  }
  static JsonValue integer(std::uint64_t n) {
    JsonValue v;
    v.kind_ = Kind::Token;
    v.token_ = std::to_string(n);
    return v;
  }
  static JsonValue integer(std::int64_t n) {
    JsonValue v;
    v.kind_ = Kind::Token;
    v.token_ = std::to_string(n);
    return v;
  }
  static JsonValue string(std::string s) {
    JsonValue v;
    v.kind_ = Kind::String;
    v.token_ = std::move(s);
    return v;
  }
  static JsonValue array() {
    JsonValue v;
    v.kind_ = Kind::Array;
    return v;
  }
  static JsonValue object() {
    JsonValue v;
    v.kind_ = Kind::Object;
    return v;
  }

  JsonValue& push(JsonValue item) {
    if (kind_ != Kind::Array) throw std::logic_error("push on non-array json value");
    items_.push_back(std::move(item));
    return *this;
  }
  JsonValue& set(std::string key, JsonValue value) {
    if (kind_ != Kind::Object) throw std::logic_error("set on non-object json value");
    for (auto& [k, v] : fields_)
      if (k == key) {
        v = std::move(value);
        return *this;
      }
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
  }

  void write(std::ostream& os, int depth = 0) const {
    switch (kind_) {
      case Kind::Null:
        os << "null";
        break;
      case Kind::Token:
        os << token_;
        break;
      case Kind::String:
        write_escaped(os, token_);
        break;
      case Kind::Array: {
        if (items_.empty()) {
          os << "[]";
          break;
        }
        os << "[";
        for (std::size_t i = 0; i < items_.size(); ++i) {
          if (i) os << ",";
          os << "\n";
          pad(os, depth + 1);
          items_[i].write(os, depth + 1);
        }
        os << "\n";
        pad(os, depth);
        os << "]";
        break;
      }
      case Kind::Object: {
        if (fields_.empty()) {
          os << "{}";
          break;
        }
        os << "{";
        for (std::size_t i = 0; i < fields_.size(); ++i) {
          if (i) os << ",";
          os << "\n";
          pad(os, depth + 1);
          write_escaped(os, fields_[i].first);
          os << ": ";
          fields_[i].second.write(os, depth + 1);
        }
        os << "\n";
        pad(os, depth);
        os << "}";
        break;
      }
    }
  }

  std::string dump() const {
    std::ostringstream os;
    write(os);
    os << "\n";
    return os.str();
  }

 private:
  enum class Kind { Null, Token, String, Array, Object };

  static void pad(std::ostream& os, int depth) {
    for (int i = 0; i < depth; ++i) os << "  ";
  }

  static void write_escaped(std::ostream& os, const std::string& s) {
    os << '"';
    for (unsigned char c : s) {
      switch (c) {
        case '"': os << "\\\""; break;
        case '\\': os << "\\\\"; break;
        case '\b': os << "\\b"; break;
        case '\f': os << "\\f"; break;
        case '\n': os << "\\n"; break;
        case '\r': os << "\\r"; break;
        case '\t': os << "\\t"; break;
        default:
          if (c < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            os << buf;
          } else {
            os << c;
          }
      }
    }
    os << '"';
  }

  Kind kind_;
  std::string token_;
  std::vector<JsonValue> items_;
  std::vector<std::pair<std::string, JsonValue>> fields_;
};

/// FNV-1a 64-bit digest of a byte string, as fixed-width hex.
inline std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Top-level run report. Serialization is stable: identical inputs,
/// seed, and flags give byte-identical documents. Wall time is opt-in
/// so that default reports stay reproducible.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  ///< (path, digest)
  bool has_seed = false;
  std::uint64_t seed = 0;
  JsonValue results = JsonValue::object();
  double wall_time_s = -1.0;  ///< emitted only when >= 0

  std::string render() const {
    JsonValue root = JsonValue::object();
    root.set("schema", JsonValue::string("qrg-report/1"));
    root.set("command", JsonValue::string(command));
    JsonValue ins = JsonValue::array();
    for (const auto& [path, digest] : inputs) {
      JsonValue entry = JsonValue::object();
      entry.set("path", JsonValue::string(path));
      entry.set("fnv1a64", JsonValue::string(digest));
      ins.push(std::move(entry));
    }
    root.set("inputs", std::move(ins));
    if (has_seed) root.set("seed", JsonValue::integer(seed));
    root.set("results", results);
    if (wall_time_s >= 0.0) root.set("wall_time_s", JsonValue::number(wall_time_s));
    return root.dump();
  }
};

}  // namespace qrg
