#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace migmap {

/// Which library of a migration rule a method belongs to.
enum class Side : std::uint8_t { Source = 0, Target = 1 };

std::string_view to_string(Side side);

/// Identity of one API method as seen in diffs: library side, name and arity.
/// Parameter types are carried only when they are known (catalog signatures);
/// calls extracted lexically never have them.
class MethodRef {
 public:
  MethodRef() = default;
  MethodRef(Side side, std::string name, std::uint32_t arity);
  MethodRef(Side side, std::string name, std::vector<std::string> param_types);

  Side side() const { return side_; }
  const std::string& name() const { return name_; }
  std::uint32_t arity() const { return arity_; }
  const std::optional<std::vector<std::string>>& param_types() const { return param_types_; }

  /// `name/arity`, or `name(T1,T2)` when parameter types are known.
  const std::string& encoding() const { return encoding_; }

  /// Same method with parameter types dropped.
  MethodRef without_params() const { return {side_, name_, arity_}; }

  /// Parses the interchange encoding. Throws DataError on malformed input.
  static MethodRef parse(std::string_view text, Side side);

  friend bool operator==(const MethodRef& a, const MethodRef& b) {
    return a.side_ == b.side_ && a.encoding_ == b.encoding_;
  }
  // Canonical order: side first, then encoding bytes.
  friend std::strong_ordering operator<=>(const MethodRef& a, const MethodRef& b) {
    if (auto c = a.side_ <=> b.side_; c != 0) return c;
    return a.encoding_.compare(b.encoding_) <=> 0;
  }

 private:
  Side side_ = Side::Source;
  std::string name_;
  std::uint32_t arity_ = 0;
  std::optional<std::vector<std::string>> param_types_;
  std::string encoding_;
};

struct MethodRefHash {
  std::size_t operator()(const MethodRef& m) const noexcept;
};

/// Splits a Java identifier on camel-case, digit and underscore boundaries and
/// lowercases the pieces: "getAsJSONObject" -> {get, as, json, object}.
std::vector<std::string> split_identifier(std::string_view identifier);

}  // namespace migmap
