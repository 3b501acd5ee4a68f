#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "migmap/method_ref.hpp"

namespace migmap {

/// Maven coordinates of a library plus the Java packages it exports.
/// Identity is (group id, artifact id); the version is informational.
struct LibraryRef {
  std::string group_id;
  std::string artifact_id;
  std::string version;
  std::vector<std::string> package_prefixes;

  std::string key() const { return group_id + ":" + artifact_id; }
  bool same_library(const LibraryRef& other) const {
    return group_id == other.group_id && artifact_id == other.artifact_id;
  }

  /// Parses `group:artifact` or `group:artifact:version`.
  static LibraryRef parse_coordinates(std::string_view text);
};

/// Catalog of one library's methods and their documentation text.
///
/// Entries are keyed by full signature. Call sites only reveal name and
/// arity, so lookups collapse overloads of equal arity into a single
/// `name/arity` reference whose description is the longest among them.
class ApiIndex {
 public:
  ApiIndex() = default;
  ApiIndex(LibraryRef library, Side side) : library_(std::move(library)), side_(side) {}

  const LibraryRef& library() const { return library_; }
  Side side() const { return side_; }

  /// Adds a signature; a duplicate keeps the longer description.
  void add(const MethodRef& signature, std::string description);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<MethodRef, std::string>& entries() const { return entries_; }

  /// The collapsed reference for a call with this name and arity.
  std::optional<MethodRef> lookup(std::string_view name, std::uint32_t arity) const;

  /// True for an exact signature or a collapsed name/arity reference.
  bool contains(const MethodRef& method) const;

  /// Documentation text; empty when undocumented or unknown.
  std::string_view description(const MethodRef& method) const;

  /// Every collapsed name/arity reference in the catalog.
  std::vector<MethodRef> collapsed_methods() const;

 private:
  LibraryRef library_;
  Side side_ = Side::Source;
  std::map<MethodRef, std::string> entries_;
  // name/arity -> longest description among overloads
  std::map<std::pair<std::string, std::uint32_t>, std::string, std::less<>> by_arity_;
};

/// Parses a catalog stream (`name(T1,T2)|description`, '#' comments and blank
/// lines ignored). Throws DataError citing `source_name` and the line number
/// on the first unparseable line.
ApiIndex parse_api_catalog(std::istream& in, LibraryRef library, Side side,
                           const std::string& source_name = "<catalog>");

ApiIndex build_api_index(const std::filesystem::path& catalog, LibraryRef library, Side side);

}  // namespace migmap
