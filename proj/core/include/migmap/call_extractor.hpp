#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "migmap/api_index.hpp"
#include "migmap/fragment.hpp"

namespace migmap {

/// One syntactic invocation found by the lexical scanner.
struct CallSite {
  std::string name;
  std::uint32_t arity = 0;
  bool constructor = false;

  friend bool operator==(const CallSite&, const CallSite&) = default;
};

/// Lexically finds `name(...)` invocations and `new Type(...)` constructor
/// calls in Java code. Comments, string literals and annotation arguments are
/// skipped; nested calls are all reported; method declarations are not.
std::vector<CallSite> scan_calls(std::string_view code);

/// Packages named by `import` statements (static imports included,
/// wildcards and member names stripped to the package/type path).
std::vector<std::string> extract_imports(std::string_view java_source);

/// True when some import lies under one of the package prefixes.
bool imports_match(const std::vector<std::string>& imports,
                   const std::vector<std::string>& package_prefixes);

/// Calls in `lines` that resolve in `index` by (name, arity), provided the
/// file imports the index's library.
MethodSet extract_calls(std::string_view lines, const std::vector<std::string>& imports,
                        const ApiIndex& index);

}  // namespace migmap

namespace migmap {

/// True when a Java source file depends on a library: it imports one of the
/// library's packages or names one of them fully qualified.
bool references_library(std::string_view java_source,
                        const std::vector<std::string>& package_prefixes);

}  // namespace migmap
