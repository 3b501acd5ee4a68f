#include "migmap/api_index.hpp"

#include <fstream>
#include <istream>

#include <spdlog/spdlog.h>

#include "migmap/errors.hpp"

namespace migmap {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

LibraryRef LibraryRef::parse_coordinates(std::string_view text) {
  LibraryRef lib;
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto colon = text.find(':', start);
    parts.emplace_back(trim(text.substr(start, colon - start)));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3 || parts[0].empty() || parts[1].empty()) {
    throw ConfigError("library coordinates must be group:artifact[:version], got '" +
                      std::string(text) + "'");
  }
  lib.group_id = parts[0];
  lib.artifact_id = parts[1];
  if (parts.size() == 3) lib.version = parts[2];
  return lib;
}

void ApiIndex::add(const MethodRef& signature, std::string description) {
  MethodRef key = signature.side() == side_
                      ? signature
                      : (signature.param_types()
                             ? MethodRef(side_, signature.name(), *signature.param_types())
                             : MethodRef(side_, signature.name(), signature.arity()));
  auto [it, inserted] = entries_.try_emplace(key, description);
  if (!inserted && description.size() > it->second.size()) it->second = description;

  auto& collapsed = by_arity_[{key.name(), key.arity()}];
  if (description.size() > collapsed.size()) collapsed = std::move(description);
}

std::optional<MethodRef> ApiIndex::lookup(std::string_view name, std::uint32_t arity) const {
  auto it = by_arity_.find(std::pair<std::string, std::uint32_t>(std::string(name), arity));
  if (it == by_arity_.end()) return std::nullopt;
  return MethodRef(side_, std::string(name), arity);
}

bool ApiIndex::contains(const MethodRef& method) const {
  if (method.param_types()) return entries_.count(method) > 0;
  return by_arity_.count({method.name(), method.arity()}) > 0;
}

std::string_view ApiIndex::description(const MethodRef& method) const {
  if (method.param_types()) {
    auto it = entries_.find(method);
    return it == entries_.end() ? std::string_view{} : std::string_view(it->second);
  }
  auto it = by_arity_.find(std::pair<std::string, std::uint32_t>(method.name(), method.arity()));
  return it == by_arity_.end() ? std::string_view{} : std::string_view(it->second);
}

std::vector<MethodRef> ApiIndex::collapsed_methods() const {
  std::vector<MethodRef> out;
  out.reserve(by_arity_.size());
  for (const auto& [key, _] : by_arity_) out.emplace_back(side_, key.first, key.second);
  std::sort(out.begin(), out.end());
  return out;
}

ApiIndex parse_api_catalog(std::istream& in, LibraryRef library, Side side,
                           const std::string& source_name) {
  ApiIndex index(std::move(library), side);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto fail = [&](const std::string& why) {
      throw DataError(source_name + ":" + std::to_string(lineno) + ": " + why);
    };
    auto bar = body.find('|');
    if (bar != std::string_view::npos && body.find('|', bar + 1) != std::string_view::npos) {
      fail("more than one '|' delimiter");
    }
    std::string_view sig = trim(body.substr(0, bar));
    std::string_view desc = bar == std::string_view::npos ? std::string_view{}
                                                          : trim(body.substr(bar + 1));
    if (sig.find('(') == std::string_view::npos || sig.back() != ')') {
      fail("expected a signature of the form name(Type,...)");
    }
    try {
      index.add(MethodRef::parse(sig, side), std::string(desc));
    } catch (const DataError& e) {
      fail(e.what());
    }
  }
  if (index.empty()) spdlog::warn("API catalog {} is empty", source_name);
  return index;
}

ApiIndex build_api_index(const std::filesystem::path& catalog, LibraryRef library, Side side) {
  std::ifstream in(catalog);
  if (!in) throw DataError("cannot read API catalog " + catalog.string());
  return parse_api_catalog(in, std::move(library), side, catalog.string());
}

}  // namespace migmap
