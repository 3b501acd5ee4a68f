#include "migmap/method_ref.hpp"

#include <cctype>
#include <charconv>
#include <functional>

#include "migmap/errors.hpp"

namespace migmap {
namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_identifier(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s) {
    if (!is_ident_char(c)) return false;
  }
  return true;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Splits a parameter list on commas that are not nested inside generics.
std::vector<std::string> split_params(std::string_view list) {
  std::vector<std::string> out;
  if (trim(list).empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < list.size(); ++i) {
    char c = list[i];
    if (c == '<') ++depth;
    else if (c == '>') --depth;
    else if (c == ',' && depth == 0) {
      out.push_back(trim(list.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(list.substr(start)));
  return out;
}

}  // namespace

std::string_view to_string(Side side) {
  return side == Side::Source ? "source" : "target";
}

MethodRef::MethodRef(Side side, std::string name, std::uint32_t arity)
    : side_(side), name_(std::move(name)), arity_(arity) {
  encoding_ = name_ + "/" + std::to_string(arity_);
}

MethodRef::MethodRef(Side side, std::string name, std::vector<std::string> param_types)
    : side_(side),
      name_(std::move(name)),
      arity_(static_cast<std::uint32_t>(param_types.size())),
      param_types_(std::move(param_types)) {
  encoding_ = name_ + "(";
  for (std::size_t i = 0; i < param_types_->size(); ++i) {
    if (i) encoding_ += ',';
    encoding_ += (*param_types_)[i];
  }
  encoding_ += ')';
}

MethodRef MethodRef::parse(std::string_view text, Side side) {
  const std::string s = trim(text);
  if (auto slash = s.rfind('/'); slash != std::string::npos && s.find('(') == std::string::npos) {
    std::string name = s.substr(0, slash);
    std::string_view digits = std::string_view(s).substr(slash + 1);
    std::uint32_t arity = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), arity);
    if (!is_identifier(name) || digits.empty() || ec != std::errc() ||
        ptr != digits.data() + digits.size()) {
      throw DataError("malformed method encoding '" + s + "'");
    }
    return {side, std::move(name), arity};
  }
  auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') {
    throw DataError("malformed method encoding '" + s + "'");
  }
  std::string name = s.substr(0, open);
  if (!is_identifier(name)) throw DataError("malformed method encoding '" + s + "'");
  auto params = split_params(std::string_view(s).substr(open + 1, s.size() - open - 2));
  for (const auto& p : params) {
    if (p.empty()) throw DataError("empty parameter type in '" + s + "'");
  }
  return {side, std::move(name), std::move(params)};
}

std::size_t MethodRefHash::operator()(const MethodRef& m) const noexcept {
  return std::hash<std::string>{}(m.encoding()) * 31 + static_cast<std::size_t>(m.side());
}

std::vector<std::string> split_identifier(std::string_view id) {
  std::vector<std::string> parts;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      for (auto& c : cur) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      parts.push_back(std::move(cur));
      cur.clear();
    }
  };
  for (std::size_t i = 0; i < id.size(); ++i) {
    const auto c = static_cast<unsigned char>(id[i]);
    if (!std::isalnum(c)) {
      flush();
      continue;
    }
    if (!cur.empty()) {
      const auto prev = static_cast<unsigned char>(cur.back());
      const bool next_lower =
          i + 1 < id.size() && std::islower(static_cast<unsigned char>(id[i + 1]));
      if ((std::islower(prev) && std::isupper(c)) ||
          (std::isupper(prev) && std::isupper(c) && next_lower) ||
          (std::isdigit(prev) != 0) != (std::isdigit(c) != 0)) {
        flush();
      }
    }
    cur.push_back(static_cast<char>(c));
  }
  flush();
  return parts;
}

}  // namespace migmap
