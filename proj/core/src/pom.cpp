#include "migmap/pom.hpp"

#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "migmap/errors.hpp"

namespace migmap {
namespace {

namespace pt = boost::property_tree;

std::string text_of(const pt::ptree& node, const char* child) {
  auto v = node.get_optional<std::string>(child);
  if (!v) return {};
  std::string s = *v;
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

void collect(const pt::ptree& dependencies, std::vector<LibraryRef>& out) {
  for (const auto& [tag, dep] : dependencies) {
    if (tag != "dependency") continue;
    LibraryRef lib;
    lib.group_id = text_of(dep, "groupId");
    lib.artifact_id = text_of(dep, "artifactId");
    lib.version = text_of(dep, "version");
    if (lib.group_id.empty() || lib.artifact_id.empty()) {
      throw DataError("dependency without groupId/artifactId");
    }
    out.push_back(std::move(lib));
  }
}

}  // namespace

std::vector<LibraryRef> parse_pom_dependencies(std::string_view xml) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser_error& e) {
    throw DataError(std::string("malformed pom.xml: ") + e.message() + " at line " +
                    std::to_string(e.line()));
  }
  auto project = tree.get_child_optional("project");
  if (!project) throw DataError("malformed pom.xml: missing <project> root");

  std::vector<LibraryRef> out;
  if (auto deps = project->get_child_optional("dependencies")) collect(*deps, out);
  if (auto deps = project->get_child_optional("dependencyManagement.dependencies")) {
    collect(*deps, out);
  }
  return out;
}

bool is_manifest_path(std::string_view path) {
  constexpr std::string_view kName = "pom.xml";
  if (path.size() < kName.size()) return false;
  if (path.substr(path.size() - kName.size()) != kName) return false;
  return path.size() == kName.size() || path[path.size() - kName.size() - 1] == '/';
}

}  // namespace migmap
