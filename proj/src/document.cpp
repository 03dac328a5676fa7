#include "bnet/document.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace bnet {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what, 0, 0);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) schema_error(where, "unknown key '" + key + "'");
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing key '") + key + "'");
  if (!it->is_string()) schema_error(where, std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> string_list(const json& value, const std::string& where) {
  if (!value.is_array()) schema_error(where, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : value) {
    if (!item.is_string()) schema_error(where, "expected an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<double> number_list(const json& value, const std::string& where) {
  if (!value.is_array()) schema_error(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_number()) schema_error(where, "expected an array of numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

std::string quoted(const std::string& s) { return json(s).dump(); }

}  // namespace

BeliefNetwork parse_network(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the offset one past the offending character.
    auto [line, column] = locate(document, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }

  if (!doc.is_object()) schema_error("document", "top level must be an object");
  reject_unknown_keys(doc, {"name", "nodes", "layout"}, "document");

  BeliefNetwork net;
  net.name = require_string(doc, "name", "document");
  auto nodes = doc.find("nodes");
  if (nodes == doc.end()) schema_error("document", "missing key 'nodes'");
  if (!nodes->is_array()) schema_error("document", "'nodes' must be an array");

  for (std::size_t i = 0; i < nodes->size(); ++i) {
    const json& node = (*nodes)[i];
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!node.is_object()) schema_error(where, "node must be an object");
    reject_unknown_keys(node, {"id", "label", "values", "parents", "cpt"}, where);

    Variable var;
    var.id = require_string(node, "id", where);
    var.label = node.contains("label") ? require_string(node, "label", where) : var.id;
    if (!node.contains("values")) schema_error(where, "missing key 'values'");
    var.values = string_list(node.at("values"), where + ".values");

    std::vector<std::string> parents;
    if (node.contains("parents")) parents = string_list(node.at("parents"), where + ".parents");
    if (!node.contains("cpt")) schema_error(where, "missing key 'cpt'");
    auto table = number_list(node.at("cpt"), where + ".cpt");

    net.add(std::move(var), std::move(parents), std::move(table));
  }

  if (auto layout = doc.find("layout"); layout != doc.end() && !layout->is_null()) {
    if (!layout->is_object()) schema_error("document", "'layout' must be an object");
    net.layout = layout->dump();
  }

  require_valid(net);
  return net;
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "0";
  return std::string(buf, end);
}

std::string serialize_network(const BeliefNetwork& net) {
  std::string out = "{\n  \"name\": " + quoted(net.name) + ",\n  \"nodes\": [";
  for (std::size_t i = 0; i < net.variables.size(); ++i) {
    const auto& var = net.variables[i];
    const auto& cpt = net.cpts[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"id\": " + quoted(var.id) + ", \"label\": " + quoted(var.label) +
           ", \"values\": [";
    for (std::size_t k = 0; k < var.values.size(); ++k)
      out += (k ? ", " : "") + quoted(var.values[k]);
    out += "], \"parents\": [";
    for (std::size_t k = 0; k < cpt.parents.size(); ++k)
      out += (k ? ", " : "") + quoted(cpt.parents[k]);
    out += "], \"cpt\": [";
    for (std::size_t k = 0; k < cpt.table.size(); ++k)
      out += (k ? ", " : "") + format_double(cpt.table[k]);
    out += "]}";
  }
  out += net.variables.empty() ? "]" : "\n  ]";
  if (!net.layout.empty()) out += ",\n  \"layout\": " + net.layout;
  out += "\n}\n";
  return out;
}

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string network_to_dot(const BeliefNetwork& net) {
  std::ostringstream out;
  out << "digraph " << dot_quote(net.name.empty() ? "network" : net.name) << " {\n";
  for (const auto& var : net.variables)
    out << "  " << dot_quote(var.id) << " [label=" << dot_quote(var.label) << "];\n";
  for (const auto& cpt : net.cpts)
    for (const auto& p : cpt.parents)
      out << "  " << dot_quote(p) << " -> " << dot_quote(cpt.child) << ";\n";
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

BeliefNetwork load_network(const std::string& path) { return parse_network(read_file(path)); }

}  // namespace bnet
