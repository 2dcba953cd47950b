#include "etanet/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "etanet/error.hpp"

namespace etanet {
namespace {

constexpr std::string_view kBanner = "etanet edge list";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

}  // namespace

void Metadata::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> Metadata::get(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void write_edge_list(std::ostream& out, const Graph& g, const Metadata& metadata) {
  out << "# " << kBanner << '\n';
  out << "# n=" << g.num_vertices() << '\n';
  out << "# e=" << g.num_edges() << '\n';
  for (const auto& [key, value] : metadata.entries()) out << "# " << key << '=' << value << '\n';
  for (const Edge& e : g.sorted_edges()) out << e.u << '\t' << e.v << '\n';
}

void write_edge_list(const std::filesystem::path& path, const Graph& g, const Metadata& metadata) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_edge_list(out, g, metadata);
  if (!out) throw IoError("write failed: " + path.string());
}

EdgeListFile read_edge_list(std::istream& in) {
  EdgeListFile file;
  std::optional<std::uint64_t> declared_n;
  std::optional<std::uint64_t> declared_e;
  std::size_t e_line = 0;
  std::vector<std::pair<Edge, std::size_t>> edges;  // edge, source line
  std::uint64_t max_id = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      text = trim(text.substr(1));
      const auto eq = text.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string key(trim(text.substr(0, eq)));
      const std::string_view value = trim(text.substr(eq + 1));
      if (key == "n" || key == "e") {
        const auto parsed = parse_uint(value);
        if (!parsed) throw ParseError("bad header value for " + key, line_no);
        (key == "n" ? declared_n : declared_e) = parsed;
        if (key == "e") e_line = line_no;
      } else {
        file.metadata.set(key, std::string(value));
      }
      continue;
    }

    const auto sep = text.find_first_of(" \t");
    if (sep == std::string_view::npos) throw ParseError("expected two vertex ids", line_no);
    const auto u = parse_uint(text.substr(0, sep));
    const auto v = parse_uint(trim(text.substr(sep + 1)));
    if (!u || !v) throw ParseError("expected two non-negative integer vertex ids", line_no);
    if (*u > UINT32_MAX - 1 || *v > UINT32_MAX - 1) throw ParseError("vertex id too large", line_no);
    if (*u == *v) throw ParseError("self-loop " + std::to_string(*u), line_no);
    if (declared_n && std::max(*u, *v) >= *declared_n) {
      throw ParseError("vertex id exceeds declared n=" + std::to_string(*declared_n), line_no);
    }
    max_id = std::max({max_id, *u, *v});
    edges.push_back({{static_cast<VertexId>(*u), static_cast<VertexId>(*v)}, line_no});
  }

  const std::uint64_t n = declared_n ? *declared_n : (edges.empty() ? 0 : max_id + 1);
  file.graph = Graph(n);
  file.graph.reserve(n, edges.size());
  for (const auto& [e, at_line] : edges) {
    if (!file.graph.add_edge(e.u, e.v)) {
      throw ParseError("duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v),
                       at_line);
    }
  }
  if (declared_e && *declared_e != file.graph.num_edges()) {
    throw ParseError("header declares e=" + std::to_string(*declared_e) + " but file has " +
                         std::to_string(file.graph.num_edges()) + " edges",
                     e_line);
  }
  return file;
}

EdgeListFile read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_edge_list(in);
}

}  // namespace etanet
