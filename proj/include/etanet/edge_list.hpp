#ifndef ETANET_EDGE_LIST_HPP_
#define ETANET_EDGE_LIST_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "etanet/format.hpp"
#include "etanet/graph.hpp"

namespace etanet {

// Ordered "# key=value" header lines of an edge-list file. The n= and e=
// lines are owned by the writer and never stored here.
class Metadata {
 public:
  void set(std::string key, std::string value);
  std::optional<std::string> get(std::string_view key) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct EdgeListFile {
  Graph graph;
  Metadata metadata;
};

// Text format:
//   # etanet edge list
//   # n=<vertices>
//   # e=<edges>
//   # <key>=<value>      (metadata, in insertion order)
//   <u>\t<v>             (one per edge, u < v, lexicographic order)
void write_edge_list(std::ostream& out, const Graph& g, const Metadata& metadata = {});
void write_edge_list(const std::filesystem::path& path, const Graph& g,
                     const Metadata& metadata = {});

// Inverse of write_edge_list. Also accepts files without a header, in which
// case n is one past the largest id. Throws ParseError with the 1-based line
// number on malformed input; IoError when the file cannot be opened.
EdgeListFile read_edge_list(std::istream& in);
EdgeListFile read_edge_list(const std::filesystem::path& path);

}  // namespace etanet

#endif  // ETANET_EDGE_LIST_HPP_
