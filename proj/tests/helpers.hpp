#ifndef AG_TESTS_HELPERS_HPP
#define AG_TESTS_HELPERS_HPP

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ag/graph.hpp"

namespace testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(AG_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in.good()) {
    throw std::runtime_error("missing fixture: " + fixture_path(name));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Collapse whitespace runs to single spaces: "modulo insignificant
// whitespace" comparisons.
inline std::string normalize_ws(const std::string& text) {
  std::string out;
  bool in_space = true;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!in_space) out += ' ';
      in_space = true;
    } else {
      out += c;
      in_space = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

// Random valid annotation graphs: nodes in a topological sequence with
// non-decreasing anchors, arcs only order-forward. Validity holds by
// construction.
inline ag::AnnotationGraph random_graph(std::mt19937_64& rng,
                                        std::size_t max_nodes = 60,
                                        std::size_t max_arcs = 200) {
  static const char* kTypes[] = {"W/", "Pos/", "DISF/", "T/", "X/"};
  static const char* kLabels[] = {"Metric", "system,", "uh,",   "restart",
                                  "a<b",    "q\"w",    "x&y",   "NP",
                                  "'s",     "E_S",     "[;]",   "tab\there"};
  static const char* kProv[] = {"ldc-interim", "isip", "treebank3"};

  std::uniform_int_distribution<std::size_t> node_count(2, max_nodes);
  std::size_t n = node_count(rng);
  ag::AnnotationGraph g("rand-" + std::to_string(rng() % 1000));

  std::vector<ag::NodeId> order;
  std::int64_t t = static_cast<std::int64_t>(rng() % 50);
  for (std::size_t i = 0; i < n; ++i) {
    bool anchored = rng() % 4 != 0;
    if (anchored) {
      t += static_cast<std::int64_t>(rng() % 40);
      order.push_back(g.add_node(ag::Time::from_centis(t)));
    } else {
      order.push_back(g.add_node(std::nullopt));
    }
  }
  std::uniform_int_distribution<std::size_t> arc_count(1, max_arcs);
  std::size_t m = arc_count(rng);
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t i = rng() % n;
    std::size_t j = rng() % n;
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    ag::Channel channel = rng() % 2 ? ag::Channel::A : ag::Channel::B;
    g.add_arc(order[i], order[j], kTypes[rng() % 5], kLabels[rng() % 12],
              kProv[rng() % 3],
              rng() % 3 == 0 ? std::optional<ag::Channel>(channel) : std::nullopt);
  }
  return g;
}

}  // namespace testing

#endif  // AG_TESTS_HELPERS_HPP
