#include "gcngeom/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "gcngeom/error.hpp"

namespace gcngeom {

double Graph::max_degree() const {
  return degrees_.empty() ? 0.0 : *std::max_element(degrees_.begin(), degrees_.end());
}

double Graph::weight(NodeId u, NodeId v) const {
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return 0.0;
  return weights(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

std::vector<WeightedEdge> Graph::edge_list() const {
  std::vector<WeightedEdge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    auto nbrs = neighbors(u);
    auto ws = weights(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      if (u < nbrs[k]) out.push_back({u, nbrs[k], ws[k]});
  }
  return out;
}

Matrix Graph::to_dense() const {
  Matrix a(num_nodes(), num_nodes());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    auto nbrs = neighbors(u);
    auto ws = weights(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k) a(u, nbrs[k]) = ws[k];
  }
  return a;
}

Graph build_graph(std::size_t num_nodes, std::span<const WeightedEdge> edges) {
  struct Entry {
    NodeId u, v;
    double w;
    std::size_t order;
  };
  std::vector<Entry> entries;
  entries.reserve(edges.size() * 2);
  std::size_t order = 0;
  for (const auto& e : edges) {
    if (e.u >= num_nodes || e.v >= num_nodes)
      throw ValidationError("build_graph: edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            ") out of range for " + std::to_string(num_nodes) + " nodes");
    if (e.u == e.v) throw ValidationError("build_graph: self-loop at node " + std::to_string(e.u));
    if (!(e.w >= 0.0) || !std::isfinite(e.w))
      throw ValidationError("build_graph: invalid weight on edge (" + std::to_string(e.u) + ", " +
                            std::to_string(e.v) + ")");
    entries.push_back({e.u, e.v, e.w, order});
    entries.push_back({e.v, e.u, e.w, order});
    ++order;
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.order < b.order;
  });
  auto last = std::unique(entries.begin(), entries.end(),
                          [](const Entry& a, const Entry& b) { return a.u == b.u && a.v == b.v; });
  entries.erase(last, entries.end());

  Graph g;
  g.row_offsets_.assign(num_nodes + 1, 0);
  g.degrees_.assign(num_nodes, 0.0);
  g.col_indices_.reserve(entries.size());
  g.edge_weights_.reserve(entries.size());
  for (const auto& e : entries) {
    g.row_offsets_[e.u + 1]++;
    g.col_indices_.push_back(e.v);
    g.edge_weights_.push_back(e.w);
    g.degrees_[e.u] += e.w;
  }
  std::partial_sum(g.row_offsets_.begin(), g.row_offsets_.end(), g.row_offsets_.begin());
  return g;
}

Graph build_graph(std::size_t num_nodes, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  std::vector<WeightedEdge> weighted;
  weighted.reserve(edges.size());
  for (auto [u, v] : edges) weighted.push_back({u, v, 1.0});
  return build_graph(num_nodes, weighted);
}

void validate_bundle(const DatasetBundle& b) {
  const std::size_t n = b.graph.num_nodes();
  if (b.features.rows() != n)
    throw ValidationError("dataset '" + b.name + "': feature rows " + std::to_string(b.features.rows()) +
                          " != num_nodes " + std::to_string(n));
  if (b.labels.size() != n) throw ValidationError("dataset '" + b.name + "': label count != num_nodes");
  for (std::size_t i = 0; i < n; ++i)
    if (b.labels[i] < 0 || b.labels[i] >= b.num_classes)
      throw ValidationError("dataset '" + b.name + "': label " + std::to_string(b.labels[i]) + " of node " +
                            std::to_string(i) + " outside [0, " + std::to_string(b.num_classes) + ")");
  if (!b.features.all_finite()) throw ValidationError("dataset '" + b.name + "': non-finite feature");
  if (b.split) {
    std::vector<char> seen(n, 0);
    for (auto id : b.split->train_ids) {
      if (id >= n) throw ValidationError("split: train id out of range");
      seen[id] = 1;
    }
    for (auto id : b.split->test_ids) {
      if (id >= n) throw ValidationError("split: test id out of range");
      if (seen[id] == 1) throw ValidationError("split: node " + std::to_string(id) + " in train and test");
    }
  }
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  return in;
}

template <typename T>
T parse_number(std::string_view token, const std::filesystem::path& file, std::size_t line) {
  T value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' || last[-1] == '\r')) --last;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ValidationError(file.filename().string() + ":" + std::to_string(line) + ": cannot parse '" +
                          std::string(token) + "'");
  return value;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

DatasetBundle load_dataset(const std::filesystem::path& dir) {
  for (const char* required : {"manifest.json", "edges.tsv", "features.csv", "labels.tsv"})
    if (!std::filesystem::exists(dir / required))
      throw LoadError("dataset " + dir.string() + ": missing " + required);

  nlohmann::json manifest;
  try {
    auto in = open_input(dir / "manifest.json");
    manifest = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError("manifest.json: " + std::string(e.what()));
  }
  DatasetBundle b;
  std::size_t num_nodes = 0, num_features = 0;
  try {
    b.name = manifest.value("name", dir.filename().string());
    num_nodes = manifest.at("num_nodes").get<std::size_t>();
    num_features = manifest.at("num_features").get<std::size_t>();
    b.num_classes = manifest.at("num_classes").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("manifest.json: " + std::string(e.what()));
  }

  std::vector<WeightedEdge> edges;
  {
    auto in = open_input(dir / "edges.tsv");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto fields = split_whitespace(line);
      if (fields.empty() || fields[0].front() == '#') continue;
      if (fields.size() != 2 && fields.size() != 3)
        throw ValidationError("edges.tsv:" + std::to_string(lineno) + ": expected 2 or 3 columns");
      auto u = parse_number<long long>(fields[0], "edges.tsv", lineno);
      auto v = parse_number<long long>(fields[1], "edges.tsv", lineno);
      if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= num_nodes || static_cast<std::size_t>(v) >= num_nodes)
        throw ValidationError("edges.tsv:" + std::to_string(lineno) + ": node index exceeds manifest num_nodes");
      double w = fields.size() == 3 ? parse_number<double>(fields[2], "edges.tsv", lineno) : 1.0;
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
    }
  }
  b.graph = build_graph(num_nodes, edges);

  {
    auto in = open_input(dir / "features.csv");
    std::vector<double> values;
    values.reserve(num_nodes * num_features);
    std::string line;
    std::size_t lineno = 0, rows = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line == "\r") continue;
      auto fields = split_fields(line, ',');
      if (fields.size() != num_features)
        throw ValidationError("features.csv:" + std::to_string(lineno) + ": " + std::to_string(fields.size()) +
                              " columns, manifest says " + std::to_string(num_features));
      for (auto f : fields) values.push_back(parse_number<double>(f, "features.csv", lineno));
      ++rows;
    }
    if (rows != num_nodes)
      throw ValidationError("features.csv: " + std::to_string(rows) + " rows, manifest says " +
                            std::to_string(num_nodes));
    b.features = Matrix(num_nodes, num_features, std::move(values));
  }

  {
    auto in = open_input(dir / "labels.tsv");
    b.labels.assign(num_nodes, -1);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto fields = split_whitespace(line);
      if (fields.empty()) continue;
      if (fields.size() != 2) throw ValidationError("labels.tsv:" + std::to_string(lineno) + ": expected 2 columns");
      auto node = parse_number<long long>(fields[0], "labels.tsv", lineno);
      auto cls = parse_number<int>(fields[1], "labels.tsv", lineno);
      if (node < 0 || static_cast<std::size_t>(node) >= num_nodes)
        throw ValidationError("labels.tsv:" + std::to_string(lineno) + ": node out of range");
      if (cls < 0 || cls >= b.num_classes)
        throw ValidationError("labels.tsv:" + std::to_string(lineno) + ": class " + std::to_string(cls) +
                              " outside [0, " + std::to_string(b.num_classes) + ")");
      b.labels[node] = cls;
    }
    for (std::size_t i = 0; i < num_nodes; ++i)
      if (b.labels[i] < 0) throw ValidationError("labels.tsv: node " + std::to_string(i) + " has no label");
  }

  if (std::filesystem::exists(dir / "splits.json")) {
    try {
      auto in = open_input(dir / "splits.json");
      auto js = nlohmann::json::parse(in);
      SplitSpec split;
      split.train_ids = js.at("train").get<std::vector<NodeId>>();
      split.test_ids = js.at("test").get<std::vector<NodeId>>();
      b.split = std::move(split);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError("splits.json: " + std::string(e.what()));
    }
  }
  validate_bundle(b);
  return b;
}

void save_dataset(const DatasetBundle& b, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name);
    if (!out) throw LoadError("cannot write " + (dir / name).string());
    return out;
  };
  {
    nlohmann::json m = {{"name", b.name},
                        {"num_nodes", b.graph.num_nodes()},
                        {"num_features", b.features.cols()},
                        {"num_classes", b.num_classes}};
    open("manifest.json") << m.dump(2) << "\n";
  }
  {
    auto out = open("edges.tsv");
    for (const auto& e : b.graph.edge_list()) {
      out << e.u << '\t' << e.v;
      if (e.w != 1.0) out << '\t' << e.w;
      out << '\n';
    }
  }
  {
    auto out = open("features.csv");
    out.precision(17);
    for (std::size_t r = 0; r < b.features.rows(); ++r) {
      auto row = b.features.row(r);
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << '\n';
    }
  }
  {
    auto out = open("labels.tsv");
    for (std::size_t i = 0; i < b.labels.size(); ++i) out << i << '\t' << b.labels[i] << '\n';
  }
  if (b.split) {
    nlohmann::json s = {{"train", b.split->train_ids}, {"test", b.split->test_ids}};
    open("splits.json") << s.dump() << "\n";
  }
}

double edge_homophily(const Graph& graph, std::span<const int> labels) {
  if (labels.size() != graph.num_nodes()) throw ValidationError("edge_homophily: label count != num_nodes");
  if (graph.num_edges() == 0) throw ValidationError("edge_homophily: graph has no edges");
  std::size_t same = 0;
  for (const auto& e : graph.edge_list())
    if (labels[e.u] == labels[e.v]) ++same;
  return static_cast<double>(same) / static_cast<double>(graph.num_edges());
}

std::vector<std::int32_t> bfs_hops(const Graph& graph, NodeId source) {
  std::vector<std::int32_t> dist(graph.num_nodes(), kUnreachable);
  std::vector<NodeId> queue;
  queue.reserve(graph.num_nodes());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    for (NodeId v : graph.neighbors(u)) {
      if (dist[v] != kUnreachable) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

HopMatrix shortest_path_hops(const Graph& graph) {
  const std::size_t n = graph.num_nodes();
  HopMatrix hops(n);
  for (NodeId s = 0; s < n; ++s) {
    auto d = bfs_hops(graph, s);
    for (std::size_t t = 0; t < n; ++t) hops(s, t) = d[t];
  }
  return hops;
}

bool is_connected(const Graph& graph) {
  if (graph.num_nodes() == 0) return true;
  auto d = bfs_hops(graph, 0);
  return std::none_of(d.begin(), d.end(), [](auto h) { return h == kUnreachable; });
}

SplitSpec random_split(std::size_t num_nodes, std::size_t train_count, std::uint64_t seed) {
  if (train_count >= num_nodes)
    throw ValidationError("random_split: train_count " + std::to_string(train_count) + " >= num_nodes " +
                          std::to_string(num_nodes));
  std::vector<NodeId> ids(num_nodes);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  SplitSpec split;
  split.train_ids.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(train_count));
  split.test_ids.assign(ids.begin() + static_cast<std::ptrdiff_t>(train_count), ids.end());
  std::sort(split.train_ids.begin(), split.train_ids.end());
  std::sort(split.test_ids.begin(), split.test_ids.end());
  return split;
}

}  // namespace gcngeom
