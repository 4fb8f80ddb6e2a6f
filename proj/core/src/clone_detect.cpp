#include "twinfinder/clone_detect.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "twinfinder/errors.hpp"

namespace twinfinder {

std::size_t preset_dimensions(Preset preset) {
  return preset == Preset::Paper9 ? 9 : kNodeKindCount;
}

const char* to_string(Preset preset) {
  return preset == Preset::Paper9 ? "paper9" : "full";
}

double FeatureVector::size() const {
  return std::accumulate(counts.begin(), counts.end(), 0.0);
}

double& FeatureVector::at(NodeKind kind) {
  return counts.at(static_cast<std::size_t>(kind));
}

double FeatureVector::at(NodeKind kind) const {
  return counts.at(static_cast<std::size_t>(kind));
}

FeatureVector vectorize(const AstNode& tree, Preset preset) {
  FeatureVector v;
  v.preset = preset;
  v.counts.assign(preset_dimensions(preset), 0.0);
  auto count = [&](const AstNode& n, auto&& self) -> void {
    std::size_t dim = static_cast<std::size_t>(n.kind);
    if (dim < v.counts.size()) v.counts[dim] += 1.0;
    for (const AstNode& c : n.children) self(c, self);
  };
  count(tree, count);
  return v;
}

namespace {

std::size_t lcs_length(const std::vector<NodeKind>& a, const std::vector<NodeKind>& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace

double tree_similarity(const AstNode& t1, const AstNode& t2) {
  std::vector<NodeKind> s1 = post_order_kinds(t1);
  std::vector<NodeKind> s2 = post_order_kinds(t2);
  double shared = static_cast<double>(lcs_length(s1, s2));
  double left = static_cast<double>(s1.size()) - shared;
  double right = static_cast<double>(s2.size()) - shared;
  double denom = 2.0 * shared + left + right;
  return denom == 0.0 ? 0.0 : 2.0 * shared / denom;
}

double distance_threshold(double similarity, const FeatureVector& v1, const FeatureVector& v2) {
  double min_size = std::min(v1.size(), v2.size());
  return std::sqrt(2.0 * (1.0 - similarity) * min_size);
}

double euclidean(const FeatureVector& v1, const FeatureVector& v2) {
  if (v1.counts.size() != v2.counts.size()) throw PresetMismatch();
  double sum = 0.0;
  for (std::size_t i = 0; i < v1.counts.size(); ++i) {
    double d = v1.counts[i] - v2.counts[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

std::vector<CloneCluster> assemble_clusters(const std::vector<FeatureVector>& vectors,
                                            const std::vector<CloneCluster::Edge>& edges,
                                            const std::vector<std::size_t>& index_of) {
  DisjointSets sets(vectors.size());
  std::unordered_map<int, std::size_t> pos;
  for (std::size_t i = 0; i < vectors.size(); ++i) pos[vectors[i].fragment_id] = i;
  for (const auto& e : edges) sets.unite(pos.at(e.a), pos.at(e.b));

  std::map<std::size_t, CloneCluster> by_root;
  for (std::size_t i : index_of) {
    std::size_t root = sets.find(i);
    by_root[root].members.push_back(vectors[i].fragment_id);
  }
  for (const auto& e : edges) {
    std::size_t root = sets.find(pos.at(e.a));
    by_root[root].pairwise.push_back(e);
  }

  std::vector<CloneCluster> clusters;
  for (auto& [root, cluster] : by_root) {
    if (cluster.members.size() < 2) continue;
    std::sort(cluster.members.begin(), cluster.members.end());
    std::sort(cluster.pairwise.begin(), cluster.pairwise.end(),
              [](const CloneCluster::Edge& x, const CloneCluster::Edge& y) {
                return std::tie(x.a, x.b) < std::tie(y.a, y.b);
              });
    clusters.push_back(std::move(cluster));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const CloneCluster& x, const CloneCluster& y) {
              return x.members.front() < y.members.front();
            });
  return clusters;
}

std::vector<std::size_t> admitted_indices(const std::vector<FeatureVector>& vectors,
                                          const CloneConfig& config) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (vectors[i].size() >= config.min_size) idx.push_back(i);
  return idx;
}

CloneCluster::Edge make_edge(const FeatureVector& a, const FeatureVector& b, double dist) {
  if (a.fragment_id <= b.fragment_id) return {a.fragment_id, b.fragment_id, dist};
  return {b.fragment_id, a.fragment_id, dist};
}

}  // namespace

std::vector<CloneCluster> cluster_exact(const std::vector<FeatureVector>& vectors,
                                        const CloneConfig& config) {
  std::vector<std::size_t> idx = admitted_indices(vectors, config);
  std::vector<CloneCluster::Edge> edges;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      const FeatureVector& a = vectors[idx[i]];
      const FeatureVector& b = vectors[idx[j]];
      double dist = euclidean(a, b);
      if (dist <= distance_threshold(config.similarity, a, b))
        edges.push_back(make_edge(a, b, dist));
    }
  }
  return assemble_clusters(vectors, edges, idx);
}

std::vector<CloneCluster> cluster_lsh(const std::vector<FeatureVector>& vectors,
                                      const CloneConfig& config) {
  std::vector<std::size_t> idx = admitted_indices(vectors, config);
  if (idx.size() < 2) return {};

  // Bucket width: twice the median threshold keeps the per-table collision
  // probability of admissible pairs high; candidates are re-verified anyway.
  double width = config.lsh_width;
  if (width <= 0.0) {
    std::vector<double> sizes;
    sizes.reserve(idx.size());
    for (std::size_t i : idx) sizes.push_back(vectors[i].size());
    std::nth_element(sizes.begin(), sizes.begin() + sizes.size() / 2, sizes.end());
    double median_size = sizes[sizes.size() / 2];
    width = 2.0 * std::sqrt(2.0 * (1.0 - config.similarity) * median_size);
    if (width <= 0.0) width = 1.0;
  }

  const std::size_t dims = vectors[idx.front()].counts.size();
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> shift(0.0, width);

  std::set<std::pair<int, int>> seen;
  std::vector<CloneCluster::Edge> edges;
  for (int table = 0; table < std::max(1, config.lsh_tables); ++table) {
    std::vector<double> projection(dims);
    for (double& p : projection) p = gauss(rng);
    double offset = shift(rng);

    std::map<long long, std::vector<std::size_t>> buckets;
    for (std::size_t i : idx) {
      double dot = offset;
      const auto& counts = vectors[i].counts;
      for (std::size_t d = 0; d < dims; ++d) dot += projection[d] * counts[d];
      buckets[static_cast<long long>(std::floor(dot / width))].push_back(i);
    }

    for (const auto& [key, bucket] : buckets) {
      for (std::size_t i = 0; i < bucket.size(); ++i) {
        for (std::size_t j = i + 1; j < bucket.size(); ++j) {
          const FeatureVector& a = vectors[bucket[i]];
          const FeatureVector& b = vectors[bucket[j]];
          auto pair_key = std::minmax(a.fragment_id, b.fragment_id);
          if (!seen.insert({pair_key.first, pair_key.second}).second) continue;
          double dist = euclidean(a, b);
          if (dist <= distance_threshold(config.similarity, a, b))
            edges.push_back(make_edge(a, b, dist));
        }
      }
    }
  }
  return assemble_clusters(vectors, edges, idx);
}

std::vector<CloneCluster> cluster(const std::vector<FeatureVector>& vectors,
                                  const CloneConfig& config) {
  return config.mode == CloneMode::Lsh ? cluster_lsh(vectors, config)
                                       : cluster_exact(vectors, config);
}

}  // namespace twinfinder
