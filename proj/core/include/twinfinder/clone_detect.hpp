#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "twinfinder/ast.hpp"

namespace twinfinder {

/// Which node kinds contribute vector dimensions. Paper9 keeps the first
/// nine catalog kinds; Full keeps the whole catalog.
enum class Preset { Paper9, Full };

std::size_t preset_dimensions(Preset preset);
const char* to_string(Preset preset);

/// Occurrence counts of catalog node kinds, in catalog order restricted to
/// the preset. Counts start integral and may become real-valued after
/// feedback weighting.
struct FeatureVector {
  Preset preset = Preset::Full;
  std::vector<double> counts;
  int fragment_id = -1;

  double size() const;
  double& at(NodeKind kind);
  double at(NodeKind kind) const;
};

enum class CloneMode { Exact, Lsh };

struct CloneConfig {
  double similarity = 0.8;  // S in (0, 1]
  int min_size = 10;
  Preset preset = Preset::Full;
  CloneMode mode = CloneMode::Exact;
  int lsh_tables = 8;
  double lsh_width = 0.0;  // 0 selects a width from the threshold estimate
  std::uint64_t seed = 1;
};

struct CloneCluster {
  struct Edge {
    int a = -1;
    int b = -1;
    double distance = 0.0;
  };

  std::vector<int> members;    // fragment ids, sorted
  std::vector<Edge> pairwise;  // edges that satisfied the threshold
};

FeatureVector vectorize(const AstNode& tree, Preset preset);

/// 2*shared / (2*shared + L + R): shared is the longest common subsequence
/// of the post-order kind sequences, L and R the leftover node counts.
double tree_similarity(const AstNode& t1, const AstNode& t2);

/// sqrt(2 * (1 - S) * min(size1, size2)).
double distance_threshold(double similarity, const FeatureVector& v1, const FeatureVector& v2);

/// Throws PresetMismatch when the vectors have different dimensions.
double euclidean(const FeatureVector& v1, const FeatureVector& v2);

/// All-pairs threshold graph; clusters are its connected components with at
/// least two members, deterministically ordered.
std::vector<CloneCluster> cluster_exact(const std::vector<FeatureVector>& vectors,
                                        const CloneConfig& config);

/// Seeded p-stable random projections generate candidate pairs; every
/// candidate is re-verified against the exact threshold, so the result pair
/// set is a subset of cluster_exact's.
std::vector<CloneCluster> cluster_lsh(const std::vector<FeatureVector>& vectors,
                                      const CloneConfig& config);

std::vector<CloneCluster> cluster(const std::vector<FeatureVector>& vectors,
                                  const CloneConfig& config);

}  // namespace twinfinder
