#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ordrep/core/dataset.hpp"
#include "ordrep/core/matrix.hpp"

namespace ordrep {

// Label of a replica in the extended binary problem. `lower` (C̄1) means the
// origin class lies at or below the replica's boundary.
enum class BinaryLabel : int { lower = -1, upper = +1 };

inline double sign_of(BinaryLabel b) { return static_cast<double>(static_cast<int>(b)); }

// Parameters of the data-replication transform.
//
//   h  offset written into the appended e-block
//   s  boundary neighbourhood: boundary q sees classes max(1, q-s+1)..min(K, q+s)
//   j  leading features sharing one direction across all boundaries;
//      j == dim gives parallel boundaries, j == 0 independent ones
//
// With `cumulative_e` the e-block for subspace q holds q-1 leading h's
// instead of a single h at position q-1; only the bias regularizer changes.
struct ReplicationConfig {
  int num_classes = 2;
  std::size_t dim = 1;
  double h = 1.0;
  int s = 1;
  std::size_t j = 1;
  bool cumulative_e = false;

  // Basic method: all features constrained (j = dim).
  static ReplicationConfig parallel(int num_classes, std::size_t dim, double h, int s) {
    return {num_classes, dim, h, s, dim, false};
  }

  void validate() const;

  // Width of the feature block: j + (dim - j)(K - 1).
  std::size_t feature_block_dim() const;
  // Width of the e-block: K - 2.
  std::size_t e_block_dim() const { return static_cast<std::size_t>(num_classes - 2); }
  // Total extended dimension D.
  std::size_t extended_dim() const { return feature_block_dim() + e_block_dim(); }

  // Boundaries q (inclusive range) that receive a replica of a class-k example.
  std::pair<int, int> boundary_range(int k) const;
  int replica_count(int k) const;

  // Free parameters of a linear model on the extension (weights + bias,
  // less one for the overall scale).
  std::size_t free_parameter_count() const;
};

struct ExtendedDataset {
  Matrix features;                  // m x D
  std::vector<BinaryLabel> labels;  // per replica
  std::vector<int> subspace;        // boundary q in 1..K-1
  std::vector<std::size_t> origin;  // source example index
  ReplicationConfig config;

  std::size_t size() const { return labels.size(); }
  std::size_t feature_block_dim() const { return config.feature_block_dim(); }
};

ExtendedDataset replicate(const Dataset& data, const ReplicationConfig& config);

// Writes the subspace-q replica of x into out (length D).
void write_replica(std::span<const double> x, int q, const ReplicationConfig& config,
                   std::span<double> out);

// The e-block of subspace q (length K-2).
std::vector<double> e_block(int q, const ReplicationConfig& config);

// The K-1 query replicas of x, one row per boundary.
Matrix make_query_replicas(std::span<const double> x, const ReplicationConfig& config);

// Class = 1 + number of `upper` labels; applied as-is to non-monotone sequences.
int decode(std::span<const BinaryLabel> sequence, int num_classes);

}  // namespace ordrep
