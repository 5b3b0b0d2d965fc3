#include "ordrep/replicate/replicate.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ordrep {

void ReplicationConfig::validate() const {
  if (num_classes < 2) throw std::invalid_argument("replication needs K >= 2");
  if (dim < 1) throw std::invalid_argument("replication needs dim >= 1");
  if (!(h > 0.0)) throw std::invalid_argument("replication offset h must be positive");
  if (s < 1 || s > num_classes - 1) {
    throw std::invalid_argument("replication width s must be in 1..K-1 (got " + std::to_string(s) + ")");
  }
  if (j > dim) throw std::invalid_argument("constrained prefix j must be in 0..dim");
}

std::size_t ReplicationConfig::feature_block_dim() const {
  return j + (dim - j) * static_cast<std::size_t>(num_classes - 1);
}

std::pair<int, int> ReplicationConfig::boundary_range(int k) const {
  return {std::max(1, k - s), std::min(num_classes - 1, k + s - 1)};
}

int ReplicationConfig::replica_count(int k) const {
  const auto [lo, hi] = boundary_range(k);
  return std::max(0, hi - lo + 1);
}

std::size_t ReplicationConfig::free_parameter_count() const { return extended_dim(); }

void write_replica(std::span<const double> x, int q, const ReplicationConfig& config,
                   std::span<double> out) {
  if (x.size() != config.dim) throw std::invalid_argument("replica source dimension mismatch");
  if (out.size() != config.extended_dim()) throw std::invalid_argument("replica output dimension mismatch");
  if (q < 1 || q > config.num_classes - 1) throw std::out_of_range("boundary index out of range");
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t j = config.j;
  const std::size_t free_width = config.dim - j;
  std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(j), out.begin());
  const std::size_t slot = j + free_width * static_cast<std::size_t>(q - 1);
  std::copy(x.begin() + static_cast<std::ptrdiff_t>(j), x.end(),
            out.begin() + static_cast<std::ptrdiff_t>(slot));
  const std::size_t e0 = config.feature_block_dim();
  if (q >= 2) {
    if (config.cumulative_e) {
      for (int t = 0; t < q - 1; ++t) out[e0 + static_cast<std::size_t>(t)] = config.h;
    } else {
      out[e0 + static_cast<std::size_t>(q - 2)] = config.h;
    }
  }
}

std::vector<double> e_block(int q, const ReplicationConfig& config) {
  std::vector<double> out(config.e_block_dim(), 0.0);
  if (q >= 2) {
    if (config.cumulative_e) {
      for (int t = 0; t < q - 1; ++t) out[static_cast<std::size_t>(t)] = config.h;
    } else {
      out[static_cast<std::size_t>(q - 2)] = config.h;
    }
  }
  return out;
}

ExtendedDataset replicate(const Dataset& data, const ReplicationConfig& config) {
  config.validate();
  if (data.num_classes() != config.num_classes) {
    throw std::invalid_argument("dataset class count does not match replication config");
  }
  if (data.dim() != config.dim) {
    throw std::invalid_argument("dataset dimension does not match replication config");
  }
  std::size_t total = 0;
  for (std::size_t i = 0; i < data.size(); ++i) total += static_cast<std::size_t>(config.replica_count(data.label(i)));

  ExtendedDataset out;
  out.config = config;
  out.features = Matrix(total, config.extended_dim());
  out.labels.reserve(total);
  out.subspace.reserve(total);
  out.origin.reserve(total);
  std::size_t r = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const int k = data.label(i);
    const auto [lo, hi] = config.boundary_range(k);
    for (int q = lo; q <= hi; ++q, ++r) {
      write_replica(data.row(i), q, config, out.features.row(r));
      out.labels.push_back(k <= q ? BinaryLabel::lower : BinaryLabel::upper);
      out.subspace.push_back(q);
      out.origin.push_back(i);
    }
  }
  return out;
}

Matrix make_query_replicas(std::span<const double> x, const ReplicationConfig& config) {
  config.validate();
  Matrix out(static_cast<std::size_t>(config.num_classes - 1), config.extended_dim());
  for (int q = 1; q <= config.num_classes - 1; ++q) {
    write_replica(x, q, config, out.row(static_cast<std::size_t>(q - 1)));
  }
  return out;
}

int decode(std::span<const BinaryLabel> sequence, int num_classes) {
  if (sequence.size() != static_cast<std::size_t>(num_classes - 1)) {
    throw std::invalid_argument("decode: sequence length must be K-1");
  }
  return 1 + static_cast<int>(std::count(sequence.begin(), sequence.end(), BinaryLabel::upper));
}

}  // namespace ordrep
