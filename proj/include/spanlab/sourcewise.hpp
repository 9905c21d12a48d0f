#pragma once

#include <cstdint>

#include "spanlab/clustering.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/spanner.hpp"

namespace spanlab {

/// mu = epsilon/k drives the clustering; ell_k = 2k^2 + 3k is the length of
/// the source-to-center suffix kept in the second phase.
struct SwParams {
  int k = 0;
  double epsilon = 0.0;
  double mu = 0.0;
  int ell_k = 0;
};

SwParams sw_params(int k, const SourceSet& sources, Vertex n);

struct SourcewiseResult {
  Spanner spanner;
  SwParams params;
  ClusterSequence clusters;
};

/// Sourcewise spanner with stretch 2k-1 on S×V edges and 2k-2 on every
/// other connected S×V pair.
SourcewiseResult build_sourcewise_mult(const Graph& g, const SourceSet& sources, int k, std::uint64_t seed);

}  // namespace spanlab
