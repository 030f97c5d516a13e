#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>

#include "mesh.hpp"

namespace stls {

// Random conforming spatial mesh: jittered interval partition (d = 1) or a
// rectangle mesh with jittered interior vertices (d = 2).
SpatialMesh random_spatial_mesh(int d, std::mt19937_64& rng);

// Random strictly increasing time partition of (0, 1).
TimePartition random_time_partition(std::mt19937_64& rng, int max_slabs = 4);

// Random tensor-product space-time mesh, optionally with one random-marked
// refinement round, regenerated until the coupled system has at most
// max_unknowns unknowns.
SpaceTimeMesh random_space_time_mesh(int d, std::mt19937_64& rng, int max_unknowns,
                                     bool allow_bisection = true);

struct SelfCheckOptions {
  std::uint64_t seed = 1;
  int threads = 1;
};

// Runs the internal consistency suites (quadrature exactness, refinement
// admissibility, system symmetry/definiteness, iterative vs direct solve,
// least-squares identity, projection orthogonality).  Prints one line per
// suite; returns the number of failed suites.
int run_self_check(std::ostream& os, const SelfCheckOptions& opt = {});

}  // namespace stls
