#pragma once

#include <random>
#include <vector>

#include "pscub/oracle.hpp"
#include "pscub/polymer.hpp"
#include "pscub/schemes.hpp"

namespace pscub {

using Rng = std::mt19937_64;

// Random connected system on n polymers: random spanning tree plus extra edges
// with probability p.
PolymerSystem random_connected_system(Rng& rng, int n, double p = 0.35);
// Random connected cluster of length in [1, max_len] over the system's labels.
Cluster random_cluster(Rng& rng, const PolymerSystem& sys, int max_len);
PairBehaviour random_pair_behaviour(Rng& rng, const PolymerSystem& sys);
FugacityVector random_vector(Rng& rng, int n, double lo, double hi);

}  // namespace pscub
