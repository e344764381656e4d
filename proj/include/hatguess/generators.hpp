#pragma once

#include <cstdint>

#include "hatguess/graph.hpp"
#include "hatguess/layered.hpp"
#include "hatguess/outerplane.hpp"
#include "hatguess/rotation.hpp"

namespace hatguess {

// Deterministic families. All throw ContractError on nonsensical sizes.
Graph path_graph(int n);
Graph cycle_graph(int n);    // n >= 3
Graph complete_graph(int n);
Graph star_graph(int n);     // vertex 0 joined to 1..n-1
Graph petal_graph(int n);    // stem 0 joined to the path 1..n-1

// Random families; identical seeds give identical outputs on every platform.
Graph random_tree(int n, std::uint64_t seed);
Graph random_gnp(int n, double p, std::uint64_t seed);
// Uniformly random triangulation of an n-gon, with randomly permuted vertex labels.
OuterplaneGraph random_maximal_outerplanar(int n, std::uint64_t seed);
// random_maximal_outerplanar with each chord kept independently with probability keep.
OuterplaneGraph random_outerplanar(int n, double keep, std::uint64_t seed);
// Petal pieces glued at single vertices, then random edge deletion.
Graph random_petunia(int n, std::uint64_t seed);
// `level_count` nested levels; each level has between 3 and max_level_size vertices.
LayeredPlanarGraph random_layered(int level_count, int max_level_size, std::uint64_t seed);

// Stacked planar triangulation (repeated face subdivision) with its planar rotation.
RotationSystem random_planar_triangulation(int n, std::uint64_t seed);
// Uniformly random rotation at every vertex (arbitrary orientable genus).
RotationSystem random_rotation(const Graph& g, std::uint64_t seed);
// C_rows x C_cols on the torus; vertex (i, j) is i * cols + j, rotation E, N, W, S.
RotationSystem torus_grid(int rows, int cols);
// K5 embedded on the torus (least rotation system, in lexicographic order, with five faces).
RotationSystem toroidal_k5();

}  // namespace hatguess
