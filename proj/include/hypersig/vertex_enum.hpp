#pragma once

#include "hypersig/lp.hpp"

#include <stdexcept>
#include <vector>

namespace hypersig {

/// Raised when vertex enumeration is asked for an unbounded polyhedron.
/// `ray` is a recession direction in the ambient space.
class UnboundedPolytope : public std::runtime_error {
public:
    explicit UnboundedPolytope(RatVector direction)
        : std::runtime_error("enumerate_vertices: polyhedron is unbounded"),
          ray(std::move(direction)) {}
    RatVector ray;
};

/// Exact vertex enumeration by the double description method.
///
/// Equalities are eliminated first, the remaining system is homogenized and
/// inequalities are inserted in normal-vector lexicographic order, so the
/// output is reproducible. Vertices are returned sorted lexicographically,
/// duplicate-free. An empty polyhedron yields an empty list; an unbounded one
/// throws UnboundedPolytope (no partial output).
std::vector<RatVector> enumerate_vertices(const HPolytope& h);

}  // namespace hypersig
