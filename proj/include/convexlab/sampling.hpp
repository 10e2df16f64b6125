#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "convexlab/geometry.hpp"
#include "convexlab/rng.hpp"
#include "convexlab/vec2.hpp"

namespace convexlab {

// Thrown when a rejection loop exceeds its trial budget.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An n-tuple in canonical convex order together with its circumscribed
// polygon data. size_vector[j] is the cyclic index gap from contact point
// j-1 to contact point j, so the chain entering contact point j has
// size_vector[j] edges and side j carries N_j = s_j + s_{j+1} - 1 interior
// partition points.
struct ConvexConfig {
    int kappa = 0;
    int n = 0;
    std::vector<Vec2> points;
    std::vector<double> ell;
    Ecp ecp;
    std::vector<int> size_vector;
    std::vector<int> contact_index;  // position of contact point j in points
};

// Size vectors with total n and no two cyclically consecutive zeros.
bool in_n_kappa(std::span<const int> s, int n);

Vec2 uniform_in_polygon(const RegularPolygon& poly, RngStream& rng);

// True iff every input point is a strict vertex of the convex hull.
// Collinear triples count as non-convex; exact duplicates are rejected.
bool is_convex_position(std::span<const Vec2> points);

// Reorder points in convex position: start at the lowest point (ties broken
// by x), then counter-clockwise.
std::vector<Vec2> canonical_order(std::vector<Vec2> points);

struct RejectionResult {
    ConvexConfig config;
    long long trials = 0;
};

// i.i.d. uniform tuples redrawn until in convex position.
RejectionResult rejection_sample(const RegularPolygon& poly, int n, RngStream& rng,
                                 long long max_trials = 100000000LL);

// Boundary distances with density proportional to
// (P/2 - sum ell)^(2n-kappa) on the strictly feasible region: a Beta-scaled
// stick-breaking proposal accepted once feasible.
std::vector<double> sample_ell(const RegularPolygon& poly, int n, RngStream& rng);

// Size vector coupled to the normalized side lengths: two multinomials
// redrawn until N_j = s_j + s_{j+1} - 1 for every j.
std::vector<int> sample_sizes(const RegularPolygon& poly,
                              std::span<const double> c_tilde, int n, RngStream& rng,
                              long long max_trials = 1000000000LL);

// Rebuild the point tuple from boundary distances, size vector and explicit
// side partitions (partitions[j] holds the N_j interior points of side j,
// sorted ascending in (0, c_j)).
ConvexConfig assemble_from_partitions(const RegularPolygon& poly,
                                      std::span<const double> ell,
                                      std::span<const int> s,
                                      const std::vector<std::vector<double>>& partitions);

// Same, drawing the side partitions uniformly.
ConvexConfig assemble_points(const RegularPolygon& poly, std::span<const double> ell,
                             std::span<const int> s, RngStream& rng);

// General sampler: boundary distances, then size vector, then assembly.
ConvexConfig kappa_sample(const RegularPolygon& poly, int n, RngStream& rng);

// Direct sampler in the equilateral triangle (no rejection stages).
ConvexConfig triangle_sample(int n, RngStream& rng);

// Direct sampler in the unit square via paired increment lists.
ConvexConfig square_sample(int n, RngStream& rng);

// Forward encoding: recover boundary distances, circumscribed polygon,
// contact points and size vector from a convex tuple inside the polygon.
ConvexConfig ecp_of(const RegularPolygon& poly, std::vector<Vec2> points);

// Barycentric position of contact point j along side j of the ECP.
double contact_offset_fraction(const RegularPolygon& poly, const ConvexConfig& cfg,
                               int j);

}  // namespace convexlab
