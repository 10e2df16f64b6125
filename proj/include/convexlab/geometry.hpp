#pragma once

#include <optional>
#include <span>
#include <vector>

#include "convexlab/vec2.hpp"

namespace convexlab {

// Regular kappa-gon with unit area, first side on the positive X-axis and
// vertex 0 at the origin, vertices counter-clockwise. Side j runs from
// vertices[j] to vertices[(j+1) % kappa].
struct RegularPolygon {
    int kappa = 0;
    double r = 0.0;        // side length for area 1
    double theta = 0.0;    // interior angle (kappa-2) pi / kappa
    double m_const = 0.0;  // (1 + cos theta) / sin theta
    double p_const = 0.0;  // kappa * r / m_const
    std::vector<Vec2> vertices;
    std::vector<Vec2> midpoints;

    int wrap(int j) const {
        j %= kappa;
        return j < 0 ? j + kappa : j;
    }
    Vec2 side_dir(int j) const;        // unit direction of side j
    Vec2 inward_normal(int j) const;   // unit normal pointing into the polygon
    // Signed distance of p from the line supporting side j (positive inside).
    double side_distance(int j, Vec2 p) const;
    bool contains(Vec2 p, double tol = 0.0) const;
};

RegularPolygon make_polygon(int kappa);

using BoundaryDistances = std::vector<double>;

// Equiangular polygon circumscribed to a point set, sides parallel to the
// host polygon. corner[j] is the intersection of its sides j and j+1, so
// side j runs from corner[j-1] to corner[j] and has length side_len[j].
struct Ecp {
    std::vector<double> side_len;
    std::vector<Vec2> corner;
};

// Inward shift of side length j induced by the boundary distances:
// (ell[j-1] + ell[j+1] + 2 ell[j] cos theta) / sin theta, cyclic indices.
double side_shrink(const RegularPolygon& poly, std::span<const double> ell, int j);

// Side lengths and corners of the equiangular polygon at distances ell.
// Returns nullopt when some induced side length is negative.
std::optional<Ecp> side_lengths(const RegularPolygon& poly,
                                std::span<const double> ell);

bool in_feasible_region(const RegularPolygon& poly, std::span<const double> ell,
                        bool strict = false);

// Linear map sending corner-frame increment pairs (a, b) to a*d_j + b*d_{j+1}
// where d_j is the direction of side j. Its determinant is sin(theta).
Mat2 corner_map_inverse(const RegularPolygon& poly, int j);

// One parabola arc given as a quadratic Bezier segment: tangent to the two
// host sides at p0 and p1, control point at the shared vertex.
struct ParabolaArc {
    Vec2 p0, ctrl, p1;
    Vec2 eval(double t) const;
    Vec2 tangent(double t) const;  // derivative, not normalized
};

// The kappa arcs bounding the limit domain, tangent to the polygon at its
// side midpoints; arc j joins midpoint j to midpoint j+1.
std::vector<ParabolaArc> limit_shape_arcs(const RegularPolygon& poly);

// Closed polyline tracing the limit shape, pts_per_arc >= 2 samples per arc.
std::vector<Vec2> limit_shape(const RegularPolygon& poly, int pts_per_arc);

struct SupportPoint {
    Vec2 p;
    Vec2 tangent;  // direction of the supporting line at p, curve orientation
};

// Affine perimeter 2 * sum T_i^(1/3) of a convex curve given by a subdivision
// with supporting lines; T_i is the area of the triangle cut off by
// consecutive tangents between points i and i+1. With closed = false the
// subdivision describes an open arc and the wrap-around term is dropped.
double affine_perimeter(std::span<const SupportPoint> subdivision,
                        bool closed = true);

// Closed form kappa * (r^2 sin theta)^(1/3): the affine perimeter of the
// limit shape, which maximizes it over convex subsets of the polygon.
double ap_star(const RegularPolygon& poly);

// Convex polygon clipped to the half-plane {p : dot(p, normal) >= offset}.
std::vector<Vec2> clip_halfplane(std::span<const Vec2> polygon, Vec2 normal,
                                 double offset);

double polygon_area(std::span<const Vec2> polygon);
Vec2 polygon_centroid(std::span<const Vec2> polygon);

}  // namespace convexlab
