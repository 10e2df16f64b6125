#include "convexlab/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace convexlab {

using std::numbers::pi;

Vec2 RegularPolygon::side_dir(int j) const {
    const double beta = 2.0 * pi / kappa;  // exterior angle
    const double a = beta * wrap(j);
    return {std::cos(a), std::sin(a)};
}

Vec2 RegularPolygon::inward_normal(int j) const { return perp(side_dir(j)); }

double RegularPolygon::side_distance(int j, Vec2 p) const {
    j = wrap(j);
    return dot(inward_normal(j), p - vertices[static_cast<std::size_t>(j)]);
}

bool RegularPolygon::contains(Vec2 p, double tol) const {
    for (int j = 0; j < kappa; ++j)
        if (side_distance(j, p) < -tol) return false;
    return true;
}

RegularPolygon make_polygon(int kappa) {
    if (kappa < 3) throw std::invalid_argument("make_polygon: kappa must be >= 3");
    RegularPolygon poly;
    poly.kappa = kappa;
    poly.r = std::sqrt(4.0 * std::tan(pi / kappa) / kappa);
    poly.theta = (kappa - 2) * pi / kappa;
    poly.m_const = (1.0 + std::cos(poly.theta)) / std::sin(poly.theta);
    poly.p_const = kappa * poly.r / poly.m_const;
    poly.vertices.resize(static_cast<std::size_t>(kappa));
    poly.midpoints.resize(static_cast<std::size_t>(kappa));
    Vec2 v{0.0, 0.0};
    for (int j = 0; j < kappa; ++j) {
        poly.vertices[static_cast<std::size_t>(j)] = v;
        v += poly.r * poly.side_dir(j);
    }
    for (int j = 0; j < kappa; ++j) {
        poly.midpoints[static_cast<std::size_t>(j)] =
            0.5 * (poly.vertices[static_cast<std::size_t>(j)] +
                   poly.vertices[static_cast<std::size_t>(poly.wrap(j + 1))]);
    }
    return poly;
}

double side_shrink(const RegularPolygon& poly, std::span<const double> ell, int j) {
    const double prev = ell[static_cast<std::size_t>(poly.wrap(j - 1))];
    const double next = ell[static_cast<std::size_t>(poly.wrap(j + 1))];
    const double self = ell[static_cast<std::size_t>(poly.wrap(j))];
    return (prev + next + 2.0 * self * std::cos(poly.theta)) / std::sin(poly.theta);
}

static Vec2 line_intersection(Vec2 p1, Vec2 d1, Vec2 p2, Vec2 d2) {
    // p1 + t d1 = p2 + s d2
    const double denom = cross(d1, d2);
    const double t = cross(p2 - p1, d2) / denom;
    return p1 + t * d1;
}

std::optional<Ecp> side_lengths(const RegularPolygon& poly,
                                std::span<const double> ell) {
    const int k = poly.kappa;
    if (static_cast<int>(ell.size()) != k)
        throw std::invalid_argument("side_lengths: ell must have kappa entries");
    for (double l : ell)
        if (l < 0.0) throw std::invalid_argument("side_lengths: negative boundary distance");

    Ecp ecp;
    ecp.side_len.resize(static_cast<std::size_t>(k));
    const double tol = 1e-12 * poly.r;
    for (int j = 0; j < k; ++j) {
        double c = poly.r - side_shrink(poly, ell, j);
        if (c < -tol) return std::nullopt;
        if (c < 0.0) c = 0.0;
        ecp.side_len[static_cast<std::size_t>(j)] = c;
    }
    ecp.corner.resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const int jn = poly.wrap(j + 1);
        const Vec2 base_j = poly.vertices[static_cast<std::size_t>(j)] +
                            ell[static_cast<std::size_t>(j)] * poly.inward_normal(j);
        const Vec2 base_n = poly.vertices[static_cast<std::size_t>(jn)] +
                            ell[static_cast<std::size_t>(jn)] * poly.inward_normal(jn);
        ecp.corner[static_cast<std::size_t>(j)] =
            line_intersection(base_j, poly.side_dir(j), base_n, poly.side_dir(jn));
    }
    return ecp;
}

bool in_feasible_region(const RegularPolygon& poly, std::span<const double> ell,
                        bool strict) {
    if (static_cast<int>(ell.size()) != poly.kappa) return false;
    for (double l : ell)
        if (l < 0.0) return false;
    // the region is closed; absorb roundoff at the c_j = 0 boundary
    const double tol = 1e-12 * poly.r;
    for (int j = 0; j < poly.kappa; ++j) {
        const double c = poly.r - side_shrink(poly, ell, j);
        if (strict ? (c <= tol) : (c < -tol)) return false;
    }
    return true;
}

Mat2 corner_map_inverse(const RegularPolygon& poly, int j) {
    const Vec2 d0 = poly.side_dir(j);
    const Vec2 d1 = poly.side_dir(j + 1);
    return Mat2{d0.x, d1.x, d0.y, d1.y};
}

Vec2 ParabolaArc::eval(double t) const {
    const double u = 1.0 - t;
    return u * u * p0 + 2.0 * t * u * ctrl + t * t * p1;
}

Vec2 ParabolaArc::tangent(double t) const {
    return 2.0 * ((1.0 - t) * (ctrl - p0) + t * (p1 - ctrl));
}

std::vector<ParabolaArc> limit_shape_arcs(const RegularPolygon& poly) {
    std::vector<ParabolaArc> arcs;
    arcs.reserve(static_cast<std::size_t>(poly.kappa));
    for (int j = 0; j < poly.kappa; ++j) {
        ParabolaArc arc;
        arc.p0 = poly.midpoints[static_cast<std::size_t>(j)];
        arc.ctrl = poly.vertices[static_cast<std::size_t>(poly.wrap(j + 1))];
        arc.p1 = poly.midpoints[static_cast<std::size_t>(poly.wrap(j + 1))];
        arcs.push_back(arc);
    }
    return arcs;
}

std::vector<Vec2> limit_shape(const RegularPolygon& poly, int pts_per_arc) {
    if (pts_per_arc < 2) throw std::invalid_argument("limit_shape: pts_per_arc must be >= 2");
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(poly.kappa * pts_per_arc));
    for (const ParabolaArc& arc : limit_shape_arcs(poly)) {
        for (int i = 0; i < pts_per_arc; ++i) {
            // endpoint t = 1 is the next arc's t = 0
            pts.push_back(arc.eval(static_cast<double>(i) / pts_per_arc));
        }
    }
    return pts;
}

double affine_perimeter(std::span<const SupportPoint> subdivision, bool closed) {
    const std::size_t m = subdivision.size();
    if (m < 2) throw std::invalid_argument("affine_perimeter: need at least two points");
    double scale2 = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        scale2 = std::max(scale2, norm2(subdivision[i].p - subdivision[0].p));
    const double parallel_tol = 1e-12;
    double acc = 0.0;
    const std::size_t wedges = closed ? m : m - 1;
    for (std::size_t i = 0; i < wedges; ++i) {
        const SupportPoint& a = subdivision[i];
        const SupportPoint& b = subdivision[(i + 1) % m];
        const double turn = cross(a.tangent, b.tangent);
        if (turn < -parallel_tol * norm(a.tangent) * norm(b.tangent))
            throw std::invalid_argument("affine_perimeter: subdivision is not convex");
        if (std::fabs(turn) <= parallel_tol * norm(a.tangent) * norm(b.tangent))
            continue;  // parallel support lines cut off a degenerate triangle
        const Vec2 y = line_intersection(a.p, a.tangent, b.p, b.tangent);
        const double area = 0.5 * std::fabs(cross(y - a.p, b.p - a.p));
        // the cube root amplifies float noise, so drop true degeneracies
        if (area <= 1e-14 * scale2) continue;
        if (dot(y - a.p, a.tangent) < 0.0 || dot(b.p - y, b.tangent) < 0.0)
            throw std::invalid_argument("affine_perimeter: support lines inconsistent");
        acc += std::cbrt(area);
    }
    return 2.0 * acc;
}

double ap_star(const RegularPolygon& poly) {
    return poly.kappa * std::cbrt(poly.r * poly.r * std::sin(poly.theta));
}

std::vector<Vec2> clip_halfplane(std::span<const Vec2> polygon, Vec2 normal,
                                 double offset) {
    std::vector<Vec2> out;
    const std::size_t n = polygon.size();
    out.reserve(n + 2);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = polygon[i];
        const Vec2 b = polygon[(i + 1) % n];
        const double da = dot(a, normal) - offset;
        const double db = dot(b, normal) - offset;
        if (da >= 0.0) out.push_back(a);
        if ((da > 0.0 && db < 0.0) || (da < 0.0 && db > 0.0)) {
            const double t = da / (da - db);
            out.push_back(a + t * (b - a));
        }
    }
    return out;
}

double polygon_area(std::span<const Vec2> polygon) {
    const std::size_t n = polygon.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += cross(polygon[i], polygon[(i + 1) % n]);
    return 0.5 * s;
}

Vec2 polygon_centroid(std::span<const Vec2> polygon) {
    const std::size_t n = polygon.size();
    double a = 0.0;
    Vec2 c{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p = polygon[i];
        const Vec2 q = polygon[(i + 1) % n];
        const double w = cross(p, q);
        a += w;
        c += w * (p + q);
    }
    return (1.0 / (3.0 * a)) * c;
}

}  // namespace convexlab
