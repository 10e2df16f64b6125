#pragma once

#include <cmath>

namespace convexlab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline Vec2& operator+=(Vec2& a, Vec2 b) { a.x += b.x; a.y += b.y; return a; }
inline Vec2& operator-=(Vec2& a, Vec2 b) { a.x -= b.x; a.y -= b.y; return a; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline Vec2 perp(Vec2 a) { return {-a.y, a.x}; }  // rotate by +90 degrees

inline double dist2(Vec2 a, Vec2 b) { return norm2(a - b); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

// Squared distance from p to the segment [a, b].
inline double dist2_point_segment(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0.0) return dist2(p, a);
    double t = dot(p - a, ab) / len2;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    return dist2(p, a + t * ab);
}

// 2x2 matrix, row major.
struct Mat2 {
    double a00 = 1.0, a01 = 0.0;
    double a10 = 0.0, a11 = 1.0;

    Vec2 apply(Vec2 v) const { return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y}; }
    double det() const { return a00 * a11 - a01 * a10; }
};

}  // namespace convexlab
