#pragma once

// Planar convex geometry on complex points: hulls, sampled support functions,
// half-plane clipping.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "seqcore/types.hpp"

namespace seqcore::geom {

inline double dot(Complex a, Complex b) noexcept { return a.real() * b.real() + a.imag() * b.imag(); }
inline double cross(Complex o, Complex a, Complex b) noexcept {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

/// theta_d = 2 pi d / D.
inline std::vector<double> direction_angles(std::size_t count) {
    if (count < 3) throw InvalidArgument("direction count must be at least 3");
    std::vector<double> out(count);
    for (std::size_t d = 0; d < count; ++d) out[d] = 2.0 * std::numbers::pi * static_cast<double>(d) / static_cast<double>(count);
    return out;
}

inline Complex unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Convex hull, counterclockwise from the lowest-leftmost vertex, collinear points
/// dropped. One vertex for a point set, two for a segment.
inline std::vector<Complex> convex_hull(std::vector<Complex> pts) {
    if (pts.empty()) throw InvalidArgument("convex_hull: no points");
    auto less = [](Complex a, Complex b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); };
    std::sort(pts.begin(), pts.end(), less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Complex> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
        while (k >= lo && cross(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    // Monotone chain starts at the leftmost point; rotate to the lowest-leftmost.
    auto low = [](Complex a, Complex b) { return a.imag() < b.imag() || (a.imag() == b.imag() && a.real() < b.real()); };
    std::rotate(h.begin(), std::min_element(h.begin(), h.end(), low), h.end());
    return h;
}

inline double support(std::span<const Complex> vertices, Complex u) {
    double m = -std::numeric_limits<double>::infinity();
    for (auto v : vertices) m = std::max(m, dot(v, u));
    return m;
}

inline std::vector<double> support_table(std::span<const Complex> vertices, std::span<const double> angles) {
    std::vector<double> h(angles.size());
    for (std::size_t d = 0; d < angles.size(); ++d) h[d] = support(vertices, unit(angles[d]));
    return h;
}

/// Intersects a convex polygon (CCW) with the half-plane <w, u> <= c.
inline std::vector<Complex> clip(const std::vector<Complex>& poly, Complex u, double c) {
    std::vector<Complex> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex a = poly[i];
        const Complex b = poly[(i + 1) % n];
        const double fa = dot(a, u) - c;
        const double fb = dot(b, u) - c;
        if (fa <= 0.0) out.push_back(a);
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
            const double t = fa / (fa - fb);
            out.push_back(a + t * (b - a));
        }
    }
    return out;
}

/// Polygon {w : <w, u_d> <= h_d for all d}; empty when infeasible. Vertices closer than
/// `merge` collapse, so a region thinner than `merge` comes back as a segment or point.
inline std::vector<Complex> polygon_from_support(std::span<const double> angles, std::span<const double> h, double merge) {
    double r = 1.0;
    for (double v : h) r = std::max(r, std::abs(v));
    r *= 4.0;
    std::vector<Complex> poly{{-r, -r}, {r, -r}, {r, r}, {-r, r}};
    for (std::size_t d = 0; d < angles.size() && !poly.empty(); ++d) poly = clip(poly, unit(angles[d]), h[d]);
    if (poly.empty()) return poly;
    std::vector<Complex> kept;
    for (auto p : poly) {
        bool dup = false;
        for (auto q : kept) dup = dup || std::abs(p - q) <= merge;
        if (!dup) kept.push_back(p);
    }
    std::vector<Complex> hull = convex_hull(kept);
    if (hull.size() >= 3) {
        // Collapse slivers: a polygon whose width is below `merge` becomes its diameter.
        double width = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const Complex a = hull[i];
            const Complex b = hull[(i + 1) % hull.size()];
            const double len = std::abs(b - a);
            double far = 0.0;
            for (auto p : hull) far = std::max(far, std::abs(cross(a, b, p)) / len);
            width = std::min(width, far);
        }
        if (width <= merge) {
            std::size_t bi = 0, bj = 1;
            for (std::size_t i = 0; i < hull.size(); ++i) {
                for (std::size_t j = i + 1; j < hull.size(); ++j) {
                    if (std::abs(hull[i] - hull[j]) > std::abs(hull[bi] - hull[bj])) bi = i, bj = j;
                }
            }
            hull = convex_hull({hull[bi], hull[bj]});
        }
    }
    return hull;
}

}  // namespace seqcore::geom
