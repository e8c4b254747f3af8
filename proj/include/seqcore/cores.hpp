#pragma once

// Cores of bounded sequences as convex planar regions estimated on a tail window
// [n0, N): the cluster hull of the tail, the intersection of discs
// |w - z| <= limsup_k |x_k - z| (max or statistical limsup over the window), the
// alpha-core as the cluster hull of the band transform, and inclusion by support
// comparison.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqcore/band_ops.hpp"
#include "seqcore/geometry.hpp"
#include "seqcore/matrix_spec.hpp"
#include "seqcore/parallel.hpp"
#include "seqcore/types.hpp"
#include "seqcore/verdict.hpp"

namespace seqcore {

struct Window {
    std::size_t n0 = 0;
    std::size_t n = 0;  // exclusive end

    static Window tail(std::size_t len, double fraction = 0.25) {
        return {static_cast<std::size_t>(std::floor(fraction * static_cast<double>(len))), len};
    }
    std::size_t size() const noexcept { return n > n0 ? n - n0 : 0; }

    void require_within(std::size_t len, const char* who) const {
        if (n0 >= n) throw InvalidArgument(std::string(who) + ": empty window");
        if (n > len) throw InvalidArgument(std::string(who) + ": window end exceeds sequence length");
    }
};

enum class RegionMethod { cluster_hull, disc_intersection };

inline std::string_view to_string(RegionMethod m) {
    return m == RegionMethod::cluster_hull ? "cluster_hull" : "disc_intersection";
}

/// A convex region with its support function sampled at `angles`. Invariant:
/// support[d] = max over vertices of <v, u(angles[d])>.
struct RegionEstimate {
    RegionMethod method = RegionMethod::cluster_hull;
    Window window;
    std::vector<double> angles;
    std::vector<double> support;
    std::vector<Complex> vertices;  // CCW; 1 vertex for a point, 2 for a segment
    std::vector<std::string> warnings;

    static RegionEstimate from_vertices(RegionMethod m, Window w, std::vector<Complex> verts, std::vector<double> angles) {
        RegionEstimate r;
        r.method = m;
        r.window = w;
        r.vertices = std::move(verts);
        r.support = geom::support_table(r.vertices, angles);
        r.angles = std::move(angles);
        return r;
    }

    double diameter() const {
        double d = 0.0;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            for (std::size_t j = i + 1; j < vertices.size(); ++j) d = std::max(d, std::abs(vertices[i] - vertices[j]));
        }
        return d;
    }
};

struct CoreOptions {
    std::size_t directions = 64;
    std::size_t grid = 41;           // z-grid points per axis
    double grid_scale = 1.5;         // grid half-size relative to the data bounding box
    double density_tol = 0.02;       // st_limsup
};

namespace detail {

inline void require_same_directions(const RegionEstimate& a, const RegionEstimate& b) {
    if (a.angles != b.angles) throw InvalidArgument("regions are sampled on different direction sets");
}

/// Warning when the dyadic-block maxima of |x_k| grow along the sequence.
inline std::optional<std::string> boundedness_warning(const FiniteSeq& x) {
    std::vector<std::size_t> ends;
    std::vector<double> maxima;
    double running = 0.0;
    for (std::size_t lo = 1; lo < x.size(); lo *= 2) {
        const std::size_t hi = std::min(2 * lo, x.size());
        for (std::size_t k = lo; k < hi; ++k) running = std::max(running, std::abs(x[k]));
        ends.push_back(hi);
        maxima.push_back(running);
    }
    if (ends.size() < 3) return std::nullopt;
    const std::size_t half = ends.size() / 2;
    const double slope = log_log_slope(std::span(ends).subspan(half), std::span<const double>(maxima).subspan(half), 1e-300);
    if (slope > 0.05) return "sequence looks unbounded (running max grows with log-log slope " + std::to_string(slope) + ")";
    return std::nullopt;
}

struct DiscGrid {
    Complex center;
    double r0 = 1.0;
    std::vector<Complex> near;        // square grid
    std::vector<double> far_offsets;  // far-field centres c - t r0 u_d
};

/// Square grid at grid_scale times the bounding box of the window, plus far-field
/// centres c - t r0 u_d along every direction, t up to 1e12.
inline DiscGrid disc_grid(std::span<const Complex> pts, const CoreOptions& opt) {
    if (opt.grid < 2) throw InvalidArgument("z-grid needs at least 2 points per axis");
    double xlo = pts[0].real(), xhi = xlo, ylo = pts[0].imag(), yhi = ylo;
    for (auto p : pts) {
        xlo = std::min(xlo, p.real());
        xhi = std::max(xhi, p.real());
        ylo = std::min(ylo, p.imag());
        yhi = std::max(yhi, p.imag());
    }
    DiscGrid g;
    g.center = {0.5 * (xlo + xhi), 0.5 * (ylo + yhi)};
    const double half = opt.grid_scale * 0.5 * std::max(xhi - xlo, yhi - ylo);
    g.r0 = std::max(half, 1.0);
    const double span = half > 0.0 ? half : g.r0;
    const std::size_t m = opt.grid;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double u = (2.0 * static_cast<double>(i) - static_cast<double>(m - 1)) / static_cast<double>(m - 1);
            const double v = (2.0 * static_cast<double>(j) - static_cast<double>(m - 1)) / static_cast<double>(m - 1);
            g.near.push_back(g.center + Complex(u * span, v * span));
        }
    }
    g.far_offsets = {4.0, 32.0, 256.0, 4096.0, 1e5, 1e6, 1e8, 1e10, 1e12};
    return g;
}

}  // namespace detail

/// Smallest L with #{k in window : v_k > L} < density_tol * |window|; ties resolve
/// to the larger value.
inline double st_limsup(std::span<const double> v, Window w, double density_tol) {
    w.require_within(v.size(), "st_limsup");
    if (!(density_tol > 0.0 && density_tol <= 1.0)) throw InvalidArgument("st_limsup: density_tol must be in (0, 1]");
    std::vector<double> vals(v.begin() + static_cast<std::ptrdiff_t>(w.n0), v.begin() + static_cast<std::ptrdiff_t>(w.n));
    const double width = static_cast<double>(vals.size());
    const auto allowed = static_cast<std::size_t>(std::ceil(density_tol * width)) - 1;  // values allowed above L
    std::nth_element(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(allowed), vals.end(), std::greater<>());
    return vals[allowed];
}

inline RegionEstimate cluster_hull(const FiniteSeq& x, Window w, std::size_t directions = 64) {
    w.require_within(x.size(), "cluster_hull");
    std::vector<Complex> pts(x.values().begin() + static_cast<std::ptrdiff_t>(w.n0), x.values().begin() + static_cast<std::ptrdiff_t>(w.n));
    RegionEstimate r = RegionEstimate::from_vertices(RegionMethod::cluster_hull, w, geom::convex_hull(std::move(pts)),
                                                     geom::direction_angles(directions));
    if (auto warn = detail::boundedness_warning(x)) r.warnings.push_back(*warn);
    return r;
}

namespace detail {

/// h_d = min_z (<z, u_d> + R(z)) with R(z) = reduce({|x_k - z|}). A far-field centre
/// z = c - T u_d only competes in direction d; there <z, u_d> + |x_k - z| - <c, u_d>
/// equals (|w|^2 + 2T<w, u>) / (|w + T u| + T) with w = x_k - c, evaluated without
/// cancellation. `reduce` is order-preserving, so shifting every value by T commutes with it.
template <class Reduce>
RegionEstimate disc_intersection(const FiniteSeq& x, Window w, const CoreOptions& opt, Reduce&& reduce, const char* who) {
    w.require_within(x.size(), who);
    const auto angles = geom::direction_angles(opt.directions);
    const std::span<const Complex> pts = x.values().subspan(w.n0, w.size());
    const DiscGrid grid = disc_grid(pts, opt);
    if (grid.near.empty()) throw InvalidArgument(std::string(who) + ": empty z-grid");

    std::vector<double> radii(grid.near.size());
    parallel_for(grid.near.size(), [&](std::size_t i) {
        std::vector<double> v(pts.size());
        for (std::size_t k = 0; k < pts.size(); ++k) v[k] = std::abs(pts[k] - grid.near[i]);
        radii[i] = reduce(v);
    });
    std::vector<double> far(angles.size());
    parallel_for(angles.size(), [&](std::size_t d) {
        const Complex u = geom::unit(angles[d]);
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> v(pts.size());
        for (double t : grid.far_offsets) {
            const double big = t * grid.r0;
            for (std::size_t k = 0; k < pts.size(); ++k) {
                const Complex wk = pts[k] - grid.center;
                v[k] = (std::norm(wk) + 2.0 * big * geom::dot(wk, u)) / (std::abs(wk + big * u) + big);
            }
            best = std::min(best, reduce(v));
        }
        far[d] = geom::dot(grid.center, u) + best;
    });

    std::vector<double> h(angles.size());
    double scale = 1.0;
    for (std::size_t d = 0; d < angles.size(); ++d) {
        const Complex u = geom::unit(angles[d]);
        double best = far[d];
        for (std::size_t i = 0; i < grid.near.size(); ++i) best = std::min(best, geom::dot(grid.near[i], u) + radii[i]);
        h[d] = best;
        scale = std::max(scale, std::abs(best));
    }
    // Rounding can leave a flat region with h_d + h_opposite slightly negative.
    for (auto& v : h) v += 1e-12 * scale;
    auto verts = geom::polygon_from_support(angles, h, 1e-9 * scale);
    if (verts.empty()) throw InvalidArgument(std::string(who) + ": disc intersection is empty");
    RegionEstimate r = RegionEstimate::from_vertices(RegionMethod::disc_intersection, w, std::move(verts), angles);
    if (auto warn = boundedness_warning(x)) r.warnings.push_back(*warn);
    return r;
}

}  // namespace detail

/// Intersection of the discs |w - z| <= max_{k in window} |x_k - z|.
inline RegionEstimate disc_core(const FiniteSeq& x, Window w, const CoreOptions& opt = {}) {
    return detail::disc_intersection(x, w, opt, [](std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); },
                                     "disc_core");
}

/// Intersection of the discs |w - z| <= st_limsup_{k in window} |x_k - z|.
inline RegionEstimate st_core(const FiniteSeq& x, Window w, const CoreOptions& opt = {}) {
    const double tol = opt.density_tol;
    return detail::disc_intersection(x, w, opt, [tol](std::vector<double>& v) { return st_limsup(v, Window{0, v.size()}, tol); },
                                     "st_core");
}

/// Cluster hull of the band transform; index 0 lies outside every tail.
inline RegionEstimate alpha_core(const FiniteSeq& x, const BandSystem& sys, Window w, std::size_t directions = 64) {
    if (w.n0 < 1) throw InvalidArgument("alpha_core: window must start at index 1 or later");
    return cluster_hull(forward_transform(x, sys), w, directions);
}

inline double hausdorff_distance(const RegionEstimate& a, const RegionEstimate& b) {
    detail::require_same_directions(a, b);
    double m = 0.0;
    for (std::size_t d = 0; d < a.support.size(); ++d) m = std::max(m, std::abs(a.support[d] - b.support[d]));
    return m;
}

struct Inclusion {
    bool included = false;
    double max_violation = 0.0;  // max_d (h_inner - h_outer)
};

inline Inclusion region_included(const RegionEstimate& inner, const RegionEstimate& outer, double tol) {
    detail::require_same_directions(inner, outer);
    if (!(tol >= 0.0)) throw InvalidArgument("region_included: tolerance must be non-negative");
    double v = -std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < inner.support.size(); ++d) v = std::max(v, inner.support[d] - outer.support[d]);
    return {v <= tol, v};
}

struct RowBlock {
    std::size_t row = 0;
    std::size_t col_begin = 0;
    std::size_t col_end = 0;  // exclusive
};

/// y with |y_k| <= 1: conj(a_nk)/|a_nk| on each block for its row, 0 elsewhere.
inline FiniteSeq sign_witness(const MatrixSpec& a, std::span<const RowBlock> blocks, std::size_t len) {
    if (len == 0) throw InvalidArgument("sign_witness: length must be at least 1");
    std::vector<RowBlock> sorted(blocks.begin(), blocks.end());
    std::sort(sorted.begin(), sorted.end(), [](const RowBlock& l, const RowBlock& r) { return l.col_begin < r.col_begin; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].col_begin >= sorted[i].col_end) throw InvalidArgument("sign_witness: empty column range");
        if (sorted[i].col_end > len) throw InvalidArgument("sign_witness: column range exceeds the length");
        if (i > 0 && sorted[i].col_begin < sorted[i - 1].col_end) throw InvalidArgument("sign_witness: overlapping column ranges");
    }
    std::vector<Complex> y(len, Complex{});
    for (const auto& b : blocks) {
        const auto row = a.row(b.row, b.col_end);
        for (std::size_t k = b.col_begin; k < b.col_end; ++k) {
            const double m = std::abs(row[k]);
            y[k] = m == 0.0 ? Complex{} : std::conj(row[k]) / m;
        }
    }
    return FiniteSeq(std::move(y));
}

}  // namespace seqcore
