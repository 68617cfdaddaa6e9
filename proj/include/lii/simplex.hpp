// Nelder-Mead downhill simplex for small unconstrained problems.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace lii {

template <std::size_t N>
struct SimplexResult {
    std::array<double, N> x{};
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct SimplexOptions {
    int max_iterations = 200;
    double f_tol = 1e-7;   // stop once the vertex values span less than this
    double x_tol = 1e-6;   // ... and every vertex lies this close to the best one
};

/// Minimizes f starting from x0 with an axis-aligned initial simplex of the
/// given per-coordinate step. Standard coefficients (1, 2, 1/2, 1/2).
/// Ties between vertices keep their earlier position, so the run is fully
/// deterministic.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, const std::array<double, N>& x0, const std::array<double, N>& step,
                             const SimplexOptions& opt = {}) {
    using Point = std::array<double, N>;
    std::array<Point, N + 1> pts;
    std::array<double, N + 1> vals;
    pts[0] = x0;
    for (std::size_t i = 0; i < N; ++i) {
        pts[i + 1] = x0;
        pts[i + 1][i] += step[i];
    }
    for (std::size_t i = 0; i <= N; ++i) vals[i] = f(pts[i]);

    std::array<std::size_t, N + 1> order;
    auto sort_vertices = [&] {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::array<Point, N + 1> p2;
        std::array<double, N + 1> v2;
        for (std::size_t i = 0; i <= N; ++i) {
            p2[i] = pts[order[i]];
            v2[i] = vals[order[i]];
        }
        pts = p2;
        vals = v2;
    };

    auto blend = [](const Point& a, const Point& b, double t) {  // a + t (b - a)
        Point r;
        for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + t * (b[i] - a[i]);
        return r;
    };

    SimplexResult<N> res;
    sort_vertices();
    for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
        double size = 0.0;
        for (std::size_t v = 1; v <= N; ++v)
            for (std::size_t i = 0; i < N; ++i) size = std::max(size, std::abs(pts[v][i] - pts[0][i]));
        if (vals[N] - vals[0] <= opt.f_tol && size <= opt.x_tol) {
            res.converged = true;
            break;
        }

        Point centroid{};
        for (std::size_t v = 0; v < N; ++v)
            for (std::size_t i = 0; i < N; ++i) centroid[i] += pts[v][i] / static_cast<double>(N);

        const Point reflected = blend(centroid, pts[N], -1.0);
        const double fr = f(reflected);
        if (fr < vals[0]) {
            const Point expanded = blend(centroid, pts[N], -2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                pts[N] = expanded;
                vals[N] = fe;
            } else {
                pts[N] = reflected;
                vals[N] = fr;
            }
        } else if (fr < vals[N - 1]) {
            pts[N] = reflected;
            vals[N] = fr;
        } else {
            const bool outside = fr < vals[N];
            const Point contracted = outside ? blend(centroid, reflected, 0.5) : blend(centroid, pts[N], 0.5);
            const double fc = f(contracted);
            if (fc < (outside ? fr : vals[N])) {
                pts[N] = contracted;
                vals[N] = fc;
            } else {
                for (std::size_t v = 1; v <= N; ++v) {
                    pts[v] = blend(pts[0], pts[v], 0.5);
                    vals[v] = f(pts[v]);
                }
            }
        }
        sort_vertices();
    }
    res.x = pts[0];
    res.value = vals[0];
    return res;
}

}  // namespace lii
