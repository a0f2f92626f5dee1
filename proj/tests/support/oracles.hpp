#pragma once

// Random generators and independent reference computations shared by the
// test binaries. Nothing here calls the gradient or multiplier code under test.

#include "cnb/dynamics.hpp"
#include "cnb/inertia.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using cnb::Space;
using cnb::Vec4;

inline Vec4 random_point(std::mt19937_64& rng, Space s, double spread = 1.0) {
    std::normal_distribution<double> g(0.0, 1.0);
    if (s == Space::S3) {
        Vec4 v(g(rng), g(rng), g(rng), g(rng));
        return v / v.norm();
    }
    double x = spread * g(rng), y = spread * g(rng), z = spread * g(rng);
    return Vec4(x, y, z, std::sqrt(1.0 + x * x + y * y + z * z));
}

inline Vec4 random_tangent(std::mt19937_64& rng, const Vec4& q, Space s) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vec4 v(g(rng), g(rng), g(rng), g(rng));
    return cnb::project_tangent(q, v, s);
}

// Config whose pairwise distances are at least min_sep and, on S3, at most
// pi - min_sep.
inline cnb::Configuration random_config(std::mt19937_64& rng, Space s, int n, double min_sep = 0.15) {
    std::uniform_real_distribution<double> um(0.2, 3.0);
    for (;;) {
        std::vector<double> m;
        std::vector<Vec4> q;
        for (int i = 0; i < n; ++i) {
            m.push_back(um(rng));
            q.push_back(random_point(rng, s, 0.8));
        }
        auto c = cnb::make_config(s, m, q);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = i + 1; j < n && ok; ++j) {
                double d = cnb::distance_unchecked(q[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)], s);
                if (d < min_sep || (s == Space::S3 && d > M_PI - min_sep)) ok = false;
            }
        if (ok) return c;
    }
}

// Directional derivative of f along the geodesic through body i in direction v,
// by central differences.
template <class F>
double fd_directional(const cnb::Configuration& c, std::size_t i, const Vec4& v, F&& f, double h = 1e-6) {
    auto cp = c, cm = c;
    cp.bodies[i].pos = cnb::exp_map(c.pos(i), h * v, c.space);
    cm.bodies[i].pos = cnb::exp_map(c.pos(i), -h * v, c.space);
    return (f(cp) - f(cm)) / (2.0 * h);
}

// Force function straight from the pairwise distances.
inline double potential(const cnb::Configuration& c) {
    double u = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            double d = cnb::distance_unchecked(c.pos(i), c.pos(j), c.space);
            double t = c.space == Space::S3 ? std::tan(d) : std::tanh(d);
            u += c.mass(i) * c.mass(j) / t;
        }
    return u;
}

inline double inertia(const cnb::Configuration& c) {
    double s = 0.0;
    for (const auto& b : c.bodies) s += b.mass * (b.pos[0] * b.pos[0] + b.pos[1] * b.pos[1]);
    return s;
}

// Lagrange multiplier by least squares from the gradient fields; at a central
// configuration this is the multiplier.
inline double lambda_least_squares(const std::vector<Vec4>& gu, const std::vector<Vec4>& gi) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < gu.size(); ++i) {
        num += gu[i].dot(gi[i]);
        den += gi[i].dot(gi[i]);
    }
    return num / den;
}

} // namespace oracle
