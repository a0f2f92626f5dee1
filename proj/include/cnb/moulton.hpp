#pragma once

#include "cnb/dynamics.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cnb {

// Bodies on the xw geodesic of H3 at q_i = (sinh theta_i, 0, 0, cosh theta_i).
struct GeodesicHConfig {
    std::vector<double> thetas;
    std::vector<double> masses;
    double lambda = 0.0;
};

Configuration to_configuration(const GeodesicHConfig& g);

// ordering[k] is the body at the k-th smallest theta. seed == nullopt uses an
// evenly spaced start, otherwise a random interior point of the ordering cell.
GeodesicHConfig solve_geodesic_h(const std::vector<double>& masses, double c, const std::vector<int>& ordering,
                                 std::optional<std::uint64_t> seed = std::nullopt);

Eigen::MatrixXd hessian_geodesic_h(const GeodesicHConfig& g, double lambda);

struct MoultonClass {
    std::vector<int> ordering;
    GeodesicHConfig config;
    double I = 0.0;
    double U = 0.0;
    double min_hessian_eig = 0.0;
};

// Solves every ordering and identifies solutions related by the half turn in
// the xy plane (theta -> -theta).
std::vector<MoultonClass> moulton_catalog_h(const std::vector<double>& masses, double c);

// Bodies on the xz great circle of S3 at q_i = (-sin theta_i, 0, cos theta_i, 0).
struct TwoBodySConfig {
    double theta1 = 0.0;
    double theta2 = 0.0;
    double m1 = 0.0, m2 = 0.0, c = 0.0;
};

Configuration to_configuration(const TwoBodySConfig& t);

struct TwoBodySolution {
    std::vector<TwoBodySConfig> solutions;
    bool continuum = false; // equal masses at c = m: theta2 = theta1 + pi/2 or theta1 + 3pi/2
    int count() const { return continuum ? -1 : static_cast<int>(solutions.size()); }
};

TwoBodySolution solve_two_body_s(double m1, double m2, double c);

// Member of the equal-mass continuum at c = m.
TwoBodySConfig two_body_continuum_member(double m, double theta1, bool three_quarter_turn = false);

} // namespace cnb
