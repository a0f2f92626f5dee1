#pragma once

#include "cnb/dynamics.hpp"

#include <vector>

namespace cnb {

// r = |(x, y)|, rho = sqrt(sigma z^2 + w^2); r^2 + sigma rho^2 = sigma.
struct CylindricalSplit {
    double r = 0.0;
    double rho = 0.0;
    double r2 = 0.0;
    double rho2 = 0.0;
};

CylindricalSplit cylindrical_split(const Vec4& q, Space s);

double moment_of_inertia(const Configuration& c);
Vec4 grad_I_body(const Vec4& q, double m, Space s);
std::vector<Vec4> grad_I(const Configuration& c);

// Locked inertia of one body for the generator with rotation rates (alpha, beta),
// at unit curvature.
double locked_inertia(const Vec4& q, double m, double alpha, double beta, Space s);

struct AxisDistanceIdentity {
    double direct;
    double from_distances;
};

// I computed as sum m (x^2 + y^2) and, independently, as sum m sn^2 of the
// geodesic distance from each body to the zw circle (S3) or branch (H3).
AxisDistanceIdentity axis_distance_identity(const Configuration& c);

} // namespace cnb
