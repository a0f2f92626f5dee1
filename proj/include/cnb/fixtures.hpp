#pragma once

#include "cnb/dynamics.hpp"

#include <string>
#include <vector>

namespace cnb {

struct Fixture {
    std::string name;
    std::string family; // short description of the configuration family
    Configuration config;
    bool special = false;
    double lambda = 0.0; // expected multiplier when not special
};

namespace fixtures {

// Three bodies on the xy great circle at angles 0, a, a + b.
// Domain: 0 < a, b < pi, pi < a + b < 2 pi.
Fixture acute_triangle_s1(double a, double b);
Fixture tetrahedron_s2(double m = 1.0);
Fixture pentatope_s3(double m = 1.0);
Fixture double_triangle_s3(double m = 1.0);
// Equilateral ring at height z = sqrt(1 - r^2) on S2_xyz, 0 < r < 1.
Fixture lagrangian_s2(double m, double r);
// (0,0,1,0), (+-r, 0, z, 0) with r = sqrt(1 - z^2), -1 < z < 1, z != 0.
Fixture geodesic_s1_isosceles(double m, double z);
// Bodies at angles theta, theta + 2pi/3, theta + 4pi/3 on the xz circle, with
// theta and lambda fixed by the masses. Each mass vector admits two solutions,
// one per sign of lambda. Equal masses give lambda = 0 and are rejected.
Fixture geodesic_s1_equilateral(double m1, double m2, double m3, bool positive_lambda = false);
// Masses (-2 cos phi, 1, 1) on S2_xyz, pi/2 < phi < pi.
Fixture isosceles_s2(double phi);
// Equilateral ring on H2_xyw, r > 0.
Fixture lagrangian_h2(double m, double r);
// (0,0,0,1), (+-r, 0, 0, w) with w = sqrt(1 + r^2), r > 0.
Fixture geodesic_h1(double m, double r);
Fixture example1_s3();
Fixture example2_h3();

// Every fixture at representative parameters.
std::vector<Fixture> all();

} // namespace fixtures

// True if the fixture's configuration meets its expectation within tol.
bool check_fixture(const Fixture& f, double tol = 1e-10);

} // namespace cnb
