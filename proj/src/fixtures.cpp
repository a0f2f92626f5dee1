#include "cnb/fixtures.hpp"

#include "cnb/centralconfig.hpp"

#include <cmath>
#include <numbers>

namespace cnb {

namespace {

constexpr double pi = std::numbers::pi;

void require(bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::ParamOutOfDomain, what);
}

Fixture make(std::string name, std::string family, Space s, std::vector<double> m, std::vector<Vec4> q,
             bool special, double lambda) {
    return {std::move(name), std::move(family), make_config(s, m, q), special, lambda};
}

} // namespace

namespace fixtures {

Fixture acute_triangle_s1(double a, double b) {
    require(a > 0 && a < pi && b > 0 && b < pi && a + b > pi && a + b < 2 * pi,
            "acute triangle needs 0 < a, b < pi < a + b < 2 pi");
    double sa = std::sin(a), sb = std::sin(b), sab = std::sin(a + b);
    return make("acute_triangle_s1", "special triangle on the xy great circle", Space::S3,
                {sa * sa / (sb * sb), sa * sa / (sab * sab), 1.0},
                {Vec4(1, 0, 0, 0), Vec4(std::cos(a), std::sin(a), 0, 0), Vec4(std::cos(a + b), std::sin(a + b), 0, 0)},
                true, 0.0);
}

Fixture tetrahedron_s2(double m) {
    require(m > 0, "mass must be positive");
    const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0);
    return make("tetrahedron_s2", "regular tetrahedron on S2_xyz", Space::S3, {m, m, m, m},
                {Vec4(0, 0, 1, 0), Vec4(0, 2 * s2 / 3, -1.0 / 3, 0), Vec4(-s6 / 3, -s2 / 3, -1.0 / 3, 0),
                 Vec4(s6 / 3, -s2 / 3, -1.0 / 3, 0)},
                true, 0.0);
}

Fixture pentatope_s3(double m) {
    require(m > 0, "mass must be positive");
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s5 = std::sqrt(5.0), s6 = std::sqrt(6.0),
                 s15 = std::sqrt(15.0);
    return make("pentatope_s3", "regular pentatope in S3", Space::S3, {m, m, m, m, m},
                {Vec4(1, 0, 0, 0), Vec4(-0.25, s15 / 4, 0, 0), Vec4(-0.25, -s5 / (4 * s3), s5 / s6, 0),
                 Vec4(-0.25, -s5 / (4 * s3), -s5 / (2 * s6), s5 / (2 * s2)),
                 Vec4(-0.25, -s5 / (4 * s3), -s5 / (2 * s6), -s5 / (2 * s2))},
                true, 0.0);
}

Fixture double_triangle_s3(double m) {
    require(m > 0, "mass must be positive");
    const double h = std::sqrt(3.0) / 2;
    return make("double_triangle_s3", "equilateral triangles on the xy and zw circles", Space::S3,
                {m, m, m, m, m, m},
                {Vec4(0, 1, 0, 0), Vec4(h, -0.5, 0, 0), Vec4(-h, -0.5, 0, 0), Vec4(0, 0, 0, 1), Vec4(0, 0, h, -0.5),
                 Vec4(0, 0, -h, -0.5)},
                true, 0.0);
}

Fixture lagrangian_s2(double m, double r) {
    require(m > 0 && r > 0 && r < 1, "lagrangian ring needs m > 0 and 0 < r < 1");
    const double z = std::sqrt(1 - r * r), h = std::sqrt(3.0) / 2;
    double lam = -m / (2 * std::sqrt(3.0) * r * r * r * std::pow(1 - 0.75 * r * r, 1.5));
    return make("lagrangian_s2", "equilateral ring on S2_xyz", Space::S3, {m, m, m},
                {Vec4(r, 0, z, 0), Vec4(-r / 2, r * h, z, 0), Vec4(-r / 2, -r * h, z, 0)}, false, lam);
}

Fixture geodesic_s1_isosceles(double m, double z) {
    require(m > 0 && z > -1 && z < 1 && z != 0, "isosceles geodesic needs -1 < z < 1, z != 0");
    const double r = std::sqrt(1 - z * z);
    double lam = -(m / (2 * r * r * r)) * (1 / z + 1 / (4 * std::pow(std::abs(z), 3)));
    return make("geodesic_s1_isosceles", "isosceles triple on the xz circle", Space::S3, {m, m, m},
                {Vec4(0, 0, 1, 0), Vec4(r, 0, z, 0), Vec4(-r, 0, z, 0)}, false, lam);
}

Fixture geodesic_s1_equilateral(double m1, double m2, double m3, bool positive_lambda) {
    require(m1 > 0 && m2 > 0 && m3 > 0, "masses must be positive");
    // lambda sin 2 theta = a, lambda cos 2 theta = b
    const double a = -4 * (m3 - m2) / 3, b = 4 * std::sqrt(3.0) / 9 * (2 * m1 - m3 - m2);
    const double mag = std::hypot(a, b);
    require(mag > 1e-12 * (m1 + m2 + m3), "equal masses give the special triangle, lambda = 0");
    const double lam = positive_lambda ? mag : -mag;
    const double theta = 0.5 * std::atan2(a / lam, b / lam);
    std::vector<Vec4> q;
    for (int k = 0; k < 3; ++k) {
        double t = theta + 2 * pi * k / 3;
        q.emplace_back(-std::sin(t), 0, std::cos(t), 0);
    }
    return make("geodesic_s1_equilateral", "equilateral triple of distinct masses on the xz circle", Space::S3,
                {m1, m2, m3}, q, false, lam);
}

Fixture isosceles_s2(double phi) {
    require(phi > pi / 2 && phi < pi, "isosceles needs pi/2 < phi < pi");
    const double c = std::cos(phi), s = std::sin(phi);
    double cos2 = 1 + 2 / ((c - 1) * (2 * c + 3));
    require(cos2 >= 0 && cos2 < 1, "isosceles height out of range");
    const double ct = std::sqrt(cos2), st = std::sqrt(1 - cos2);
    Fixture f = make("isosceles_s2", "isosceles triple on S2_xyz", Space::S3, {-2 * c, 1, 1},
                     {Vec4(st, 0, ct, 0), Vec4(st * c, st * s, ct, 0), Vec4(st * c, -st * s, ct, 0)}, false, 0.0);
    double cd = inner(f.config.pos(0), f.config.pos(1), Space::S3);
    double sd = std::sqrt(1 - cd * cd);
    f.lambda = -(2 - 2 * c) / (2 * sd * sd * sd);
    return f;
}

Fixture lagrangian_h2(double m, double r) {
    require(m > 0 && r > 0, "hyperbolic ring needs m > 0 and r > 0");
    const double w = std::sqrt(1 + r * r), h = std::sqrt(3.0) / 2;
    double lam = -m / (2 * std::sqrt(3.0) * r * r * r * std::pow(1 + 0.75 * r * r, 1.5));
    return make("lagrangian_h2", "equilateral ring on H2_xyw", Space::H3, {m, m, m},
                {Vec4(r, 0, 0, w), Vec4(-r / 2, r * h, 0, w), Vec4(-r / 2, -r * h, 0, w)}, false, lam);
}

Fixture geodesic_h1(double m, double r) {
    require(m > 0 && r > 0, "hyperbolic geodesic needs m > 0 and r > 0");
    const double w = std::sqrt(1 + r * r);
    double lam = -(m / (2 * r * r * r)) * (1 / w + 1 / (4 * w * w * w));
    return make("geodesic_h1", "symmetric triple on the xw geodesic", Space::H3, {m, m, m},
                {Vec4(0, 0, 0, 1), Vec4(r, 0, 0, w), Vec4(-r, 0, 0, w)}, false, lam);
}

Fixture example1_s3() {
    const double m = 13 * std::sqrt(39.0) / 512, z = std::sqrt(3.0) / 2;
    std::vector<Vec4> q;
    for (int j = 1; j <= 3; ++j) q.emplace_back(0.5 * std::cos(2 * pi * j / 3), 0.5 * std::sin(2 * pi * j / 3), z, 0);
    return make("example1_s3", "equilateral ring at r = 1/2 with lambda = -1/2", Space::S3, {m, m, m}, q, false,
                -0.5);
}

Fixture example2_h3() {
    const double m = 8 * std::sqrt(2.0) / 9, w = std::sqrt(2.0);
    return make("example2_h3", "symmetric triple on the xw geodesic with lambda = -1/2", Space::H3, {m, m, m},
                {Vec4(0, 0, 0, 1), Vec4(1, 0, 0, w), Vec4(-1, 0, 0, w)}, false, -0.5);
}

std::vector<Fixture> all() {
    return {
        acute_triangle_s1(2 * pi / 3, 2 * pi / 3),
        acute_triangle_s1(1.9, 2.2),
        tetrahedron_s2(1.0),
        pentatope_s3(1.0),
        double_triangle_s3(1.0),
        lagrangian_s2(1.0, 0.5),
        geodesic_s1_isosceles(1.0, 0.3),
        geodesic_s1_isosceles(1.0, -0.3),
        geodesic_s1_isosceles(1.0, -0.8),
        geodesic_s1_equilateral(2.0, 1.0, 3.0),
        geodesic_s1_equilateral(0.7, 1.9, 1.2, true),
        isosceles_s2(2.2),
        lagrangian_h2(1.0, 1.0),
        geodesic_h1(1.0, 0.7),
        example1_s3(),
        example2_h3(),
    };
}

} // namespace fixtures

bool check_fixture(const Fixture& f, double tol) {
    if (f.special) return is_special_cc(f.config, tol);
    return cc_residual(f.config, f.lambda).max < tol;
}

} // namespace cnb
