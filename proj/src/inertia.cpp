#include "cnb/inertia.hpp"

#include <cmath>
#include <numbers>

namespace cnb {

CylindricalSplit cylindrical_split(const Vec4& q, Space s) {
    CylindricalSplit c;
    c.r2 = q[0] * q[0] + q[1] * q[1];
    c.rho2 = std::max(0.0, sigma(s) * q[2] * q[2] + q[3] * q[3]);
    c.r = std::sqrt(c.r2);
    c.rho = std::sqrt(c.rho2);
    return c;
}

double moment_of_inertia(const Configuration& c) {
    double I = 0.0;
    for (const auto& b : c.bodies) I += b.mass * (b.pos[0] * b.pos[0] + b.pos[1] * b.pos[1]);
    return I;
}

Vec4 grad_I_body(const Vec4& q, double m, Space s) {
    auto cs = cylindrical_split(q, s);
    int sg = sigma(s);
    return 2.0 * m * Vec4(q[0] * cs.rho2, q[1] * cs.rho2, -sg * q[2] * cs.r2, -sg * q[3] * cs.r2);
}

std::vector<Vec4> grad_I(const Configuration& c) {
    std::vector<Vec4> g;
    g.reserve(c.size());
    for (const auto& b : c.bodies) g.push_back(grad_I_body(b.pos, b.mass, c.space));
    return g;
}

double locked_inertia(const Vec4& q, double m, double alpha, double beta, Space s) {
    double n = alpha * alpha + beta * beta;
    if (n == 0.0) throw Error(ErrorCode::ZeroGenerator, "alpha = beta = 0");
    double r2 = q[0] * q[0] + q[1] * q[1];
    if (s == Space::S3) return m * (alpha * alpha - beta * beta) * r2 / n + m * beta * beta / n;
    return m * r2 + m * beta * beta / n;
}

AxisDistanceIdentity axis_distance_identity(const Configuration& c) {
    AxisDistanceIdentity r{moment_of_inertia(c), 0.0};
    for (const auto& b : c.bodies) {
        // nearest point of the zw axis is the normalized zw-projection
        Vec4 h(0.0, 0.0, b.pos[2], b.pos[3]);
        double n2 = sigma(c.space) * inner(h, h, c.space);
        double d;
        if (n2 <= 1e-300) {
            d = std::numbers::pi / 2; // S3 body on the xy circle: equidistant from the zw circle
        } else {
            d = distance_unchecked(b.pos, h / std::sqrt(n2), c.space);
        }
        double s = sn(d, c.space);
        r.from_distances += b.mass * s * s;
    }
    return r;
}

} // namespace cnb
