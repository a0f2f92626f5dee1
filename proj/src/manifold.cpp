#include "cnb/manifold.hpp"

#include <cmath>

namespace cnb {

const char* to_string(Space s) { return s == Space::S3 ? "S3" : "H3"; }

Space space_from_string(const std::string& s) {
    if (s == "S3" || s == "s3") return Space::S3;
    if (s == "H3" || s == "h3") return Space::H3;
    throw Error(ErrorCode::InvalidInput, "unknown space '" + s + "'");
}

const char* to_string(ErrorCode c) {
    switch (c) {
    case ErrorCode::SingularPair: return "SingularPair";
    case ErrorCode::DegenerateVector: return "DegenerateVector";
    case ErrorCode::OffShell: return "OffShell";
    case ErrorCode::ZeroGenerator: return "ZeroGenerator";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularApproach: return "SingularApproach";
    case ErrorCode::NotACentralConfig: return "NotACentralConfig";
    case ErrorCode::InadmissibleBeta: return "InadmissibleBeta";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ParamOutOfDomain: return "ParamOutOfDomain";
    case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

double inner(const Vec4& a, const Vec4& b, Space s) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + sigma(s) * a[3] * b[3];
}

double sn(double d, Space s) { return s == Space::S3 ? std::sin(d) : std::sinh(d); }
double csn(double d, Space s) { return s == Space::S3 ? std::cos(d) : std::cosh(d); }
double ctn(double d, Space s) { return csn(d, s) / sn(d, s); }

double cos_distance(const Vec4& a, const Vec4& b, Space s) {
    double c = sigma(s) * inner(a, b, s);
    if (s == Space::S3) {
        if (c > 1.0) {
            if (c - 1.0 > tol::clamp) throw Error(ErrorCode::OffShell, "cos distance above 1");
            c = 1.0;
        } else if (c < -1.0) {
            if (-1.0 - c > tol::clamp) throw Error(ErrorCode::OffShell, "cos distance below -1");
            c = -1.0;
        }
    } else if (c < 1.0) {
        if (1.0 - c > tol::clamp) throw Error(ErrorCode::OffShell, "cosh distance below 1");
        c = 1.0;
    }
    return c;
}

double distance_unchecked(const Vec4& a, const Vec4& b, Space s) {
    double c = cos_distance(a, b, s);
    return s == Space::S3 ? std::acos(c) : std::acosh(c);
}

double distance(const Vec4& a, const Vec4& b, Space s) {
    double c = cos_distance(a, b, s);
    if (std::abs(c - 1.0) < tol::sing) throw Error(ErrorCode::SingularPair, "coincident points");
    if (s == Space::S3 && std::abs(c + 1.0) < tol::sing)
        throw Error(ErrorCode::SingularPair, "antipodal points");
    return s == Space::S3 ? std::acos(c) : std::acosh(c);
}

Vec4 project_point(const Vec4& v, Space s) {
    double n2 = sigma(s) * inner(v, v, s);
    if (!(n2 > 0.0) || !std::isfinite(n2))
        throw Error(ErrorCode::DegenerateVector, "vector cannot be normalized onto the space");
    if (s == Space::H3 && v[3] <= 0.0)
        throw Error(ErrorCode::DegenerateVector, "vector lies on the lower sheet");
    return v / std::sqrt(n2);
}

Vec4 project_tangent(const Vec4& q, const Vec4& v, Space s) {
    // q.q = sigma, so the normal component is sigma (q.v) q
    return v - sigma(s) * inner(q, v, s) * q;
}

bool on_shell(const Vec4& q, Space s, double eps) {
    if (std::abs(inner(q, q, s) - sigma(s)) > eps) return false;
    return s == Space::S3 || q[3] > 0.0;
}

Vec4 exp_map(const Vec4& q, const Vec4& v, Space s) {
    double n2 = inner(v, v, s);
    if (n2 <= 0.0) return q;
    double n = std::sqrt(n2);
    return csn(n, s) * q + sn(n, s) * (v / n);
}

Mat4 generator_matrix(const IsometryGenerator& g) {
    Mat4 m = Mat4::Zero();
    switch (g.kind) {
    case GeneratorKind::PosA:
        m(0, 1) = -g.alpha; m(1, 0) = g.alpha;
        m(2, 3) = -g.beta;  m(3, 2) = g.beta;
        break;
    case GeneratorKind::NegB:
        m(0, 1) = -g.alpha; m(1, 0) = g.alpha;
        m(2, 3) = g.beta;   m(3, 2) = g.beta;
        break;
    case GeneratorKind::ParC:
        m(1, 2) = -g.eta; m(1, 3) = g.eta;
        m(2, 1) = g.eta;  m(3, 1) = g.eta;
        break;
    }
    return m;
}

Mat4 isometry_matrix(const IsometryGenerator& g, double t) {
    Mat4 m = Mat4::Identity();
    switch (g.kind) {
    case GeneratorKind::PosA: {
        double ca = std::cos(g.alpha * t), sa = std::sin(g.alpha * t);
        double cb = std::cos(g.beta * t), sb = std::sin(g.beta * t);
        m(0, 0) = ca; m(0, 1) = -sa; m(1, 0) = sa; m(1, 1) = ca;
        m(2, 2) = cb; m(2, 3) = -sb; m(3, 2) = sb; m(3, 3) = cb;
        break;
    }
    case GeneratorKind::NegB: {
        double ca = std::cos(g.alpha * t), sa = std::sin(g.alpha * t);
        double cb = std::cosh(g.beta * t), sb = std::sinh(g.beta * t);
        m(0, 0) = ca; m(0, 1) = -sa; m(1, 0) = sa; m(1, 1) = ca;
        m(2, 2) = cb; m(2, 3) = sb; m(3, 2) = sb; m(3, 3) = cb;
        break;
    }
    case GeneratorKind::ParC: {
        // generator is nilpotent of order 3
        Mat4 xi = generator_matrix(g);
        m += t * xi + 0.5 * t * t * (xi * xi);
        break;
    }
    }
    return m;
}

Rescaled rescale_curvature(const Vec4& r, double kappa) {
    if (kappa == 0.0 || !std::isfinite(kappa))
        throw Error(ErrorCode::InvalidInput, "curvature must be nonzero");
    Space s = kappa > 0 ? Space::S3 : Space::H3;
    double lhs = r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + sigma(s) * r[3] * r[3];
    double rhs = 1.0 / kappa;
    if (std::abs(lhs - rhs) > tol::shell * std::max(1.0, std::abs(rhs)))
        throw Error(ErrorCode::OffShell, "point is not on the curvature-kappa space form");
    if (s == Space::H3 && r[3] <= 0.0)
        throw Error(ErrorCode::OffShell, "point lies on the lower sheet");
    double k = std::abs(kappa);
    return {std::sqrt(k) * r, std::pow(k, 0.75)};
}

} // namespace cnb
