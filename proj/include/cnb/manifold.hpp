#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace cnb {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// Sign of the ambient bilinear form: +1 on the unit 3-sphere, -1 on the
// unit hyperboloid sheet with w > 0.
enum class Space { S3, H3 };

inline int sigma(Space s) { return s == Space::S3 ? 1 : -1; }
const char* to_string(Space s);
Space space_from_string(const std::string& s);

namespace tol {
inline constexpr double sing = 1e-9;   // collision / antipodal guard on sigma*q_i.q_j
inline constexpr double clamp = 1e-12; // admissible roundoff past the distance domain
inline constexpr double mass = 1e-10;
inline constexpr double flat = 1e-9;
inline constexpr double shell = 1e-10;
} // namespace tol

enum class ErrorCode {
    SingularPair,
    DegenerateVector,
    OffShell,
    ZeroGenerator,
    DegenerateDenominator,
    NoConvergence,
    SingularApproach,
    NotACentralConfig,
    InadmissibleBeta,
    OutOfRange,
    ParamOutOfDomain,
    InvalidInput,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

// x x' + y y' + z z' + sigma w w'
double inner(const Vec4& a, const Vec4& b, Space s);

// sin/cos/cot on S3, sinh/cosh/coth on H3
double sn(double d, Space s);
double csn(double d, Space s);
double ctn(double d, Space s);

// Geodesic distance. Throws SingularPair for coincident (or, on S3,
// antipodal) points.
double distance(const Vec4& a, const Vec4& b, Space s);
// Same, without the singularity guard. Used where a zero distance is legal.
double distance_unchecked(const Vec4& a, const Vec4& b, Space s);
// sigma*a.b clamped into the domain of arccos / arccosh.
double cos_distance(const Vec4& a, const Vec4& b, Space s);

Vec4 project_point(const Vec4& v, Space s);
Vec4 project_tangent(const Vec4& q, const Vec4& v, Space s);
bool on_shell(const Vec4& q, Space s, double eps = tol::shell);

// Riemannian exponential at q for a tangent vector v.
Vec4 exp_map(const Vec4& q, const Vec4& v, Space s);

enum class GeneratorKind { PosA, NegB, ParC };

struct IsometryGenerator {
    GeneratorKind kind = GeneratorKind::PosA;
    double alpha = 0.0;
    double beta = 0.0;
    double eta = 0.0;
};

Mat4 generator_matrix(const IsometryGenerator& g);
// exp(t * generator_matrix(g)), in closed form.
Mat4 isometry_matrix(const IsometryGenerator& g, double t);

struct Rescaled {
    Vec4 point;
    double time_factor;
};

// Maps a point of the curvature-kappa space form to the unit one. Time
// rescales by |kappa|^(3/4).
Rescaled rescale_curvature(const Vec4& r, double kappa);

} // namespace cnb
