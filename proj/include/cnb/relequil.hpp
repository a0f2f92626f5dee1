#pragma once

#include "cnb/centralconfig.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cnb {

enum class FamilyConstraint {
    BetaSqMinusAlphaSq, // S3 ordinary: beta^2 - alpha^2 = 2 lambda
    AlphaSqPlusBetaSq,  // H3: alpha^2 + beta^2 = -2 lambda
    Unconstrained,      // S3 special, every body on S1_xy or S1_zw
    EqualMagnitude,     // S3 special with a body off the axes: beta^2 = alpha^2
};

const char* to_string(FamilyConstraint c);

struct REFamily {
    Space space = Space::S3;
    double lambda = 0.0;
    FamilyConstraint constraint = FamilyConstraint::BetaSqMinusAlphaSq;
};

enum class REType {
    FixedPoint, // alpha = beta = 0 at a special CC
    PositiveElliptic,
    PositiveEllipticElliptic,
    NegativeElliptic,
    NegativeHyperbolic,
    NegativeEllipticHyperbolic,
};

const char* to_string(REType t);

enum class Periodicity { Periodic, QuasiPeriodic, Aperiodic, Undetermined };

const char* to_string(Periodicity p);

struct REInstance {
    Configuration base;
    double lambda = 0.0;
    IsometryGenerator generator;
    REType type = REType::FixedPoint;
    Periodicity periodicity = Periodicity::Undetermined;
};

REFamily re_family_from_cc(const CCReport& report, const Configuration& c, double tol = 1e-9);

REType classify_re(Space s, double alpha, double beta);

// alpha >= 0 is solved from the family constraint. For Unconstrained families
// alpha must be supplied.
REInstance pick_member(const REFamily& family, const Configuration& base, double beta,
                       std::optional<double> alpha = std::nullopt);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

// Exact periodicity of the orbit from rational lambda and beta^2. On S3 the
// orbit closes iff alpha/beta is rational, i.e. iff (beta^2 - 2 lambda)/beta^2
// is the square of a rational.
Periodicity exact_periodicity(Space s, Rational lambda, Rational beta_sq);

// Per body 4-vector m_i xi^2 q_i + sigma m_i <xi q_i, xi q_i> q_i - grad U_i,
// the equations of motion along Q(t)q at t = 0 (flattened, 4N values).
std::vector<double> re_criterion_residual(const Configuration& c, double alpha, double beta);

PhaseState re_initial_state(const REInstance& inst);

struct RigidityReport {
    double max_distance_drift = 0.0;
    double conserved_drift = 0.0;
    double orbit_deviation = 0.0; // max |q_i(t) - Q(t) q_i| over samples
    std::optional<std::string> singular_encounter;
};

RigidityReport certify_rigidity(const REInstance& inst, double horizon = 10.0, double dt = 1e-3,
                                KineticConvention kc = KineticConvention::Unhalved);

} // namespace cnb
