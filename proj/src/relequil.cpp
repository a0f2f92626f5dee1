#include "cnb/relequil.hpp"

#include <cmath>
#include <numeric>

namespace cnb {

const char* to_string(FamilyConstraint c) {
    switch (c) {
    case FamilyConstraint::BetaSqMinusAlphaSq: return "beta^2-alpha^2=2lambda";
    case FamilyConstraint::AlphaSqPlusBetaSq: return "alpha^2+beta^2=-2lambda";
    case FamilyConstraint::Unconstrained: return "unconstrained";
    case FamilyConstraint::EqualMagnitude: return "beta^2=alpha^2";
    }
    return "unknown";
}

const char* to_string(REType t) {
    switch (t) {
    case REType::FixedPoint: return "fixed point";
    case REType::PositiveElliptic: return "positive elliptic";
    case REType::PositiveEllipticElliptic: return "positive elliptic-elliptic";
    case REType::NegativeElliptic: return "negative elliptic";
    case REType::NegativeHyperbolic: return "negative hyperbolic";
    case REType::NegativeEllipticHyperbolic: return "negative elliptic-hyperbolic";
    }
    return "unknown";
}

const char* to_string(Periodicity p) {
    switch (p) {
    case Periodicity::Periodic: return "periodic";
    case Periodicity::QuasiPeriodic: return "quasi-periodic";
    case Periodicity::Aperiodic: return "aperiodic";
    case Periodicity::Undetermined: return "undetermined";
    }
    return "unknown";
}

REFamily re_family_from_cc(const CCReport& report, const Configuration& c, double tol) {
    if (!(cc_residual(c, report.lambda).max < tol))
        throw Error(ErrorCode::NotACentralConfig, "configuration is not a central configuration at this lambda");
    REFamily f{c.space, report.lambda, FamilyConstraint::BetaSqMinusAlphaSq};
    if (c.space == Space::H3) {
        if (!(report.lambda < 0.0))
            throw Error(ErrorCode::NotACentralConfig, "central configurations on H3 have lambda < 0");
        f.constraint = FamilyConstraint::AlphaSqPlusBetaSq;
        return f;
    }
    if (is_special_cc(c, tol)) {
        f.lambda = 0.0;
        bool all_axes = true;
        for (const auto& b : c.bodies) {
            double r = std::hypot(b.pos[0], b.pos[1]);
            if (r > 1e-9 && r < 1.0 - 1e-9) all_axes = false;
        }
        f.constraint = all_axes ? FamilyConstraint::Unconstrained : FamilyConstraint::EqualMagnitude;
    }
    return f;
}

REType classify_re(Space s, double alpha, double beta) {
    bool a = alpha != 0.0, b = beta != 0.0;
    if (!a && !b) return REType::FixedPoint;
    if (s == Space::S3) return (a && b) ? REType::PositiveEllipticElliptic : REType::PositiveElliptic;
    if (a && b) return REType::NegativeEllipticHyperbolic;
    return a ? REType::NegativeElliptic : REType::NegativeHyperbolic;
}

REInstance pick_member(const REFamily& f, const Configuration& base, double beta, std::optional<double> alpha) {
    double a = 0.0;
    switch (f.constraint) {
    case FamilyConstraint::BetaSqMinusAlphaSq: {
        double a2 = beta * beta - 2.0 * f.lambda;
        if (a2 < 0.0) throw Error(ErrorCode::InadmissibleBeta, "beta^2 < 2 lambda");
        a = std::sqrt(a2);
        break;
    }
    case FamilyConstraint::AlphaSqPlusBetaSq: {
        double a2 = -2.0 * f.lambda - beta * beta;
        if (a2 < -1e-15) throw Error(ErrorCode::InadmissibleBeta, "beta^2 > -2 lambda");
        a = std::sqrt(std::max(0.0, a2));
        break;
    }
    case FamilyConstraint::EqualMagnitude: a = std::abs(beta); break;
    case FamilyConstraint::Unconstrained:
        if (!alpha) throw Error(ErrorCode::InadmissibleBeta, "unconstrained family needs alpha as well");
        a = std::abs(*alpha);
        break;
    }
    REInstance r;
    r.base = base;
    r.lambda = f.lambda;
    r.generator = {f.space == Space::S3 ? GeneratorKind::PosA : GeneratorKind::NegB, a, beta, 0.0};
    r.type = classify_re(f.space, a, beta);
    if (f.space == Space::H3 && beta != 0.0)
        r.periodicity = Periodicity::Aperiodic;
    else if (a == 0.0 || beta == 0.0)
        r.periodicity = Periodicity::Periodic;
    else
        r.periodicity = Periodicity::Undetermined;
    return r;
}

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool perfect_square(i128 v) {
    if (v < 0) return false;
    auto r = static_cast<i128>(std::sqrt(static_cast<long double>(v)));
    for (i128 k = (r > 2 ? r - 2 : 0); k <= r + 2; ++k)
        if (k * k == v) return true;
    return false;
}

} // namespace

Periodicity exact_periodicity(Space s, Rational lambda, Rational beta_sq) {
    if (lambda.den == 0 || beta_sq.den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator");
    if (beta_sq.num == 0) return Periodicity::Periodic;
    if (s == Space::H3) {
        // alpha = 0 is a pure boost orbit; otherwise elliptic-hyperbolic
        return Periodicity::Aperiodic;
    }
    // alpha^2 / beta^2 = (p b - 2 a q) / (b p) with beta^2 = p/q, lambda = a/b
    i128 p = beta_sq.num, q = beta_sq.den, a = lambda.num, b = lambda.den;
    i128 num = p * b - 2 * a * q;
    i128 den = b * p;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num < 0) throw Error(ErrorCode::InadmissibleBeta, "beta^2 < 2 lambda");
    if (num == 0) return Periodicity::Periodic;
    i128 g = gcd128(num, den);
    num /= g;
    den /= g;
    return perfect_square(num) && perfect_square(den) ? Periodicity::Periodic : Periodicity::QuasiPeriodic;
}

std::vector<double> re_criterion_residual(const Configuration& c, double alpha, double beta) {
    IsometryGenerator g{c.space == Space::S3 ? GeneratorKind::PosA : GeneratorKind::NegB, alpha, beta, 0.0};
    Mat4 xi = generator_matrix(g);
    Mat4 xi2 = xi * xi;
    auto gu = grad_U(c);
    std::vector<double> out;
    out.reserve(4 * c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Vec4& q = c.pos(i);
        double m = c.mass(i);
        Vec4 v = xi * q;
        Vec4 r = m * (xi2 * q) + sigma(c.space) * m * inner(v, v, c.space) * q - gu[i];
        for (int k = 0; k < 4; ++k) out.push_back(r[k]);
    }
    return out;
}

PhaseState re_initial_state(const REInstance& inst) {
    PhaseState s{inst.base, {}};
    Mat4 xi = generator_matrix(inst.generator);
    for (const auto& b : inst.base.bodies) s.momenta.push_back(b.mass * (xi * b.pos));
    return s;
}

namespace {

// Antisymmetric matrix W = sum m (v q^T - q v^T); entry (a, b) is omega_ab.
Mat4 omega_matrix(const PhaseState& s) {
    Mat4 w = Mat4::Zero();
    for (std::size_t i = 0; i < s.config.size(); ++i) {
        const Vec4& q = s.config.pos(i);
        Vec4 v = s.momenta[i] / s.config.mass(i);
        w += s.config.mass(i) * (v * q.transpose() - q * v.transpose());
    }
    return w;
}

// Equations of motion in the frame moving with Q(t): q = Q x, p = Q pi gives
// xdot = pi/m - xi x and pidot = F(x, pi) - xi pi. An RE is a fixed point of
// this field, so RK4 reproduces it up to roundoff. Collinear hyperbolic REs are
// linearly unstable and in the lab frame the O(dt^4) truncation error alone
// grows past 1e-6 by t = 10.
PhaseState comoving_rk4_step(const PhaseState& s, const Mat4& xi, double dt) {
    auto rhs = [&](const PhaseState& st) {
        PhaseDerivative d = eom_rhs(st);
        for (std::size_t i = 0; i < st.config.size(); ++i) {
            d.qdot[i] -= xi * st.config.pos(i);
            d.pdot[i] -= xi * st.momenta[i];
        }
        return d;
    };
    auto shifted = [&](const PhaseDerivative& d, double h) {
        PhaseState out = s;
        for (std::size_t i = 0; i < s.config.size(); ++i) {
            out.config.bodies[i].pos += h * d.qdot[i];
            out.momenta[i] += h * d.pdot[i];
        }
        return out;
    };
    PhaseDerivative k1 = rhs(s);
    PhaseDerivative k2 = rhs(shifted(k1, dt / 2));
    PhaseDerivative k3 = rhs(shifted(k2, dt / 2));
    PhaseDerivative k4 = rhs(shifted(k3, dt));
    PhaseState out = s;
    const Space sp = s.config.space;
    for (std::size_t i = 0; i < s.config.size(); ++i) {
        Vec4& q = out.config.bodies[i].pos;
        q += dt / 6 * (k1.qdot[i] + 2 * k2.qdot[i] + 2 * k3.qdot[i] + k4.qdot[i]);
        out.momenta[i] += dt / 6 * (k1.pdot[i] + 2 * k2.pdot[i] + 2 * k3.pdot[i] + k4.pdot[i]);
        q = project_point(q, sp);
        out.momenta[i] = project_tangent(q, out.momenta[i], sp);
    }
    if (is_singular(out.config)) throw Error(ErrorCode::SingularPair, "pair entered the singular set");
    return out;
}

} // namespace

RigidityReport certify_rigidity(const REInstance& inst, double horizon, double dt, KineticConvention kc) {
    if (!(dt > 0.0) || !(horizon >= 0.0)) throw Error(ErrorCode::InvalidInput, "need dt > 0 and horizon >= 0");
    const PhaseState s0 = re_initial_state(inst);
    const auto& c0 = s0.config;
    const Space sp = c0.space;
    const long steps = std::lround(horizon / dt);
    const Mat4 xi = generator_matrix(inst.generator);
    const double e0 = conserved(s0, kc).energy;
    const Mat4 w0 = omega_matrix(s0);

    std::vector<double> d0;
    for (std::size_t i = 0; i < c0.size(); ++i)
        for (std::size_t j = i + 1; j < c0.size(); ++j) d0.push_back(distance_unchecked(c0.pos(i), c0.pos(j), sp));

    RigidityReport rep;
    PhaseState s = s0;
    for (long n = 1; n <= steps; ++n) {
        try {
            s = comoving_rk4_step(s, xi, dt);
        } catch (const Error& e) {
            rep.singular_encounter = "SingularEncounter at t=" + std::to_string((n - 1) * dt) + ": " + e.what();
            return rep;
        }
        const Mat4 Q = isometry_matrix(inst.generator, n * dt);
        std::size_t k = 0;
        for (std::size_t i = 0; i < c0.size(); ++i) {
            rep.orbit_deviation = std::max(rep.orbit_deviation, (Q * (s.config.pos(i) - c0.pos(i))).norm());
            for (std::size_t j = i + 1; j < c0.size(); ++j, ++k) {
                double d = distance_unchecked(s.config.pos(i), s.config.pos(j), sp);
                rep.max_distance_drift = std::max(rep.max_distance_drift, std::abs(d - d0[k]));
            }
        }
        // W0 commutes with the flow of the generator, so the lab frame change
        // of omega is Q (W - W0) Q^T
        Mat4 dw = Q * (omega_matrix(s) - w0) * Q.transpose();
        double drift = std::abs(conserved(s, kc).energy - e0);
        drift = std::max(drift, dw.cwiseAbs().maxCoeff());
        rep.conserved_drift = std::max(rep.conserved_drift, drift);
    }
    return rep;
}

} // namespace cnb
