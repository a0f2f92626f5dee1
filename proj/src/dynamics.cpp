#include "cnb/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace cnb {

double Configuration::total_mass() const {
    double m = 0.0;
    for (const auto& b : bodies) m += b.mass;
    return m;
}

Configuration make_config(Space s, const std::vector<double>& masses, const std::vector<Vec4>& points) {
    if (masses.size() != points.size())
        throw Error(ErrorCode::InvalidInput, "masses and points differ in length");
    Configuration c;
    c.space = s;
    c.bodies.reserve(masses.size());
    for (std::size_t i = 0; i < masses.size(); ++i) c.bodies.push_back({masses[i], points[i]});
    return c;
}

void validate(const Configuration& c, double shell_tol) {
    if (c.size() < 2) throw Error(ErrorCode::InvalidInput, "need at least two bodies");
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (!(c.mass(i) > 0.0) || !std::isfinite(c.mass(i)))
            throw Error(ErrorCode::InvalidInput, "body " + std::to_string(i) + " has nonpositive mass");
        if (!on_shell(c.pos(i), c.space, shell_tol))
            throw Error(ErrorCode::OffShell, "body " + std::to_string(i) + " is not on " + to_string(c.space));
    }
    if (is_singular(c)) throw Error(ErrorCode::SingularPair, "configuration has a collision or antipodal pair");
}

bool is_singular(const Configuration& c) {
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            double s = sigma(c.space) * inner(c.pos(i), c.pos(j), c.space);
            if (std::abs(s - 1.0) < tol::sing) return true;
            if (c.space == Space::S3 && std::abs(s + 1.0) < tol::sing) return true;
        }
    return false;
}

double ConservedSet::max_abs_diff(const ConservedSet& o) const {
    double d = std::abs(energy - o.energy);
    d = std::max(d, std::abs(omega_xy - o.omega_xy));
    d = std::max(d, std::abs(omega_xz - o.omega_xz));
    d = std::max(d, std::abs(omega_xw - o.omega_xw));
    d = std::max(d, std::abs(omega_yz - o.omega_yz));
    d = std::max(d, std::abs(omega_yw - o.omega_yw));
    d = std::max(d, std::abs(omega_zw - o.omega_zw));
    return d;
}

namespace {

struct PairTrig {
    double c; // csn d
    double s; // sn d
};

PairTrig pair_trig(const Vec4& a, const Vec4& b, Space sp) {
    // distance() performs the singularity check
    double d = distance(a, b, sp);
    (void)d;
    double c = cos_distance(a, b, sp);
    double s = sp == Space::S3 ? std::sqrt(std::max(0.0, 1.0 - c * c)) : std::sqrt(std::max(0.0, c * c - 1.0));
    return {c, s};
}

} // namespace

double force_function(const Configuration& c) {
    double u = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            auto t = pair_trig(c.pos(i), c.pos(j), c.space);
            u += c.mass(i) * c.mass(j) * t.c / t.s;
        }
    return u;
}

Vec4 pair_force(std::size_t i, std::size_t j, const Configuration& c) {
    auto t = pair_trig(c.pos(i), c.pos(j), c.space);
    return c.mass(i) * c.mass(j) * (c.pos(j) - t.c * c.pos(i)) / (t.s * t.s * t.s);
}

std::vector<Vec4> grad_U(const Configuration& c) {
    std::vector<Vec4> g(c.size(), Vec4::Zero());
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            auto t = pair_trig(c.pos(i), c.pos(j), c.space);
            double k = c.mass(i) * c.mass(j) / (t.s * t.s * t.s);
            g[i] += k * (c.pos(j) - t.c * c.pos(i));
            g[j] += k * (c.pos(i) - t.c * c.pos(j));
        }
    return g;
}

PhaseDerivative eom_rhs(const PhaseState& s) {
    const auto& c = s.config;
    PhaseDerivative d;
    d.qdot.resize(c.size());
    d.pdot = grad_U(c);
    int sg = sigma(c.space);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Vec4 v = s.momenta[i] / c.mass(i);
        d.qdot[i] = v;
        d.pdot[i] -= sg * c.mass(i) * inner(v, v, c.space) * c.pos(i);
    }
    return d;
}

namespace {

PhaseState axpy(const PhaseState& s, double h, const PhaseDerivative& k) {
    PhaseState r = s;
    for (std::size_t i = 0; i < s.config.size(); ++i) {
        r.config.bodies[i].pos += h * k.qdot[i];
        r.momenta[i] += h * k.pdot[i];
    }
    return r;
}

} // namespace

PhaseState rk4_step_raw(const PhaseState& s, double dt) {
    auto k1 = eom_rhs(s);
    auto k2 = eom_rhs(axpy(s, 0.5 * dt, k1));
    auto k3 = eom_rhs(axpy(s, 0.5 * dt, k2));
    auto k4 = eom_rhs(axpy(s, dt, k3));
    PhaseState r = s;
    for (std::size_t i = 0; i < s.config.size(); ++i) {
        r.config.bodies[i].pos += dt / 6.0 * (k1.qdot[i] + 2.0 * k2.qdot[i] + 2.0 * k3.qdot[i] + k4.qdot[i]);
        r.momenta[i] += dt / 6.0 * (k1.pdot[i] + 2.0 * k2.pdot[i] + 2.0 * k3.pdot[i] + k4.pdot[i]);
    }
    return r;
}

PhaseState rk4_step(const PhaseState& s0, double dt) {
    PhaseState s = rk4_step_raw(s0, dt);
    Space sp = s.config.space;
    for (std::size_t i = 0; i < s.config.size(); ++i) {
        Vec4& q = s.config.bodies[i].pos;
        q = project_point(q, sp);
        s.momenta[i] = project_tangent(q, s.momenta[i], sp);
    }
    if (is_singular(s.config)) throw Error(ErrorCode::SingularPair, "pair entered the singular set");
    return s;
}

Trajectory integrate(const PhaseState& s0, double dt, long steps, long record_every) {
    if (!(dt > 0.0) || steps < 0 || record_every < 1)
        throw Error(ErrorCode::InvalidInput, "integrate needs dt > 0, steps >= 0, record_every >= 1");
    Trajectory tr;
    tr.times.push_back(0.0);
    tr.states.push_back(s0);
    PhaseState s = s0;
    for (long n = 1; n <= steps; ++n) {
        try {
            s = rk4_step(s, dt);
        } catch (const Error& e) {
            tr.singular_encounter = "SingularEncounter at t=" + std::to_string((n - 1) * dt) + ": " + e.what();
            return tr;
        }
        if (n % record_every == 0 || n == steps) {
            tr.times.push_back(n * dt);
            tr.states.push_back(s);
        }
    }
    return tr;
}

ConservedSet conserved(const PhaseState& s, KineticConvention kc) {
    const auto& c = s.config;
    ConservedSet r;
    double t = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        double m = c.mass(i);
        const Vec4& q = c.pos(i);
        Vec4 v = s.momenta[i] / m;
        t += m * inner(v, v, c.space);
        r.omega_xy += m * (v[0] * q[1] - q[0] * v[1]);
        r.omega_xz += m * (v[0] * q[2] - q[0] * v[2]);
        r.omega_xw += m * (v[0] * q[3] - q[0] * v[3]);
        r.omega_yz += m * (v[1] * q[2] - q[1] * v[2]);
        r.omega_yw += m * (v[1] * q[3] - q[1] * v[3]);
        r.omega_zw += m * (v[2] * q[3] - q[2] * v[3]);
    }
    if (kc == KineticConvention::Halved) t *= 0.5;
    r.energy = t - force_function(c);
    return r;
}

} // namespace cnb
