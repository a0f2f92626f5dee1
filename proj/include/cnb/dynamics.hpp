#pragma once

#include "cnb/manifold.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cnb {

struct Body {
    double mass = 1.0;
    Vec4 pos = Vec4::Zero();
};

struct Configuration {
    Space space = Space::S3;
    std::vector<Body> bodies;

    std::size_t size() const { return bodies.size(); }
    double mass(std::size_t i) const { return bodies[i].mass; }
    const Vec4& pos(std::size_t i) const { return bodies[i].pos; }
    double total_mass() const;
};

Configuration make_config(Space s, const std::vector<double>& masses, const std::vector<Vec4>& points);

// Throws InvalidInput / OffShell / SingularPair if the configuration is not a
// valid point of the configuration space.
void validate(const Configuration& c, double shell_tol = 1e-9);
bool is_singular(const Configuration& c);

struct PhaseState {
    Configuration config;
    std::vector<Vec4> momenta; // p_i = m_i qdot_i
};

struct ConservedSet {
    double energy = 0.0;
    double omega_xy = 0.0, omega_xz = 0.0, omega_xw = 0.0;
    double omega_yz = 0.0, omega_yw = 0.0, omega_zw = 0.0;

    double max_abs_diff(const ConservedSet& o) const;
};

// Kinetic term used in H = T - U. Unhalved is sum m qdot.qdot; Halved adds the
// factor 1/2, which is the normalization conserved by the equations of motion
// on generic trajectories.
enum class KineticConvention { Unhalved, Halved };

double force_function(const Configuration& c);
Vec4 pair_force(std::size_t i, std::size_t j, const Configuration& c);
std::vector<Vec4> grad_U(const Configuration& c);

struct PhaseDerivative {
    std::vector<Vec4> qdot;
    std::vector<Vec4> pdot;
};

PhaseDerivative eom_rhs(const PhaseState& s);

struct Trajectory {
    std::vector<double> times;
    std::vector<PhaseState> states;
    // Set when a pair entered the singular set; states hold the partial run.
    std::optional<std::string> singular_encounter;
};

// Fixed-step RK4 with positions and momenta projected back after each step.
// record_every controls the sampling of the returned trajectory; the final
// state is always recorded.
Trajectory integrate(const PhaseState& s0, double dt, long steps, long record_every = 1);

// One RK4 step without projection.
PhaseState rk4_step_raw(const PhaseState& s, double dt);

// One RK4 step followed by projection. Throws SingularPair if a pair lands in
// the singular set.
PhaseState rk4_step(const PhaseState& s, double dt);

ConservedSet conserved(const PhaseState& s, KineticConvention kc = KineticConvention::Unhalved);

} // namespace cnb
