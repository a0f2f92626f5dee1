#pragma once

#include "cnb/dynamics.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cnb {

enum class CCClass { Geodesic, SphereS2, HyperbolicH2, FullS3, FullH3 };

const char* to_string(CCClass c);

struct CCReport {
    double lambda = 0.0;
    double residual_max = 0.0;
    bool is_special = false;
    CCClass cc_class = CCClass::Geodesic;
    std::array<double, 4> orth{};
    double I = 0.0;
    double U = 0.0;
    Configuration config;
};

struct CCResidual {
    std::vector<Vec4> entries; // grad U - lambda grad I per body
    double max = 0.0;          // max Euclidean norm over bodies
};

CCResidual cc_residual(const Configuration& c, double lambda);

// Ratio of sums: pair terms over i < j divided by 2 sum m r^2 rho^2.
// Throws DegenerateDenominator when every body sits on an axis.
double lambda_estimate(const Configuration& c);

bool is_special_cc(const Configuration& c, double tol = 1e-10);

// Per body three scalars. Off-axis bodies: radial equation (scaled by m_i),
// xy determinant and zw determinant. Bodies on an axis: three components of
// grad U, dropping the one matching the largest |coordinate| of q_i.
std::vector<double> criterion_residual(const Configuration& c, double lambda);

// sum m x z, sum m x w, sum m y z, sum m y w
std::array<double, 4> orthogonality_relations(const Configuration& c);

CCClass classify(const Configuration& c, double eps_flat = tol::flat);

struct Canonical {
    Configuration config;
    Mat4 transform; // config = transform * input, body by body
};

Canonical canonicalize(const Configuration& c);

// Max coordinate difference between canonical forms.
double canonical_distance(const Configuration& a, const Configuration& b);

// Fills a report with lambda from lambda_estimate (0 when every body is on an
// axis), residuals and diagnostics.
CCReport make_report(const Configuration& c, double special_tol = 1e-10);

struct LevelSetSpec {
    double c = 0.0;
    double tol = 1e-10;
};

// Throws InvalidInput if I = c is not a smooth level set for these masses.
void validate_level_set(const std::vector<double>& masses, Space s, const LevelSetSpec& spec);

// Pushes positions along grad I until I = c.
void restore_level(Configuration& c, double target);

enum class SeedLayout {
    Default, // S3: S2_xyz near the north pole; H3: the xw geodesic
    Plane,   // S3: S2_xyz near the north pole; H3: H2_xyw
};

Configuration seed_config(const std::vector<double>& masses, Space s, double c, std::uint64_t seed,
                          SeedLayout layout = SeedLayout::Default);

struct FindOptions {
    int max_descent = 20000;
    int max_polish = 200;
    bool saddle = false; // skip descent on U, minimize the residual only
};

struct FindResult {
    Configuration config;
    CCReport report;
    int iterations = 0;
};

FindResult find_cc(const std::vector<double>& masses, Space s, const LevelSetSpec& spec,
                   const Configuration& seed, const FindOptions& opt = {});

// Runs find_cc from several seeds concurrently and keeps one result per
// equivalence class, ordered by the seed that first reached it.
std::vector<FindResult> find_cc_multi(const std::vector<double>& masses, Space s, const LevelSetSpec& spec,
                                      int seeds, std::uint64_t base_seed, SeedLayout layout = SeedLayout::Default,
                                      const FindOptions& opt = {});

} // namespace cnb
