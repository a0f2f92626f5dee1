// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "cnb/centralconfig.hpp"
#include "cnb/fixtures.hpp"
#include "cnb/inertia.hpp"
#include "cnb/moulton.hpp"
#include "cnb/relequil.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace cnb;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects the worst value seen for a named quantity and whether every check held.
class Tally {
public:
    void check(bool ok, const std::string& what) {
        if (!ok && pass_) {
            pass_ = false;
            first_failure_ = what;
        }
    }
    void worst(const std::string& name, double v) {
        for (auto& [n, w] : worst_)
            if (n == name) {
                w = std::max(w, v);
                return;
            }
        worst_.emplace_back(name, v);
    }
    Outcome outcome() const {
        std::ostringstream os;
        os.precision(3);
        for (std::size_t k = 0; k < worst_.size(); ++k) os << (k ? ", " : "") << worst_[k].first << "=" << worst_[k].second;
        if (!pass_) os << (worst_.empty() ? "" : "; ") << "first failure: " << first_failure_;
        return {pass_, os.str()};
    }

private:
    bool pass_ = true;
    std::string first_failure_;
    std::vector<std::pair<std::string, double>> worst_;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_grad_u(const Configuration& c) {
    double m = 0.0;
    for (const auto& g : grad_U(c)) m = std::max(m, g.norm());
    return m;
}

Configuration transformed(const Configuration& c, const Mat4& m) {
    auto out = c;
    for (auto& b : out.bodies) b.pos = m * b.pos;
    return out;
}

Configuration swap_planes(const Configuration& c) {
    auto out = c;
    for (auto& b : out.bodies) b.pos = Vec4(b.pos[2], b.pos[3], b.pos[0], b.pos[1]);
    return out;
}

REFamily family_of(const Configuration& c) { return re_family_from_cc(make_report(c), c); }

Outcome lambda_reproduction() {
    Tally t;
    double e1 = lambda_estimate(fixtures::example1_s3().config);
    double e2 = lambda_estimate(fixtures::example2_h3().config);
    double g = lambda_estimate(fixtures::geodesic_s1_equilateral(2, 1, 3).config);
    t.worst("err_ex1", std::abs(e1 + 0.5));
    t.worst("err_ex2", std::abs(e2 + 0.5));
    t.worst("err_213", std::abs(g + 8.0 / 3));
    t.check(std::abs(e1 + 0.5) < 1e-10, "example 1");
    t.check(std::abs(e2 + 0.5) < 1e-10, "example 2");
    t.check(std::abs(g + 8.0 / 3) < 1e-10, "(2,1,3) geodesic");
    return t.outcome();
}

Outcome closed_form_families() {
    Tally t;
    const double m = 1.3;
    for (int k = 1; k <= 20; ++k) {
        double r = k / 21.0;
        double ls = -m / (2 * std::sqrt(3.0) * r * r * r * std::pow(1 - 0.75 * r * r, 1.5));
        double lh = -m / (2 * std::sqrt(3.0) * r * r * r * std::pow(1 + 0.75 * r * r, 1.5));
        double w = std::sqrt(1 + r * r);
        double lg = -(m / (2 * r * r * r)) * (1 / w + 1 / (4 * w * w * w));
        double es = rel(lambda_estimate(fixtures::lagrangian_s2(m, r).config), ls);
        double eh = rel(lambda_estimate(fixtures::lagrangian_h2(m, r).config), lh);
        double eg = rel(lambda_estimate(fixtures::geodesic_h1(m, r).config), lg);
        t.worst("rel_ring_s", es);
        t.worst("rel_ring_h", eh);
        t.worst("rel_geod_h", eg);
        t.check(es < 1e-9 && eh < 1e-9 && eg < 1e-9, "closed form at r=" + std::to_string(r));
    }
    for (int k = 1; k < 40; ++k) {
        double z = -1 + k / 20.0;
        if (z == 0) continue;
        double lam = lambda_estimate(fixtures::geodesic_s1_isosceles(1, z).config);
        bool ok = z < -0.5 ? lam > 0 : z > -0.5 ? lam < 0 : std::abs(lam) < 1e-12;
        t.check(ok, "isosceles sign at z=" + std::to_string(z));
    }
    return t.outcome();
}

Outcome special_ccs() {
    Tally t;
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.2, pi - 0.2);
    std::vector<Fixture> fs;
    while (fs.size() < 3) {
        double a = u(rng), b = u(rng);
        if (a + b > pi + 0.2 && a + b < 2 * pi - 0.2) fs.push_back(fixtures::acute_triangle_s1(a, b));
    }
    fs.push_back(fixtures::tetrahedron_s2());
    fs.push_back(fixtures::pentatope_s3());
    fs.push_back(fixtures::double_triangle_s3());
    for (const auto& f : fs) {
        double g = max_grad_u(f.config);
        t.worst("max_grad_U", g);
        t.check(g < 1e-11, f.name);
    }
    return t.outcome();
}

Outcome re_rigidity() {
    Tally t;
    auto e1 = fixtures::example1_s3().config;
    auto e2 = fixtures::example2_h3().config;
    std::vector<std::pair<std::string, REInstance>> res{
        {"A_{1,0}", pick_member(family_of(e1), e1, 0.0)},
        {"A_{sqrt2,1}", pick_member(family_of(e1), e1, 1.0)},
        {"B_{1,0}", pick_member(family_of(e2), e2, 0.0)},
        {"B_{0,1}", pick_member(family_of(e2), e2, 1.0)},
        {"B_{1/2,sqrt3/2}", pick_member(family_of(e2), e2, std::sqrt(3.0) / 2)},
    };
    for (const auto& [name, inst] : res) {
        auto r = certify_rigidity(inst, 10.0, 1e-3);
        t.worst("distance_drift", r.max_distance_drift);
        t.worst("conserved_drift", r.conserved_drift);
        t.check(!r.singular_encounter && r.max_distance_drift < 1e-6 && r.conserved_drift < 1e-8, name);
    }
    return t.outcome();
}

Outcome criteria_equivalence() {
    Tally t;
    const double tol = 1e-9;
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Configuration> cs;
    for (const auto& f : fixtures::all()) cs.push_back(f.config);
    for (int k = 0; k < 200; ++k) cs.push_back(oracle::random_config(rng, k % 2 ? Space::H3 : Space::S3, 3 + k % 3));
    int agree = 0, passing = 0;
    for (const auto& c : cs) {
        bool special = is_special_cc(c, 1e-10);
        double lam = special ? 0.0 : lambda_estimate(c);
        bool a = cc_residual(c, lam).max < tol;
        bool b = max_abs(criterion_residual(c, lam)) < tol;
        double alpha, beta;
        if (c.space == Space::S3) {
            beta = std::max(u(rng), std::sqrt(std::max(0.0, 2 * lam)) + 0.1);
            alpha = special ? beta : std::sqrt(beta * beta - 2 * lam);
        } else {
            beta = std::sqrt(-2 * lam) * u(rng);
            alpha = std::sqrt(std::max(0.0, -2 * lam - beta * beta));
        }
        bool r = max_abs(re_criterion_residual(c, alpha, beta)) < tol;
        passing += a;
        if (a == b && b == r) ++agree;
        t.check(a == b && b == r, "disagreement on a " + std::string(to_string(c.space)) + " config");
    }
    t.worst("configs", static_cast<double>(cs.size()));
    t.worst("agree", agree);
    t.worst("cc_pass", passing);
    return t.outcome();
}

Outcome gradient_oracles() {
    Tally t;
    std::mt19937_64 rng(61);
    for (Space s : {Space::S3, Space::H3})
        for (int k = 0; k < 50; ++k) {
            auto c = oracle::random_config(rng, s, 4);
            auto gu = grad_U(c);
            auto gi = grad_I(c);
            for (std::size_t i = 0; i < c.size(); ++i) {
                Vec4 v = oracle::random_tangent(rng, c.pos(i), s);
                double vn = std::sqrt(inner(v, v, s));
                double fu = oracle::fd_directional(c, i, v, oracle::potential);
                double fi = oracle::fd_directional(c, i, v, oracle::inertia);
                double su = std::sqrt(inner(gu[i], gu[i], s)) * vn, si = std::sqrt(inner(gi[i], gi[i], s)) * vn;
                double eu = std::abs(fu - inner(gu[i], v, s)) / std::max(su, 1e-12);
                double ei = std::abs(fi - inner(gi[i], v, s)) / std::max(si, 1e-12);
                t.worst("rel_fd_U", eu);
                t.worst("rel_fd_I", ei);
                t.check(eu < 1e-6 && ei < 1e-6, "finite differences");
            }
            auto a = axis_distance_identity(c);
            double ea = std::abs(a.direct - a.from_distances) / std::max(1.0, a.direct);
            t.worst("axis_identity", ea);
            t.check(ea < 1e-12, "axis distance identity");
            std::uniform_real_distribution<double> ug(-2, 2);
            double al = ug(rng), be = ug(rng);
            for (std::size_t i = 0; i < c.size(); ++i) {
                Vec4 w = generator_matrix({s == Space::S3 ? GeneratorKind::PosA : GeneratorKind::NegB, al, be, 0}) *
                         c.pos(i);
                double quad = c.mass(i) * inner(w, w, s) / (al * al + be * be);
                double eq = std::abs(locked_inertia(c.pos(i), c.mass(i), al, be, s) - quad) / std::max(1.0, quad);
                t.worst("quadratic_form", eq);
                t.check(eq < 1e-12, "locked inertia quadratic form");
            }
        }
    return t.outcome();
}

Outcome moulton_h() {
    Tally t;
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> um(0.5, 3.0);
    const int expected[] = {0, 0, 1, 3, 12};
    for (int n = 2; n <= 4; ++n) {
        std::vector<double> masses(n);
        for (auto& m : masses) m = um(rng);
        auto cat = moulton_catalog_h(masses, 1.0);
        t.check(static_cast<int>(cat.size()) == expected[n], "class count for N=" + std::to_string(n));
        for (const auto& k : cat) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += masses[i] * std::sinh(2 * k.config.thetas[i]);
            t.worst("sinh2_sum", std::abs(s));
            t.check(k.min_hessian_eig > 0 && std::abs(s) < 1e-10, "hessian or orthogonality");
            double spread = 0.0;
            for (std::uint64_t seed = 1; seed <= 20; ++seed) {
                auto g = solve_geodesic_h(masses, 1.0, k.ordering, seed);
                for (int i = 0; i < n; ++i) spread = std::max(spread, std::abs(g.thetas[i] - k.config.thetas[i]));
            }
            t.worst("restart_spread", spread);
            t.check(spread < 1e-8, "restart agreement");
        }
    }
    return t.outcome();
}

Outcome two_body_table() {
    Tally t;
    auto verify = [&](const TwoBodySolution& s, double m1, double m2, double c) {
        for (const auto& x : s.solutions) {
            double e19 = std::abs(m1 * std::sin(2 * x.theta1) + m2 * std::sin(2 * x.theta2));
            double ei = std::abs(m1 * std::pow(std::sin(x.theta1), 2) + m2 * std::pow(std::sin(x.theta2), 2) - c);
            t.worst("eq19", e19);
            t.worst("I_err", ei);
            t.check(e19 < 1e-12 && ei < 1e-12, "closed form at c=" + std::to_string(c));
        }
    };
    const double m1 = 1.0, m2 = 2.0;
    for (int k = 1; k < 30; ++k) {
        double c = k * (m1 + m2) / 30;
        auto s = solve_two_body_s(m1, m2, c);
        t.check(s.count() == (c >= m1 && c <= m2 ? 0 : 2), "unequal count at c=" + std::to_string(c));
        verify(s, m1, m2, c);
    }
    for (int k = 1; k < 20; ++k) {
        double c = k / 10.0;
        auto s = solve_two_body_s(1, 1, c);
        t.check(s.count() == (k == 10 ? -1 : 2), "equal count at c=" + std::to_string(c));
        verify(s, 1, 1, c);
    }
    for (double t1 : {0.2, 0.9, 1.3})
        for (bool three : {false, true}) {
            auto conf = to_configuration(two_body_continuum_member(1.0, t1, three));
            double d = distance(conf.pos(0), conf.pos(1), Space::S3);
            t.check(std::abs(d - pi / 2) < 1e-12 && std::abs(force_function(conf)) < 1e-12, "degenerate family");
        }
    return t.outcome();
}

Outcome orthogonality() {
    Tally t;
    for (const auto& f : fixtures::all())
        if (!f.special)
            for (double v : orthogonality_relations(f.config)) {
                t.worst("fixture_orth", std::abs(v));
                t.check(std::abs(v) < 1e-10, f.name);
            }
    std::vector<double> masses{1.0, 1.7, 0.6};
    for (auto [s, layout] : {std::pair{Space::S3, SeedLayout::Default}, std::pair{Space::H3, SeedLayout::Plane},
                             std::pair{Space::H3, SeedLayout::Default}})
        for (const auto& r : find_cc_multi(masses, s, {0.4, 1e-10}, 4, 900, layout))
            for (double v : orthogonality_relations(r.config)) {
                t.worst("find_cc_orth", std::abs(v));
                t.check(std::abs(v) < 1e-10, "find_cc output");
            }
    auto witness = fixtures::lagrangian_s2(1, 0.5).config;
    witness.bodies[0].pos = project_point(witness.pos(0) + Vec4(0, 0.1, 0, 0.2), Space::S3);
    double wmax = 0.0;
    for (double v : orthogonality_relations(witness)) wmax = std::max(wmax, std::abs(v));
    t.worst("witness_orth", wmax);
    t.check(wmax > 1e-3, "perturbed witness");
    return t.outcome();
}

Outcome existence_continuum() {
    Tally t;
    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> um(0.5, 2.0);
    int found = 0;
    for (Space s : {Space::S3, Space::H3})
        for (int k = 0; k < 5; ++k) {
            std::vector<double> masses{um(rng), um(rng), um(rng)};
            double mmin = *std::min_element(masses.begin(), masses.end());
            std::vector<Configuration> at_c;
            for (double f : {0.2, 0.35, 0.5}) {
                double c = s == Space::S3 ? f * mmin : 2 * f;
                auto res = find_cc_multi(masses, s, {c, 1e-10}, 3, 1000 + 10 * k, SeedLayout::Default);
                t.check(!res.empty(), "no CC found");
                if (res.empty()) continue;
                ++found;
                const auto& r = res.front();
                double crit = max_abs(criterion_residual(r.config, lambda_estimate(r.config)));
                t.worst("criterion", crit);
                t.check(crit < 1e-10 && std::abs(moment_of_inertia(r.config) - c) < 1e-10, "find_cc post-condition");
                at_c.push_back(r.config);
            }
            for (std::size_t a = 0; a < at_c.size(); ++a)
                for (std::size_t b = a + 1; b < at_c.size(); ++b)
                    t.check(canonical_distance(at_c[a], at_c[b]) > 1e-6, "CCs at distinct c are equivalent");
        }
    t.worst("found", found);
    return t.outcome();
}

Outcome equivariance() {
    Tally t;
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> u(-2, 2);
    for (Space s : {Space::S3, Space::H3})
        for (int k = 0; k < 50; ++k) {
            auto c = oracle::random_config(rng, s, 4);
            double lam = lambda_estimate(c);
            Mat4 m = isometry_matrix({s == Space::S3 ? GeneratorKind::PosA : GeneratorKind::NegB, u(rng), u(rng), 0}, 1.0);
            auto moved = transformed(c, m);
            auto a = cc_residual(c, lam), b = cc_residual(moved, lam);
            for (std::size_t i = 0; i < c.size(); ++i) {
                double la = std::sqrt(inner(a.entries[i], a.entries[i], s));
                double lb = std::sqrt(inner(b.entries[i], b.entries[i], s));
                t.worst("residual_invariance", std::abs(la - lb) / std::max(1.0, la));
                t.check(std::abs(la - lb) < 1e-10 * std::max(1.0, la), "block group invariance");
            }
            double dl = std::abs(lambda_estimate(moved) - lam) / std::max(1.0, std::abs(lam));
            t.worst("lambda_invariance", dl);
            t.check(dl < 1e-10, "lambda invariance");

            auto once = canonicalize(c);
            auto twice = canonicalize(once.config);
            auto of_moved = canonicalize(moved);
            double di = 0.0, dm = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i) {
                di = std::max(di, (twice.config.pos(i) - once.config.pos(i)).cwiseAbs().maxCoeff());
                dm = std::max(dm, (of_moved.config.pos(i) - once.config.pos(i)).cwiseAbs().maxCoeff());
            }
            t.worst("idempotence", di);
            t.worst("orbit_canonical", dm);
            t.check(di < 1e-10 && dm < 1e-10, "canonicalize");
        }
    std::vector<Configuration> s3;
    for (const auto& f : fixtures::all())
        if (!f.special && f.config.space == Space::S3) s3.push_back(f.config);
    for (const auto& r : find_cc_multi({1.0, 2.0, 1.5}, Space::S3, {0.5, 1e-10}, 4, 7, SeedLayout::Default))
        s3.push_back(r.config);
    for (const auto& c : s3) {
        double lam = lambda_estimate(c);
        auto sw = swap_planes(c);
        double res = cc_residual(sw, -lam).max;
        t.worst("involution_residual", res);
        t.check(res < 1e-10 && std::abs(lambda_estimate(sw) + lam) < 1e-10 * std::max(1.0, std::abs(lam)),
                "involution negates lambda");
    }
    return t.outcome();
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "lambda reproduction", lambda_reproduction},
        {2, "closed-form lambda families", closed_form_families},
        {3, "special central configurations", special_ccs},
        {4, "relative equilibrium rigidity", re_rigidity},
        {5, "criteria equivalence", criteria_equivalence},
        {6, "gradient oracles and identities", gradient_oracles},
        {7, "hyperbolic Moulton count", moulton_h},
        {8, "two-body count table", two_body_table},
        {9, "orthogonality relations", orthogonality},
        {10, "existence and continuum", existence_continuum},
        {11, "equivariance and invariance", equivariance},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d: %s (%s) [%.2fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
