// Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "minsurf/builder.hpp"
#include "minsurf/io.hpp"
#include "minsurf/numerics.hpp"
#include "minsurf/period.hpp"
#include "minsurf/verify.hpp"

using namespace minsurf;

namespace {

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
    std::printf("%-4s %-44s %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

ShapeParams c2_from_X(cplx X) { return shape_from_slice(Family::C2, X.imag(), X.real()); }

std::mt19937 rng(2026);

ShapeParams random_admissible(Family f) {
    std::uniform_real_distribution<double> u01(0.15, 0.9);
    std::uniform_real_distribution<double> th(0.12, kPi / 2 - 0.12);
    for (;;) {
        ShapeParams sp;
        sp.family = f;
        sp.x = std::polar(f == Family::L2 ? u01(rng) * 2.5 : u01(rng), th(rng));
        if (admissible(sp)) return sp;
    }
}

cplx random_z(Family f, const DerivedParams& dp) {
    std::uniform_real_distribution<double> u01(0.08, 0.95);
    for (;;) {
        cplx z = std::polar(f == Family::L2 ? u01(rng) * 3.0 : u01(rng), u01(rng) * kPi / 2);
        bool clear = std::abs(z - dp.x) > 0.05;
        for (cplx b : {cplx{0, 0}, cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}})
            clear = clear && std::abs(z - b) > 0.06;
        if (clear) return z;
    }
}

// ---- criteria -----------------------------------------------------------------------

void criterion_1() {
    DerivedParams dp = derive_params(c2_from_X({2.0 * std::sqrt(2.0), -1.0}));
    double m = std::norm(dp.X), b = dp.X.imag();
    double c_route_3 = dp.A / (dp.A * dp.A + 2.0 * dp.A * b + m);
    double c_route_7 = 1.0 / (dp.A + b);
    bool ok = std::abs(dp.A - 9.0) < 1e-12 && std::abs(dp.c - 0.125) < 1e-12 &&
              std::abs(c_route_3 - c_route_7) / c_route_7 < 1e-12;
    report("1 constraint consistency at X=2sqrt2-i", ok,
           "A=" + fmt(dp.A) + " c=" + fmt(dp.c) + " route gap " + fmt(std::abs(c_route_3 - c_route_7)));
}

void criterion_2() {
    double worst = 0;
    for (Family f : {Family::C2, Family::L2, Family::L4}) {
        for (int trial = 0; trial < 20; ++trial) {
            DerivedParams dp = derive_params(random_admissible(f));
            for (int i = 0; i < 200; ++i) {
                GaussSquares gs = gauss_squares(dp, random_z(f, dp));
                worst = std::max(worst, std::abs(gs.q - gs.p - 4.0));
            }
        }
    }
    report("2 algebraic compatibility q-p=4", worst < 1e-10, "max deviation " + fmt(worst));
}

void criterion_3() {
    double g14 = gamma_fn(0.25), g34 = gamma_fn(0.75);
    // the reference digits 3.6256 are matched as a prefix (the trailing reference digit
    // is unreliable); the full value is pinned at 1e-10 against an independent constant
    bool ok14_prefix = g14 >= 3.625600 && g14 < 3.625611;
    bool ok14_value = std::abs(g14 - 3.62560990822190831) < 1e-10;
    bool ok34 = std::abs(g34 - 1.225417) < 1e-6;
    report("3 gamma constants", ok14_prefix && ok14_value && ok34,
           "gamma(1/4)=" + std::to_string(g14) + " gamma(3/4)=" + std::to_string(g34));
}

void criterion_4() {
    TildeIntegrals t = tilde_integrals();
    bool routes = std::abs(t.first_quadrature - t.first_beta) < 1e-8 &&
                  std::abs(t.second_quadrature - t.second_beta) < 1e-8;
    bool values = std::abs(t.first_beta - 3.534) < 1e-2 && std::abs(t.second_beta - 2.932) < 1e-2;
    bool order = t.first_beta > t.second_beta;
    std::vector<double> grid;
    for (int i = 1; i <= 1000; ++i) grid.push_back(double(i) / 1001.0);
    bool bounds = sign_estimate_bounds(grid);
    report("4 tilde integrals and bounds 30-31", routes && values && order && bounds,
           "I1~=" + std::to_string(t.first_beta) + " I2~=" + std::to_string(t.second_beta));
}

void criterion_5() {
    PeriodReport at_end = period_integrals_c2(derive_params(c2_from_X({2.0 * std::sqrt(2.0), -1.0})));
    PeriodReport at_low = period_integrals_c2(derive_params(c2_from_X({1.01, -1.0})));
    SolveResult sol = solve_period(SliceSpec::default_for(Family::C2));
    bool ok = at_end.residual > 0 && at_low.residual < 0 && std::abs(sol.report.residual) < 1e-8 &&
              sol.sweep_location > 1.01 && sol.sweep_location < 2.0 * std::sqrt(2.0) - 0.01;
    report("5 proposition signs and interior root", ok,
           "res(2sqrt2)=" + fmt(at_end.residual) + " res(1.01)=" + fmt(at_low.residual) +
               " root ReX=" + std::to_string(sol.sweep_location));
}

void criterion_6() {
    double re_x = 1.7, im = -1e-4;
    PeriodReport rep = period_integrals_c2(derive_params(c2_from_X({re_x, im})));
    double l1 = limit_integrals_c2(C2Limit::Im0_I1, re_x);
    double l2 = limit_integrals_c2(C2Limit::Im0_I2, re_x);
    double r1 = std::abs((-im) * rep.first - l1) / l1;
    double r2 = std::abs((-im) * rep.second - l2) / l2;

    PeriodReport near = period_integrals_c2(derive_params(c2_from_X({1.0 + 1e-4, -1.0})));
    double a1 = limit_integrals_c2(C2Limit::A2_I1);
    double a2 = limit_integrals_c2(C2Limit::A2_I2);
    double r3 = std::abs(near.first - a1) / a1;
    double r4 = std::abs(near.second - a2) / a2;
    bool ok = r1 < 1e-3 && r2 < 1e-3 && r3 < 1e-3 && r4 < 1e-3;
    report("6 limit oracles", ok,
           "rel " + fmt(r1) + " " + fmt(r2) + " " + fmt(r3) + " " + fmt(r4));
}

void criterion_7() {
    SolveResult sol = solve_period(SliceSpec::default_for(Family::C2));
    VerificationReport rep = check_boundary_loci(sol.derived, 100);
    double worst = 0;
    for (const auto& c : rep.checks) worst = std::max(worst, c.residual);
    report("7 boundary loci at solved parameters", rep.passed() && worst < 1e-8,
           "max deviation " + fmt(worst));
}

void criterion_8() {
    SolveResult sol = solve_period(SliceSpec::default_for(Family::C2));
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    int found = 0;
    bool ok = true;
    while (found < 10) {
        cplx probe{d(rng), d(rng)};
        if (!generic_probe(probe)) continue;
        ++found;
        DegreeCount dc = count_degree(sol.derived, probe);
        ok = ok && dc.solutions == 8 && dc.z_fiber == 4;
    }
    report("8 degree count: 8 solutions, 4 sheets", ok, "10 generic probes");
}

void criterion_9() {
    SolveResult sol = solve_period(SliceSpec::default_for(Family::C2));
    const DerivedParams& dp = sol.derived;

    DomainGrid grid = sample_domain(dp, 64);
    Mesh a = integrate_immersion(grid, dp, TreeStrategy::BreadthFirst);
    Mesh b = integrate_immersion(grid, dp, TreeStrategy::DepthFirst);
    double tree_gap = 0;
    for (size_t i = 0; i < a.vertices.size(); ++i)
        tree_gap = std::max(tree_gap, (a.vertices[i].position - b.vertices[i].position).norm());
    bool ok_tree = tree_gap < 1e-6 * a.diameter();

    VerificationReport closure = check_period_closure(a, dp);
    bool ok_closure = closure.passed();

    auto excl = domain_branch_points(dp);
    double prev = 1e30;
    bool ok_mono = true;
    for (int N : {32, 64, 128}) {
        Mesh m = integrate_immersion(sample_domain(dp, N), dp);
        MinimalityStats st = mean_curvature_stats(m, excl);
        ok_mono = ok_mono && st.max_h < prev;
        prev = st.max_h;
    }

    PieceResult piece = assemble_fundamental_piece(a, dp);
    double sym = one_sided_hausdorff(piece.domain, rho_h_motion(a));
    bool ok_sym = sym < 1e-5 * piece.domain.diameter();

    report("9 mesh checks at N=64", ok_tree && ok_closure && ok_mono && ok_sym,
           "tree gap " + fmt(tree_gap / a.diameter()) + ", H-max final " + fmt(prev) +
               ", rho_h " + fmt(sym / piece.domain.diameter()));
}

void criterion_10() {
    SolveResult l4 = solve_period(SliceSpec::default_for(Family::L4));
    PeriodReport lo = period_integrals_l4(derive_params(shape_from_slice(Family::L4, -1.0, 0.05)));
    PeriodReport hi = period_integrals_l4(derive_params(shape_from_slice(Family::L4, -1.0, 6.0)));
    bool l4_ok = std::abs(l4.report.residual) < 1e-8 && lo.residual < 0 && hi.residual > 0;
    report("10a L4 root with runtime-verified bracket", l4_ok,
           "root ReX=" + std::to_string(l4.sweep_location) + "; residual 2*I1-I2 runs " +
               fmt(lo.residual) + " .. " + fmt(hi.residual) + " (resolves the printed sign ambiguity)");

    // The L2 residual J1 - J2 is negative on the entire admissible quadrant (equality
    // only in the degenerate real-x limit), so no sign change exists along any sweep.
    bool l2_ok = false;
    std::string detail;
    try {
        SolveResult l2 = solve_period(SliceSpec::default_for(Family::L2));
        l2_ok = std::abs(l2.report.residual) < 1e-8;
        detail = "root Re x=" + std::to_string(l2.sweep_location);
    } catch (const BracketFailure& e) {
        double lo2 = e.residuals.front(), hi2 = e.residuals.back();
        detail = "no sign change: residuals stay negative (" + fmt(lo2) + " .. " + fmt(hi2) +
                 "); J1 < J2 on the admissible quadrant";
    }
    report("10b L2 root on the default sweep path", l2_ok, detail);
}

void criterion_11() {
    SolveResult sol = solve_period(SliceSpec::default_for(Family::C2));
    VerificationReport rep = check_embeddedness_conditions(sol.derived);
    bool ok = rep.passed();
    double ratio = -sol.derived.X.real() / sol.derived.X.imag();
    report("11 embeddedness conditions at the solved slice", ok,
           "-ReX/ImX=" + std::to_string(ratio) + " < 2sqrt2; no positive root; contours monotone");
}

}  // namespace

int main() {
    std::printf("acceptance suite\n----------------\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("----------------\n%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
