#include <doctest.h>

#include <cmath>
#include <random>

#include "minsurf/families.hpp"

using namespace minsurf;

namespace {

ShapeParams c2_shape_from_X(cplx X) {
    cplx d = std::sqrt(X * X + 4.0);
    cplx r1 = 0.5 * (-X + d), r2 = 0.5 * (-X - d);
    return {Family::C2, std::abs(r1) < 1.0 ? r1 : r2};
}

std::mt19937& rng() {
    static std::mt19937 gen(17);
    return gen;
}

ShapeParams random_admissible(Family f) {
    std::uniform_real_distribution<double> u01(0.15, 0.9);
    std::uniform_real_distribution<double> th(0.12, kPi / 2 - 0.12);
    for (;;) {
        ShapeParams sp;
        sp.family = f;
        double radius = u01(rng());
        sp.x = std::polar(f == Family::L2 ? radius * 2.5 : radius, th(rng()));
        if (admissible(sp)) return sp;
    }
}

cplx random_domain_z(Family f, const DerivedParams& dp) {
    std::uniform_real_distribution<double> u01(0.08, 0.95);
    for (;;) {
        double radius = f == Family::L2 ? u01(rng()) * 3.0 : u01(rng());
        cplx z = std::polar(radius, u01(rng()) * kPi / 2);
        // keep clear of the square-pole locations, where q and p blow up and their
        // difference loses absolute accuracy
        bool clear = std::abs(z - dp.x) > 0.05;
        for (cplx b : {cplx{0, 0}, cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}})
            clear = clear && std::abs(z - b) > 0.06;
        if (clear) return z;
    }
}

}  // namespace

TEST_CASE("family bookkeeping") {
    CHECK(family_info(Family::C2).genus == 9);
    CHECK(family_info(Family::L2).genus == 5);
    CHECK(family_info(Family::L4).genus == 9);
    CHECK(family_info(Family::C2).gauss_degree == 8);
}

TEST_CASE("derive_params: C2 at X = 2 sqrt 2 - i") {
    ShapeParams sp = c2_shape_from_X({2.0 * std::sqrt(2.0), -1.0});
    DerivedParams dp = derive_params(sp);
    CHECK(dp.A == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(dp.c == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(dp.a == doctest::Approx(0.5 * (9.0 - std::sqrt(77.0))).epsilon(1e-12));
    // both defining relations for c agree
    double m = std::norm(dp.X), b = dp.X.imag();
    double c_direct = dp.A / (dp.A * dp.A + 2.0 * dp.A * b + m);
    CHECK(dp.c == doctest::Approx(c_direct).epsilon(1e-12));
    CHECK(dp.c == doctest::Approx(1.0 / (dp.A + b)).epsilon(1e-12));
}

TEST_CASE("derive_params: inadmissible C2 when Im X >= 0") {
    // x on the positive real axis has Im X = 0
    CHECK_THROWS_AS(derive_params({Family::C2, cplx{0.5, 0.0}}), AdmissibilityError);
    // first-quadrant x with |x| too close to 1 violates the A > 2 bound
    ShapeParams tight{Family::C2, std::polar(0.999, kPi / 4)};
    CHECK_FALSE(admissible(tight));
}

TEST_CASE("derive_params: L2 at x = 1 + i") {
    DerivedParams dp = derive_params({Family::L2, cplx{1.0, 1.0}});
    CHECK(dp.A == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(dp.a == doctest::Approx(0.5 * (3.0 - std::sqrt(5.0))).epsilon(1e-13));
    CHECK_THROWS_AS(derive_params({Family::L2, cplx{-0.5, 1.0}}), AdmissibilityError);
}

TEST_CASE("c2 admissibility bound matches the X-domain inequality") {
    // the |x| bound as a function of Arg x is equivalent to Re^2 X > -2 Im X - Im^2 X
    std::uniform_real_distribution<double> th(0.05, kPi / 2 - 0.05);
    std::uniform_real_distribution<double> rr(0.05, 0.999);
    for (int i = 0; i < 400; ++i) {
        double theta = th(rng()), radius = rr(rng());
        ShapeParams sp{Family::C2, std::polar(radius, theta)};
        cplx X = 1.0 / sp.x - sp.x;
        bool eq9 = X.imag() < 0 &&
                   X.real() * X.real() > -2.0 * X.imag() - X.imag() * X.imag();
        bool eq10 = radius < c2_admissible_radius(theta);
        CHECK(eq9 == eq10);
        CHECK(admissible(sp) == eq10);
    }
    CHECK_FALSE(admissible({Family::C2, std::polar(1.2, kPi / 4)}));
}

TEST_CASE("L4 admits the whole first-quadrant unit sector") {
    std::uniform_real_distribution<double> th(0.02, kPi / 2 - 0.02);
    std::uniform_real_distribution<double> rr(0.02, 0.98);
    for (int i = 0; i < 100; ++i)
        CHECK(admissible({Family::L4, std::polar(rr(rng()), th(rng()))}));
}

TEST_CASE("gauss squares at the distinguished points") {
    ShapeParams sp = c2_shape_from_X({2.0, -1.0});
    DerivedParams dp = derive_params(sp);

    // z = -i a: the (Z + iA)^2 factor of the plus square vanishes, so q = 0, p = -4
    GaussSquares at_node = gauss_squares(dp, cplx{0.0, -dp.a});
    CHECK(std::abs(at_node.q) < 1e-12);
    CHECK(at_node.p.real() == doctest::Approx(-4.0).epsilon(1e-12));

    // z = x (the branch point A): Z = -X makes the (Z + X) factor of q vanish, g = +-i
    GaussSquares at_a = gauss_squares(dp, dp.x);
    CHECK(std::abs(at_a.q) < 1e-12);
    CHECK(at_a.p.real() == doctest::Approx(-4.0).epsilon(1e-12));

    // z = -x and z = 1/x are roots of (Z - X): there p = 0
    GaussSquares at_mx = gauss_squares(dp, -dp.x);
    CHECK(std::abs(at_mx.p) < 1e-12);
    GaussSquares at_ix = gauss_squares(dp, 1.0 / dp.x);
    CHECK(std::abs(at_ix.p) < 1e-12);

    CHECK_THROWS_AS(gauss_squares(dp, cplx{0.0, 0.0}), PoleError);
    CHECK_THROWS_AS(gauss_squares(dp, cplx{1.0, 0.0}), PoleError);
}

TEST_CASE("q - p = 4 for random parameters and points, all families") {
    for (Family f : {Family::C2, Family::L2, Family::L4}) {
        for (int trial = 0; trial < 20; ++trial) {
            DerivedParams dp = derive_params(random_admissible(f));
            for (int i = 0; i < 200; ++i) {
                GaussSquares gs = gauss_squares(dp, random_domain_z(f, dp));
                CHECK(std::abs(gs.q - gs.p - 4.0) < 1e-10);
            }
        }
    }
}

TEST_CASE("boundary arc loci: g and dh(zdot) stay on the table lines") {
    for (Family f : {Family::C2, Family::L2, Family::L4}) {
        DerivedParams dp = derive_params(random_admissible(f));
        for (const auto& arc : boundary_arcs(dp)) {
            double worst_g = 0, worst_dh = 0;
            for (int i = 0; i < 100; ++i) {
                double t = arc.t_lo + (arc.t_hi - arc.t_lo) * (i + 0.5) / 100.0;
                cplx g = g_on_arc(arc, t, dp);
                worst_g = std::max(worst_g, distance_to_g_locus(g, arc.g_locus));
                cplx dh = height_differential(dp, arc.point(t), g) * arc.tangent(t);
                worst_dh = std::max(worst_dh, distance_to_dh_locus(dh, arc.dh_locus));
            }
            CAPTURE(family_name(f));
            CAPTURE(arc_name(arc.id));
            CHECK(worst_g < 1e-8);
            CHECK(worst_dh < 1e-8);
        }
    }
}

TEST_CASE("table rows: SB positive real, LS' on the 45-degree line") {
    DerivedParams dp = derive_params(random_admissible(Family::C2));
    auto arcs = boundary_arcs(dp);
    cplx g_sb = g_on_arc(arcs[0], 0.5, dp);
    CHECK(g_sb.real() > 0);
    CHECK(std::abs(std::arg(g_sb)) < 1e-10);
    cplx g_ls = g_on_arc(arcs[2], 0.5, dp);
    double ang = std::arg(g_ls);
    bool on_line = std::abs(ang - kPi / 4) < 1e-10 || std::abs(ang - (kPi / 4 - kPi)) < 1e-10;
    CHECK(on_line);
    cplx g_fs = g_on_arc(arcs[5], 0.5, dp);
    double ang2 = std::arg(g_fs);
    bool on_line2 = std::abs(ang2 + kPi / 4) < 1e-10 || std::abs(ang2 - (kPi - kPi / 4)) < 1e-10;
    CHECK(on_line2);
}

TEST_CASE("square root identity of the height differential") {
    for (Family f : {Family::C2, Family::L4, Family::L2}) {
        DerivedParams dp = derive_params(random_admissible(f));
        for (int i = 0; i < 50; ++i) {
            cplx z = random_domain_z(f, dp);
            GaussSquares gs = gauss_squares(dp, z);
            cplx g = 0.5 * (std::sqrt(gs.p) + std::sqrt(gs.q));
            cplx dh = height_differential(dp, z, g);
            // square of the defining square root equals the plain polynomial product
            cplx lhs, rhs;
            if (f == Family::L2) {
                cplx s = cplx{0, 1} / dh;
                lhs = s * s;
                rhs = (z * z - dp.x * dp.x) * (z * z - std::conj(dp.x) * std::conj(dp.x));
            } else {
                cplx Z = f == Family::L4 ? z + 1.0 / z : z - 1.0 / z;
                cplx s = Z / (z * dh);
                lhs = s * s;
                rhs = (Z * Z - dp.X * dp.X) * (Z * Z - std::conj(dp.X) * std::conj(dp.X));
            }
            CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
        }
    }
}

TEST_CASE("weierstrass forms") {
    auto f1 = weierstrass_forms(cplx{1.0, 0.0}, cplx{1.0, 0.0});
    CHECK(std::abs(f1[0]) < 1e-15);
    CHECK(std::abs(f1[1] - cplx{0.0, 1.0}) < 1e-15);
    CHECK(std::abs(f1[2] - cplx{1.0, 0.0}) < 1e-15);

    auto f2 = weierstrass_forms(cplx{0.0, 1.0}, cplx{1.0, 0.0});
    CHECK(std::abs(f2[0] - cplx{0.0, -1.0}) < 1e-15);
    CHECK(std::abs(f2[1]) < 1e-15);

    CHECK_THROWS_AS(weierstrass_forms(cplx{0.0, 0.0}, cplx{1.0, 0.0}), PoleError);

    // null identity at random inputs
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        cplx g{d(rng()), d(rng())};
        if (std::abs(g) < 0.1) continue;
        cplx dh{d(rng()), d(rng())};
        auto f = weierstrass_forms(g, dh);
        cplx null = f[0] * f[0] + f[1] * f[1] + f[2] * f[2];
        CHECK(std::abs(null) < 1e-12 * (1.0 + std::norm(dh)));
    }
}

TEST_CASE("continuation: constant path, contractible loop, arc match") {
    DerivedParams dp = derive_params(random_admissible(Family::C2));
    BranchAnchor an = anchor_state(dp);

    std::vector<cplx> constant(8, an.z0);
    auto gs = continue_g(constant, an.g0, dp);
    for (cplx g : gs) CHECK(std::abs(g - an.g0) < 1e-12);

    // closed loop around no branch point returns to the start value
    cplx centre = an.z0 * 0.9;
    double rad = 0.2 * std::abs(centre - dp.x);
    std::vector<cplx> loop;
    for (int i = 0; i <= 200; ++i) loop.push_back(centre + std::polar(rad, 2 * kPi * i / 200.0));
    std::vector<cplx> to_loop{an.z0, loop.front()};
    cplx g_at = continue_g(to_loop, an.g0, dp).back();
    CHECK(std::abs(continue_g(loop, g_at, dp).back() - g_at) < 1e-8);

    // along the SB arc the continuation matches g_on_arc
    auto arcs = boundary_arcs(dp);
    std::vector<cplx> sb_path;
    for (int i = 0; i <= 50; ++i) {
        double s = std::imag(an.z0) + (0.9 - std::imag(an.z0)) * i / 50.0;
        sb_path.push_back(cplx{0.0, s});
    }
    std::vector<cplx> along = continue_g(sb_path, an.g0, dp);
    CHECK(std::abs(along.back() - g_on_arc(arcs[0], 0.9, dp)) < 1e-9);

    // a loop winding around x applies the deck transformation g -> -1/g
    double r2 = std::max(0.05, 2.5 * kBranchClearance);
    cplx xhat = dp.x / std::abs(dp.x);
    cplx start = dp.x - r2 * xhat;  // loop base point on the origin side of x
    std::vector<cplx> to_start;
    for (int i = 0; i <= 120; ++i) to_start.push_back(an.z0 + (start - an.z0) * (double(i) / 120.0));
    double phase0 = std::arg(-xhat);
    std::vector<cplx> around;
    for (int i = 0; i <= 500; ++i)
        around.push_back(dp.x + std::polar(r2, phase0 + 2 * kPi * i / 500.0));
    cplx g_s = continue_g(to_start, an.g0, dp).back();
    cplx g_back = continue_g(around, g_s, dp).back();
    CHECK(std::abs(g_back + 1.0 / g_s) < 1e-8);
}

TEST_CASE("continuation rejects oversized steps") {
    DerivedParams dp = derive_params(random_admissible(Family::C2));
    BranchAnchor an = anchor_state(dp);
    // a step jumping straight across the branch point x
    std::vector<cplx> path{an.z0, dp.x + (an.z0 - dp.x) * (-1.0)};
    CHECK_THROWS_AS(continue_g(path, an.g0, dp), ContinuationError);
}

TEST_CASE("gauss map degree by probe counting is declared in family_info") {
    CHECK(family_info(Family::L2).gauss_degree == 4);
    CHECK(family_info(Family::L4).gauss_degree == 8);
}
