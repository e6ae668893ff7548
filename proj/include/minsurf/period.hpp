#pragma once

#include <string>
#include <vector>

#include "minsurf/families.hpp"
#include "minsurf/numerics.hpp"

namespace minsurf {

struct PeriodReport {
    Family family = Family::C2;
    double first = 0;     // I1 (C2, L4) or J1 (L2)
    double second = 0;    // I2 or J2
    double residual = 0;  // I1-I2, 2*I1-I2, J1-J2 per family
    double quad_error = 0;
    std::string note;
};

struct PeriodError : std::runtime_error {
    PeriodReport partial;
    PeriodError(const std::string& what, const PeriodReport& r) : std::runtime_error(what), partial(r) {}
};

PeriodReport period_integrals_c2(const DerivedParams& dp);
PeriodReport period_integrals_l2(const DerivedParams& dp);
PeriodReport period_integrals_l4(const DerivedParams& dp);
PeriodReport period_integrals(const DerivedParams& dp);

// One-dimensional slice of the admissible region along which the residual changes sign.
//   C2, L4: fixed Im X, sweep Re X.
//   L2:     fixed Im x, sweep Re x.
struct SliceSpec {
    Family family = Family::C2;
    double fixed = -1.0;
    double lo = 0, hi = 0;
    int samples = 33;

    static SliceSpec default_for(Family f);
};

ShapeParams shape_from_slice(Family family, double fixed, double sweep);

struct BracketFailure : std::runtime_error {
    std::vector<double> sweep_values;
    std::vector<double> residuals;
    BracketFailure(const std::string& what, std::vector<double> sv, std::vector<double> rv)
        : std::runtime_error(what), sweep_values(std::move(sv)), residuals(std::move(rv)) {}
};

struct SolveResult {
    ShapeParams shape;
    DerivedParams derived;
    PeriodReport report;
    double sweep_location = 0;
};

SolveResult solve_period(const SliceSpec& slice, double tol = 1e-8);

// Limits of the scaled period integrals:
//   Im0_* : lim Im X -> 0 of (-Im X) I_k at fixed Re X
//   A2_*  : lim A -> 2 of I_k along Im X = -1
enum class C2Limit { Im0_I1, Im0_I2, A2_I1, A2_I2 };
double limit_integrals_c2(C2Limit kind, double re_x = 0.0);

// The comparison integrals of the embeddedness estimate, computed both by quadrature and
// by their Beta-function closed forms; the pair (I1~, I2~) must agree between routes.
struct TildeIntegrals {
    double first_quadrature = 0, first_beta = 0;
    double second_quadrature = 0, second_beta = 0;
};
TildeIntegrals tilde_integrals();

// Pointwise inequalities backing the sign estimate at X = 2*sqrt(2) - i.
bool sign_estimate_bounds(std::span<const double> u_grid);

}  // namespace minsurf
