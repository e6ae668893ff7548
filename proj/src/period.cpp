#include "minsurf/period.hpp"

#include <cmath>

namespace minsurf {

namespace {

double sq(double v) { return v * v; }

// I1 and I2 as functions of (A, b = Im X, m = |X|^2); shared by C2 and L4.
double integral_i1(double A, double b, double m, double* err) {
    auto f = [=](double u) {
        double u2 = u * u;
        return (A - 2.0 * u2) / std::sqrt(4.0 * u2 * u2 + 4.0 * b * u2 + m) / std::sqrt(1.0 - u2 * u2);
    };
    QuadratureResult r = integrate_singular(f, SingularitySpec::at_one_only());
    if (err) *err += r.error_estimate;
    return r.value;
}

double integral_i2(double A, double b, double m, double* err) {
    auto f = [=](double u) {
        double u2 = u * u;
        return (2.0 + A * u2) / std::sqrt(4.0 - 4.0 * b * u2 + m * u2 * u2) / std::sqrt(1.0 - u2 * u2);
    };
    QuadratureResult r = integrate_singular(f, SingularitySpec::at_one_only());
    if (err) *err += r.error_estimate;
    return r.value;
}

}  // namespace

PeriodReport period_integrals_c2(const DerivedParams& dp) {
    if (dp.family != Family::C2) throw std::invalid_argument("period_integrals_c2: wrong family");
    PeriodReport rep;
    rep.family = dp.family;
    double b = dp.X.imag(), m = std::norm(dp.X);
    try {
        rep.first = integral_i1(dp.A, b, m, &rep.quad_error);
        rep.second = integral_i2(dp.A, b, m, &rep.quad_error);
    } catch (const QuadratureBudgetError& e) {
        rep.quad_error += e.best.error_estimate;
        throw PeriodError(e.what(), rep);
    }
    rep.residual = rep.first - rep.second;
    return rep;
}

PeriodReport period_integrals_l4(const DerivedParams& dp) {
    if (dp.family != Family::L4) throw std::invalid_argument("period_integrals_l4: wrong family");
    PeriodReport rep;
    rep.family = dp.family;
    double b = dp.X.imag(), m = std::norm(dp.X);
    try {
        rep.first = integral_i1(dp.A, b, m, &rep.quad_error);
        rep.second = integral_i2(dp.A, b, m, &rep.quad_error);
    } catch (const QuadratureBudgetError& e) {
        rep.quad_error += e.best.error_estimate;
        throw PeriodError(e.what(), rep);
    }
    rep.residual = 2.0 * rep.first - rep.second;
    rep.note = "residual = 2*I1 - I2 (bracket verified by slice sampling)";
    return rep;
}

PeriodReport period_integrals_l2(const DerivedParams& dp) {
    if (dp.family != Family::L2) throw std::invalid_argument("period_integrals_l2: wrong family");
    PeriodReport rep;
    rep.family = dp.family;
    const cplx x = dp.x;
    const double a = dp.a;
    auto f1 = [&](double t) {
        return (t + a) / std::abs(t + x) / std::sqrt(t * (1.0 - t * t));
    };
    // J2 mapped to (0,1) by t -> 1/t
    auto f2 = [&](double t) {
        return (1.0 - a * t) / std::abs(1.0 - x * t) / std::sqrt(t * (1.0 - t * t));
    };
    try {
        QuadratureResult r1 = integrate_singular(f1, SingularitySpec::both_ends());
        QuadratureResult r2 = integrate_singular(f2, SingularitySpec::both_ends());
        rep.first = r1.value;
        rep.second = r2.value;
        rep.quad_error = r1.error_estimate + r2.error_estimate;
    } catch (const QuadratureBudgetError& e) {
        rep.quad_error += e.best.error_estimate;
        throw PeriodError(e.what(), rep);
    }
    rep.residual = rep.first - rep.second;
    return rep;
}

PeriodReport period_integrals(const DerivedParams& dp) {
    switch (dp.family) {
        case Family::C2: return period_integrals_c2(dp);
        case Family::L2: return period_integrals_l2(dp);
        case Family::L4: return period_integrals_l4(dp);
    }
    throw std::logic_error("period_integrals: bad family");
}

SliceSpec SliceSpec::default_for(Family f) {
    SliceSpec s;
    s.family = f;
    switch (f) {
        case Family::C2:
            s.fixed = -1.0;
            s.lo = 1.0 + 1e-2;
            s.hi = 2.0 * std::sqrt(2.0) - 1e-2;
            break;
        case Family::L4:
            s.fixed = -1.0;
            s.lo = 0.05;
            s.hi = 6.0;
            break;
        case Family::L2:
            s.fixed = 0.3;
            s.lo = 0.05;
            s.hi = 3.0;
            break;
    }
    return s;
}

ShapeParams shape_from_slice(Family family, double fixed, double sweep) {
    ShapeParams sp;
    sp.family = family;
    switch (family) {
        case Family::C2: {
            cplx X{sweep, fixed};
            // x solves x^2 + X x - 1 = 0; the two roots have product -1, take the one in the disk
            cplx d = std::sqrt(X * X + 4.0);
            cplx r1 = 0.5 * (-X + d), r2 = 0.5 * (-X - d);
            sp.x = std::abs(r1) < 1.0 ? r1 : r2;
            break;
        }
        case Family::L4: {
            cplx X{sweep, fixed};
            // x solves x^2 - X x + 1 = 0; roots have product +1
            cplx d = std::sqrt(X * X - 4.0);
            cplx r1 = 0.5 * (X + d), r2 = 0.5 * (X - d);
            sp.x = std::abs(r1) < 1.0 ? r1 : r2;
            if (sp.x.imag() < 0) sp.x = std::conj(1.0 / sp.x);  // keep the first-quadrant representative
            break;
        }
        case Family::L2:
            sp.x = cplx{sweep, fixed};
            break;
    }
    return sp;
}

SolveResult solve_period(const SliceSpec& slice, double tol) {
    if (!(slice.lo < slice.hi)) throw std::invalid_argument("solve_period: empty sweep range");
    if (slice.samples < 2) throw std::invalid_argument("solve_period: needs at least 2 samples");

    auto residual_at = [&](double sweep) {
        DerivedParams dp = derive_params(shape_from_slice(slice.family, slice.fixed, sweep));
        return period_integrals(dp).residual;
    };

    std::vector<double> sweeps, residuals;
    for (int i = 0; i < slice.samples; ++i) {
        double s = slice.lo + (slice.hi - slice.lo) * i / (slice.samples - 1);
        sweeps.push_back(s);
        residuals.push_back(residual_at(s));
    }

    int hit = -1;
    for (size_t i = 0; i + 1 < residuals.size(); ++i) {
        if (residuals[i] == 0.0 || residuals[i] * residuals[i + 1] < 0) {
            hit = int(i);
            break;
        }
    }
    if (hit < 0)
        throw BracketFailure("solve_period: no sign change of the period residual along the slice",
                             sweeps, residuals);

    Bracket br{sweeps[hit], sweeps[hit + 1], residuals[hit], residuals[hit + 1]};
    double root = find_root(residual_at, br, 1e-13);

    SolveResult out;
    out.sweep_location = root;
    out.shape = shape_from_slice(slice.family, slice.fixed, root);
    out.derived = derive_params(out.shape);
    out.report = period_integrals(out.derived);
    if (std::abs(out.report.residual) > tol)
        throw PeriodError("solve_period: root located but residual above tolerance", out.report);
    return out;
}

double limit_integrals_c2(C2Limit kind, double re_x) {
    switch (kind) {
        case C2Limit::Im0_I1: {
            if (!(re_x > 0)) throw std::invalid_argument("limit_integrals_c2: Re X must be positive");
            double r2 = sq(re_x);
            auto f = [=](double u) {
                double u4 = sq(sq(u));
                return r2 / std::sqrt(4.0 * u4 + r2) / std::sqrt(1.0 - u4);
            };
            return integrate_singular(f, SingularitySpec::at_one_only()).value;
        }
        case C2Limit::Im0_I2: {
            if (!(re_x > 0)) throw std::invalid_argument("limit_integrals_c2: Re X must be positive");
            double r2 = sq(re_x);
            auto f = [=](double u) {
                double u2 = sq(u);
                return r2 * u2 / std::sqrt(4.0 + r2 * sq(u2)) / std::sqrt(1.0 - sq(u2));
            };
            return integrate_singular(f, SingularitySpec::at_one_only()).value;
        }
        case C2Limit::A2_I1: {
            auto f = [](double u) {
                double u2 = sq(u);
                return std::sqrt(2.0) / std::sqrt(2.0 * sq(u2) - 2.0 * u2 + 1.0) *
                       std::sqrt((1.0 - u2) / (1.0 + u2));
            };
            return integrate_singular(f, SingularitySpec::none()).value;
        }
        case C2Limit::A2_I2: {
            auto f = [](double u) {
                double u2 = sq(u);
                return std::sqrt(2.0) / std::sqrt(2.0 + 2.0 * u2 + sq(u2)) *
                       std::sqrt((1.0 + u2) / (1.0 - u2));
            };
            return integrate_singular(f, SingularitySpec::at_one_only()).value;
        }
    }
    throw std::logic_error("limit_integrals_c2: bad kind");
}

TildeIntegrals tilde_integrals() {
    TildeIntegrals t;
    const double a = 1.0 - 11.0 / std::sqrt(17.0);

    auto f1 = [](double u) { return (3.0 - 2.0 * u * u / 3.0) / std::sqrt(1.0 - sq(sq(u))); };
    auto f2 = [=](double u) { return (a * u * u - 2.0 * a * u + 1.0) / std::sqrt(1.0 - sq(sq(u))); };
    t.first_quadrature = integrate_singular(f1, SingularitySpec::at_one_only()).value;
    t.second_quadrature = integrate_singular(f2, SingularitySpec::at_one_only()).value;

    double b14 = beta_fn(0.25, 0.5), b34 = beta_fn(0.75, 0.5), b12 = beta_fn(0.5, 0.5);
    t.first_beta = 0.75 * b14 - b34 / 6.0;
    t.second_beta = 0.25 * a * b34 - 0.5 * a * b12 + 0.25 * b14;

    if (std::abs(t.first_quadrature - t.first_beta) > 1e-8 ||
        std::abs(t.second_quadrature - t.second_beta) > 1e-8)
        throw std::runtime_error("tilde_integrals: quadrature and Beta closed forms disagree");
    return t;
}

bool sign_estimate_bounds(std::span<const double> u_grid) {
    const double a = 1.0 - 11.0 / std::sqrt(17.0);
    for (double u : u_grid) {
        if (!(u > 0.0 && u < 1.0)) throw std::invalid_argument("sign_estimate_bounds: grid must be in (0,1)");
        double u2 = u * u;
        double lhs1 = (9.0 - 2.0 * u2) / std::sqrt(4.0 * u2 * u2 - 4.0 * u2 + 9.0);
        if (!(lhs1 > 3.0 - 2.0 * u2 / 3.0)) return false;
        double lhs2 = (2.0 + 9.0 * u2) / std::sqrt(4.0 + 4.0 * u2 + 9.0 * u2 * u2);
        if (!(lhs2 < a * u2 - 2.0 * a * u + 1.0)) return false;
    }
    return true;
}

}  // namespace minsurf
