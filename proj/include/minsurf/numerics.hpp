#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace minsurf {

struct QuadratureResult {
    double value = 0;
    double error_estimate = 0;  // absolute
    long evaluations = 0;
};

// Thrown when the evaluation budget runs out; carries the best estimate so far.
struct QuadratureBudgetError : std::runtime_error {
    QuadratureResult best;
    explicit QuadratureBudgetError(const QuadratureResult& r)
        : std::runtime_error("quadrature evaluation budget exhausted"), best(r) {}
};

enum class EndpointSingularity { None, InverseSqrt };

// Declares the endpoint behaviour of an integrand on (0,1).
struct SingularitySpec {
    EndpointSingularity at_zero = EndpointSingularity::None;
    EndpointSingularity at_one = EndpointSingularity::InverseSqrt;

    static SingularitySpec none() { return {EndpointSingularity::None, EndpointSingularity::None}; }
    static SingularitySpec at_one_only() { return {EndpointSingularity::None, EndpointSingularity::InverseSqrt}; }
    static SingularitySpec both_ends() { return {EndpointSingularity::InverseSqrt, EndpointSingularity::InverseSqrt}; }
};

// Integrates f over (0,1). Inverse-square-root endpoint singularities are removed by the
// substitutions u = s^2 (at 0) and u = 1 - s^2 (at 1) before adaptive Gauss-Kronrod.
QuadratureResult integrate_singular(const std::function<double(double)>& f,
                                    const SingularitySpec& spec,
                                    double tol = 1e-10,
                                    long budget = 1000000);

// Adaptive Gauss-Kronrod on a plain finite interval (no endpoint transforms).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double tol = 1e-10,
                                    long budget = 1000000);

// Gamma function for x > 0 (Lanczos approximation). Relative error well below 1e-10 on [0.1, 10].
double gamma_fn(double x);

// Euler beta function B(m, n) = Gamma(m) Gamma(n) / Gamma(m + n), m, n > 0.
double beta_fn(double m, double n);

struct Bracket {
    double lo = 0, hi = 0;
    double f_lo = 0, f_hi = 0;

    bool valid() const { return lo < hi && f_lo * f_hi < 0; }
    static Bracket from(const std::function<double(double)>& f, double lo, double hi) {
        return Bracket{lo, hi, f(lo), f(hi)};
    }
};

// Bracketed root finding: inverse-quadratic/secant steps with bisection fallback (Brent).
// Returns r inside [bracket.lo, bracket.hi] with final bracket width <= tol.
double find_root(const std::function<double(double)>& f, const Bracket& bracket, double tol);

}  // namespace minsurf
