#include "minsurf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "minsurf/types.hpp"

namespace minsurf {

namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkEval {
    double integral;
    double error;
};

GkEval gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        double x = h * kXgk[j];
        double f1 = f(c - x);
        double f2 = f(c + x);
        res_k += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
    }
    res_g *= h;
    res_k *= h;
    double err = std::pow(200.0 * std::abs(res_k - res_g), 1.5);
    err = std::min(err, std::abs(res_k - res_g) * 200.0);
    return {res_k, std::max(err, 1e-300)};
}

struct Interval {
    double a, b, integral, error;
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double tol, long budget) {
    QuadratureResult out;
    if (a == b) return out;

    GkEval first = gk15(f, a, b);
    out.evaluations = 15;
    std::vector<Interval> heap{{a, b, first.integral, first.error}};

    auto total_error = [&] {
        double e = 0;
        for (const auto& iv : heap) e += iv.error;
        return e;
    };
    auto total_value = [&] {
        double v = 0;
        for (const auto& iv : heap) v += iv.integral;
        return v;
    };

    while (total_error() > tol && heap.size() < 8000) {
        auto worst = std::max_element(heap.begin(), heap.end(),
                                      [](const Interval& p, const Interval& q) { return p.error < q.error; });
        if (worst->b - worst->a < 1e-15 * std::max(1.0, std::abs(worst->a))) break;
        if (out.evaluations + 30 > budget) {
            out.value = total_value();
            out.error_estimate = total_error();
            throw QuadratureBudgetError(out);
        }
        Interval iv = *worst;
        heap.erase(worst);
        double mid = 0.5 * (iv.a + iv.b);
        GkEval left = gk15(f, iv.a, mid);
        GkEval right = gk15(f, mid, iv.b);
        out.evaluations += 30;
        heap.push_back({iv.a, mid, left.integral, left.error});
        heap.push_back({mid, iv.b, right.integral, right.error});
    }

    out.value = total_value();
    out.error_estimate = total_error();
    return out;
}

QuadratureResult integrate_singular(const std::function<double(double)>& f,
                                    const SingularitySpec& spec, double tol, long budget) {
    const bool s0 = spec.at_zero == EndpointSingularity::InverseSqrt;
    const bool s1 = spec.at_one == EndpointSingularity::InverseSqrt;

    if (!s0 && !s1) return integrate_adaptive(f, 0.0, 1.0, tol, budget);

    if (s0 && !s1) {
        // u = s^2, du = 2 s ds
        auto g = [&f](double s) { return 2.0 * s * f(s * s); };
        return integrate_adaptive(g, 0.0, 1.0, tol, budget);
    }
    if (!s0 && s1) {
        // u = 1 - s^2 keeps sqrt(1-u) = s factors bounded
        auto g = [&f](double s) { return 2.0 * s * f(1.0 - s * s); };
        return integrate_adaptive(g, 0.0, 1.0, tol, budget);
    }

    // both endpoints singular: split at 1/2 and substitute on each side
    auto g_left = [&f](double s) { return 2.0 * s * f(s * s); };
    auto g_right = [&f](double s) { return 2.0 * s * f(1.0 - s * s); };
    const double half = std::sqrt(0.5);
    QuadratureResult left = integrate_adaptive(g_left, 0.0, half, 0.5 * tol, budget);
    QuadratureResult right;
    try {
        right = integrate_adaptive(g_right, 0.0, half, 0.5 * tol, budget - left.evaluations);
    } catch (QuadratureBudgetError& e) {
        e.best.value += left.value;
        e.best.error_estimate += left.error_estimate;
        e.best.evaluations += left.evaluations;
        throw;
    }
    return {left.value + right.value, left.error_estimate + right.error_estimate,
            left.evaluations + right.evaluations};
}

double gamma_fn(double x) {
    if (!(x > 0)) throw std::domain_error("gamma_fn: requires x > 0");
    // Lanczos, g = 7, 9 terms
    static const double coef[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection keeps the small-argument range accurate
        return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
    }
    double z = x - 1.0;
    double a = coef[0];
    for (int i = 1; i < 9; ++i) a += coef[i] / (z + i);
    double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double beta_fn(double m, double n) {
    if (!(m > 0) || !(n > 0)) throw std::domain_error("beta_fn: requires positive arguments");
    return gamma_fn(m) * gamma_fn(n) / gamma_fn(m + n);
}

double find_root(const std::function<double(double)>& f, const Bracket& bracket, double tol) {
    if (!bracket.valid()) throw std::invalid_argument("find_root: invalid bracket");

    double a = bracket.lo, b = bracket.hi;
    double fa = bracket.f_lo, fb = bracket.f_hi;
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa;
    bool bisected = true;
    double d = 0;

    for (int it = 0; it < 200; ++it) {
        if (fb == 0.0 || std::abs(b - a) <= tol) return b;
        double s;
        if (fa != fc && fb != fc) {
            // inverse quadratic interpolation
            s = a * fb * fc / ((fa - fb) * (fa - fc)) +
                b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);  // secant
        }
        double lo = (3 * a + b) / 4, hi = b;
        if (lo > hi) std::swap(lo, hi);
        bool bad = s < lo || s > hi ||
                   (bisected && std::abs(s - b) >= std::abs(b - c) / 2) ||
                   (!bisected && std::abs(s - b) >= std::abs(c - d) / 2);
        if (bad) {
            s = 0.5 * (a + b);
            bisected = true;
        } else {
            bisected = false;
        }
        double fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if (fa * fs < 0) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if (std::abs(fa) < std::abs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
    }
    return b;
}

}  // namespace minsurf
