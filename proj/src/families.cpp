#include "minsurf/families.hpp"

#include <algorithm>
#include <cmath>

namespace minsurf {

namespace {
const cplx kI{0.0, 1.0};

double sq(double v) { return v * v; }
}  // namespace

FamilyInfo family_info(Family f) {
    switch (f) {
        case Family::C2: return {9, 8};
        case Family::L2: return {5, 4};
        case Family::L4: return {9, 8};
    }
    return {0, 0};
}

const char* family_name(Family f) {
    switch (f) {
        case Family::C2: return "C2";
        case Family::L2: return "L2";
        case Family::L4: return "L4";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "C2" || name == "c2") return Family::C2;
    if (name == "L2" || name == "l2") return Family::L2;
    if (name == "L4" || name == "l4") return Family::L4;
    throw std::invalid_argument("unknown family: " + name);
}

double c2_admissible_radius(double theta) {
    double s = std::sin(theta);
    double r = std::sqrt(1.0 + 3.0 * sq(std::cos(theta)));
    return 0.5 * (s + r - std::sqrt(2.0 * s * (r - s)));
}

DerivedParams derive_params(const ShapeParams& sp) {
    DerivedParams dp;
    dp.family = sp.family;
    dp.x = sp.x;
    const cplx x = sp.x;

    if (!(x.real() > 0.0) || !(x.imag() > 0.0)) {
        if (sp.family == Family::L2 && !(x.real() > 0.0))
            throw AdmissibilityError("L2: Re x <= 0 violates A = (|x|^2+1)/Re x > 0");
        throw AdmissibilityError("x must lie in the open first quadrant");
    }

    switch (sp.family) {
        case Family::C2: {
            if (!(std::abs(x) < 1.0)) throw AdmissibilityError("C2: |x| >= 1");
            dp.X = 1.0 / x - x;
            if (!(dp.X.imag() < 0.0))
                throw AdmissibilityError("C2: Im X >= 0, A = -|X|^2/Im X would not be positive");
            double m = std::norm(dp.X);
            dp.A = -m / dp.X.imag();
            if (!(dp.A > 2.0))
                throw AdmissibilityError(
                    "C2: Re^2 X > -2 Im X - Im^2 X violated (A <= 2 leaves no a in (0,1))");
            dp.a = 0.5 * (dp.A - std::sqrt(sq(dp.A) - 4.0));
            dp.c = 1.0 / (dp.A + dp.X.imag());
            break;
        }
        case Family::L4: {
            if (!(std::abs(x) < 1.0)) throw AdmissibilityError("L4: |x| >= 1");
            dp.X = x + 1.0 / x;
            if (!(dp.X.imag() < 0.0)) throw AdmissibilityError("L4: Im X >= 0");
            double m = std::norm(dp.X);
            dp.A = -m / dp.X.imag();
            dp.a = 0.5 * (std::sqrt(sq(dp.A) + 4.0) - dp.A);
            dp.c = 1.0 / (dp.A + dp.X.imag());
            break;
        }
        case Family::L2: {
            dp.X = cplx{0.0, 0.0};
            dp.A = (std::norm(x) + 1.0) / x.real();
            if (!(dp.A > 2.0)) throw AdmissibilityError("L2: (|x|^2+1)/Re x <= 2 (x = 1 degenerate)");
            dp.a = 0.5 * (dp.A - std::sqrt(sq(dp.A) - 4.0));
            dp.c = (1.0 / dp.a - dp.a) / std::norm(x - dp.a);
            break;
        }
    }
    return dp;
}

bool admissible(const ShapeParams& sp) {
    try {
        derive_params(sp);
        return true;
    } catch (const AdmissibilityError&) {
        return false;
    }
}

namespace {

cplx big_z(Family f, cplx z) { return f == Family::L4 ? z + 1.0 / z : z - 1.0 / z; }

void check_poles(const DerivedParams& dp, cplx z) {
    const double eps = 1e-12;
    switch (dp.family) {
        case Family::C2:
            if (std::abs(z) < eps || std::abs(z - 1.0) < eps || std::abs(z + 1.0) < eps)
                throw PoleError("gauss map squares have a pole (z - 1/z in {0, inf})", z);
            break;
        case Family::L4:
            if (std::abs(z) < eps || std::abs(z - kI) < eps || std::abs(z + kI) < eps)
                throw PoleError("gauss map squares have a pole (z + 1/z in {0, inf})", z);
            break;
        case Family::L2:
            if (std::abs(z) < eps || std::abs(z - 1.0) < eps || std::abs(z + 1.0) < eps)
                throw PoleError("gauss map squares have a pole (z(1-z^2) = 0)", z);
            break;
    }
}

}  // namespace

cplx branch_alpha_w(const DerivedParams& dp, cplx z) {
    switch (dp.family) {
        case Family::C2: return big_z(dp.family, z) - kI * dp.A;
        case Family::L4: return big_z(dp.family, z) + kI * dp.A;
        case Family::L2: return z - dp.a;
    }
    return {};
}

cplx branch_alpha_v(const DerivedParams& dp, cplx z) {
    switch (dp.family) {
        case Family::C2: return big_z(dp.family, z) + kI * dp.A;
        case Family::L4: return big_z(dp.family, z) - kI * dp.A;
        case Family::L2: return z + dp.a;
    }
    return {};
}

cplx branch_rational_w(const DerivedParams& dp, cplx z) {
    const cplx X = dp.X, Xb = std::conj(dp.X);
    switch (dp.family) {
        case Family::C2: {
            cplx Z = big_z(dp.family, z);
            return -kI * dp.c / (Z * Z * Z) * (Z - X) * (Z + Xb);
        }
        case Family::L4: {
            cplx Z = big_z(dp.family, z);
            return kI * dp.c / (Z * Z * Z) * (Z + X) * (Z - Xb);
        }
        case Family::L2: {
            return dp.c * (z + dp.x) * (z + std::conj(dp.x)) / (z * (1.0 - z * z));
        }
    }
    return {};
}

cplx branch_rational_v(const DerivedParams& dp, cplx z) {
    const cplx X = dp.X, Xb = std::conj(dp.X);
    switch (dp.family) {
        case Family::C2: {
            cplx Z = big_z(dp.family, z);
            return -kI * dp.c / (Z * Z * Z) * (Z - Xb) * (Z + X);
        }
        case Family::L4: {
            cplx Z = big_z(dp.family, z);
            return kI * dp.c / (Z * Z * Z) * (Z + Xb) * (Z - X);
        }
        case Family::L2: {
            return dp.c * (z - dp.x) * (z - std::conj(dp.x)) / (z * (1.0 - z * z));
        }
    }
    return {};
}

GaussSquares gauss_squares(const DerivedParams& dp, cplx z) {
    check_poles(dp, z);
    cplx aw = branch_alpha_w(dp, z), av = branch_alpha_v(dp, z);
    return {aw * aw * branch_rational_w(dp, z), av * av * branch_rational_v(dp, z)};
}

cplx g_from_state(const DerivedParams& dp, cplx z, const BranchState& st) {
    return 0.5 * (branch_alpha_w(dp, z) * st.h + branch_alpha_v(dp, z) * st.k);
}

BranchState continue_state(const DerivedParams& dp, cplx z_new, const BranchState& st) {
    BranchState out;
    cplx ch = std::sqrt(branch_rational_w(dp, z_new));
    cplx ck = std::sqrt(branch_rational_v(dp, z_new));
    double dh_keep = std::abs(ch - st.h), dh_flip = std::abs(ch + st.h);
    double dk_keep = std::abs(ck - st.k), dk_flip = std::abs(ck + st.k);
    out.h = dh_keep <= dh_flip ? ch : -ch;
    out.k = dk_keep <= dk_flip ? ck : -ck;
    // reject steps where the two sign choices are not clearly separated
    if (std::min(dh_keep, dh_flip) > 0.5 * std::max(dh_keep, dh_flip) ||
        std::min(dk_keep, dk_flip) > 0.5 * std::max(dk_keep, dk_flip))
        throw ContinuationError("continuation step too large relative to branch separation");
    return out;
}

std::vector<cplx> domain_branch_points(const DerivedParams& dp) {
    switch (dp.family) {
        case Family::C2: return {cplx{0, 0}, cplx{1, 0}, dp.x};
        case Family::L4: return {cplx{0, 0}, kI, dp.x};
        case Family::L2: return {cplx{0, 0}, cplx{1, 0}, dp.x};
    }
    return {};
}

namespace {

// Sub-stepped continuation between two points; halves the step until accepted.
BranchState walk_segment(const DerivedParams& dp, cplx za, cplx zb, BranchState st, int depth = 0) {
    try {
        return continue_state(dp, zb, st);
    } catch (const ContinuationError&) {
        if (depth > 40) throw;
        cplx mid = 0.5 * (za + zb);
        BranchState at_mid = walk_segment(dp, za, mid, st, depth + 1);
        return walk_segment(dp, mid, zb, at_mid, depth + 1);
    }
}

BranchState walk_polyline(const DerivedParams& dp, const std::vector<cplx>& pts, BranchState st) {
    for (size_t i = 0; i + 1 < pts.size(); ++i) st = walk_segment(dp, pts[i], pts[i + 1], st);
    return st;
}

double dist_point_segment(cplx p, cplx a, cplx b) {
    cplx ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0) return std::abs(p - a);
    double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

// True when the open segment (a,b) crosses the ray {s * xhat : s > s_min}.
bool crosses_outward_ray(cplx a, cplx b, cplx x, double s_min) {
    cplx xhat = x / std::abs(x);
    double ya = (std::conj(xhat) * a).imag();
    double yb = (std::conj(xhat) * b).imag();
    if (ya * yb >= 0) return false;
    double t = ya / (ya - yb);
    double s = (std::conj(xhat) * (a + t * (b - a))).real();
    return s > s_min;
}

// Polyline from `from` to `to` that stays on the anchored sheet: it never crosses the
// cut running radially outward from the interior branch point x, and it detours around
// every branch point it would graze.
std::vector<cplx> route(const DerivedParams& dp, cplx from, cplx to) {
    const double rmin = std::max(2.0 * kBranchClearance, 0.03);
    std::vector<cplx> pts{from};
    const cplx x = dp.x;
    if (crosses_outward_ray(from, to, x, std::abs(x) - 1.5 * rmin)) {
        // pass on the origin side of x
        pts.push_back(x * std::max(0.3, 1.0 - 2.2 * rmin / std::abs(x)));
    }
    pts.push_back(to);

    auto obstacles = domain_branch_points(dp);
    for (int pass = 0; pass < 12; ++pass) {
        bool changed = false;
        for (size_t i = 0; i + 1 < pts.size() && !changed; ++i) {
            cplx a = pts[i], b = pts[i + 1];
            for (cplx ob : obstacles) {
                if (std::abs(a - ob) < 0.9 * rmin || std::abs(b - ob) < 0.9 * rmin) continue;
                if (dist_point_segment(ob, a, b) >= rmin) continue;
                double R = 1.5 * rmin;
                cplx da = (a - ob) / std::abs(a - ob);
                cplx db = (b - ob) / std::abs(b - ob);
                cplx mid_dir;
                if (std::abs(ob - x) < 1e-14) {
                    mid_dir = -x / std::abs(x);  // inward, away from the cut
                } else if (std::abs(da + db) < 1e-6) {
                    cplx perp = kI * (b - a) / std::abs(b - a);
                    cplx cand = ob + R * perp;
                    mid_dir = (cand.real() > -1e-12 && cand.imag() > -1e-12) ? perp : -perp;
                } else {
                    mid_dir = (da + db) / std::abs(da + db);
                }
                std::vector<cplx> ins{ob + R * da, ob + R * mid_dir, ob + R * db};
                pts.insert(pts.begin() + i + 1, ins.begin(), ins.end());
                changed = true;
                break;
            }
        }
        if (!changed) break;
    }
    return pts;
}

}  // namespace

BranchAnchor anchor_state(const DerivedParams& dp) {
    BranchAnchor anchor;
    double s0 = dp.a + 0.35 * (1.0 - dp.a);
    anchor.z0 = dp.family == Family::L2 ? cplx{s0, 0.0} : cplx{0.0, s0};

    cplx rh = std::sqrt(branch_rational_w(dp, anchor.z0));
    cplx rk = std::sqrt(branch_rational_v(dp, anchor.z0));
    // target next to A where the sheet must carry g close to -i
    cplx probe = dp.x * (1.0 - std::max(3.0 * kBranchClearance, 0.02) / std::abs(dp.x));
    std::vector<cplx> to_probe = route(dp, anchor.z0, probe);

    double best = 1e30;
    for (int sh = -1; sh <= 1; sh += 2) {
        for (int sk = -1; sk <= 1; sk += 2) {
            BranchState st{double(sh) * rh, double(sk) * rk};
            cplx g0 = g_from_state(dp, anchor.z0, st);
            if (std::abs(g0.imag()) > 1e-9 * (1.0 + std::abs(g0)) || g0.real() <= 0.0) continue;
            BranchState end = walk_polyline(dp, to_probe, st);
            cplx ge = g_from_state(dp, probe, end);
            double score = std::abs(ge + kI);
            if (score < best) {
                best = score;
                anchor.state = st;
                anchor.g0 = g0;
            }
        }
    }
    if (best > 1.0)
        throw std::runtime_error("anchor_state: no real-positive branch continues to g = -i at A");
    return anchor;
}

const char* arc_name(ArcId id) {
    switch (id) {
        case ArcId::SB: return "SB";
        case ArcId::BL: return "BL";
        case ArcId::LSp: return "LS'";
        case ArcId::SpBp: return "S'B'";
        case ArcId::BpFp: return "B'F'";
        case ArcId::FpS: return "F'S";
    }
    return "?";
}

cplx BoundaryArc::point(double t) const {
    switch (family) {
        case Family::C2:
            if (id == ArcId::SB || id == ArcId::SpBp) return {0.0, t};
            if (id == ArcId::BL || id == ArcId::BpFp) return std::polar(1.0, t);
            return {t, 0.0};
        case Family::L4:
            if (id == ArcId::SB || id == ArcId::SpBp) return {0.0, t};
            if (id == ArcId::BL || id == ArcId::BpFp) return std::polar(1.0, t);
            return {t, 0.0};
        case Family::L2:
            if (id == ArcId::SB || id == ArcId::SpBp) return {t, 0.0};
            if (id == ArcId::BL || id == ArcId::BpFp) return {t, 0.0};
            return {0.0, t};
    }
    return {};
}

cplx BoundaryArc::tangent(double t) const {
    switch (family) {
        case Family::C2:
        case Family::L4:
            if (id == ArcId::SB || id == ArcId::SpBp) return kI;
            if (id == ArcId::BL || id == ArcId::BpFp) return kI * std::polar(1.0, t);
            return {1.0, 0.0};
        case Family::L2:
            if (id == ArcId::LSp || id == ArcId::FpS) return kI;
            return {1.0, 0.0};
    }
    return {};
}

std::vector<BoundaryArc> boundary_arcs(const DerivedParams& dp) {
    const Family f = dp.family;
    std::vector<BoundaryArc> arcs;
    switch (f) {
        case Family::C2:
            arcs = {
                {ArcId::SB, f, 0.0, 1.0, GLocus::RealPositive, DhLocus::Imaginary},
                {ArcId::BL, f, 0.0, kPi / 2, GLocus::RealPositive, DhLocus::Real},
                {ArcId::LSp, f, 0.0, 1.0, GLocus::Diag45, DhLocus::Real},
                {ArcId::SpBp, f, 0.0, 1.0, GLocus::RealNegative, DhLocus::Imaginary},
                {ArcId::BpFp, f, 0.0, kPi / 2, GLocus::RealNegative, DhLocus::Real},
                {ArcId::FpS, f, 0.0, 1.0, GLocus::AntiDiag45, DhLocus::Real},
            };
            break;
        case Family::L4:
            arcs = {
                {ArcId::SB, f, 0.0, 1.0, GLocus::RealPositive, DhLocus::Imaginary},
                {ArcId::BL, f, 0.0, kPi / 2, GLocus::Diag45, DhLocus::Imaginary},
                {ArcId::LSp, f, 0.0, 1.0, GLocus::Diag45, DhLocus::Real},
                {ArcId::SpBp, f, 0.0, 1.0, GLocus::RealNegative, DhLocus::Imaginary},
                {ArcId::BpFp, f, 0.0, kPi / 2, GLocus::AntiDiag45, DhLocus::Imaginary},
                {ArcId::FpS, f, 0.0, 1.0, GLocus::AntiDiag45, DhLocus::Real},
            };
            break;
        case Family::L2:
            arcs = {
                {ArcId::SB, f, 0.0, 1.0, GLocus::RealPositive, DhLocus::Imaginary},
                {ArcId::BL, f, 1.0, 4.0, GLocus::ImagNegative, DhLocus::Imaginary},
                {ArcId::LSp, f, 0.0, 4.0, GLocus::Diag45, DhLocus::Real},
                {ArcId::SpBp, f, 0.0, 1.0, GLocus::RealNegative, DhLocus::Imaginary},
                {ArcId::BpFp, f, 1.0, 4.0, GLocus::ImagNegative, DhLocus::Imaginary},
                {ArcId::FpS, f, 0.0, 4.0, GLocus::AntiDiag45, DhLocus::Real},
            };
            break;
    }
    return arcs;
}

namespace {

// Entry parameter from which an arc can be reached from the anchor without meeting
// the cut that runs radially outward from x.
double arc_entry(const BoundaryArc& arc, double t) {
    switch (arc.id) {
        case ArcId::SB:
        case ArcId::SpBp:
            return t;  // anchor sits on this arc's z-locus
        case ArcId::BL:
        case ArcId::BpFp:
            return arc.family == Family::L2 ? arc.t_lo + 0.04 * (arc.t_hi - arc.t_lo)
                                            : arc.t_hi - 0.02 * (arc.t_hi - arc.t_lo);
        case ArcId::LSp:
        case ArcId::FpS:
            return std::min(arc.t_lo + 0.1 * (std::min(arc.t_hi, 1.0) - arc.t_lo), t);
    }
    return t;
}

}  // namespace

cplx g_on_arc(const BoundaryArc& arc, double t, const DerivedParams& dp) {
    if (!(t > arc.t_lo && t < arc.t_hi)) throw std::invalid_argument("g_on_arc: t outside arc range");

    // rho_h image arcs are served through their partner on the anchored sheet
    if (arc.id == ArcId::SpBp || arc.id == ArcId::BpFp || arc.id == ArcId::LSp) {
        BoundaryArc partner = arc;
        partner.id = arc.id == ArcId::SpBp ? ArcId::SB : (arc.id == ArcId::BpFp ? ArcId::BL : ArcId::FpS);
        for (const auto& cand : boundary_arcs(dp))
            if (cand.id == partner.id) return -1.0 / g_on_arc(cand, t, dp);
        throw std::logic_error("g_on_arc: partner arc missing");
    }

    BranchAnchor anchor = anchor_state(dp);
    double entry = arc_entry(arc, t);
    cplx z_entry = arc.point(entry);
    std::vector<cplx> path = route(dp, anchor.z0, z_entry);
    BranchState st = walk_polyline(dp, path, anchor.state);

    // walk along the arc itself from the entry parameter to the requested one
    int n = std::max(8, int(64.0 * std::abs(t - entry) / (arc.t_hi - arc.t_lo)));
    cplx z_prev = z_entry;
    for (int i = 1; i <= n; ++i) {
        double s = entry + (t - entry) * i / n;
        cplx z_next = arc.point(s);
        st = walk_segment(dp, z_prev, z_next, st);
        z_prev = z_next;
    }
    cplx g = g_from_state(dp, arc.point(t), st);

    // both positive real candidates lie on the SB locus; the anchored sheet decides
    if (arc.g_locus == GLocus::RealPositive || arc.g_locus == GLocus::RealNegative) {
        double d_self = distance_to_g_locus(g, arc.g_locus);
        double d_inv = distance_to_g_locus(1.0 / g, arc.g_locus);
        if (d_self > 1e-7 && d_inv > 1e-7)
            throw AmbiguityError("g_on_arc: no candidate on the expected locus", g, 1.0 / g);
    }
    return g;
}

std::vector<cplx> continue_g(std::span<const cplx> path, cplx g_start, const DerivedParams& dp) {
    if (path.empty()) return {};
    cplx z0 = path[0];
    cplx aw = branch_alpha_w(dp, z0), av = branch_alpha_v(dp, z0);
    if (std::abs(aw) < 1e-10 || std::abs(av) < 1e-10)
        throw std::invalid_argument("continue_g: start point has degenerate branch factors");
    BranchState st{(g_start - 1.0 / g_start) / aw, (g_start + 1.0 / g_start) / av};
    std::vector<cplx> out;
    out.reserve(path.size());
    out.push_back(g_start);
    for (size_t i = 1; i < path.size(); ++i) {
        st = continue_state(dp, path[i], st);
        out.push_back(g_from_state(dp, path[i], st));
    }
    return out;
}

cplx height_differential(const DerivedParams& dp, cplx z, cplx g) {
    if (std::abs(g) < 1e-14) throw PoleError("height_differential: g = 0", z);
    cplx g2 = g * g;
    cplx diff = g2 - 1.0 / g2;
    if (std::abs(diff) < 1e-13)
        throw std::domain_error("height_differential: zero of the square-root denominator");

    if (dp.family == Family::L2) {
        cplx s = diff * z * (1.0 - z * z) / (dp.c * (z * z - dp.a * dp.a));
        return kI / s;
    }
    cplx Z = big_z(dp.family, z);
    if (std::abs(z) < 1e-12) throw PoleError("height_differential: z = 0", z);
    cplx s = kI * Z * Z * Z * diff / (dp.c * (Z * Z + dp.A * dp.A));
    return Z / (z * s);
}

std::array<cplx, 3> weierstrass_forms(cplx g, cplx dhdz) {
    double ag = std::abs(g);
    if (ag < 1e-14 || ag > 1e14)
        throw PoleError("weierstrass_forms: g at a zero/pole (dh vanishes there)", g);
    return {0.5 * (1.0 / g - g) * dhdz, 0.5 * kI * (1.0 / g + g) * dhdz, dhdz};
}

double distance_to_g_locus(cplx w, GLocus locus) {
    switch (locus) {
        case GLocus::RealPositive: return w.real() >= 0 ? std::abs(w.imag()) : std::abs(w);
        case GLocus::RealNegative: return w.real() <= 0 ? std::abs(w.imag()) : std::abs(w);
        case GLocus::ImagNegative: return w.imag() <= 0 ? std::abs(w.real()) : std::abs(w);
        case GLocus::Diag45: return std::abs((w * std::polar(1.0, -kPi / 4)).imag());
        case GLocus::AntiDiag45: return std::abs((w * std::polar(1.0, kPi / 4)).imag());
    }
    return 0;
}

double distance_to_dh_locus(cplx w, DhLocus locus) {
    return locus == DhLocus::Real ? std::abs(w.imag()) : std::abs(w.real());
}

}  // namespace minsurf
