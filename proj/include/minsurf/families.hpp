#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "minsurf/types.hpp"

namespace minsurf {

enum class Family { C2, L2, L4 };

struct FamilyInfo {
    int genus;
    int gauss_degree;
};
FamilyInfo family_info(Family f);
const char* family_name(Family f);
Family family_from_name(const std::string& name);

struct ShapeParams {
    Family family = Family::C2;
    cplx x;  // image of the branch point A under z
};

struct AdmissibilityError : std::invalid_argument {
    explicit AdmissibilityError(const std::string& what) : std::invalid_argument(what) {}
};

// Dependent quantities fixed by the constraint equations of each family.
//   C2:  Z = z - 1/z, X = 1/x - x, A = a + 1/a = -|X|^2 / Im X, c = 1/(A + Im X)
//   L4:  Z = z + 1/z, X = x + 1/x, A = 1/a - a = -|X|^2 / Im X, c = 1/(A + Im X)
//   L2:  A = a + 1/a = (|x|^2 + 1) / Re x, c = (1/a - a)/|x - a|^2 (curve prefactor), X unused
struct DerivedParams {
    Family family = Family::C2;
    cplx x;
    cplx X;
    double A = 0;
    double a = 0;
    double c = 0;
};

DerivedParams derive_params(const ShapeParams& sp);
bool admissible(const ShapeParams& sp);

// Right-hand side of the C2 admissibility bound on |x| as a function of theta = Arg x.
double c2_admissible_radius(double theta);

struct GaussSquares {
    cplx p;  // (g - 1/g)^2
    cplx q;  // (g + 1/g)^2
};

struct PoleError : std::domain_error {
    cplx location;
    explicit PoleError(const std::string& what, cplx where) : std::domain_error(what), location(where) {}
};

GaussSquares gauss_squares(const DerivedParams& dp, cplx z);

// ---- branch bookkeeping -------------------------------------------------------------
//
// Writing w = g - 1/g and v = g + 1/g, each family's algebraic equations factor as
//   w = aw(z) * h,   h^2 = Rw(z)
//   v = av(z) * k,   k^2 = Rv(z)
// with aw, av single-valued and Rw, Rv rational. The four sheets over a generic z are the
// sign choices of (h, k), and g = (w + v) / 2. Rv has a branch point at z = x inside the
// fundamental domain; Rw does not, so only k needs the cut.

struct BranchState {
    cplx h;
    cplx k;
};

cplx branch_alpha_w(const DerivedParams& dp, cplx z);
cplx branch_alpha_v(const DerivedParams& dp, cplx z);
cplx branch_rational_w(const DerivedParams& dp, cplx z);
cplx branch_rational_v(const DerivedParams& dp, cplx z);
cplx g_from_state(const DerivedParams& dp, cplx z, const BranchState& st);

// Nearest-sign continuation of (h,k) to a new z. Throws ContinuationError when the step is
// too large relative to the branch separation.
struct ContinuationError : std::runtime_error {
    explicit ContinuationError(const std::string& what) : std::runtime_error(what) {}
};
BranchState continue_state(const DerivedParams& dp, cplx z_new, const BranchState& st);

// Branch anchor for the fundamental-domain sheet: a point z0 on the straight-segment arc
// where g is real positive, on the sheet that carries g = -i at the branch point A.
struct BranchAnchor {
    cplx z0;
    BranchState state;
    cplx g0;
};
BranchAnchor anchor_state(const DerivedParams& dp);

// Branch points of z in the closed fundamental domain (excluded by clearance when meshing).
std::vector<cplx> domain_branch_points(const DerivedParams& dp);

// default clearance kept between continuation paths and branch points
inline constexpr double kBranchClearance = 1e-3;

// ---- boundary arcs ------------------------------------------------------------------

enum class ArcId { SB, BL, LSp, SpBp, BpFp, FpS };
const char* arc_name(ArcId id);

enum class GLocus { RealPositive, RealNegative, ImagNegative, Diag45, AntiDiag45 };
enum class DhLocus { Real, Imaginary };

struct BoundaryArc {
    ArcId id;
    Family family;
    double t_lo, t_hi;       // open parameter range
    GLocus g_locus;
    DhLocus dh_locus;        // locus of dh(zdot) along the arc
    cplx point(double t) const;   // z(t)
    cplx tangent(double t) const; // dz/dt
};

// The six boundary arcs of the doubled fundamental domain, in boundary order.
std::vector<BoundaryArc> boundary_arcs(const DerivedParams& dp);

struct AmbiguityError : std::runtime_error {
    cplx candidate_a, candidate_b;
    AmbiguityError(const std::string& what, cplx ca, cplx cb)
        : std::runtime_error(what), candidate_a(ca), candidate_b(cb) {}
};

// Gauss map on a boundary arc with the sheet conventions of the anchored branch.
cplx g_on_arc(const BoundaryArc& arc, double t, const DerivedParams& dp);

// Continuation of g along a z-path (wrapper over the (h,k) state machine).
std::vector<cplx> continue_g(std::span<const cplx> path, cplx g_start, const DerivedParams& dp);

// Height differential dh/dz at (z, g); the square root in its denominator is evaluated
// through the supplied g, never as an independent principal branch.
cplx height_differential(const DerivedParams& dp, cplx z, cplx g);

// Weierstrass forms (phi1, phi2, phi3)/dz = (1/2)(1/g - g, i/g + i g, 2) dh/dz.
std::array<cplx, 3> weierstrass_forms(cplx g, cplx dhdz);

// distance from w to the locus (ray through origin for the diagonal loci, half-line for real ones)
double distance_to_g_locus(cplx w, GLocus locus);
double distance_to_dh_locus(cplx w, DhLocus locus);

}  // namespace minsurf
