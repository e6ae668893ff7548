#pragma once

#include <string>
#include <vector>

#include "minsurf/builder.hpp"
#include "minsurf/families.hpp"
#include "minsurf/period.hpp"

namespace minsurf {

struct Check {
    std::string id;
    bool passed = false;
    double residual = 0;
    double tolerance = 0;
    std::string detail;
};

struct VerificationReport {
    std::vector<Check> checks;

    void add(const std::string& id, double residual, double tolerance, const std::string& detail = "") {
        checks.push_back({id, residual <= tolerance, residual, tolerance, detail});
    }
    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

// Deviation of g from the table loci and of dh(zdot) from its line, per boundary arc.
VerificationReport check_boundary_loci(const DerivedParams& dp, int samples_per_arc = 100);

// Compares the two period integrals computed from mesh boundary chains against each
// other and against the quadrature values (Eq-16-type closure).
VerificationReport check_period_closure(const Mesh& mesh, const DerivedParams& dp);

// Discrete mean curvature (cotangent Laplacian / mixed area) over interior vertices.
// Vertices inside the z-charts of the listed branch points are not counted: the
// conformal parameterization degenerates there and the discrete operator has no
// consistency; those neighbourhoods are covered by the locus and symmetry checks.
struct MinimalityStats {
    double max_h = 0;
    double mean_h = 0;
    int degenerate_triangles = 0;
    int interior_vertices = 0;
};
MinimalityStats mean_curvature_stats(const Mesh& mesh, std::span<const cplx> chart_exclusions = {},
                                     double exclusion_radius = 0.15,
                                     double far_field_radius = 1e300);
VerificationReport check_minimality(const Mesh& mesh, double tolerance,
                                    std::span<const cplx> chart_exclusions = {},
                                    double far_field_radius = 1e300);

// One-sided Hausdorff distance from the moved vertex set to the mesh.
double one_sided_hausdorff(const Mesh& mesh, const RigidMotion& motion);

// Largest distance from the given points to the mesh surface.
double one_sided_distance(const Mesh& mesh, const std::vector<Vec3>& points);
VerificationReport check_symmetries(const Mesh& piece, const std::vector<RigidMotion>& motions,
                                    double tolerance_scale = 1e-5);

// The three embeddedness sub-checks of the C2 construction.
VerificationReport check_embeddedness_conditions(const DerivedParams& dp);

// algebraic parts of the embeddedness conditions (no mesh)
bool c2_sufficient_inequality(const DerivedParams& dp);
bool c2_diagonal_value_has_root(const DerivedParams& dp);

// Counts the solutions of g = probe over the four-sheeted cover; compares with the
// Gauss map degree. `probe` must keep distance from the symmetry loci.
bool generic_probe(cplx probe);
struct DegreeCount {
    int solutions = 0;
    int z_fiber = 0;  // distinct g candidates over a generic z
};
DegreeCount count_degree(const DerivedParams& dp, cplx probe);
VerificationReport check_degree(const DerivedParams& dp, cplx probe);

// Durand-Kerner roots of a dense complex polynomial (leading coefficient first).
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);

}  // namespace minsurf
