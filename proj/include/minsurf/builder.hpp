#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minsurf/families.hpp"
#include "minsurf/types.hpp"

namespace minsurf {

// Triangulated chart of the fundamental domain in the z-plane. Clearance disks are cut
// around branch points and a slit runs radially outward from x; edges and triangles
// crossing the slit are kept separately so the two sheets of the doubled domain can be
// stitched back together.
struct DomainGrid {
    Family family = Family::C2;
    int N = 0;
    double clearance = 0;
    double truncation_radius = 1.0;  // > 1 only for L2

    std::vector<cplx> nodes;
    std::vector<std::pair<int, int>> edges;        // slit-free edges
    std::vector<std::array<int, 3>> triangles;     // slit-free triangles

    struct StraddleTriangle {
        std::array<int, 3> v;
        std::array<bool, 3> edge_crosses;  // edges (v0,v1), (v1,v2), (v2,v0)
    };
    std::vector<StraddleTriangle> straddle;
    std::vector<std::pair<int, int>> crossing_edges;

    std::vector<int> arc_tag;       // -1 interior, else int(ArcId) of the sheet-0 arc
    std::vector<double> arc_param;
    std::vector<char> arc_beyond_slit;  // boundary node lies past the slit crossing
    int anchor_node = -1;

    bool node_alive(int i) const { return alive.empty() ? true : alive[size_t(i)] != 0; }
    std::vector<char> alive;
};

DomainGrid sample_domain(const DerivedParams& dp, int N, double clearance = kBranchClearance);

struct SurfaceSample {
    cplx z;
    cplx g;
    Vec3 position;
    Vec3 normal;
};

struct Mesh {
    std::vector<SurfaceSample> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::map<std::string, std::vector<int>> arcs;  // ordered vertex chains per boundary arc
    std::map<std::string, std::vector<char>> arc_beyond;  // per-chain slit flags (see builder)

    Vec3 a_position;       // image of the branch point A (axis of rho_h)
    double sb_height = 0;  // x3 of the straight SB segment
    bool has_axis = false;

    // seam bookkeeping carried over from the grid so the rho_h double can be stitched
    std::vector<DomainGrid::StraddleTriangle> straddle;
    std::vector<std::pair<int, int>> crossing_edges;

    Vec3 centroid() const;
    double diameter() const;
};

enum class TreeStrategy { BreadthFirst, DepthFirst };

// Integrates Re of the Weierstrass forms over a spanning tree of the grid.
Mesh integrate_immersion(const DomainGrid& grid, const DerivedParams& dp,
                         TreeStrategy strategy = TreeStrategy::BreadthFirst,
                         double edge_tol = 1e-10);

// Half turn about the horizontal x2-parallel axis through the A point of the mesh.
RigidMotion rho_h_motion(const Mesh& mesh);
Mesh apply_rho_h(const Mesh& mesh);

struct PeriodLeakError : std::runtime_error {
    Vec3 gap;
    PeriodLeakError(const std::string& what, Vec3 g) : std::runtime_error(what), gap(g) {}
};

// One maximal straight or planar run of a boundary circuit.
struct BoundaryRun {
    std::string label;
    bool straight = false;
    Vec3 plane_normal;   // for planar runs: vertical plane { p . n = offset }
    double offset = 0;
    Vec3 line_point, line_dir;  // for straight runs
    double deviation = 0;  // max distance of the run's vertices from the line/plane
    int vertex_count = 0;
};

struct PieceResult {
    Mesh mesh;                       // glued fundamental piece
    Mesh domain;                     // the doubled fundamental domain it was grown from
    std::vector<RigidMotion> generators;
    int boundary_circuits = 0;
    std::vector<BoundaryRun> boundary_runs;
    double weld_mismatch = 0;        // max distance between identified chain vertices
    Vec3 period_gap;                 // offset between the SB and S'B' axis lines
};

// Doubles the domain mesh through rho_h and closes it under the two vertical-plane
// reflections carried by the 45-degree boundary arcs.
PieceResult assemble_fundamental_piece(const Mesh& mesh, const DerivedParams& dp,
                                       double period_gap_tol = 1e30);

struct TileResult {
    Mesh mesh;
    std::array<Vec3, 3> lattice;  // two horizontal vectors and one vertical
};

TileResult tile(const PieceResult& piece, const DerivedParams& dp, std::array<int, 3> counts);

}  // namespace minsurf
