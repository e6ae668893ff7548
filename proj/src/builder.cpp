#include "minsurf/builder.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

namespace minsurf {

namespace {

const cplx kIm{0.0, 1.0};

bool segments_cross(cplx a, cplx b, cplx c, cplx d) {
    auto side = [](cplx p, cplx q, cplx r) {
        double v = ((q - p) * std::conj(r - p)).imag();
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
    };
    int s1 = side(a, b, c), s2 = side(a, b, d);
    int s3 = side(c, d, a), s4 = side(c, d, b);
    return s1 * s2 < 0 && s3 * s4 < 0;
}

struct GridLayout {
    int N;
    std::vector<double> radii;   // rows j = 0..Nr-1
    int cols;                    // angular samples 0..cols-1 covering [0, pi/2]
    int idx(int j, int k) const { return j * cols + k; }
};

GridLayout make_layout(Family family, int N, double truncation) {
    GridLayout L;
    L.N = N;
    L.cols = N + 1;
    if (family == Family::L2) {
        double beta = std::atan(truncation);
        for (int j = 1; j <= N; ++j) L.radii.push_back(std::tan(beta * j / N));
    } else {
        for (int j = 1; j <= N; ++j) L.radii.push_back(0.5 * (1.0 - std::cos(kPi * j / N)));
    }
    return L;
}

}  // namespace

DomainGrid sample_domain(const DerivedParams& dp, int N, double clearance) {
    if (N < 8) throw std::invalid_argument("sample_domain: N must be at least 8");
    if (!(clearance > 0)) throw std::invalid_argument("sample_domain: clearance must be positive");

    DomainGrid grid;
    grid.family = dp.family;
    grid.N = N;
    grid.clearance = clearance;
    grid.truncation_radius = dp.family == Family::L2 ? 4.0 : 1.0;

    GridLayout L = make_layout(dp.family, N, grid.truncation_radius);
    const int rows = int(L.radii.size());
    grid.nodes.resize(size_t(rows) * L.cols);
    grid.alive.assign(grid.nodes.size(), 1);
    grid.arc_tag.assign(grid.nodes.size(), -1);
    grid.arc_param.assign(grid.nodes.size(), 0.0);
    grid.arc_beyond_slit.assign(grid.nodes.size(), 0);

    for (int j = 0; j < rows; ++j)
        for (int k = 0; k < L.cols; ++k)
            grid.nodes[L.idx(j, k)] = std::polar(L.radii[j], (kPi / 2) * k / N);

    // local spacing near the interior branch point x
    double ax = std::abs(dp.x);
    double h_loc = ax * (kPi / 2) / N;
    for (int j = 0; j + 1 < rows; ++j)
        if (L.radii[j] <= ax && ax <= L.radii[j + 1])
            h_loc = std::max(h_loc, L.radii[j + 1] - L.radii[j]);
    const double hole_radius = std::max(clearance, 0.9 * h_loc);

    auto obstacles = domain_branch_points(dp);
    for (size_t i = 0; i < grid.nodes.size(); ++i) {
        for (cplx ob : obstacles) {
            double r_excl = std::abs(ob - dp.x) < 1e-14 ? hole_radius : clearance;
            if (std::abs(grid.nodes[i] - ob) < r_excl) grid.alive[i] = 0;
        }
    }

    // slit angle (used both for edge crossing tests and the boundary-chain sheet flags)
    const double slit_rot = 1e-3 * (kPi / 2) / N;
    const double slit_angle = std::arg(dp.x) + slit_rot;

    // arc tags (sheet-0 labels)
    for (int j = 0; j < rows; ++j) {
        for (int k = 0; k < L.cols; ++k) {
            int id = L.idx(j, k);
            if (!grid.alive[id]) continue;
            double r = L.radii[j];
            if (dp.family == Family::L2) {
                if (k == 0) {
                    grid.arc_tag[id] = int(r < 1.0 ? ArcId::SB : ArcId::BL);
                    grid.arc_param[id] = r;
                } else if (k == N) {
                    grid.arc_tag[id] = int(ArcId::FpS);
                    grid.arc_param[id] = r;
                }
            } else {
                if (k == N && j + 1 < rows) {
                    grid.arc_tag[id] = int(ArcId::SB);
                    grid.arc_param[id] = r;
                } else if (j + 1 == rows) {
                    grid.arc_tag[id] = int(ArcId::BL);
                    grid.arc_param[id] = (kPi / 2) * k / N;
                    // circle nodes below the slit angle live past the cut; entering from
                    // the theta = pi/2 end, their sheet is the rho_h image
                    grid.arc_beyond_slit[id] = grid.arc_param[id] < slit_angle ? 1 : 0;
                } else if (k == 0) {
                    grid.arc_tag[id] = int(ArcId::FpS);
                    grid.arc_param[id] = r;
                }
            }
        }
    }

    // slit from x radially outward (slightly rotated off the grid columns)
    cplx slit_dir = std::polar(1.0, slit_angle);
    cplx slit_a = dp.x;
    cplx slit_b = slit_dir * (grid.truncation_radius + 1.0);
    auto edge_crosses = [&](int u, int v) {
        return segments_cross(grid.nodes[u], grid.nodes[v], slit_a, slit_b);
    };

    auto add_triangle = [&](int a, int b, int c) {
        if (!grid.alive[a] || !grid.alive[b] || !grid.alive[c]) return;
        std::array<bool, 3> cross{edge_crosses(a, b), edge_crosses(b, c), edge_crosses(c, a)};
        int n_cross = int(cross[0]) + int(cross[1]) + int(cross[2]);
        if (n_cross == 0) {
            grid.triangles.push_back({a, b, c});
        } else if (n_cross == 2) {
            grid.straddle.push_back({{a, b, c}, cross});
        }
        // a triangle cut an odd number of times can only happen at the slit tip inside
        // the exclusion hole; such elements are dropped
    };

    for (int j = 0; j + 1 < rows; ++j) {
        for (int k = 0; k + 1 < L.cols; ++k) {
            int a = L.idx(j, k), b = L.idx(j + 1, k), c = L.idx(j + 1, k + 1), d = L.idx(j, k + 1);
            add_triangle(a, b, c);
            add_triangle(a, c, d);
        }
    }

    std::set<std::pair<int, int>> edge_set, crossing_set;
    auto note_edge = [&](int u, int v, bool crossing) {
        auto key = std::minmax(u, v);
        if (crossing)
            crossing_set.insert(key);
        else
            edge_set.insert(key);
    };
    for (const auto& t : grid.triangles)
        for (int e = 0; e < 3; ++e) note_edge(t[e], t[(e + 1) % 3], false);
    for (const auto& s : grid.straddle)
        for (int e = 0; e < 3; ++e) note_edge(s.v[e], s.v[(e + 1) % 3], s.edge_crosses[e]);
    // lattice edges survive even where the exclusion hole removed their quads; the
    // integration tree needs them to reach around the hole at coarse resolutions
    for (int j = 0; j < rows; ++j) {
        for (int k = 0; k < L.cols; ++k) {
            int a = L.idx(j, k);
            if (!grid.alive[a]) continue;
            if (j + 1 < rows && grid.alive[L.idx(j + 1, k)] && !edge_crosses(a, L.idx(j + 1, k)))
                note_edge(a, L.idx(j + 1, k), false);
            if (k + 1 < L.cols && grid.alive[L.idx(j, k + 1)] && !edge_crosses(a, L.idx(j, k + 1)))
                note_edge(a, L.idx(j, k + 1), false);
        }
    }
    grid.edges.assign(edge_set.begin(), edge_set.end());
    grid.crossing_edges.assign(crossing_set.begin(), crossing_set.end());

    // anchor: the SB node nearest the g = 1 crossing point
    cplx anchor_target = dp.family == Family::L2 ? cplx{dp.a, 0.0} : cplx{0.0, dp.a};
    double best = 1e30;
    for (size_t i = 0; i < grid.nodes.size(); ++i) {
        if (!grid.alive[i] || grid.arc_tag[i] != int(ArcId::SB)) continue;
        double d = std::abs(grid.nodes[i] - anchor_target);
        if (d < best) {
            best = d;
            grid.anchor_node = int(i);
        }
    }
    if (grid.anchor_node < 0) throw std::runtime_error("sample_domain: no SB node available for the anchor");

    // connectivity of the slit-free edge graph
    std::vector<char> seen(grid.nodes.size(), 0);
    std::vector<std::vector<int>> adj(grid.nodes.size());
    for (auto [u, v] : grid.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::deque<int> queue{grid.anchor_node};
    seen[grid.anchor_node] = 1;
    size_t reached = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                queue.push_back(v);
            }
    }
    size_t live = 0;
    for (size_t i = 0; i < grid.nodes.size(); ++i) {
        if (!grid.alive[i]) continue;
        bool isolated = adj[i].empty();
        if (isolated) grid.alive[i] = 0; else ++live;
    }
    if (reached < live)
        throw std::runtime_error("sample_domain: clearance disconnects the grid");
    return grid;
}

namespace {

struct EdgeIntegrator {
    const DerivedParams& dp;
    double tol;

    std::array<cplx, 3> forms_at(cplx z, const BranchState& st) const {
        cplx g = g_from_state(dp, z, st);
        cplx dh = height_differential(dp, z, g);
        return weierstrass_forms(g, dh);
    }

    // sub-stepped continuation between nearby points
    BranchState walk(cplx za, cplx zb, BranchState st, int depth = 0) const {
        try {
            return continue_state(dp, zb, st);
        } catch (const ContinuationError&) {
            if (depth > 48) throw;
            cplx mid = 0.5 * (za + zb);
            return walk(mid, zb, walk(za, mid, st, depth + 1), depth + 1);
        }
    }

    // midpoint rule with Richardson refinement; returns Re of the integrals of the forms
    Vec3 integrate(cplx za, cplx zb, const BranchState& st_a, BranchState* st_b) const {
        std::array<cplx, 3> prev{}, curr{};
        Vec3 out;
        int max_level = 9;
        std::array<cplx, 3> richardson_prev{};
        for (int level = 0; level <= max_level; ++level) {
            int panels = 1 << level;
            cplx dz = (zb - za) / double(panels);
            BranchState st = st_a;
            cplx z_prev = za;
            std::array<cplx, 3> sum{};
            for (int p = 0; p < panels; ++p) {
                cplx zm = za + (double(p) + 0.5) * dz;
                st = walk(z_prev, zm, st);
                auto f = forms_at(zm, st);
                for (int c = 0; c < 3; ++c) sum[c] += f[c] * dz;
                z_prev = zm;
            }
            if (st_b && level == max_level) *st_b = walk(z_prev, zb, st);
            curr = sum;
            if (level > 0) {
                std::array<cplx, 3> rich;
                for (int c = 0; c < 3; ++c) rich[c] = (4.0 * curr[c] - prev[c]) / 3.0;
                double delta = 0;
                if (level > 1)
                    for (int c = 0; c < 3; ++c) delta = std::max(delta, std::abs(rich[c] - richardson_prev[c]));
                if (level > 1 && delta < tol) {
                    if (st_b) *st_b = walk(z_prev, zb, st);
                    out = {rich[0].real(), rich[1].real(), rich[2].real()};
                    return out;
                }
                richardson_prev = rich;
            }
            prev = curr;
        }
        out = {richardson_prev[0].real(), richardson_prev[1].real(), richardson_prev[2].real()};
        return out;
    }
};

Vec3 stereographic_normal(cplx g) {
    double n2 = std::norm(g);
    return Vec3{2.0 * g.real(), 2.0 * g.imag(), n2 - 1.0} * (1.0 / (n2 + 1.0));
}

}  // namespace

Vec3 Mesh::centroid() const {
    Vec3 c;
    for (const auto& v : vertices) c += v.position;
    return c * (vertices.empty() ? 0.0 : 1.0 / double(vertices.size()));
}

double Mesh::diameter() const {
    Vec3 lo{1e30, 1e30, 1e30}, hi{-1e30, -1e30, -1e30};
    for (const auto& v : vertices) {
        lo = {std::min(lo.x, v.position.x), std::min(lo.y, v.position.y), std::min(lo.z, v.position.z)};
        hi = {std::max(hi.x, v.position.x), std::max(hi.y, v.position.y), std::max(hi.z, v.position.z)};
    }
    return (hi - lo).norm();
}

Mesh integrate_immersion(const DomainGrid& grid, const DerivedParams& dp,
                         TreeStrategy strategy, double edge_tol) {
    EdgeIntegrator integ{dp, edge_tol};

    // branch state at the grid anchor node, continued from the family anchor
    BranchAnchor fam_anchor = anchor_state(dp);
    cplx z_anchor = grid.nodes[grid.anchor_node];
    BranchState anchor_st = integ.walk(fam_anchor.z0, z_anchor, fam_anchor.state);

    const size_t n = grid.nodes.size();
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : grid.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }

    std::vector<char> have(n, 0);
    std::vector<BranchState> state(n);
    std::vector<Vec3> pos(n);
    std::deque<int> frontier{grid.anchor_node};
    have[grid.anchor_node] = 1;
    state[grid.anchor_node] = anchor_st;
    pos[grid.anchor_node] = Vec3{0, 0, 0};

    while (!frontier.empty()) {
        int u;
        if (strategy == TreeStrategy::BreadthFirst) {
            u = frontier.front();
            frontier.pop_front();
        } else {
            u = frontier.back();
            frontier.pop_back();
        }
        for (int v : adj[u]) {
            if (have[v]) continue;
            have[v] = 1;
            BranchState st_v;
            Vec3 d = integ.integrate(grid.nodes[u], grid.nodes[v], state[u], &st_v);
            state[v] = st_v;
            pos[v] = pos[u] + d;
            frontier.push_back(v);
        }
    }

    // compact to alive & reached vertices
    std::vector<int> remap(n, -1);
    Mesh mesh;
    for (size_t i = 0; i < n; ++i) {
        if (!grid.alive[i] || !have[i]) continue;
        remap[i] = int(mesh.vertices.size());
        SurfaceSample s;
        s.z = grid.nodes[i];
        s.g = g_from_state(dp, s.z, state[i]);
        s.position = pos[i];
        s.normal = stereographic_normal(s.g);
        mesh.vertices.push_back(s);
    }
    for (const auto& t : grid.triangles) {
        if (remap[t[0]] < 0 || remap[t[1]] < 0 || remap[t[2]] < 0) continue;
        mesh.triangles.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
    }
    for (const auto& s : grid.straddle) {
        if (remap[s.v[0]] < 0 || remap[s.v[1]] < 0 || remap[s.v[2]] < 0) continue;
        mesh.straddle.push_back({{remap[s.v[0]], remap[s.v[1]], remap[s.v[2]]}, s.edge_crosses});
    }
    for (auto [u, v] : grid.crossing_edges)
        if (remap[u] >= 0 && remap[v] >= 0) mesh.crossing_edges.push_back({remap[u], remap[v]});

    // arcs as ordered chains
    struct Tagged {
        double t;
        int v;
        char beyond;
    };
    std::map<int, std::vector<Tagged>> chains;
    for (size_t i = 0; i < n; ++i)
        if (remap[i] >= 0 && grid.arc_tag[i] >= 0)
            chains[grid.arc_tag[i]].push_back({grid.arc_param[i], remap[i], grid.arc_beyond_slit[i]});
    for (auto& [tag, list] : chains) {
        std::sort(list.begin(), list.end(), [](const Tagged& a, const Tagged& b) { return a.t < b.t; });
        std::vector<int> ids;
        std::vector<char> beyond;
        for (const auto& e : list) {
            ids.push_back(e.v);
            beyond.push_back(e.beyond);
        }
        mesh.arcs[arc_name(ArcId(tag))] = ids;
        mesh.arc_beyond[arc_name(ArcId(tag))] = beyond;
    }

    // orient triangles with the Gauss-map normals
    int agree = 0, total = 0;
    for (const auto& t : mesh.triangles) {
        Vec3 a = mesh.vertices[t[0]].position, b = mesh.vertices[t[1]].position, c = mesh.vertices[t[2]].position;
        Vec3 fn = (b - a).cross(c - a);
        if (fn.norm() < 1e-18) continue;
        Vec3 vn = mesh.vertices[t[0]].normal + mesh.vertices[t[1]].normal + mesh.vertices[t[2]].normal;
        ++total;
        if (fn.dot(vn) > 0) ++agree;
    }
    if (total > 0 && agree * 2 < total) {
        for (auto& t : mesh.triangles) std::swap(t[1], t[2]);
        for (auto& s : mesh.straddle) {
            std::swap(s.v[1], s.v[2]);
            std::swap(s.edge_crosses[0], s.edge_crosses[2]);
        }
    }

    // A position by sqrt-extrapolation along the inward ray toward x; the continuation
    // itself can approach the branch point much closer than the mesh hole
    {
        double sigma = std::min(grid.clearance, 1e-3);
        // nearest live vertex to x
        int near = -1;
        double bestd = 1e30;
        for (size_t i = 0; i < mesh.vertices.size(); ++i) {
            double d = std::abs(mesh.vertices[i].z - dp.x);
            if (d < bestd) {
                bestd = d;
                near = int(i);
            }
        }
        // position expands in powers of sqrt(rho) about the branch point; a four-term
        // Vandermonde fit in s = sqrt(rho) extrapolates to rho = 0
        const int M = 4;
        std::array<double, M> rho{16.0 * sigma, 9.0 * sigma, 4.0 * sigma, 1.0 * sigma};
        std::array<Vec3, M> p;
        cplx xhat = dp.x / std::abs(dp.x);
        BranchState st{};
        {
            cplx z0 = mesh.vertices[near].z;
            cplx g0 = mesh.vertices[near].g;
            st = BranchState{(g0 - 1.0 / g0) / branch_alpha_w(dp, z0),
                             (g0 + 1.0 / g0) / branch_alpha_v(dp, z0)};
        }
        cplx z_prev = mesh.vertices[near].z;
        Vec3 p_prev = mesh.vertices[near].position;
        for (int i = 0; i < M; ++i) {
            cplx q = dp.x - rho[i] * xhat;
            BranchState st_q;
            Vec3 d = integ.integrate(z_prev, q, st, &st_q);
            p[i] = p_prev + d;
            st = st_q;
            z_prev = q;
            p_prev = p[i];
        }
        auto extrapolate = [&](auto coord) {
            double A[M][M + 1];
            for (int i = 0; i < M; ++i) {
                double s = std::sqrt(rho[i]);
                double pw = 1;
                for (int j = 0; j < M; ++j) {
                    A[i][j] = pw;
                    pw *= s;
                }
                A[i][M] = coord(p[i]);
            }
            for (int c = 0; c < M; ++c) {  // Gaussian elimination with partial pivoting
                int piv = c;
                for (int r = c + 1; r < M; ++r)
                    if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
                std::swap(A[c], A[piv]);
                for (int r = c + 1; r < M; ++r) {
                    double f = A[r][c] / A[c][c];
                    for (int cc = c; cc <= M; ++cc) A[r][cc] -= f * A[c][cc];
                }
            }
            double sol[M];
            for (int r = M - 1; r >= 0; --r) {
                double acc = A[r][M];
                for (int cc = r + 1; cc < M; ++cc) acc -= A[r][cc] * sol[cc];
                sol[r] = acc / A[r][r];
            }
            return sol[0];
        };
        mesh.a_position = {extrapolate([](const Vec3& v) { return v.x; }),
                           extrapolate([](const Vec3& v) { return v.y; }),
                           extrapolate([](const Vec3& v) { return v.z; })};
        mesh.has_axis = true;
    }

    // height of the straight SB segment
    if (auto it = mesh.arcs.find("SB"); it != mesh.arcs.end() && !it->second.empty()) {
        double h = 0;
        for (int v : it->second) h += mesh.vertices[v].position.z;
        mesh.sb_height = h / double(it->second.size());
    }
    return mesh;
}

RigidMotion rho_h_motion(const Mesh& mesh) {
    if (!mesh.has_axis) throw std::invalid_argument("rho_h_motion: mesh carries no axis data");
    return RigidMotion::horizontal_half_turn(mesh.a_position, Vec3{0, 1, 0});
}

Mesh apply_rho_h(const Mesh& mesh) {
    RigidMotion m = rho_h_motion(mesh);
    Mesh out = mesh;
    for (auto& v : out.vertices) {
        v.position = m.apply(v.position);
        v.g = std::abs(v.g) < 1e-300 ? cplx{1e300, 0} : -1.0 / v.g;
        v.normal = stereographic_normal(v.g);
    }
    // proper rotation: winding stays consistent
    out.arcs.clear();
    auto relabel = [](const std::string& s) {
        if (s == "SB") return std::string("S'B'");
        if (s == "BL") return std::string("B'F'");
        if (s == "F'S") return std::string("LS'");
        if (s == "S'B'") return std::string("SB");
        if (s == "B'F'") return std::string("BL");
        if (s == "LS'") return std::string("F'S");
        return s;
    };
    for (const auto& [k, v] : mesh.arcs) out.arcs[relabel(k)] = v;
    return out;
}

namespace {

// Append `other` to `base`, returning the vertex offset.
int append_mesh(Mesh& base, const Mesh& other, bool flip_winding) {
    int off = int(base.vertices.size());
    base.vertices.insert(base.vertices.end(), other.vertices.begin(), other.vertices.end());
    for (auto t : other.triangles) {
        if (flip_winding) std::swap(t[1], t[2]);
        base.triangles.push_back({t[0] + off, t[1] + off, t[2] + off});
    }
    return off;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

PieceResult assemble_fundamental_piece(const Mesh& mesh, const DerivedParams& dp,
                                       double period_gap_tol) {
    PieceResult out;

    // --- double the domain through rho_h and stitch the slit ---
    Mesh rho = apply_rho_h(mesh);
    Mesh d6 = mesh;
    int off = append_mesh(d6, rho, false);
    for (const auto& [k, v] : rho.arcs) {
        std::vector<int> shifted;
        for (int i : v) shifted.push_back(i + off);
        d6.arcs[k] = shifted;
    }
    // stitch triangles straddling the slit: instances on both base sheets, vertices on
    // the sheet dictated by the edge-crossing parity
    for (const auto& s : mesh.straddle) {
        for (int sheet = 0; sheet <= 1; ++sheet) {
            std::array<int, 3> c;
            c[0] = sheet;
            c[1] = c[0] ^ int(s.edge_crosses[0]);
            c[2] = c[1] ^ int(s.edge_crosses[1]);
            d6.triangles.push_back({s.v[0] + c[0] * off, s.v[1] + c[1] * off, s.v[2] + c[2] * off});
        }
    }
    d6.straddle.clear();
    d6.crossing_edges.clear();

    // restitch the chains that cross the slit: past the crossing, the arc continues on
    // the other sheet (only the circle arcs of C2/L4 are affected)
    {
        auto it = mesh.arc_beyond.find("BL");
        bool any = false;
        if (it != mesh.arc_beyond.end())
            for (char b : it->second) any |= (b != 0);
        if (any) {
            const auto& ids = mesh.arcs.at("BL");
            const auto& beyond = it->second;
            std::vector<int> bl_true, bpfp_true;
            for (size_t i = 0; i < ids.size(); ++i) {
                bl_true.push_back(beyond[i] ? ids[i] + off : ids[i]);
                bpfp_true.push_back(beyond[i] ? ids[i] : ids[i] + off);
            }
            d6.arcs["BL"] = bl_true;
            d6.arcs["B'F'"] = bpfp_true;
        }
    }

    // cap the clearance hole at the branch point A with a fan to the extrapolated centre
    {
        double r_min = 1e30;
        for (const auto& v : d6.vertices) r_min = std::min(r_min, std::abs(v.z - dp.x));
        double r_rim = 2.2 * r_min;
        std::map<std::pair<int, int>, std::pair<int, int>> edge_info;  // key -> (count, oriented first use)
        for (const auto& t : d6.triangles)
            for (int e = 0; e < 3; ++e) {
                int u = t[e], v = t[(e + 1) % 3];
                auto key = std::minmax(u, v);
                auto it = edge_info.find(key);
                if (it == edge_info.end())
                    edge_info[key] = {1, u};
                else
                    ++it->second.first;
            }
        SurfaceSample centre;
        centre.z = dp.x;
        centre.g = cplx{0.0, -1.0};
        centre.position = mesh.a_position;
        centre.normal = Vec3{0, -1, 0};
        int centre_id = -1;
        for (const auto& [key, info] : edge_info) {
            if (info.first != 1) continue;
            auto [u, v] = key;
            if (std::abs(d6.vertices[u].z - dp.x) > r_rim || std::abs(d6.vertices[v].z - dp.x) > r_rim)
                continue;
            if (centre_id < 0) {
                centre_id = int(d6.vertices.size());
                d6.vertices.push_back(centre);
            }
            int first = info.second;
            int second = first == u ? v : u;
            d6.triangles.push_back({second, first, centre_id});
        }
    }
    out.domain = d6;

    // --- fit the two 45-degree reflection planes from the diagonal chains ---
    // (their normals are exact by the arc loci; only the offsets are measured)
    const Vec3 n1 = Vec3{1, -1, 0} * (1.0 / std::sqrt(2.0));  // LS' plane normal
    const Vec3 n2 = Vec3{1, 1, 0} * (1.0 / std::sqrt(2.0));   // F'S plane normal
    auto fit_offset = [&](const std::string& arc, const Vec3& n, double* dev) {
        auto it = d6.arcs.find(arc);
        if (it == d6.arcs.end() || it->second.empty())
            throw std::runtime_error("assemble: missing diagonal chain " + arc);
        double mean = 0;
        for (int v : it->second) mean += d6.vertices[v].position.dot(n);
        mean /= double(it->second.size());
        if (dev)
            for (int v : it->second)
                *dev = std::max(*dev, std::abs(d6.vertices[v].position.dot(n) - mean));
        return mean;
    };
    double plane_dev = 0;
    double d1 = fit_offset("LS'", n1, &plane_dev);
    double d2 = fit_offset("F'S", n2, &plane_dev);

    RigidMotion s1 = RigidMotion::vertical_plane_reflection(n1, d1);
    RigidMotion s2 = RigidMotion::vertical_plane_reflection(n2, d2);
    RigidMotion rv = s1.compose(s2);
    out.generators = {s1, s2};

    // --- period leak: at closed periods the SB axis line passes through the vertical
    // line P1 cap P2, so its rho_h partner S'B' lands on the same line ---
    {
        auto mean_line = [&](const std::string& arc) {
            Vec3 m;
            const auto& ids = d6.arcs.at(arc);
            for (int v : ids) m += d6.vertices[v].position;
            return m * (1.0 / double(ids.size()));
        };
        Vec3 sb = mean_line("SB"), spbp = mean_line("S'B'");
        out.period_gap = Vec3{sb.x - spbp.x, 0, 0};
        if (out.period_gap.norm() > period_gap_tol)
            throw PeriodLeakError("assemble: period leak between the SB and S'B' axis lines",
                                  out.period_gap);
    }

    // --- pinwheel of four copies welded along the diagonal chains ---
    struct Copy {
        RigidMotion motion;
        bool reflected;
    };
    std::vector<Copy> copies{{RigidMotion{}, false}, {s1, true}, {s2, true}, {rv, false}};

    Mesh piece;
    std::vector<int> copy_offset;
    for (const auto& c : copies) {
        int offc = int(piece.vertices.size());
        copy_offset.push_back(offc);
        for (const auto& v : d6.vertices) {
            SurfaceSample s = v;
            s.position = c.motion.apply(v.position);
            s.normal = c.motion.linear.apply(v.normal);
            s.g = (std::abs(1.0 - s.normal.z) < 1e-14)
                      ? cplx{1e300, 0}
                      : cplx{s.normal.x, s.normal.y} / (1.0 - s.normal.z);
            piece.vertices.push_back(s);
        }
        for (auto t : d6.triangles) {
            if (c.reflected) std::swap(t[1], t[2]);
            piece.triangles.push_back({t[0] + offc, t[1] + offc, t[2] + offc});
        }
    }

    // weld pairs: (e,s1) along LS', (e,s2) along F'S, (s1,rv) along F'S, (s2,rv) along LS'
    UnionFind uf(piece.vertices.size());
    auto weld = [&](int ca, int cb, const std::string& chain) {
        const auto& ids = d6.arcs.at(chain);
        for (int v : ids) {
            int a = v + copy_offset[ca], b = v + copy_offset[cb];
            out.weld_mismatch = std::max(out.weld_mismatch,
                                         (piece.vertices[a].position - piece.vertices[b].position).norm());
            uf.unite(a, b);
        }
    };
    weld(0, 1, "LS'");
    weld(0, 2, "F'S");
    weld(1, 3, "F'S");
    weld(2, 3, "LS'");
    out.weld_mismatch = std::max(out.weld_mismatch, plane_dev);

    // compact the welded piece
    std::vector<int> root_to_new(piece.vertices.size(), -1);
    Mesh welded;
    for (size_t i = 0; i < piece.vertices.size(); ++i) {
        int r = uf.find(int(i));
        if (root_to_new[r] < 0) {
            root_to_new[r] = int(welded.vertices.size());
            welded.vertices.push_back(piece.vertices[r]);
        }
    }
    for (const auto& t : piece.triangles) {
        std::array<int, 3> m{root_to_new[uf.find(t[0])], root_to_new[uf.find(t[1])],
                             root_to_new[uf.find(t[2])]};
        if (m[0] == m[1] || m[1] == m[2] || m[2] == m[0]) continue;
        welded.triangles.push_back(m);
    }
    // carry chains of every copy for downstream labelling
    for (int c = 0; c < int(copies.size()); ++c) {
        for (const auto& [name, ids] : d6.arcs) {
            std::vector<int> mapped;
            for (int v : ids) mapped.push_back(root_to_new[uf.find(v + copy_offset[c])]);
            welded.arcs["copy" + std::to_string(c) + ":" + name] = mapped;
        }
    }
    welded.a_position = d6.a_position;
    welded.sb_height = d6.sb_height;
    welded.has_axis = true;

    // --- boundary circuits ---
    std::map<std::pair<int, int>, int> edge_use;
    for (const auto& t : welded.triangles)
        for (int e = 0; e < 3; ++e) {
            auto key = std::minmax(t[e], t[(e + 1) % 3]);
            ++edge_use[key];
        }
    std::vector<std::pair<int, int>> boundary_edges;
    for (const auto& [k, cnt] : edge_use)
        if (cnt == 1) boundary_edges.push_back(k);
    UnionFind circ(welded.vertices.size());
    for (auto [u, v] : boundary_edges) circ.unite(u, v);
    std::set<int> circuit_roots;
    for (auto [u, v] : boundary_edges) circuit_roots.insert(circ.find(u));
    out.boundary_circuits = int(circuit_roots.size());

    // --- maximal straight/planar boundary runs per free chain ---
    const char* free_chains[] = {"SB", "BL", "S'B'", "B'F'"};
    for (int c = 0; c < int(copies.size()); ++c) {
        for (const char* name : free_chains) {
            auto it = welded.arcs.find("copy" + std::to_string(c) + ":" + name);
            if (it == welded.arcs.end() || it->second.size() < 3) continue;
            const auto& ids = it->second;
            BoundaryRun run;
            run.label = "copy" + std::to_string(c) + ":" + name;
            run.vertex_count = int(ids.size());
            Vec3 a = welded.vertices[ids.front()].position;
            Vec3 b = welded.vertices[ids.back()].position;
            Vec3 dir = (b - a).normalized();
            double line_dev = 0;
            for (int v : ids) {
                Vec3 p = welded.vertices[v].position - a;
                line_dev = std::max(line_dev, (p - dir * p.dot(dir)).norm());
            }
            double scale = std::max(1.0, (b - a).norm());
            if (line_dev < 1e-5 * scale) {
                run.straight = true;
                run.deviation = line_dev;
                run.line_point = a;
                run.line_dir = dir;
            } else {
                // fit the best vertical plane through the chain
                double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
                for (int v : ids) {
                    Vec3 p = welded.vertices[v].position;
                    sx += p.x;
                    sy += p.y;
                    sxx += p.x * p.x;
                    sxy += p.x * p.y;
                    syy += p.y * p.y;
                }
                double n = double(ids.size());
                double cxx = sxx - sx * sx / n, cxy = sxy - sx * sy / n, cyy = syy - sy * sy / n;
                // normal of the fitted vertical plane = eigenvector of the smaller eigenvalue
                double tr = cxx + cyy, det = cxx * cyy - cxy * cxy;
                double lam = 0.5 * tr - std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
                Vec3 nrm = std::abs(cxy) > 1e-18 ? Vec3{cxy, lam - cxx, 0}.normalized()
                                                 : (cxx < cyy ? Vec3{1, 0, 0} : Vec3{0, 1, 0});
                run.plane_normal = nrm;
                run.offset = (sx * nrm.x + sy * nrm.y) / n;
                for (int v : ids)
                    run.deviation = std::max(run.deviation,
                                             std::abs(welded.vertices[v].position.dot(nrm) - run.offset));
            }
            out.boundary_runs.push_back(run);
        }
    }

    out.mesh = welded;
    return out;
}

TileResult tile(const PieceResult& piece, const DerivedParams& dp, std::array<int, 3> counts) {
    (void)dp;
    if (counts[0] < 1 || counts[1] < 1 || counts[2] < 1)
        throw std::invalid_argument("tile: counts must be positive");

    // vertical lattice vector: rho_h followed by the half turn about the SB line
    const Mesh& dom = piece.domain;
    RigidMotion rot_sb = RigidMotion::horizontal_half_turn(
        Vec3{dom.a_position.x, 0, dom.sb_height}, Vec3{0, 1, 0});
    RigidMotion rho = RigidMotion::horizontal_half_turn(dom.a_position, Vec3{0, 1, 0});
    RigidMotion vert = rot_sb.compose(rho);
    Vec3 t_vert = vert.shift;  // linear part is the identity for parallel axes

    // horizontal lattice vectors: pairwise compositions of the boundary symmetries
    // (reflections in the wall planes, half turns about the straight boundary segments)
    std::vector<RigidMotion> gens;
    for (const auto& run : piece.boundary_runs) {
        if (run.vertex_count < 4) continue;
        if (run.straight) {
            if (std::abs(run.line_dir.z) < 1e-6)
                gens.push_back(RigidMotion::horizontal_half_turn(run.line_point, run.line_dir));
        } else if (run.plane_normal.norm() > 0.5) {
            gens.push_back(RigidMotion::vertical_plane_reflection(run.plane_normal, run.offset));
        }
    }
    std::vector<Vec3> horizontals;
    for (size_t i = 0; i < gens.size(); ++i) {
        for (size_t j = 0; j < gens.size(); ++j) {
            if (i == j) continue;
            RigidMotion comp = gens[i].compose(gens[j]);
            if (comp.linear.orthogonality_defect() > 1e-8) continue;
            bool is_translation = true;
            for (int d = 0; d < 9; ++d)
                if (std::abs(comp.linear.m[d] - (d % 4 == 0 ? 1.0 : 0.0)) > 1e-7) is_translation = false;
            if (!is_translation) continue;
            Vec3 t = comp.shift;
            if (t.norm() < 0.05 * piece.mesh.diameter()) continue;  // near-coincident generators
            if (std::abs(t.z) > 1e-6 * std::max(1.0, t.norm())) continue;
            horizontals.push_back(t);
        }
    }
    std::sort(horizontals.begin(), horizontals.end(),
              [](const Vec3& a, const Vec3& b) { return a.norm() < b.norm(); });
    Vec3 t_a{}, t_b{};
    for (const Vec3& t : horizontals) {
        if (t_a.norm() < 1e-12) {
            t_a = t;
            continue;
        }
        Vec3 cr = t_a.cross(t);
        if (cr.norm() > 1e-6 * t_a.norm() * t.norm()) {
            t_b = t;
            break;
        }
    }
    if (t_a.norm() < 1e-12 || t_b.norm() < 1e-12)
        throw std::runtime_error("tile: could not derive two independent horizontal lattice vectors");

    TileResult out;
    out.lattice = {t_a, t_b, t_vert};

    for (int i = 0; i < counts[0]; ++i)
        for (int j = 0; j < counts[1]; ++j)
            for (int k = 0; k < counts[2]; ++k) {
                Vec3 shift = out.lattice[0] * double(i) + out.lattice[1] * double(j) +
                             out.lattice[2] * double(k);
                int off = int(out.mesh.vertices.size());
                for (const auto& v : piece.mesh.vertices) {
                    SurfaceSample s = v;
                    s.position += shift;
                    out.mesh.vertices.push_back(s);
                }
                for (const auto& t : piece.mesh.triangles)
                    out.mesh.triangles.push_back({t[0] + off, t[1] + off, t[2] + off});
            }
    out.mesh.a_position = piece.mesh.a_position;
    out.mesh.sb_height = piece.mesh.sb_height;
    out.mesh.has_axis = piece.mesh.has_axis;
    return out;
}

}  // namespace minsurf
