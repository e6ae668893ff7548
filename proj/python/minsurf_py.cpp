#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "minsurf/io.hpp"
#include "minsurf/period.hpp"
#include "minsurf/verify.hpp"

namespace py = pybind11;
using namespace minsurf;

namespace {

DerivedParams params(const std::string& family, std::complex<double> x) {
    return derive_params({family_from_name(family), x});
}

py::dict derived_dict(const DerivedParams& dp) {
    py::dict d;
    d["family"] = family_name(dp.family);
    d["x"] = dp.x;
    d["X"] = dp.X;
    d["A"] = dp.A;
    d["a"] = dp.a;
    d["c"] = dp.c;
    return d;
}

py::dict report_dict(const PeriodReport& rep) {
    py::dict d;
    d["family"] = family_name(rep.family);
    d["first"] = rep.first;
    d["second"] = rep.second;
    d["residual"] = rep.residual;
    d["quad_error"] = rep.quad_error;
    d["note"] = rep.note;
    return d;
}

py::dict mesh_dict(const Mesh& mesh) {
    std::vector<std::array<double, 3>> verts;
    std::vector<std::complex<double>> gauss;
    verts.reserve(mesh.vertices.size());
    for (const auto& v : mesh.vertices) {
        verts.push_back({v.position.x, v.position.y, v.position.z});
        gauss.push_back(v.g);
    }
    py::dict d;
    d["vertices"] = verts;
    d["triangles"] = mesh.triangles;
    d["gauss"] = gauss;
    return d;
}

}  // namespace

PYBIND11_MODULE(_minsurf, m) {
    m.doc() = "Weierstrass-data construction of the C2, L2 and L4 triply periodic minimal surfaces";

    m.def("admissible", [](const std::string& family, std::complex<double> x) {
        return admissible({family_from_name(family), x});
    }, py::arg("family"), py::arg("x"));

    m.def("derive_params", [](const std::string& family, std::complex<double> x) {
        return derived_dict(params(family, x));
    }, py::arg("family"), py::arg("x"));

    m.def("gauss_squares", [](const std::string& family, std::complex<double> x,
                              std::complex<double> z) {
        GaussSquares gs = gauss_squares(params(family, x), z);
        return py::make_tuple(gs.p, gs.q);
    }, py::arg("family"), py::arg("x"), py::arg("z"),
       "squares (g - 1/g)^2 and (g + 1/g)^2 at a point of the fundamental domain");

    m.def("period_integrals", [](const std::string& family, std::complex<double> x) {
        return report_dict(period_integrals(params(family, x)));
    }, py::arg("family"), py::arg("x"));

    m.def("solve_period", [](const std::string& family, double tol, py::object fixed,
                             py::object lo, py::object hi, int samples) {
        SliceSpec slice = SliceSpec::default_for(family_from_name(family));
        if (!fixed.is_none()) slice.fixed = fixed.cast<double>();
        if (!lo.is_none()) slice.lo = lo.cast<double>();
        if (!hi.is_none()) slice.hi = hi.cast<double>();
        slice.samples = samples;
        SolveResult sol = solve_period(slice, tol);
        py::dict d = derived_dict(sol.derived);
        d["sweep_location"] = sol.sweep_location;
        d["residual"] = sol.report.residual;
        d["first"] = sol.report.first;
        d["second"] = sol.report.second;
        return d;
    }, py::arg("family"), py::arg("tol") = 1e-8, py::arg("fixed") = py::none(),
       py::arg("lo") = py::none(), py::arg("hi") = py::none(), py::arg("samples") = 33);

    m.def("tilde_integrals", [] {
        TildeIntegrals t = tilde_integrals();
        py::dict d;
        d["first_quadrature"] = t.first_quadrature;
        d["first_beta"] = t.first_beta;
        d["second_quadrature"] = t.second_quadrature;
        d["second_beta"] = t.second_beta;
        return d;
    });

    m.def("domain_mesh", [](const std::string& family, std::complex<double> x, int n) {
        DerivedParams dp = params(family, x);
        Mesh mesh = integrate_immersion(sample_domain(dp, n), dp);
        return mesh_dict(mesh);
    }, py::arg("family"), py::arg("x"), py::arg("n") = 32,
       "immersed fundamental-domain mesh");

    m.def("piece_mesh", [](const std::string& family, std::complex<double> x, int n) {
        DerivedParams dp = params(family, x);
        Mesh mesh = integrate_immersion(sample_domain(dp, n), dp);
        PieceResult piece = assemble_fundamental_piece(mesh, dp);
        py::dict d = mesh_dict(piece.mesh);
        d["boundary_circuits"] = piece.boundary_circuits;
        d["period_gap"] = piece.period_gap.norm();
        d["weld_mismatch"] = piece.weld_mismatch;
        TileResult t = tile(piece, dp, {1, 1, 1});
        std::vector<std::array<double, 3>> lattice;
        for (const Vec3& v : t.lattice) lattice.push_back({v.x, v.y, v.z});
        d["lattice"] = lattice;
        return d;
    }, py::arg("family"), py::arg("x"), py::arg("n") = 32,
       "glued fundamental piece with its lattice vectors");

    m.def("verify", [](const std::string& family, std::complex<double> x, int n) {
        DerivedParams dp = params(family, x);
        std::vector<py::dict> out;
        auto absorb = [&](const VerificationReport& rep) {
            for (const auto& c : rep.checks) {
                py::dict d;
                d["id"] = c.id;
                d["passed"] = c.passed;
                d["residual"] = c.residual;
                d["tolerance"] = c.tolerance;
                d["detail"] = c.detail;
                out.push_back(d);
            }
        };
        absorb(check_boundary_loci(dp));
        Mesh mesh = integrate_immersion(sample_domain(dp, n), dp);
        absorb(check_period_closure(mesh, dp));
        auto excl = domain_branch_points(dp);
        double far = dp.family == Family::L2 ? 2.0 : 1e300;
        absorb(check_minimality(mesh, 10.0 * 64.0 / n * 0.01, excl, far));
        PieceResult piece = assemble_fundamental_piece(mesh, dp);
        absorb(check_symmetries(piece.domain, {rho_h_motion(mesh)}));
        if (dp.family == Family::C2) absorb(check_embeddedness_conditions(dp));
        absorb(check_degree(dp, cplx{2.0, 1.0}));
        return out;
    }, py::arg("family"), py::arg("x"), py::arg("n") = 32);

    m.def("obj_string", [](const std::string& family, std::complex<double> x, int n,
                           bool piece) {
        DerivedParams dp = params(family, x);
        Mesh mesh = integrate_immersion(sample_domain(dp, n), dp);
        std::ostringstream out;
        if (piece) {
            export_obj(assemble_fundamental_piece(mesh, dp).mesh, out);
        } else {
            export_obj(mesh, out);
        }
        return out.str();
    }, py::arg("family"), py::arg("x"), py::arg("n") = 32, py::arg("piece") = false,
       "ASCII OBJ export of the fundamental domain or piece");

    m.def("gamma", &gamma_fn, py::arg("x"));
    m.def("beta", &beta_fn, py::arg("m"), py::arg("n"));
}
