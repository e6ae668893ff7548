#pragma once

#include <array>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>

#include "minsurf/builder.hpp"
#include "minsurf/families.hpp"

namespace minsurf {

struct ConfigError : std::runtime_error {
    int line = 0;
    ConfigError(const std::string& what, int line_no)
        : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

// Run configuration, parsed from `key = value` lines with `#` comments.
struct RunConfig {
    std::string family = "C2";
    double x_re = 0, x_im = 0;           // explicit shape parameter (build/verify)
    double slice_fixed = std::numeric_limits<double>::quiet_NaN();  // Im X (C2/L4) or Im x (L2)
    double slice_lo = 0, slice_hi = 0;   // 0,0 = family default
    int slice_samples = 33;
    int resolution = 48;
    std::array<int, 3> tiles{1, 1, 1};
    double tol_period = 1e-8;
    double tol_quadrature = 1e-10;
    double clearance = 1e-3;
    double sweep_re_lo = 1.05, sweep_re_hi = 2.8;
    double sweep_im_lo = -1.6, sweep_im_hi = -0.4;
    int sweep_re_n = 24, sweep_im_n = 12;
    std::string output_dir = ".";

    static RunConfig parse(std::istream& in);
    static RunConfig parse_file(const std::string& path);
    std::string serialize() const;

    ShapeParams shape() const;
};

void export_obj(const Mesh& mesh, std::ostream& out);
void export_obj_file(const Mesh& mesh, const std::string& path);

struct ObjData {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;  // zero-based
};
ObjData import_obj(std::istream& in);

void write_csv_header(std::ostream& out, const std::vector<std::string>& cols);
void write_csv_row(std::ostream& out, const std::vector<double>& vals);

}  // namespace minsurf
