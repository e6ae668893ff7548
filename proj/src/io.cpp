#include "minsurf/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace minsurf {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig RunConfig::parse(std::istream& in) {
    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        size_t eq = stripped.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value", line_no);
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError("empty key or value", line_no);

        auto num = [&](double& dst) {
            size_t used = 0;
            dst = std::stod(value, &used);
            if (trim(value.substr(used)).size()) throw ConfigError("bad number for " + key, line_no);
        };
        auto integer = [&](int& dst) {
            size_t used = 0;
            dst = std::stoi(value, &used);
            if (trim(value.substr(used)).size()) throw ConfigError("bad integer for " + key, line_no);
        };

        try {
            if (key == "family") cfg.family = value;
            else if (key == "x_re") num(cfg.x_re);
            else if (key == "x_im") num(cfg.x_im);
            else if (key == "slice_fixed") num(cfg.slice_fixed);
            else if (key == "slice_lo") num(cfg.slice_lo);
            else if (key == "slice_hi") num(cfg.slice_hi);
            else if (key == "slice_samples") integer(cfg.slice_samples);
            else if (key == "resolution") integer(cfg.resolution);
            else if (key == "tiles") {
                std::istringstream ts(value);
                if (!(ts >> cfg.tiles[0] >> cfg.tiles[1] >> cfg.tiles[2]))
                    throw ConfigError("tiles needs three integers", line_no);
            } else if (key == "tol_period") num(cfg.tol_period);
            else if (key == "tol_quadrature") num(cfg.tol_quadrature);
            else if (key == "clearance") num(cfg.clearance);
            else if (key == "sweep_re_lo") num(cfg.sweep_re_lo);
            else if (key == "sweep_re_hi") num(cfg.sweep_re_hi);
            else if (key == "sweep_im_lo") num(cfg.sweep_im_lo);
            else if (key == "sweep_im_hi") num(cfg.sweep_im_hi);
            else if (key == "sweep_re_n") integer(cfg.sweep_re_n);
            else if (key == "sweep_im_n") integer(cfg.sweep_im_n);
            else if (key == "output_dir") cfg.output_dir = value;
            else throw ConfigError("unknown key: " + key, line_no);
        } catch (const std::invalid_argument&) {
            throw ConfigError("unparsable value for " + key, line_no);
        }
    }
    family_from_name(cfg.family);  // validates
    return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return parse(in);
}

std::string RunConfig::serialize() const {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "family = " << family << "\n";
    out << "x_re = " << x_re << "\n";
    out << "x_im = " << x_im << "\n";
    out << "slice_fixed = " << slice_fixed << "\n";
    out << "slice_lo = " << slice_lo << "\n";
    out << "slice_hi = " << slice_hi << "\n";
    out << "slice_samples = " << slice_samples << "\n";
    out << "resolution = " << resolution << "\n";
    out << "tiles = " << tiles[0] << " " << tiles[1] << " " << tiles[2] << "\n";
    out << "tol_period = " << tol_period << "\n";
    out << "tol_quadrature = " << tol_quadrature << "\n";
    out << "clearance = " << clearance << "\n";
    out << "sweep_re_lo = " << sweep_re_lo << "\n";
    out << "sweep_re_hi = " << sweep_re_hi << "\n";
    out << "sweep_im_lo = " << sweep_im_lo << "\n";
    out << "sweep_im_hi = " << sweep_im_hi << "\n";
    out << "sweep_re_n = " << sweep_re_n << "\n";
    out << "sweep_im_n = " << sweep_im_n << "\n";
    out << "output_dir = " << output_dir << "\n";
    return out.str();
}

ShapeParams RunConfig::shape() const {
    return ShapeParams{family_from_name(family), cplx{x_re, x_im}};
}

void export_obj(const Mesh& mesh, std::ostream& out) {
    out << std::setprecision(12);
    for (const auto& v : mesh.vertices)
        out << "v " << v.position.x << " " << v.position.y << " " << v.position.z << "\n";
    for (const auto& t : mesh.triangles)
        out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
}

void export_obj_file(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    export_obj(mesh, out);
    if (!out.good()) throw std::runtime_error("write failure: " + path);
}

ObjData import_obj(std::istream& in) {
    ObjData data;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Vec3 p;
            ls >> p.x >> p.y >> p.z;
            data.vertices.push_back(p);
        } else if (tag == "f") {
            std::array<int, 3> f;
            ls >> f[0] >> f[1] >> f[2];
            data.faces.push_back({f[0] - 1, f[1] - 1, f[2] - 1});
        }
    }
    return data;
}

void write_csv_header(std::ostream& out, const std::vector<std::string>& cols) {
    for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
}

void write_csv_row(std::ostream& out, const std::vector<double>& vals) {
    out << std::setprecision(12);
    for (size_t i = 0; i < vals.size(); ++i) out << (i ? "," : "") << vals[i];
    out << "\n";
}

}  // namespace minsurf
