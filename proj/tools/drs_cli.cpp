// Command-line interface: mesh validation, period matrices, convergence
// experiments, Riemann-Roch queries, quadrangulation export, and the example
// surface generators.
#include <complex>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "drs/abelian.h"
#include "drs/generators.h"
#include "drs/mesh_io.h"
#include "drs/periods.h"
#include "drs/quad.h"
#include "drs/serialize.h"

using namespace drs;

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::SolverFailure:
    case ErrorKind::SingularBlock:
    case ErrorKind::ConsistencyFailure:
    case ErrorKind::RankAmbiguous:
      return 3;
    default:
      return 2;
  }
}

SurfaceMesh load_mesh(const std::string& path) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".obj")
    return import_indexed_triangles_file(path);
  return read_mesh_text_file(path);
}

HomologyData load_homology(const SurfaceMesh& mesh, const std::string& basis_path) {
  if (basis_path.empty()) return homology_basis(mesh);
  std::ifstream in(basis_path);
  require(in.good(), ErrorKind::ParseError, "cannot open basis file " + basis_path);
  json j;
  in >> j;
  if (j.is_object() && j.contains("loops")) j = j["loops"];
  return homology_basis(mesh, basis_from_json(j));
}

std::complex<double> parse_eta(const std::string& s) {
  const auto comma = s.find(',');
  require(comma != std::string::npos, ErrorKind::ParseError, "--eta expects re,im");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::logic_error&) {
    fail(ErrorKind::ParseError, "bad --eta value '" + s + "'");
  }
}

GeneratedSurface run_generator(const std::string& family, int n, std::complex<double> eta) {
  if (family == "torus" || family == "flat_torus") return flat_torus(eta, n);
  if (family == "pyramid") return pyramid();
  if (family == "genus2" || family == "genus2_squares") return genus2_squares(n);
  fail(ErrorKind::InvalidArgument, "unknown family '" + family + "'");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete Riemann surfaces: period matrices, Abelian integrals, Riemann-Roch"};
  app.require_subcommand(1);
  double tol = 1e-10;
  app.add_option("--tol", tol, "solver tolerance (default 1e-10)");

  std::string mesh_path, basis_path, csv_path, divisor_path, reference_path, out_path,
      basis_out_path;
  std::string family = "genus2";
  std::string n_list = "8,16,32,64";
  int gen_n = 2;
  std::string eta_opt = "0,1";

  auto* validate = app.add_subcommand("validate", "validate a mesh and print its geometry");
  validate->add_option("mesh", mesh_path)->required();

  auto* periods = app.add_subcommand("periods", "compute the period matrices of a mesh");
  periods->add_option("mesh", mesh_path)->required();
  periods->add_option("--basis", basis_path, "JSON file with 2g explicit basis loops");

  auto* convergence =
      app.add_subcommand("convergence", "error table against a reference period matrix");
  convergence->add_option("--family", family, "torus | genus2");
  convergence->add_option("--n", n_list, "comma-separated grid sizes");
  convergence->add_option("--reference", reference_path,
                          "JSON g x g complex matrix (defaults per family)");
  convergence->add_option("--eta", eta_opt, "torus modulus as re,im");
  convergence->add_option("--csv", csv_path, "write the table as CSV");

  auto* rroch = app.add_subcommand("riemann-roch", "Riemann-Roch data of an admissible divisor");
  rroch->add_option("mesh", mesh_path)->required();
  rroch->add_option("--divisor", divisor_path, "JSON list of (kind, index, value)")->required();
  rroch->add_option("--basis", basis_path);

  auto* quad = app.add_subcommand("quadrangulate", "Delaunay-Voronoi quadrangulation as JSON");
  quad->add_option("mesh", mesh_path)->required();

  auto* gen = app.add_subcommand("gen", "generate an example surface in the text format");
  gen->add_option("name", family, "torus | pyramid | genus2")->required();
  gen->add_option("--n", gen_n, "grid size");
  gen->add_option("--eta", eta_opt, "torus modulus as re,im");
  gen->add_option("--out", out_path, "mesh file (default: stdout)");
  gen->add_option("--basis-out", basis_out_path, "write the shipped basis loops as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      const SurfaceMesh mesh = load_mesh(mesh_path);
      json j = to_json(geometry_report(mesh));
      j["vertices"] = mesh.vertex_count();
      j["edges"] = mesh.edge_count();
      j["faces"] = mesh.face_count();
      std::cout << j.dump(2) << "\n";
    } else if (*periods) {
      const SurfaceMesh mesh = load_mesh(mesh_path);
      const HomologyData hd = load_homology(mesh, basis_path);
      const PeriodBundle pb = compute_period_bundle(mesh, cotan_weights(mesh), hd, tol);
      json j = to_json(pb);
      j["validation"] = to_json(validate_period_bundle(pb));
      std::cout << j.dump(2) << "\n";
    } else if (*convergence) {
      const std::complex<double> eta = parse_eta(eta_opt);
      Eigen::MatrixXcd reference;
      if (!reference_path.empty()) {
        std::ifstream in(reference_path);
        require(in.good(), ErrorKind::ParseError, "cannot open " + reference_path);
        json j;
        in >> j;
        reference = complex_matrix_from_json(j);
      } else if (family.substr(0, 5) == "torus" || family == "flat_torus") {
        reference = Eigen::MatrixXcd::Constant(1, 1, eta);
      } else {
        reference.resize(2, 2);
        reference << std::complex<double>(0, 5.0 / 3), std::complex<double>(0, -4.0 / 3),
            std::complex<double>(0, -4.0 / 3), std::complex<double>(0, 5.0 / 3);
      }
      json rows = json::array();
      std::string csv = "n,h,error,scaled\n";
      for (size_t pos = 0; pos < n_list.size();) {
        const size_t comma = std::min(n_list.find(',', pos), n_list.size());
        const int n = std::stoi(n_list.substr(pos, comma - pos));
        pos = comma + 1;
        const GeneratedSurface g = run_generator(family, n, eta);
        const HomologyData hd = homology_basis(g.mesh, g.basis_loops);
        const PeriodBundle pb = compute_period_bundle(g.mesh, cotan_weights(g.mesh), hd, tol);
        const GeometryReport rep = geometry_report(g.mesh);
        const double h = rep.max_edge_length;
        const double err = (pb.pi_t - reference).norm();
        // scaled error following the gamma_S case split of the error estimate
        double scaled;
        if (rep.gamma_s < 0.5)
          scaled = err * std::pow(h, -2 * rep.gamma_s);
        else if (rep.gamma_s == 0.5)
          scaled = err / (h * std::abs(std::log(h)));
        else
          scaled = err / h;
        rows.push_back({{"n", n}, {"h", h}, {"error", err}, {"scaled", scaled}});
        csv += std::to_string(n) + "," + std::to_string(h) + "," + std::to_string(err) + "," +
               std::to_string(scaled) + "\n";
      }
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        require(out.good(), ErrorKind::ParseError, "cannot open output file " + csv_path);
        out << csv;
      }
      std::cout << json{{"family", family}, {"rows", rows}}.dump(2) << "\n";
    } else if (*rroch) {
      const SurfaceMesh mesh = load_mesh(mesh_path);
      const HomologyData hd = load_homology(mesh, basis_path);
      std::ifstream in(divisor_path);
      require(in.good(), ErrorKind::ParseError, "cannot open divisor file " + divisor_path);
      json dj;
      in >> dj;
      const Divisor d = divisor_from_json(mesh, dj);
      const RiemannRochResult r = riemann_roch(mesh, cotan_weights(mesh), hd, d, tol);
      std::cout << json{{"l_minus_d", r.l_minus_d}, {"i_d", r.i_d},
                        {"deg_d", r.deg_d},       {"identity_holds", r.identity_holds},
                        {"rank", r.rank},         {"rows", r.rows},
                        {"cols", r.cols}}
                       .dump(2)
                << "\n";
    } else if (*quad) {
      const SurfaceMesh mesh = load_mesh(mesh_path);
      std::cout << to_json(build_quad_surface(mesh, cotan_weights(mesh))).dump(2) << "\n";
    } else if (*gen) {
      const GeneratedSurface g = run_generator(family, gen_n, parse_eta(eta_opt));
      if (out_path.empty()) {
        write_mesh_text(std::cout, g.mesh);
      } else {
        std::ofstream out(out_path);
        require(out.good(), ErrorKind::ParseError, "cannot open " + out_path);
        write_mesh_text(out, g.mesh);
      }
      if (!basis_out_path.empty()) {
        std::ofstream out(basis_out_path);
        require(out.good(), ErrorKind::ParseError, "cannot open " + basis_out_path);
        out << json{{"genus", g.mesh.genus()}, {"loops", basis_to_json(g.basis_loops)}}.dump(2)
            << "\n";
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
