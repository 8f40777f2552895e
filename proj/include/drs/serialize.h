#pragma once

#include <json.hpp>

#include "drs/abelian.h"
#include "drs/homology.h"
#include "drs/periods.h"
#include "drs/quad.h"

namespace drs {

using nlohmann::json;

// complex numbers as [re, im] pairs
inline json to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline Eigen::MatrixXcd complex_matrix_from_json(const json& j) {
  require(j.is_array() && !j.empty(), ErrorKind::ParseError, "expected a matrix");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    require(static_cast<int>(j[i].size()) == cols, ErrorKind::ParseError, "ragged matrix");
    for (int k = 0; k < cols; ++k) {
      const auto& c = j[i][k];
      if (c.is_array())
        m(i, k) = {c.at(0).get<double>(), c.at(1).get<double>()};
      else
        m(i, k) = c.get<double>();
    }
  }
  return m;
}

inline json to_json(const PeriodBundle& pb) {
  return json{{"g", pb.g},
              {"energy", to_json(pb.energy)},
              {"pi_t", to_json(pb.pi_t)},
              {"pi_t_star", to_json(pb.pi_t_star)},
              {"pi_q", to_json(pb.pi_q)},
              {"diagnostics",
               {{"im_pi_t_asymmetry", pb.im_pi_t_asymmetry},
                {"re_transpose_defect", pb.re_transpose_defect},
                {"min_eig_im_pi_t", pb.min_eig_im_pi_t},
                {"min_eig_im_pi_t_star", pb.min_eig_im_pi_t_star}}}};
}

inline json to_json(const GeometryReport& r) {
  return json{{"genus", r.genus},
              {"max_edge_length", r.max_edge_length},
              {"min_corner_angle", r.min_corner_angle},
              {"gamma_s", r.gamma_s},
              {"is_delaunay", r.is_delaunay},
              {"condition_d_margin", r.condition_d_margin}};
}

inline json basis_to_json(const std::vector<std::vector<OrientedEdge>>& loops) {
  json j = json::array();
  for (const auto& loop : loops) j.push_back(loop);
  return j;
}

inline std::vector<std::vector<OrientedEdge>> basis_from_json(const json& j) {
  require(j.is_array(), ErrorKind::ParseError, "expected an array of loops");
  std::vector<std::vector<OrientedEdge>> loops;
  for (const auto& l : j) loops.push_back(l.get<std::vector<OrientedEdge>>());
  return loops;
}

// divisors as lists of (cell-kind, index, value)
inline json to_json(const Divisor& d) {
  json j = json::array();
  for (int z = 0; z < d.vertex.size(); ++z)
    if (d.vertex[z] != 0) j.push_back({"vertex", z, d.vertex[z]});
  for (int e = 0; e < d.edge.size(); ++e)
    if (d.edge[e] != 0) j.push_back({"edge", e, d.edge[e]});
  for (int f = 0; f < d.face.size(); ++f)
    if (d.face[f] != 0) j.push_back({"face", f, d.face[f]});
  return j;
}

inline Divisor divisor_from_json(const SurfaceMesh& mesh, const json& j) {
  Divisor d = Divisor::zero(mesh);
  require(j.is_array(), ErrorKind::ParseError, "expected a list of (kind, index, value)");
  for (const auto& entry : j) {
    require(entry.is_array() && entry.size() == 3, ErrorKind::ParseError,
            "divisor entry must be (kind, index, value)");
    const std::string kind = entry[0].get<std::string>();
    const int idx = entry[1].get<int>();
    const int val = entry[2].get<int>();
    if (kind == "vertex") {
      require(idx >= 0 && idx < mesh.vertex_count(), ErrorKind::ParseError,
              "vertex index out of range");
      d.vertex[idx] = val;
    } else if (kind == "edge") {
      require(idx >= 0 && idx < mesh.edge_count(), ErrorKind::ParseError,
              "edge index out of range");
      d.edge[idx] = val;
    } else if (kind == "face") {
      require(idx >= 0 && idx < mesh.face_count(), ErrorKind::ParseError,
              "face index out of range");
      d.face[idx] = val;
    } else {
      fail(ErrorKind::ParseError, "unknown cell kind '" + kind + "'");
    }
  }
  return d;
}

inline json to_json(const QuadSurface& q) {
  json quads = json::array();
  for (Edge e = 0; e < static_cast<int>(q.chart.size()); ++e) {
    json chart = json::array();
    for (const auto& z : q.chart[e]) chart.push_back({z.real(), z.imag()});
    quads.push_back({{"edge", e}, {"chart", chart}, {"area", q.area[e]}});
  }
  return json{{"quads", quads}, {"total_area", q.total_area}};
}

inline json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"defect", c.defect}, {"pass", c.pass}});
  return json{{"all_pass", r.all_pass()}, {"checks", checks}};
}

} // namespace drs
