#include "drs/quad.h"

#include <cmath>
#include <functional>

namespace drs {

Circumcenters circumcenters(const SurfaceMesh& mesh) {
  const GeometryReport rep = geometry_report(mesh);
  require(rep.is_delaunay && rep.condition_d_margin > 0, ErrorKind::NotDelaunay,
          "circumcenters require a Delaunay mesh with positive condition-D margin (margin " +
              std::to_string(rep.condition_d_margin) + ")");
  Circumcenters cc;
  cc.center.resize(mesh.face_count());
  cc.radius.resize(mesh.face_count());
  for (Face f = 0; f < mesh.face_count(); ++f) {
    // corners: p0 = 0, p1 = (l2, 0), p2 from the side lengths, Im p2 > 0
    const double l0 = mesh.length(3 * f), l1 = mesh.length(3 * f + 1),
                 l2 = mesh.length(3 * f + 2);
    const double x2 = (l2 * l2 + l1 * l1 - l0 * l0) / (2 * l2);
    const double y2 = std::sqrt(std::max(0.0, l1 * l1 - x2 * x2));
    // equidistant from p0, p1, p2
    const double cx = l2 / 2;
    const double cy = (l1 * l1 - 2 * cx * x2) / (2 * y2);
    cc.center[f] = {cx, cy};
    cc.radius[f] = std::hypot(cx, cy);
    cc.h_prime = std::max(cc.h_prime, 2 * cc.radius[f]);
  }
  return cc;
}

QuadSurface build_quad_surface(const SurfaceMesh& mesh, const EdgeWeights& w) {
  const GeometryReport rep = geometry_report(mesh);
  require(rep.is_delaunay, ErrorKind::NotDelaunay,
          "quadrangulation requires a Delaunay mesh");
  QuadSurface q;
  q.mesh = &mesh;
  q.chart.resize(mesh.edge_count());
  q.area.resize(mesh.edge_count());
  q.total_area = 0;
  for (Edge e = 0; e < mesh.edge_count(); ++e) {
    const OrientedEdge ce = mesh.canonical(e);
    const double len = mesh.length(ce);
    const double cot_l = 1.0 / std::tan(mesh.opposite_angle(ce));
    const double cot_r = 1.0 / std::tan(mesh.opposite_angle(mesh.opposite(ce)));
    // both faces developed across the shared side: the circumcenter of the
    // left face sits at signed height +len/2*cot(alpha) over the midpoint
    q.chart[e] = {std::complex<double>(0, 0), std::complex<double>(len / 2, len / 2 * cot_l),
                  std::complex<double>(len, 0),
                  std::complex<double>(len / 2, -len / 2 * cot_r)};
    q.area[e] = len * len * (cot_l + cot_r) / 4;
    require(q.area[e] > 1e-12 * len * len, ErrorKind::NonPositiveQuadArea,
            "quad over edge " + std::to_string(e) +
                " degenerates (opposite angles sum to pi)");
    q.total_area += q.area[e];
  }
  require(std::abs(q.total_area - mesh.total_area()) <= 1e-10 * mesh.total_area(),
          ErrorKind::ConsistencyFailure, "quad areas do not sum to the surface area");
  return q;
}

QuadFunction to_quad_function(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  QuadFunction f;
  f.black = u.cast<std::complex<double>>();
  f.white = std::complex<double>(0, 1) * v.cast<std::complex<double>>();
  return f;
}

MultiValuedQuadFunction to_quad_function(const HomologyData& hd, const MultiValuedField& f) {
  require(f.has_imaginary(), ErrorKind::MissingImaginaryPart,
          "quad functions need both parts");
  MultiValuedQuadFunction q;
  q.base = to_quad_function(f.u_base, f.v_base);
  q.black_periods = f.p_re.cast<std::complex<double>>();
  q.white_periods = std::complex<double>(0, 1) * f.p_im.cast<std::complex<double>>();
  return q;
}

namespace {

std::complex<double> black_diff(const HomologyData& hd, const MultiValuedQuadFunction& f,
                                OrientedEdge e) {
  const SurfaceMesh& m = *hd.mesh;
  std::complex<double> s = f.base.black[m.head(e)] - f.base.black[m.tail(e)];
  const auto k = hd.kappa_at(e);
  for (int i = 0; i < k.size(); ++i) s += k[i] * f.black_periods[i];
  return s;
}

std::complex<double> white_diff(const HomologyData& hd, const MultiValuedQuadFunction& f,
                                OrientedEdge e) {
  const SurfaceMesh& m = *hd.mesh;
  std::complex<double> s = f.base.white[m.left(e)] - f.base.white[m.right(e)];
  const auto k = hd.kappa_star_at(e);
  for (int i = 0; i < k.size(); ++i) s += k[i] * f.white_periods[i];
  return s;
}

Eigen::VectorXcd analyticity_from_diffs(
    const QuadSurface& q, const std::function<std::complex<double>(OrientedEdge)>& bd,
    const std::function<std::complex<double>(OrientedEdge)>& wd) {
  const SurfaceMesh& m = *q.mesh;
  Eigen::VectorXcd r(m.edge_count());
  for (Edge e = 0; e < m.edge_count(); ++e) {
    const OrientedEdge ce = m.canonical(e);
    const auto& ch = q.chart[e];
    const std::complex<double> d13 = ch[0] - ch[2], d24 = ch[1] - ch[3];
    require(std::abs(d13) > 0 && std::abs(d24) > 0, ErrorKind::DegenerateDiagonal,
            "zero-length quad diagonal");
    r[e] = -bd(ce) / d13 - wd(ce) / d24;
  }
  return r;
}

} // namespace

Eigen::VectorXcd quad_analyticity_residuals(const QuadSurface& q, const QuadFunction& f) {
  const SurfaceMesh& m = *q.mesh;
  return analyticity_from_diffs(
      q,
      [&](OrientedEdge e) { return f.black[m.head(e)] - f.black[m.tail(e)]; },
      [&](OrientedEdge e) { return f.white[m.left(e)] - f.white[m.right(e)]; });
}

Eigen::VectorXcd quad_analyticity_residuals(const QuadSurface& q, const HomologyData& hd,
                                            const MultiValuedQuadFunction& f) {
  return analyticity_from_diffs(
      q, [&](OrientedEdge e) { return black_diff(hd, f, e); },
      [&](OrientedEdge e) { return white_diff(hd, f, e); });
}

double quad_bilinear_residual(const QuadSurface& q, const HomologyData& hd,
                              const MultiValuedQuadFunction& f,
                              const MultiValuedQuadFunction& f_prime) {
  const SurfaceMesh& m = *hd.mesh;
  const int g = hd.genus;
  // with the kite taken in counterclockwise order (z1, z4, z3, z2) the
  // diagonal bracket per quad is bd * wd' - wd * bd'
  std::complex<double> lhs = 0;
  for (Edge e = 0; e < m.edge_count(); ++e) {
    const OrientedEdge ce = m.canonical(e);
    lhs += black_diff(hd, f, ce) * white_diff(hd, f_prime, ce) -
           white_diff(hd, f, ce) * black_diff(hd, f_prime, ce);
  }
  std::complex<double> rhs = 0;
  for (int k = 0; k < g; ++k) {
    rhs += f.black_periods[k] * f_prime.white_periods[g + k] -
           f.white_periods[g + k] * f_prime.black_periods[k] +
           f.white_periods[k] * f_prime.black_periods[g + k] -
           f.black_periods[g + k] * f_prime.white_periods[k];
  }
  return std::abs(lhs - rhs);
}

} // namespace drs
