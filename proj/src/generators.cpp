#include "drs/generators.h"

#include <cmath>
#include <map>
#include <tuple>

namespace drs {

GeneratedSurface flat_torus(std::complex<double> eta, int n) {
  require(eta.imag() > 1e-12, ErrorKind::DegenerateEta,
          "flat torus requires Im eta > 0");
  require(n >= 1, ErrorKind::InvalidArgument, "n must be >= 1");

  const double lh = std::abs(1.0 / double(n));
  const double lv = std::abs(eta) / n;
  const double ld = std::abs(eta - 1.0) / n;

  // cell (j,k): corners a=(j,k), b=(j+1,k), c=(j+1,k+1), d=(j,k+1); the SE-NW
  // diagonal b-d splits it into lower face (a,b,d) and upper face (b,c,d)
  auto lower = [n](int j, int k) { return 2 * (((k + n) % n) * n + ((j + n) % n)); };
  auto upper = [&](int j, int k) { return lower(j, k) + 1; };

  const int F = 2 * n * n;
  std::vector<std::array<double, 3>> lengths(F);
  std::vector<std::array<int, 3>> gluing(F);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) {
      const int lo = lower(j, k), up = upper(j, k);
      lengths[lo] = {ld, lv, lh}; // sides {b,d}, {d,a}, {a,b}
      lengths[up] = {lh, ld, lv}; // sides {c,d}, {d,b}, {b,c}
      gluing[lo][0] = 3 * up + 1;              // diagonal
      gluing[up][1] = 3 * lo + 0;
      gluing[lo][2] = 3 * upper(j, k - 1) + 0; // bottom ~ top of cell below
      gluing[upper(j, k - 1)][0] = 3 * lo + 2;
      gluing[lo][1] = 3 * upper(j - 1, k) + 2; // left ~ right of cell to the left
      gluing[upper(j - 1, k)][2] = 3 * lo + 1;
    }

  GeneratedSurface g;
  g.mesh = SurfaceMesh::build(lengths, gluing);
  std::vector<OrientedEdge> alpha, beta;
  for (int j = 0; j < n; ++j) alpha.push_back(3 * lower(j, 0) + 2);   // a->b along k=0
  for (int k = 0; k < n; ++k) beta.push_back(3 * upper(n - 1, k) + 2); // b->c up the seam
  g.basis_loops = {alpha, beta};
  return g;
}

GeneratedSurface pyramid() {
  // lateral faces (1,2,5), (2,3,5), (3,4,5), (4,1,5) around apex 5, all
  // equilateral of side 1; base sides (1,2)~(3,4) and (2,3)~(4,1)
  std::vector<std::array<double, 3>> lengths(4, {1.0, 1.0, 1.0});
  std::vector<std::array<int, 3>> gluing(4);
  for (int i = 0; i < 4; ++i) {
    gluing[i][0] = 3 * ((i + 1) % 4) + 1; // side {corner1,corner2} ~ next face's {corner2,corner0}
    gluing[i][1] = 3 * ((i + 3) % 4) + 0;
    gluing[i][2] = 3 * ((i + 2) % 4) + 2; // base side ~ opposite base side
  }
  GeneratedSurface g;
  g.mesh = SurfaceMesh::build(lengths, gluing);
  g.basis_loops = {{3 * 0 + 2}, {3 * 1 + 2}};
  return g;
}

GeneratedSurface genus2_squares(int n) {
  require(n >= 2 && n % 2 == 0, ErrorKind::InvalidArgument,
          "genus2_squares requires even n >= 2");
  const int m = n / 2; // subsquares per unit square side
  const double s = 2.0 / n;
  const double sd = s * std::sqrt(2.0);

  auto in_domain = [m](int i, int j) {
    return (j >= 0 && j < m && i >= 0 && i < 2 * m) ||
           (j >= m && j < 2 * m && i >= m && i < 2 * m);
  };
  std::map<std::pair<int, int>, int> cell_id;
  {
    int next = 0;
    for (int j = 0; j < 2 * m; ++j)
      for (int i = 0; i < 2 * m; ++i)
        if (in_domain(i, j)) cell_id[{i, j}] = next++;
  }
  const int F = 2 * static_cast<int>(cell_id.size());

  // cell (i,j): a=(i,j), b=(i+1,j), c=(i+1,j+1), d=(i,j+1); SW-NE diagonal a-c
  // splits it into lower face (a,b,c) and upper face (a,c,d)
  auto lower = [&](int i, int j) { return 2 * cell_id.at({i, j}); };
  auto upper = [&](int i, int j) { return 2 * cell_id.at({i, j}) + 1; };

  // grid segment keys with the boundary identifications applied
  enum { H = 0, V = 1 };
  auto key = [&](int kind, int i, int j) {
    if (kind == H) {
      if (j == m && i < m) j = 0;      // A.top ~ A.bottom
      if (j == 2 * m) j = 0;           // C.top ~ B.bottom
    } else {
      if (i == 2 * m) i = (j < m) ? 0 : m; // B.right ~ A.left, C.right ~ C.left
    }
    return std::tuple<int, int, int>(kind, i, j);
  };

  std::vector<std::array<double, 3>> lengths(F);
  std::vector<std::array<int, 3>> gluing(F, {-1, -1, -1});
  std::map<std::tuple<int, int, int>, int> open;
  auto match = [&](std::tuple<int, int, int> k, int slot) {
    if (auto it = open.find(k); it != open.end()) {
      gluing[slot / 3][slot % 3] = it->second;
      gluing[it->second / 3][it->second % 3] = slot;
      open.erase(it);
    } else {
      open[k] = slot;
    }
  };
  for (const auto& [ij, id] : cell_id) {
    const auto [i, j] = ij;
    const int lo = lower(i, j), up = upper(i, j);
    lengths[lo] = {s, sd, s}; // sides {b,c}, {c,a}, {a,b}
    lengths[up] = {s, s, sd}; // sides {c,d}, {d,a}, {a,c}
    gluing[lo][1] = 3 * up + 2; // diagonal
    gluing[up][2] = 3 * lo + 1;
    match(key(H, i, j), 3 * lo + 2);     // bottom
    match(key(V, i + 1, j), 3 * lo + 0); // right
    match(key(H, i, j + 1), 3 * up + 0); // top
    match(key(V, i, j), 3 * up + 1);     // left
  }
  require(open.empty(), ErrorKind::UnpairedSide, "internal: unmatched segments");

  GeneratedSurface g;
  g.mesh = SurfaceMesh::build(lengths, gluing);
  require(g.mesh.genus() == 2, ErrorKind::InvalidArgument, "internal: genus != 2");

  // Grid paths: top = A.top rightward, bottom = the whole bottom row
  // rightward, left_up = C.left upward, right_up = B.right upward. Rightward
  // on segment H(i,0) is the lower face's a->b slot; upward on a V segment is
  // the right-neighbour lower face's b->c slot or the opposite of the
  // left-neighbour upper face's d->a slot.
  std::vector<OrientedEdge> top, bottom, left_up, right_up;
  for (int i = 0; i < m; ++i) top.push_back(3 * lower(i, 0) + 2);
  for (int i = 0; i < 2 * m; ++i) bottom.push_back(3 * lower(i, 0) + 2);
  for (int j = m; j < 2 * m; ++j) left_up.push_back(g.mesh.opposite(3 * upper(m, j) + 1));
  for (int j = 0; j < m; ++j) right_up.push_back(3 * lower(2 * m - 1, j) + 0);

  // The symplectic basis matching the reference period matrix
  // (i/3)[[5,-4],[-4,5]]: alpha_1 = full vertical loop up through B and C,
  // alpha_2 = C.left up, beta_1 = bottom row leftward, beta_2 = A.top
  // rightward. All four pass through the 6*pi cone vertex.
  std::vector<OrientedEdge> alpha1 = right_up;
  alpha1.insert(alpha1.end(), left_up.begin(), left_up.end());
  std::vector<OrientedEdge> beta1;
  for (auto it = bottom.rbegin(); it != bottom.rend(); ++it)
    beta1.push_back(g.mesh.opposite(*it));
  g.basis_loops = {alpha1, left_up, beta1, top};
  return g;
}

} // namespace drs
