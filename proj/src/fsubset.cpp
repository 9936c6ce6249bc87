#include <polyres/fsubset.hpp>

#include <algorithm>

#include <polyres/errors.hpp>
#include <polyres/simplex.hpp>

namespace polyres {

namespace {

// Componentwise domination: q <= p (then p lies in q + R^e_{>=0}).
bool dominates(const QPoint& q, const QPoint& p) {
  for (std::size_t i = 0; i < q.size(); ++i)
    if (q[i] > p[i]) return false;
  return true;
}

}  // namespace

// Feasibility of: sum l_i g_i + s = p (s >= 0 slack), sum l_i = 1, l_i >= 0,
// i.e. membership of p in conv(generators) + R^e_{>=0}.
bool in_hull_plus_cone(const QPoint& p, const std::vector<QPoint>& generators) {
  if (generators.empty()) return false;
  const std::size_t e = p.size();
  const std::size_t n = generators.size();
  // Quick win: single-generator domination.
  for (const auto& g : generators)
    if (dominates(g, p)) return true;

  // Variables: l_1..l_n, s_1..s_e.
  std::vector<std::vector<Rat>> A(e + 1, std::vector<Rat>(n + e, Rat(0)));
  std::vector<Rat> b(e + 1, Rat(0));
  for (std::size_t j = 0; j < e; ++j) {
    for (std::size_t i = 0; i < n; ++i) A[j][i] = generators[i][j];
    A[j][n + j] = 1;
    b[j] = p[j];
  }
  for (std::size_t i = 0; i < n; ++i) A[e][i] = 1;
  b[e] = 1;
  const std::vector<Rat> zero_cost(n + e, Rat(0));
  return lp_minimize(A, b, zero_cost).status == LpResult::Status::Optimal;
}

// Largest total amount sum(d) that can be subtracted from p while staying in
// the polyhedron: p is on the essential boundary iff this maximum is zero.
static Rat max_descent(const QPoint& p, const std::vector<QPoint>& generators) {
  const std::size_t e = p.size();
  const std::size_t n = generators.size();
  // Variables: l_1..l_n, s_1..s_e, d_1..d_e; rows: sum l g + s + d = p, sum l = 1.
  std::vector<std::vector<Rat>> A(e + 1, std::vector<Rat>(n + 2 * e, Rat(0)));
  std::vector<Rat> b(e + 1, Rat(0));
  for (std::size_t j = 0; j < e; ++j) {
    for (std::size_t i = 0; i < n; ++i) A[j][i] = generators[i][j];
    A[j][n + j] = 1;
    A[j][n + e + j] = 1;
    b[j] = p[j];
  }
  for (std::size_t i = 0; i < n; ++i) A[e][i] = 1;
  b[e] = 1;
  std::vector<Rat> cost(n + 2 * e, Rat(0));
  for (std::size_t j = 0; j < e; ++j) cost[n + e + j] = -1;  // maximize sum d
  LpResult r = lp_minimize(A, b, cost);
  if (r.status != LpResult::Status::Optimal)
    throw EmptyPolyhedron("max_descent on a point outside the polyhedron");
  return -r.value;
}

FSubset minimal_fsubset(std::size_t e, std::vector<QPoint> points) {
  for (const auto& p : points) {
    if (p.size() != e) throw WrongDimension("point vs polyhedron dimension");
    for (const auto& c : p)
      if (c < 0) throw NegativeCoordinate("polyhedron generator");
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Cheap pass: drop points dominated by another point.
  std::vector<QPoint> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dom = false;
    for (std::size_t j = 0; j < points.size() && !dom; ++j)
      if (i != j && dominates(points[j], points[i]) && points[i] != points[j]) dom = true;
    if (!dom) kept.push_back(points[i]);
  }

  // Exact pass: keep only extreme generators (not in the hull of the rest).
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<QPoint> others;
    others.reserve(kept.size() - 1);
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    if (!others.empty() && in_hull_plus_cone(kept[i], others))
      kept.erase(kept.begin() + static_cast<long>(i));
    else
      ++i;
  }

  FSubset d(e);
  d.vertices_ = std::move(kept);
  return d;
}

bool FSubset::contains(const QPoint& p) const {
  if (p.size() != e_) throw WrongDimension("point vs polyhedron dimension");
  return in_hull_plus_cone(p, vertices_);
}

bool FSubset::subset_of(const FSubset& other) const {
  for (const auto& v : vertices_)
    if (!other.contains(v)) return false;
  return true;
}

bool FSubset::on_essential_boundary(const QPoint& p) const {
  if (!contains(p)) return false;
  return max_descent(p, vertices_) == 0;
}

bool FSubset::in_interior_part(const QPoint& p) const {
  if (!contains(p)) return false;
  return max_descent(p, vertices_) > 0;
}

Face delta_face(const FSubset& d, const LinearForm& L) {
  if (d.empty()) throw EmptyPolyhedron("delta_face");
  if (L.coeffs().size() != d.dim()) throw WrongDimension("linear form vs polyhedron");
  Rat best;
  bool have = false;
  for (const auto& v : d.vertices()) {
    Rat val = L.apply(v);
    if (!have || val < best) {
      best = val;
      have = true;
    }
  }
  Face f{L, best, {}, L.positive()};
  for (const auto& v : d.vertices())
    if (L.apply(v) == best) f.vertices.push_back(v);
  return f;
}

Rat delta_invariant(const FSubset& d) {
  return delta_face(d, LinearForm::L0(d.dim())).level;
}

ExtRat delta_or_infinity(const FSubset& d) {
  if (d.empty()) return ExtRat::infinity();
  return ExtRat(delta_invariant(d));
}

Invariants2 invariants2(const FSubset& d) {
  if (d.dim() != 2) throw WrongDimension("invariants2 needs e = 2");
  if (d.empty()) throw EmptyPolyhedron("invariants2");
  Invariants2 iv;
  const auto& V = d.vertices();
  bool first = true;
  for (const auto& v : V) {
    if (first || v[0] < iv.alpha) iv.alpha = v[0];
    if (first || v[1] < iv.eps) iv.eps = v[1];
    if (first || v[0] + v[1] < iv.delta) iv.delta = v[0] + v[1];
    first = false;
  }
  bool have_beta = false, have_zeta = false, have_gamma = false;
  for (const auto& v : V) {
    if (v[0] == iv.alpha && (!have_beta || v[1] < iv.beta)) {
      iv.beta = v[1];
      have_beta = true;
    }
    if (v[1] == iv.eps && (!have_zeta || v[0] < iv.zeta)) {
      iv.zeta = v[0];
      have_zeta = true;
    }
    if (v[0] + v[1] == iv.delta) {
      if (!have_gamma) {
        iv.gamma_plus = iv.gamma_minus = v[1];
        have_gamma = true;
      } else {
        iv.gamma_plus = std::max(iv.gamma_plus, v[1]);
        iv.gamma_minus = std::min(iv.gamma_minus, v[1]);
      }
    }
  }
  iv.v = {iv.alpha, iv.beta};
  iv.w_plus = {iv.delta - iv.gamma_plus, iv.gamma_plus};
  iv.w_minus = {iv.delta - iv.gamma_minus, iv.gamma_minus};
  return iv;
}

FSubset project(const FSubset& d, std::size_t s) {
  if (s < 1 || s > d.dim()) throw BadIndex("projection index");
  std::vector<QPoint> pts;
  for (const auto& v : d.vertices()) pts.emplace_back(v.begin(), v.begin() + static_cast<long>(s));
  return minimal_fsubset(s, std::move(pts));
}

QPoint AffineMap::apply(const QPoint& x) const {
  QPoint y(M.size(), Rat(0));
  for (std::size_t i = 0; i < M.size(); ++i) {
    for (std::size_t j = 0; j < M[i].size(); ++j) y[i] += M[i][j] * x[j];
    y[i] += b[i];
  }
  return y;
}

AffineMap AffineMap::identity(std::size_t e) {
  AffineMap m;
  m.M.assign(e, std::vector<Rat>(e, Rat(0)));
  for (std::size_t i = 0; i < e; ++i) m.M[i][i] = 1;
  m.b.assign(e, Rat(0));
  return m;
}

FSubset map_and_rebuild(const FSubset& d, const AffineMap& psi) {
  std::vector<QPoint> pts;
  for (const auto& v : d.vertices()) {
    QPoint w = psi.apply(v);
    for (const auto& c : w)
      if (c < 0) throw NegativeCoordinate("affine image of a vertex");
    pts.push_back(std::move(w));
  }
  return minimal_fsubset(d.dim(), std::move(pts));
}

}  // namespace polyres
