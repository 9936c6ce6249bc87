#include <polyres/blowup.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include <polyres/errors.hpp>

namespace polyres {

namespace {

bool has_constant_term(const Polynomial& f) {
  for (const auto& [e, c] : f.terms())
    if (e.total() == 0) return true;
  return false;
}

// Split off the largest power of u_idx dividing f.
std::pair<Polynomial, unsigned> strip_u(Polynomial f, std::size_t idx) {
  unsigned k = 0;
  if (f.is_zero()) return {f, 0};
  for (;;) {
    unsigned mn = ~0u;
    for (const auto& [e, c] : f.terms()) mn = std::min(mn, e.A[idx]);
    if (mn == 0) break;
    f = divide_u_power(f, idx, mn);
    k += mn;
  }
  return {f, k};
}

std::string fresh_exceptional_id(const std::vector<BoundaryComponent>& bnd) {
  std::set<std::string> used;
  for (const auto& b : bnd) used.insert(b.id);
  for (unsigned k = 1;; ++k) {
    std::string id = "E" + std::to_string(k);
    if (!used.count(id)) return id;
  }
}

// Common core of the monomial point charts: scale every y (and, for a point
// center, every u other than the pivot) by the pivot parameter, then divide
// the generators by its n_i-th power.
Label monomial_chart(const Label& label, std::size_t pivot, bool point_center,
                     const std::map<std::string, Polynomial>& pre) {
  const FramePtr& frame = label.frame();
  std::map<std::string, Polynomial> images;
  Polynomial up = Polynomial::variable(frame, frame->u_names()[pivot]);
  for (const auto& yn : frame->y_names())
    images[yn] = up * Polynomial::variable(frame, yn);
  if (point_center)
    for (std::size_t j = 0; j < frame->e(); ++j) {
      if (j == pivot) continue;
      images[frame->u_names()[j]] =
          up * Polynomial::variable(frame, frame->u_names()[j]);
    }

  auto pull = [&](const Polynomial& f) {
    Polynomial g = pre.empty() ? f : substitute(f, pre, frame);
    return substitute(g, images, frame);
  };

  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < label.generators().size(); ++i)
    gens.push_back(
        divide_u_power(pull(label.generators()[i]), pivot, label.orders()[i]));

  std::vector<BoundaryComponent> bnd;
  for (const auto& b : label.boundary()) {
    Polynomial g = strip_u(pull(b.gen), pivot).first;
    if (has_constant_term(g)) continue;  // misses the chart origin
    bnd.push_back({g, b.id, b.old});
  }
  bnd.push_back({Polynomial::variable(frame, frame->u_names()[pivot]),
                 fresh_exceptional_id(label.boundary()), false});
  return Label(frame, std::move(gens), std::move(bnd));
}

}  // namespace

Label point_chart(const Label& label, const ChartSpec& chart) {
  const FramePtr& frame = label.frame();
  switch (chart.kind) {
    case ChartSpec::Kind::PointU1:
      return monomial_chart(label, 0, true, {});
    case ChartSpec::Kind::PointU2:
      if (frame->e() < 2) throw BadParameters("point-u2 needs e >= 2");
      return monomial_chart(label, 1, true, {});
    case ChartSpec::Kind::PointTranslated: {
      if (frame->e() != 2) throw BadParameters("point-translated needs e = 2");
      for (const auto& [e, c] : chart.phi.terms())
        if (e.deg_B() != 0)
          throw BadParameters("translation must be a polynomial in u");
      // New second parameter u2~ with u2 = u2~ - phi*u1, so that the chart
      // origin sits at u2/u1 = -phi.
      std::map<std::string, Polynomial> pre;
      pre[frame->u_names()[1]] =
          Polynomial::variable(frame, frame->u_names()[1]) -
          reframe(chart.phi, frame) *
              Polynomial::variable(frame, frame->u_names()[0]);
      return monomial_chart(label, 0, true, pre);
    }
    case ChartSpec::Kind::PointNonrational: {
      if (frame->e() != 2) throw BadParameters("point-nonrational needs e = 2");
      const FieldPtr& field = frame->field();
      if (field->kind() != FieldSpec::Kind::Prime)
        throw UnsupportedField(
            "non-rational charts need a prime base field");
      // Read Phi(1, T) off the binary form.
      unsigned d = 0;
      for (const auto& [e, c] : chart.Phi.terms()) {
        if (e.deg_B() != 0 || e.A.size() != 2)
          throw BadParameters("chart form must be binary in u1, u2");
        d = std::max(d, e.total());
      }
      if (d < 2) throw BadParameters("chart form must have degree >= 2");
      std::vector<std::uint64_t> modulus(d + 1, 0);
      for (const auto& [e, c] : chart.Phi.terms()) {
        if (e.total() != d) throw BadParameters("chart form not homogeneous");
        modulus[e.A[1]] = c.residues().empty() ? 0 : c.residues()[0];
      }
      if (modulus[d] == 0)
        throw BadParameters("chart form divisible by u1");
      FieldPtr ext = FieldSpec::extension(field->p(), modulus);

      FramePtr big = std::make_shared<const Frame>(frame->y_names(),
                                                   frame->u_names(), ext);
      std::vector<Polynomial> gens;
      for (const auto& g : label.generators()) gens.push_back(reframe(g, big));
      std::vector<BoundaryComponent> bnd;
      for (const auto& b : label.boundary())
        bnd.push_back({reframe(b.gen, big), b.id, b.old});
      Label lifted(big, std::move(gens), std::move(bnd));

      // The residue of u2/u1 at the new point is theta, a root of Phi(1, T).
      Polynomial mtheta = Polynomial::constant(big, -theta_of(ext));
      return point_chart(lifted, ChartSpec::point_translated(mtheta));
    }
    case ChartSpec::Kind::CurveU1:
      return curve_chart(label, 0);
    case ChartSpec::Kind::CurveU2:
      if (frame->e() < 2) throw BadParameters("curve-u2 needs e >= 2");
      return curve_chart(label, 1);
  }
  throw BadParameters("unknown chart kind");
}

Label curve_chart(const Label& label, std::size_t pivot) {
  const FramePtr& frame = label.frame();
  if (pivot >= frame->e()) throw BadParameters("curve chart pivot out of range");
  std::map<std::string, Polynomial> images;
  Polynomial up = Polynomial::variable(frame, frame->u_names()[pivot]);
  for (const auto& yn : frame->y_names())
    images[yn] = up * Polynomial::variable(frame, yn);

  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < label.generators().size(); ++i)
    gens.push_back(divide_u_power(substitute(label.generators()[i], images, frame),
                                  pivot, label.orders()[i]));

  std::vector<BoundaryComponent> bnd;
  for (const auto& b : label.boundary()) {
    Polynomial g = strip_u(substitute(b.gen, images, frame), pivot).first;
    if (has_constant_term(g)) continue;
    bnd.push_back({g, b.id, b.old});
  }
  bnd.push_back({up, fresh_exceptional_id(label.boundary()), false});
  return Label(frame, std::move(gens), std::move(bnd));
}

Nearness classify_nearness(const Label& label_out, bool /*prepared*/) {
  ExtRat d = delta_or_infinity(char_polyhedron(label_out));
  if (d > ExtRat(Rat(1))) return {Nearness::Kind::VeryNear, d};
  if (d == ExtRat(Rat(1))) return {Nearness::Kind::Near, d};
  return {Nearness::Kind::NotNear, d};
}

AffineMap chart_affine(ChartSpec::Kind kind, std::size_t e) {
  AffineMap psi = AffineMap::identity(e);
  switch (kind) {
    case ChartSpec::Kind::PointU1:
      // (a_1, ..., a_e) -> (a_1 + ... + a_e - 1, a_2, ..., a_e)
      for (std::size_t j = 1; j < e; ++j) psi.M[0][j] = 1;
      psi.b[0] = -1;
      return psi;
    case ChartSpec::Kind::PointU2:
      for (std::size_t j = 0; j < e; ++j) psi.M[1][j] = 1;
      psi.b[1] = -1;
      return psi;
    case ChartSpec::Kind::CurveU1:
      psi.b[0] = -1;
      return psi;
    case ChartSpec::Kind::CurveU2:
      psi.b[1] = -1;
      return psi;
    default:
      throw BadParameters("chart is not affine on the polyhedron");
  }
}

}  // namespace polyres
