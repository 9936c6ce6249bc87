#include <polyres/label.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include <polyres/errors.hpp>
#include <polyres/linalg.hpp>

namespace polyres {

Label::Label(FramePtr frame, std::vector<Polynomial> generators,
             std::vector<BoundaryComponent> boundary)
    : frame_(std::move(frame)), gens_(std::move(generators)), boundary_(std::move(boundary)) {
  if (gens_.empty()) throw BadParameters("label needs at least one generator");
  for (const auto& g : gens_) {
    if (!(*g.frame() == *frame_)) throw FrameMismatch("generator frame");
    if (g.is_zero()) throw BadParameters("zero generator");
    n_.push_back(order_mod_u_finite(g));
  }
  for (const auto& b : boundary_) {
    if (!(*b.gen.frame() == *frame_)) throw FrameMismatch("boundary frame");
    if (multiplicity(b.gen) != ExtRat(Rat(1)))
      throw BadParameters("boundary generator must have multiplicity 1");
  }
}

Label Label::with_generators(std::vector<Polynomial> gens) const {
  return Label(frame_, std::move(gens), boundary_);
}

Label Label::with_boundary(std::vector<BoundaryComponent> b) const {
  return Label(frame_, gens_, std::move(b));
}

FSubset char_polyhedron(const Label& label) {
  std::vector<QPoint> pts;
  for (const auto& g : label.generators()) {
    auto p = polyhedron_points(g);
    pts.insert(pts.end(), p.begin(), p.end());
  }
  return minimal_fsubset(label.e(), std::move(pts));
}

std::vector<QPoint> essential_points(const Label& label) {
  FSubset d = char_polyhedron(label);
  std::set<QPoint> seen;
  std::vector<QPoint> out;
  if (d.empty()) return out;
  for (const auto& g : label.generators())
    for (auto& p : polyhedron_points(g)) {
      if (!seen.insert(p).second) continue;
      if (d.on_essential_boundary(p)) out.push_back(p);
    }
  std::sort(out.begin(), out.end());
  return out;
}

FSubset boundary_polyhedron(const Label& label) {
  std::vector<QPoint> pts;
  for (const auto& g : label.generators()) {
    auto p = polyhedron_points(g);
    pts.insert(pts.end(), p.begin(), p.end());
  }
  for (const auto& b : label.boundary()) {
    if (!b.old) continue;
    if (order_mod_u(b.gen).is_infinite())
      throw BoundaryInUIdeal(b.id);
    auto p = polyhedron_points(b.gen);
    pts.insert(pts.end(), p.begin(), p.end());
  }
  return minimal_fsubset(label.e(), std::move(pts));
}

Invariants2 boundary_invariants2(const Label& label) {
  return invariants2(boundary_polyhedron(label));
}

// ---- nu* ------------------------------------------------------------------

namespace {

// All exponent vectors of the full variable block (r + e entries) of a given
// total degree, in a fixed (lexicographic descending) order.
void enumerate_exponents(std::size_t nvars, unsigned degree,
                         std::vector<unsigned>& cur,
                         std::vector<std::vector<unsigned>>& out) {
  if (cur.size() + 1 == nvars) {
    cur.push_back(degree);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = static_cast<int>(degree); k >= 0; --k) {
    cur.push_back(static_cast<unsigned>(k));
    enumerate_exponents(nvars, degree - static_cast<unsigned>(k), cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<unsigned>> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  enumerate_exponents(nvars, degree, cur, out);
  return out;
}

std::vector<unsigned> full_exponent(const ExponentPair& e) {
  std::vector<unsigned> v = e.B;
  v.insert(v.end(), e.A.begin(), e.A.end());
  return v;
}

bool is_homogeneous(const Polynomial& f, unsigned& degree) {
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (first) {
      degree = e.total();
      first = false;
    } else if (e.total() != degree) {
      return false;
    }
  }
  return !first;
}

// Coefficient vector of a homogeneous f over the degree slice basis.
std::vector<Scalar> coeff_vector(const Polynomial& f,
                                 const std::vector<std::vector<unsigned>>& basis,
                                 const FieldPtr& field) {
  std::vector<Scalar> v(basis.size(), Scalar::zero(field));
  for (const auto& [e, c] : f.terms()) {
    auto fe = full_exponent(e);
    auto it = std::find(basis.begin(), basis.end(), fe);
    if (it == basis.end()) throw Error("monomial outside degree slice");
    v[static_cast<std::size_t>(it - basis.begin())] = c;
  }
  return v;
}

Polynomial monomial_poly(const FramePtr& frame, const std::vector<unsigned>& exp) {
  ExponentPair e{std::vector<unsigned>(exp.begin(), exp.begin() + static_cast<long>(frame->r())),
                 std::vector<unsigned>(exp.begin() + static_cast<long>(frame->r()), exp.end())};
  return Polynomial::monomial(frame, e, Scalar::one(frame->field()));
}

// Degree-d slice of the ideal generated by the chosen forms, as rows over the
// slice monomial basis.
std::vector<std::vector<Scalar>> ideal_slice(const std::vector<Polynomial>& chosen,
                                             const std::vector<unsigned>& chosen_deg,
                                             unsigned d, const FramePtr& frame,
                                             const std::vector<std::vector<unsigned>>& basis) {
  std::vector<std::vector<Scalar>> rows;
  const std::size_t nvars = frame->r() + frame->e();
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (chosen_deg[i] > d) continue;
    for (const auto& m : monomials_of_degree(nvars, d - chosen_deg[i]))
      rows.push_back(coeff_vector(monomial_poly(frame, m) * chosen[i], basis, frame->field()));
  }
  return rows;
}

}  // namespace

NuStar nu_star(const std::vector<Polynomial>& forms) {
  NuStar out;
  if (forms.empty()) return out;
  const FramePtr frame = forms[0].frame();
  const std::size_t nvars = frame->r() + frame->e();

  struct Entry {
    Polynomial f;
    unsigned deg;
  };
  std::vector<Entry> input;
  for (const auto& f : forms) {
    if (f.is_zero()) continue;
    unsigned d = 0;
    if (!is_homogeneous(f, d)) throw BadParameters("nu_star input must be homogeneous");
    input.push_back({f, d});
  }
  std::stable_sort(input.begin(), input.end(),
                   [](const Entry& a, const Entry& b) { return a.deg < b.deg; });

  std::vector<Polynomial> chosen;
  std::vector<unsigned> chosen_deg;
  for (const auto& en : input) {
    auto basis = monomials_of_degree(nvars, en.deg);
    auto rows = ideal_slice(chosen, chosen_deg, en.deg, frame, basis);
    if (!in_row_span(rows, coeff_vector(en.f, basis, frame->field()))) {
      chosen.push_back(en.f);
      chosen_deg.push_back(en.deg);
      out.degrees.push_back(en.deg);
    }
  }
  return out;
}

// ---- directrix ------------------------------------------------------------

namespace {

Polynomial partial_derivative(const Polynomial& f, std::size_t var) {
  // var indexes the concatenated (Y-block, U-block).
  const FramePtr& fr = f.frame();
  const std::size_t r = fr->r();
  Polynomial out(fr);
  for (const auto& [e, c] : f.terms()) {
    unsigned k = var < r ? e.B[var] : e.A[var - r];
    if (k == 0) continue;
    ExponentPair d = e;
    if (var < r)
      --d.B[var];
    else
      --d.A[var - r];
    out.add_term(d, c * Scalar::from_int(fr->field(), static_cast<long>(k)));
  }
  return out;
}

// Linear coefficient vector of a degree-one homogeneous polynomial.
std::vector<Scalar> linear_vector(const Polynomial& f) {
  const FramePtr& fr = f.frame();
  const std::size_t n = fr->r() + fr->e();
  std::vector<Scalar> v(n, Scalar::zero(fr->field()));
  for (const auto& [e, c] : f.terms()) {
    auto fe = full_exponent(e);
    for (std::size_t i = 0; i < n; ++i)
      if (fe[i] == 1) v[i] = c;
  }
  return v;
}

// Does F lie in k[T] for the subspace spanned by basis (row-echelon, dim d)?
// Complete the basis, invert the coordinate change, substitute, and check
// that only the first d new coordinates occur.
bool generated_by(const Polynomial& F, const std::vector<std::vector<Scalar>>& basis) {
  const FramePtr& fr = F.frame();
  const FieldPtr& field = fr->field();
  const std::size_t n = fr->r() + fr->e();
  const std::size_t d = basis.size();

  // Rows of C: basis rows, then unit vectors for the non-pivot columns.
  std::vector<std::vector<Scalar>> C = basis;
  Echelon ech = row_reduce(basis);
  std::vector<bool> is_pivot(n, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    std::vector<Scalar> unit(n, Scalar::zero(field));
    unit[j] = Scalar::one(field);
    C.push_back(unit);
  }
  if (C.size() != n) return false;  // basis was degenerate

  // Invert C by Gauss-Jordan on [C | I].
  std::vector<std::vector<Scalar>> aug(n, std::vector<Scalar>(2 * n, Scalar::zero(field)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = C[i][j];
    aug[i][n + i] = Scalar::one(field);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t i = col; i < n; ++i)
      if (!aug[i][col].is_zero()) {
        piv = i;
        break;
      }
    if (piv == n) return false;
    std::swap(aug[col], aug[piv]);
    Scalar inv = aug[col][col].inverse();
    for (auto& x : aug[col]) x = x * inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || aug[i][col].is_zero()) continue;
      Scalar k = aug[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) aug[i][j] = aug[i][j] - k * aug[col][j];
    }
  }
  // x_i = sum_j Cinv[i][j] w_j; check F(x(w)) only involves w_0..w_{d-1}.
  std::vector<std::string> all_names = fr->y_names();
  all_names.insert(all_names.end(), fr->u_names().begin(), fr->u_names().end());
  std::map<std::string, Polynomial> images;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial img(fr);
    for (std::size_t j = 0; j < n; ++j) {
      Scalar cij = aug[i][n + j];
      if (cij.is_zero()) continue;
      img = img + Polynomial::variable(fr, all_names[j]).scaled(cij);
    }
    images[all_names[i]] = img;
  }
  Polynomial g = substitute(F, images, fr);
  for (const auto& [e, c] : g.terms()) {
    auto fe = full_exponent(e);
    for (std::size_t j = d; j < n; ++j)
      if (fe[j] != 0) return false;
  }
  return true;
}

}  // namespace

Subspace directrix(const Polynomial& F) {
  if (F.is_zero()) throw BadParameters("directrix of zero");
  unsigned deg = 0;
  if (!is_homogeneous(F, deg)) throw BadParameters("directrix input must be homogeneous");
  const FramePtr& fr = F.frame();
  const FieldPtr& field = fr->field();
  const std::size_t n = fr->r() + fr->e();

  if (field->kind() == FieldSpec::Kind::Rationals) {
    // Span of all (deg-1)-fold partial derivatives.
    std::vector<Polynomial> layer = {F};
    for (unsigned step = 1; step < deg; ++step) {
      std::vector<Polynomial> next;
      for (const auto& g : layer)
        for (std::size_t v = 0; v < n; ++v) {
          Polynomial d = partial_derivative(g, v);
          if (!d.is_zero()) next.push_back(d);
        }
      layer = std::move(next);
    }
    std::vector<std::vector<Scalar>> rows;
    for (const auto& g : layer) rows.push_back(linear_vector(g));
    Echelon ech = row_reduce(rows);
    return Subspace{ech.rows};
  }

  // Positive characteristic: exhaustive subspace minimization.
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), field->p(), field->degree());
  // Candidate count grows like q^(d*(n-d)); gate the search.
  mpz_class budget = 1;
  for (std::size_t i = 0; i < n; ++i) budget *= (q + 1);
  if (budget > 2000000) throw UnsupportedField("directrix search too large for this field");

  std::vector<Scalar> elems = field_elements(field);
  Subspace result;
  for (std::size_t d = 1; d <= n; ++d) {
    // Enumerate reduced row-echelon d x n bases: choose pivot columns
    // ascending, then free entries right of each pivot in non-pivot columns.
    std::vector<std::size_t> piv(d);
    std::function<bool(std::size_t, std::size_t)> choose =
        [&](std::size_t idx, std::size_t start) -> bool {
      if (idx == d) {
        // free positions: (i, j) with j > piv[i], j not a pivot column
        std::vector<std::pair<std::size_t, std::size_t>> free_pos;
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = piv[i] + 1; j < n; ++j)
            if (std::find(piv.begin(), piv.end(), j) == piv.end())
              free_pos.emplace_back(i, j);
        std::vector<std::size_t> digits(free_pos.size(), 0);
        for (;;) {
          std::vector<std::vector<Scalar>> basis(
              d, std::vector<Scalar>(n, Scalar::zero(field)));
          for (std::size_t i = 0; i < d; ++i) basis[i][piv[i]] = Scalar::one(field);
          for (std::size_t t = 0; t < free_pos.size(); ++t)
            basis[free_pos[t].first][free_pos[t].second] = elems[digits[t]];
          if (generated_by(F, basis)) {
            result = Subspace{row_reduce(basis).rows};
            return true;
          }
          std::size_t t = 0;
          while (t < digits.size() && ++digits[t] == elems.size()) digits[t++] = 0;
          if (t == digits.size()) return false;
        }
      }
      for (std::size_t j = start; j < n; ++j) {
        piv[idx] = j;
        if (choose(idx + 1, j + 1)) return true;
      }
      return false;
    };
    if (choose(0, 0)) return result;
  }
  // F always lies in k[full space].
  std::vector<std::vector<Scalar>> full(n, std::vector<Scalar>(n, Scalar::zero(field)));
  for (std::size_t i = 0; i < n; ++i) full[i][i] = Scalar::one(field);
  return Subspace{full};
}

bool check_strictly_admissible(const Label& label) {
  const FramePtr& fr = label.frame();
  const FieldPtr& field = fr->field();
  const std::size_t n = fr->r() + fr->e();
  // Directrix of the initial ideal; generators' initial forms are combined by
  // summing their (hypersurface) directrix spaces.
  std::vector<std::vector<Scalar>> rows;
  for (const auto& g : label.generators()) {
    Subspace t = directrix(initial_origin(g));
    rows.insert(rows.end(), t.basis.begin(), t.basis.end());
  }
  Echelon ech = row_reduce(rows);
  // Expected: exactly the span of the Y-variables.
  if (ech.rows.size() != fr->r()) return false;
  for (std::size_t i = 0; i < ech.rows.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool expect_unit = (j < fr->r() && ech.pivots[i] == j);
      if (expect_unit != !ech.rows[i][j].is_zero()) return false;
      if (j >= fr->r() && !ech.rows[i][j].is_zero()) return false;
    }
  }
  return true;
}

DeltaCriteria delta_criteria(const Label& label) {
  DeltaCriteria out;
  out.delta_ge_1 = true;
  out.delta_gt_1 = true;
  for (std::size_t i = 0; i < label.generators().size(); ++i) {
    const Polynomial& g = label.generators()[i];
    ExtRat vm = multiplicity(g);
    if (ExtRat(Rat(static_cast<long>(label.orders()[i]))) != vm) {
      out.delta_ge_1 = false;
      out.delta_gt_1 = false;
      break;
    }
    if (initial_origin(g) != initial_zero(g)) out.delta_gt_1 = false;
  }
  out.delta_eq_1 = out.delta_ge_1 && !out.delta_gt_1;
  return out;
}

}  // namespace polyres
