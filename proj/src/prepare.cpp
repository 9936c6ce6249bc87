#include <polyres/prepare.hpp>

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include <polyres/errors.hpp>
#include <polyres/linalg.hpp>

namespace polyres {

namespace {

// All y-block exponents of a given total degree, lexicographically descending
// (so that the left-to-right pivot choice of row_reduce picks lex-leading
// monomials).
void enum_rec(std::size_t nvars, unsigned degree, std::vector<unsigned>& cur,
              std::vector<std::vector<unsigned>>& out) {
  if (cur.size() + 1 == nvars) {
    cur.push_back(degree);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = static_cast<int>(degree); k >= 0; --k) {
    cur.push_back(static_cast<unsigned>(k));
    enum_rec(nvars, degree - static_cast<unsigned>(k), cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<unsigned>> y_monomials(std::size_t r, unsigned degree) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  enum_rec(r, degree, cur, out);
  return out;
}

// Degree-d slice of the ideal generated by pure-y homogeneous forms, with
// bookkeeping columns recording which monomial multiple of which form each
// reduced row combines.
struct Slice {
  std::vector<std::vector<unsigned>> basis;  // lex-descending y-monomials
  std::map<std::vector<unsigned>, std::size_t> index;
  struct Product {
    std::vector<unsigned> mono;
    std::size_t gen;
  };
  std::vector<Product> products;
  Echelon ech;  // width basis.size() + products.size()

  // Row whose pivot is the basis column of B, if any.
  std::optional<std::size_t> row_with_lead(const std::vector<unsigned>& B) const {
    auto it = index.find(B);
    if (it == index.end()) return std::nullopt;
    for (std::size_t i = 0; i < ech.rows.size(); ++i)
      if (ech.pivots[i] == it->second) return i;
    return std::nullopt;
  }
};

unsigned y_degree_of(const Polynomial& f) {
  unsigned d = 0;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (e.deg_A() != 0) throw BadParameters("form has u-variables");
    if (first) {
      d = e.deg_B();
      first = false;
    } else if (e.deg_B() != d) {
      throw BadParameters("form not homogeneous");
    }
  }
  return d;
}

Slice build_slice(const std::vector<Polynomial>& forms,
                  const std::vector<unsigned>& degs, std::size_t r, unsigned d,
                  const FieldPtr& field) {
  Slice s;
  s.basis = y_monomials(r, d);
  for (std::size_t i = 0; i < s.basis.size(); ++i) s.index[s.basis[i]] = i;
  for (std::size_t g = 0; g < forms.size(); ++g) {
    if (forms[g].is_zero() || degs[g] > d) continue;
    for (auto& m : y_monomials(r, d - degs[g])) s.products.push_back({m, g});
  }
  std::vector<std::vector<Scalar>> rows;
  const std::size_t width = s.basis.size() + s.products.size();
  for (std::size_t t = 0; t < s.products.size(); ++t) {
    std::vector<Scalar> row(width, Scalar::zero(field));
    const auto& pr = s.products[t];
    for (const auto& [e, c] : forms[pr.gen].terms()) {
      std::vector<unsigned> B = e.B;
      for (std::size_t j = 0; j < r; ++j) B[j] += pr.mono[j];
      row[s.index.at(B)] = c;
    }
    row[s.basis.size() + t] = Scalar::one(field);
    rows.push_back(std::move(row));
  }
  s.ech = row_reduce(std::move(rows));
  return s;
}

bool dominates(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

// The polyhedron point of a term, if it has one.
std::optional<QPoint> term_point(const ExponentPair& e, unsigned n) {
  if (e.deg_B() >= n) return std::nullopt;
  Rat den(static_cast<long>(n - e.deg_B()));
  QPoint p;
  for (unsigned a : e.A) {
    Rat q(static_cast<long>(a));
    p.push_back(q / den);
  }
  return p;
}

// Degree forms of the generators before index i.
std::vector<Polynomial> earlier_forms(const Label& label, std::size_t i) {
  std::vector<Polynomial> forms;
  for (std::size_t j = 0; j < i; ++j)
    forms.push_back(initial_zero(label.generators()[j]));
  return forms;
}

struct Offender {
  ExponentPair exp;
  Scalar coeff;
};

// Terms of f over the point set accepted by `at`, whose y-exponent lies in
// the leading-exponent shadow of the earlier degree forms.
template <typename PointFilter>
std::vector<Offender> find_offenders(const Polynomial& f, unsigned n,
                                     const std::vector<Polynomial>& forms,
                                     const std::vector<unsigned>& degs,
                                     std::size_t r, const FieldPtr& field,
                                     std::map<unsigned, Slice>& slices,
                                     const PointFilter& at) {
  std::vector<Offender> out;
  for (const auto& [e, c] : f.terms()) {
    auto p = term_point(e, n);
    if (!p || !at(*p)) continue;
    unsigned d = e.deg_B();
    auto it = slices.find(d);
    if (it == slices.end())
      it = slices.emplace(d, build_slice(forms, degs, r, d, field)).first;
    if (it->second.row_with_lead(e.B)) out.push_back({e, c});
  }
  return out;
}

template <typename PointFilter>
Label normalize_filtered(const Label& label, const PointFilter& at,
                         const char* what) {
  const FieldPtr& field = label.frame()->field();
  const std::size_t r = label.r();
  std::vector<Polynomial> gens = label.generators();

  for (std::size_t i = 1; i < gens.size(); ++i) {
    std::vector<Polynomial> forms = earlier_forms(label, i);
    std::vector<unsigned> degs;
    for (const auto& F : forms) degs.push_back(y_degree_of(F));
    std::map<unsigned, Slice> slices;
    const unsigned n_i = label.orders()[i];

    for (unsigned pass = 0;; ++pass) {
      if (pass > 10000)
        throw NonTermination(std::string("normalization at ") + what);
      auto off = find_offenders(gens[i], n_i, forms, degs, r, field, slices, at);
      if (off.empty()) break;
      // Eliminate the lex-largest offender; its replacement terms are
      // lex-smaller at the same polyhedron point.
      auto worst = std::max_element(
          off.begin(), off.end(),
          [](const Offender& a, const Offender& b) { return a.exp.B < b.exp.B; });
      const Slice& sl = slices.at(worst->exp.deg_B());
      std::size_t row = *sl.row_with_lead(worst->exp.B);
      Polynomial corr(label.frame());
      for (std::size_t t = 0; t < sl.products.size(); ++t) {
        const Scalar& ct = sl.ech.rows[row][sl.basis.size() + t];
        if (ct.is_zero()) continue;
        ExponentPair mono{sl.products[t].mono,
                          std::vector<unsigned>(label.e(), 0)};
        corr = corr + (Polynomial::monomial(label.frame(), mono, ct) *
                       gens[sl.products[t].gen]);
      }
      ExponentPair ua{std::vector<unsigned>(r, 0), worst->exp.A};
      gens[i] = gens[i] -
                Polynomial::monomial(label.frame(), ua, worst->coeff) * corr;
    }
  }
  return label.with_generators(std::move(gens));
}

mpz_class default_step_cap(const Label& label, const Rat& M) {
  unsigned dmax = 1;
  for (unsigned n : label.orders()) dmax = std::max(dmax, n);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), dmax);
  mpz_class per_axis = floor_z(Rat(fact) * M) + 1;
  mpz_class cap = 10;
  for (std::size_t i = 0; i < label.e(); ++i) cap *= per_axis;
  return cap;
}

}  // namespace

std::vector<std::vector<unsigned>> leading_exponent_set(
    const std::vector<Polynomial>& forms, unsigned max_degree) {
  std::vector<std::vector<unsigned>> gens;
  if (forms.empty()) return gens;
  const FramePtr& frame = forms[0].frame();
  std::vector<unsigned> degs;
  for (const auto& F : forms) degs.push_back(y_degree_of(F));
  for (unsigned d = 0; d <= max_degree; ++d) {
    Slice s = build_slice(forms, degs, frame->r(), d, frame->field());
    for (std::size_t i = 0; i < s.ech.rows.size(); ++i) {
      if (s.ech.pivots[i] >= s.basis.size()) continue;  // zero combination
      const auto& B = s.basis[s.ech.pivots[i]];
      bool redundant = false;
      for (const auto& g : gens)
        if (dominates(B, g)) {
          redundant = true;
          break;
        }
      if (!redundant) gens.push_back(B);
    }
  }
  std::sort(gens.begin(), gens.end());
  return gens;
}

bool is_normalized_at(const Label& label, const QPoint& v) {
  const FieldPtr& field = label.frame()->field();
  const std::size_t r = label.r();
  auto at = [&v](const QPoint& p) { return p == v; };
  for (std::size_t i = 1; i < label.generators().size(); ++i) {
    std::vector<Polynomial> forms = earlier_forms(label, i);
    std::vector<unsigned> degs;
    for (const auto& F : forms) degs.push_back(y_degree_of(F));
    std::map<unsigned, Slice> slices;
    if (!find_offenders(label.generators()[i], label.orders()[i], forms, degs,
                        r, field, slices, at)
             .empty())
      return false;
  }
  return true;
}

Label normalize_at(const Label& label, const QPoint& v) {
  return normalize_filtered(
      label, [&v](const QPoint& p) { return p == v; }, "vertex");
}

Label normalize_along_face(const Label& label, const Face& face) {
  if (!face.bounded) throw UnboundedFace("normalize_along_face");
  return normalize_filtered(
      label,
      [&face](const QPoint& p) { return face.L.apply(p) == face.level; },
      "face");
}

SolveOutcome solvable_at(const Label& label, const QPoint& v) {
  FSubset d = char_polyhedron(label);
  const auto& verts = d.vertices();
  if (std::find(verts.begin(), verts.end(), v) == verts.end())
    throw NotAVertex("solvable_at");
  for (const auto& c : v)
    if (!is_integer(c)) return {SolveOutcome::Kind::NotSolvable, std::nullopt};

  const FramePtr& frame = label.frame();
  const FieldPtr& field = frame->field();
  const std::size_t r = label.r();
  std::vector<unsigned> vz;
  for (const auto& c : v) vz.push_back(static_cast<unsigned>(c.get_num().get_ui()));

  // Leading shape per generator: the degree form must be a scaled pure power
  // of a single y-variable.
  std::vector<Scalar> lambda(r, Scalar::zero(field));
  std::vector<bool> assigned(r, false);

  struct GenShape {
    std::size_t yvar;
    Scalar gamma;
    unsigned n;
  };
  std::vector<GenShape> shapes;
  for (std::size_t i = 0; i < label.generators().size(); ++i) {
    Polynomial F = initial_zero(label.generators()[i]);
    if (F.term_count() != 1) return {SolveOutcome::Kind::Undecided, std::nullopt};
    const auto& [e, gamma] = *F.terms().begin();
    std::size_t yvar = r;
    for (std::size_t j = 0; j < r; ++j) {
      if (e.B[j] == 0) continue;
      if (yvar != r) return {SolveOutcome::Kind::Undecided, std::nullopt};
      yvar = j;
    }
    if (yvar == r) return {SolveOutcome::Kind::Undecided, std::nullopt};
    shapes.push_back({yvar, gamma, label.orders()[i]});
  }

  const std::uint64_t p = field->characteristic();
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    if (assigned[shapes[i].yvar]) continue;
    unsigned n = shapes[i].n;
    unsigned m = n, s = 0;
    if (p != 0)
      while (m % p == 0) {
        m /= static_cast<unsigned>(p);
        ++s;
      }
    mpz_class ps_z;
    mpz_ui_pow_ui(ps_z.get_mpz_t(), p == 0 ? 1 : p, s);
    unsigned long ps = ps_z.get_ui();

    // Coefficient of Y_j^{p^s (m-1)} U^{p^s v} in the vertex initial.
    ExponentPair target{std::vector<unsigned>(r, 0), std::vector<unsigned>()};
    target.B[shapes[i].yvar] = static_cast<unsigned>(ps * (m - 1));
    for (unsigned a : vz) target.A.push_back(static_cast<unsigned>(ps * a));
    Polynomial inv = initial_at_vertex(label.generators()[i], v);
    auto it = inv.terms().find(target);
    Scalar t = it == inv.terms().end() ? Scalar::zero(field) : it->second;
    t = t * (shapes[i].gamma * Scalar::from_int(field, static_cast<long>(m)))
                .inverse();
    Scalar c = t;
    if (ps > 1 && !t.nth_root(ps, c))
      return {SolveOutcome::Kind::NotSolvable, std::nullopt};
    lambda[shapes[i].yvar] = c;
    assigned[shapes[i].yvar] = true;
  }

  bool all_zero = std::all_of(lambda.begin(), lambda.end(),
                              [](const Scalar& x) { return x.is_zero(); });
  if (all_zero) return {SolveOutcome::Kind::NotSolvable, std::nullopt};

  // Full verification: in_v(f_i) must equal gamma (Y_j + c U^v)^{n_i}.
  ExponentPair uv{std::vector<unsigned>(r, 0), vz};
  for (const auto& sh : shapes) {
    Polynomial shifted =
        Polynomial::variable(frame, frame->y_names()[sh.yvar]) +
        Polynomial::monomial(frame, uv, lambda[sh.yvar]);
    Polynomial expect = shifted.pow(sh.n).scaled(sh.gamma);
    std::size_t idx = static_cast<std::size_t>(&sh - shapes.data());
    if (initial_at_vertex(label.generators()[idx], v) != expect)
      return {SolveOutcome::Kind::NotSolvable, std::nullopt};
  }
  return {SolveOutcome::Kind::Solved, Solution{lambda, vz}};
}

Label dissolve_at(const Label& label, const Solution& sol) {
  const FramePtr& frame = label.frame();
  std::map<std::string, Polynomial> images;
  ExponentPair uv{std::vector<unsigned>(label.r(), 0), sol.vertex};
  for (std::size_t j = 0; j < label.r(); ++j) {
    if (sol.lambda[j].is_zero()) continue;
    images[frame->y_names()[j]] =
        Polynomial::variable(frame, frame->y_names()[j]) -
        Polynomial::monomial(frame, uv, sol.lambda[j]);
  }
  std::vector<Polynomial> gens;
  for (const auto& g : label.generators())
    gens.push_back(substitute(g, images, frame));
  return label.with_generators(std::move(gens));
}

std::pair<Label, PrepReport> prepare(const Label& label, const Rat& M) {
  // Weak normalization: no degree form may lie in the ideal of the earlier
  // ones.
  for (std::size_t i = 1; i < label.generators().size(); ++i) {
    std::vector<Polynomial> forms = earlier_forms(label, i);
    std::vector<unsigned> degs;
    for (const auto& F : forms) degs.push_back(y_degree_of(F));
    Polynomial Fi = initial_zero(label.generators()[i]);
    Slice s = build_slice(forms, degs, label.r(), y_degree_of(Fi),
                          label.frame()->field());
    std::vector<Scalar> target(s.basis.size() + s.products.size(),
                               Scalar::zero(label.frame()->field()));
    for (const auto& [e, c] : Fi.terms()) target[s.index.at(e.B)] = c;
    std::vector<Scalar> residue = reduce_against(s.ech, target);
    if (std::all_of(residue.begin(), residue.begin() + static_cast<long>(s.basis.size()),
                    [](const Scalar& x) { return x.is_zero(); }))
      throw NotWeaklyNormalized("generator " + std::to_string(i + 1));
  }

  mpz_class cap;
  if (const char* env = std::getenv("CHARPOLY_STEP_CAP"))
    cap = mpz_class(env);
  else
    cap = default_step_cap(label, M);

  Label current = label;
  PrepReport report;
  std::set<QPoint> treated;
  mpz_class steps = 0;

  for (;;) {
    FSubset d = char_polyhedron(current);
    std::vector<QPoint> verts = d.vertices();
    std::sort(verts.begin(), verts.end(), size_lex_less);
    const QPoint* next = nullptr;
    for (const auto& v : verts)
      if (coord_sum(v) <= M && !treated.count(v)) {
        next = &v;
        break;
      }
    if (!next) break;
    QPoint v = *next;

    if (++steps > cap)
      throw NonTermination("preparation at M = " + to_string(M));

    if (!is_normalized_at(current, v)) {
      current = normalize_at(current, v);
      report.steps.push_back({v, PrepStep::Action::Normalized, {}});
      FSubset d2 = char_polyhedron(current);
      const auto& vs = d2.vertices();
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) continue;
    }

    SolveOutcome oc = solvable_at(current, v);
    switch (oc.kind) {
      case SolveOutcome::Kind::Solved:
        current = dissolve_at(current, *oc.solution);
        report.steps.push_back({v, PrepStep::Action::Dissolved,
                                oc.solution->lambda});
        break;
      case SolveOutcome::Kind::NotSolvable:
        treated.insert(v);
        report.steps.push_back({v, PrepStep::Action::AlreadyPrepared, {}});
        break;
      case SolveOutcome::Kind::Undecided:
        treated.insert(v);
        report.has_undecided = true;
        report.steps.push_back({v, PrepStep::Action::Undecided, {}});
        break;
    }
  }
  return {current, report};
}

bool standard_base_characterization(const Label& label) {
  for (std::size_t i = 0; i < label.generators().size(); ++i) {
    const Polynomial& g = label.generators()[i];
    if (multiplicity(g) != ExtRat(Rat(static_cast<long>(label.orders()[i]))))
      return false;
    Polynomial in0 = initial_origin(g);
    for (const auto& [e, c] : in0.terms())
      if (e.deg_A() != 0) return false;
  }
  return true;
}

}  // namespace polyres
