#include <polyres/resolve.hpp>

#include <algorithm>
#include <map>

#include <polyres/errors.hpp>

namespace polyres {

namespace {

Rat max_vertex_sum(const FSubset& d) {
  Rat m = 1;
  for (const auto& v : d.vertices()) m = std::max(m, coord_sum(v));
  return m;
}

// Prepare every vertex of the current polyhedron.
std::pair<Label, PrepReport> prep_all(const Label& label) {
  FSubset d = char_polyhedron(label);
  return prepare(label, max_vertex_sum(d) + 1);
}

// alpha: the delta of the one-coordinate projection, i.e. the smallest first
// coordinate of the polyhedron.
ExtRat alpha_of(const FSubset& d) {
  if (d.empty()) return ExtRat::infinity();
  Rat a = d.vertices()[0][0];
  for (const auto& v : d.vertices()) a = std::min(a, v[0]);
  return ExtRat(a);
}

std::size_t field_degree(const FieldPtr& f) {
  return std::max<std::size_t>(f->degree(), 1);
}

std::string chart_name(const ChartSpec& c) {
  switch (c.kind) {
    case ChartSpec::Kind::PointU1: return "point-u1";
    case ChartSpec::Kind::PointU2: return "point-u2";
    case ChartSpec::Kind::PointTranslated:
      return "point-translated(" + c.phi.str() + ")";
    case ChartSpec::Kind::PointNonrational:
      return "point-nonrational(" + c.Phi.str() + ")";
    case ChartSpec::Kind::CurveU1: return "curve-u1";
    case ChartSpec::Kind::CurveU2: return "curve-u2";
  }
  return "?";
}

TraceStep make_step(std::string chart, const Label& label,
                    std::size_t base_degree) {
  FSubset d = char_polyhedron(label);
  TraceStep st{std::move(chart), classify_nearness(label, true),
               delta_or_infinity(d), label.orders(),
               field_degree(label.frame()->field()) / base_degree, label};
  return st;
}

ExtRat beta_o(const Label& label) {
  FSubset d = boundary_polyhedron(label);
  if (d.empty()) return ExtRat::infinity();
  return ExtRat(invariants2(d).beta);
}

ExtRat alpha_o(const Label& label) {
  FSubset d = boundary_polyhedron(label);
  if (d.empty()) return ExtRat::infinity();
  return ExtRat(invariants2(d).alpha);
}

// Smallest idx-th coordinate over the polyhedron (the delta of the
// one-coordinate projection onto that axis).
ExtRat min_coord(const FSubset& d, std::size_t idx) {
  if (d.empty()) return ExtRat::infinity();
  Rat a = d.vertices()[0][idx];
  for (const auto& v : d.vertices()) a = std::min(a, v[idx]);
  return ExtRat(a);
}

mpz_class order_factorial(const Label& label) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), label.orders().back());
  return f;
}

}  // namespace

FundamentalSequence fundamental_sequence(const Label& label) {
  for (const auto& b : label.boundary())
    if (b.old) throw NotPrepared("fundamental sequence needs no old boundary");
  if (label.r() < 1) throw BadParameters("fundamental sequence needs r >= 1");

  FundamentalSequence out;
  FSubset d = char_polyhedron(label);
  if (d.empty()) {
    out.infinite = true;
    return out;
  }
  Rat delta = delta_invariant(d);
  if (delta <= 1) return out;  // m = 0: the point is not very near

  // Preparedness check: preparing must not change the label.
  {
    auto [prepped, rep] = prep_all(label);
    for (const auto& st : rep.steps)
      if (st.action == PrepStep::Action::Dissolved ||
          st.action == PrepStep::Action::Normalized)
        throw NotPrepared("fundamental sequence input");
  }

  // Predicted length from m < delta <= m+1.
  mpz_class mz = is_integer(delta) ? mpz_class(delta.get_num() - 1) : floor_z(delta);
  unsigned m_pred = static_cast<unsigned>(mz.get_ui());

  std::size_t base = field_degree(label.frame()->field());
  Label cur = prep_all(point_chart(label, ChartSpec::point_u1())).first;
  out.trace.push_back(make_step("point-u1", cur, base));
  out.m = 1;
  while (alpha_of(char_polyhedron(cur)) > ExtRat(Rat(1))) {
    cur = prep_all(curve_chart(cur)).first;
    out.trace.push_back(make_step("curve-u1", cur, base));
    ++out.m;
  }
  if (out.m != m_pred)
    throw InvariantViolation("fundamental sequence length " +
                             std::to_string(out.m) + " vs predicted " +
                             std::to_string(m_pred));
  return out;
}

UnitRecord run_unit(const Label& label, const ChartSpec& point, bool isolation) {
  UnitRecord rec{label, label, 1, beta_o(label), ExtRat::infinity(), 1, {}};
  if (point.kind == ChartSpec::Kind::PointNonrational) {
    unsigned d = 0;
    for (const auto& [e, c] : point.Phi.terms()) d = std::max(d, e.total());
    rec.residue_degree = d;
  }
  std::size_t base = field_degree(label.frame()->field());
  ExtRat alpha_before = alpha_o(label);

  // The curve centers of the unit live inside the new exceptional divisor,
  // which is the pivot axis of the point chart.
  std::size_t pivot = point.kind == ChartSpec::Kind::PointU2 ||
                              point.kind == ChartSpec::Kind::CurveU2
                          ? 1
                          : 0;
  std::string curve_name = pivot == 1 ? "curve-u2" : "curve-u1";

  Label cur = prep_all(point_chart(label, point)).first;
  rec.trace.push_back(make_step(chart_name(point), cur, base));
  for (;;) {
    FSubset d = char_polyhedron(cur);
    if (!(min_coord(d, pivot) > ExtRat(Rat(1)))) break;
    try {
      cur = prep_all(curve_chart(cur, pivot)).first;
    } catch (const NonDivisible&) {
      break;
    }
    rec.trace.push_back(make_step(curve_name, cur, base));
    ++rec.length;
  }
  rec.terminal = cur;
  rec.beta_after = beta_o(cur);

  // The ledger compares labels of the same multiplicity; once the transform
  // stops being near the comparison is vacuous.
  bool still_near =
      rec.trace.back().nearness.kind != Nearness::Kind::NotNear;
  if (still_near && !rec.beta_before.is_infinite() &&
      !rec.beta_after.is_infinite()) {
    if (point.kind == ChartSpec::Kind::PointU2) {
      // Across a u2-centered point unit of length q the bound is
      // beta' <= beta + alpha - q, strict drop below beta when alpha < 1.
      if (!alpha_before.is_infinite()) {
        ExtRat bound = ExtRat(rec.beta_before.value() + alpha_before.value() -
                              Rat(static_cast<long>(rec.length)));
        if (rec.beta_after > bound)
          throw MonotonicityViolation(
              "beta exceeded its unit bound: " + rec.beta_after.str() + " > " +
              bound.str());
        if (alpha_before < ExtRat(Rat(1)) &&
            !(rec.beta_after < rec.beta_before))
          throw MonotonicityViolation(
              "beta must drop strictly across a u2 unit with alpha < 1");
      }
    } else {
      if (rec.beta_after > rec.beta_before)
        throw MonotonicityViolation("beta rose across a unit: " +
                                    rec.beta_before.str() + " -> " +
                                    rec.beta_after.str());
    }
    if (isolation && rec.residue_degree >= 2 &&
        !(rec.beta_after < rec.beta_before))
      throw MonotonicityViolation(
          "beta must drop strictly across a non-rational unit");
  }
  return rec;
}

std::vector<ChartSpec> near_point_charts(const Label& label) {
  if (label.e() != 2) throw BadParameters("near-point search needs e = 2");
  const FramePtr& frame = label.frame();
  const FieldPtr& field = frame->field();
  FSubset d = char_polyhedron(label);
  if (d.empty()) return {};
  Face face = delta_face(d, LinearForm::L0(2));

  // Residual of the delta-face in t = u2/u1: the product over generators of
  // their pure-u face parts, dehomogenized along u1.
  std::vector<Scalar> residual{Scalar::one(field)};
  unsigned expected_degree = 0;
  bool any = false;
  for (std::size_t i = 0; i < label.generators().size(); ++i) {
    unsigned n = label.orders()[i];
    Rat total = face.level * Rat(static_cast<long>(n));
    if (!is_integer(total)) continue;
    unsigned D = static_cast<unsigned>(total.get_num().get_ui());
    std::vector<Scalar> part(D + 1, Scalar::zero(field));
    bool nonzero = false;
    for (const auto& [e, c] : label.generators()[i].terms()) {
      if (e.deg_B() != 0 || e.deg_A() != D) continue;
      part[e.A[1]] = part[e.A[1]] + c;
      nonzero = true;
    }
    if (!nonzero) continue;
    any = true;
    expected_degree += D;
    // residual *= part
    std::vector<Scalar> next(residual.size() + part.size() - 1,
                             Scalar::zero(field));
    for (std::size_t a = 0; a < residual.size(); ++a)
      for (std::size_t b = 0; b < part.size(); ++b)
        next[a + b] = next[a + b] + residual[a] * part[b];
    residual = std::move(next);
  }
  if (!any) return {ChartSpec::point_u1(), ChartSpec::point_u2()};

  std::vector<ChartSpec> charts;
  while (!residual.empty() && residual.back().is_zero()) residual.pop_back();
  unsigned actual =
      residual.empty() ? 0 : static_cast<unsigned>(residual.size()) - 1;
  // A degree drop means the residual vanishes at (0:1), the u2-chart origin.
  if (actual < expected_degree) charts.push_back(ChartSpec::point_u2());
  // Strip the root t = 0 (the u1-chart origin) before handing the cofactor
  // to the factorizer; a constant cofactor has no further roots.
  if (!residual.empty() && residual.front().is_zero()) {
    charts.push_back(ChartSpec::point_u1());
    while (!residual.empty() && residual.front().is_zero())
      residual.erase(residual.begin());
  }
  if (residual.size() <= 1) return charts;
  for (const auto& fac : factor_univariate(residual)) {
    unsigned deg = static_cast<unsigned>(fac.factor.size()) - 1;
    if (deg == 1) {
      Scalar phi = fac.factor[0];  // root is -phi, chart shift is +phi
      if (phi.is_zero())
        charts.push_back(ChartSpec::point_u1());
      else
        charts.push_back(ChartSpec::point_translated(
            Polynomial::constant(frame, phi)));
    } else if (deg >= 2) {
      Polynomial Phi(frame);
      for (unsigned i = 0; i <= deg; ++i) {
        if (fac.factor[i].is_zero()) continue;
        ExponentPair e{std::vector<unsigned>(label.r(), 0), {deg - i, i}};
        Phi.add_term(e, fac.factor[i]);
      }
      charts.push_back(ChartSpec::point_nonrational(Phi));
    }
  }
  return charts;
}

ResolveTrace resolve_driver(const Label& label, unsigned max_units,
                            bool isolation) {
  ResolveTrace out{ResolveTrace::Outcome::MaxUnits, {}, {}};
  Label cur = label;
  std::optional<ExtRat> prev_beta;
  std::optional<Rat> prev_zeta;

  for (unsigned unit = 0; unit < max_units; ++unit) {
    auto [prepped, rep] = prep_all(cur);
    cur = prepped;
    if (rep.has_undecided) {
      out.outcome = ResolveTrace::Outcome::Inconclusive;
      out.notes.push_back("undecided solvability during preparation");
      return out;
    }
    FSubset d = char_polyhedron(cur);
    if (d.empty()) {
      out.outcome = ResolveTrace::Outcome::EmptyPolyhedron;
      return out;
    }
    if (delta_invariant(d) <= 1) {
      out.outcome = ResolveTrace::Outcome::MultiplicityDrop;
      return out;
    }

    std::optional<ChartSpec> chosen;
    std::size_t near_count = 0;
    // Permissible curves are blown up before any point: a curve center
    // (y, u_j) is permissible exactly when every polyhedron point has j-th
    // coordinate >= 1.
    if (min_coord(d, 0) >= ExtRat(Rat(1))) {
      chosen = ChartSpec::curve_u1();
      out.notes.push_back("following permissible curve (y, u1)");
    } else if (cur.e() >= 2 && min_coord(d, 1) >= ExtRat(Rat(1))) {
      chosen = ChartSpec::curve_u2();
      out.notes.push_back("following permissible curve (y, u2)");
    }
    if (!chosen)
    for (const auto& c : near_point_charts(cur)) {
      try {
        Label img = prep_all(point_chart(cur, c)).first;
        Nearness nr = classify_nearness(img, true);
        if (nr.kind != Nearness::Kind::NotNear) {
          ++near_count;
          if (!chosen) chosen = c;
        }
      } catch (const NonDivisible&) {
        // multiplicity drops in this chart: no near point there
      } catch (const UnsupportedField&) {
        out.notes.push_back("skipped non-rational chart over this field");
      }
    }
    if (!chosen) {
      out.outcome = ResolveTrace::Outcome::MultiplicityDrop;
      out.notes.push_back("no near point on the exceptional line");
      return out;
    }
    if (near_count > 1)
      out.notes.push_back("multiple near points; following " +
                          chart_name(*chosen));

    UnitRecord rec = run_unit(cur, *chosen, isolation);

    if (!rec.beta_after.is_infinite()) {
      if (prev_beta && !prev_beta->is_infinite() &&
          rec.beta_after > *prev_beta) {
        // A u2-centered unit may raise beta when a permissible curve is
        // present (alpha >= 1); run_unit enforces the applicable bound.
        if (chosen->kind != ChartSpec::Kind::PointU2)
          throw LedgerViolation("beta ledger rose");
        out.notes.push_back("beta rose across a u2 unit (alpha >= 1)");
      }
      // Lattice quantization: beta lives in (1/n_N!) Z.
      Rat q = rec.beta_after.value() * Rat(order_factorial(rec.terminal));
      if (!is_integer(q)) throw LedgerViolation("beta off the lattice");
    }

    // Zeta bookkeeping inside constant-beta stretches, when the isolation
    // consequences (alpha^O < 1, eps^O < 1) actually hold.
    try {
      FSubset bd = boundary_polyhedron(rec.terminal);
      if (!bd.empty()) {
        Invariants2 inv = invariants2(bd);
        bool iso_ok = inv.alpha < 1 && inv.eps < 1;
        if (prev_beta && !prev_beta->is_infinite() &&
            ExtRat(inv.beta) == *prev_beta && prev_zeta) {
          if (isolation && iso_ok && !(inv.zeta < *prev_zeta))
            throw LedgerViolation("zeta did not decrease at constant beta");
          if (isolation && !iso_ok)
            out.notes.push_back(
                "isolation consequences failed; zeta check skipped");
        }
        prev_zeta = inv.zeta;
        prev_beta = ExtRat(inv.beta);
      }
    } catch (const EmptyPolyhedron&) {
    }

    cur = rec.terminal;
    out.units.push_back(std::move(rec));
  }
  out.notes.push_back("unit budget exhausted");
  return out;
}

// --- probe -----------------------------------------------------------------

namespace {

Polynomial u_monomial(const FramePtr& frame, unsigned i, unsigned j,
                      const Scalar& c) {
  ExponentPair e{std::vector<unsigned>(frame->r(), 0), {i, j}};
  return Polynomial::monomial(frame, e, c);
}

// Multiplicity of the root t = -1 of the dehomogenization G(1, t) of a
// binary form G, plus the cofactor after stripping all those roots.
std::pair<unsigned, std::vector<Scalar>> strip_root_minus_one(
    std::vector<Scalar> c, const FieldPtr& field) {
  unsigned mult = 0;
  auto eval_at_minus_one = [&](const std::vector<Scalar>& v) {
    Scalar acc = Scalar::zero(field);
    Scalar x = Scalar::one(field);
    for (const auto& ci : v) {
      acc = acc + ci * x;
      x = -x;
    }
    return acc;
  };
  while (c.size() > 1 && eval_at_minus_one(c).is_zero()) {
    // synthetic division by (t + 1)
    std::vector<Scalar> q(c.size() - 1, Scalar::zero(field));
    Scalar carry = Scalar::zero(field);
    for (std::size_t i = c.size(); i-- > 1;) {
      carry = c[i] - carry;
      q[i - 1] = carry;
    }
    c = std::move(q);
    ++mult;
  }
  return {mult, c};
}

struct SeqResult {
  std::vector<ExtRat> deltas;  // index = q, starting at q = 0 (before charts)
};

// Run `count` iterations of the given chart after an optional leading chart,
// preparing the label at every stage when `prep` is set.
SeqResult run_sequence(const Polynomial& f,
                       const std::optional<ChartSpec>& leading,
                       const ChartSpec& iterate, unsigned count, bool prep) {
  SeqResult out;
  Label cur(f.frame(), {f});
  if (leading) {
    cur = point_chart(cur, *leading);
    if (prep) cur = prep_all(cur).first;
  } else if (prep) {
    cur = prep_all(cur).first;
  }
  out.deltas.push_back(delta_or_infinity(char_polyhedron(cur)));
  for (unsigned q = 1; q <= count; ++q) {
    cur = point_chart(cur, iterate);
    if (prep) cur = prep_all(cur).first;
    out.deltas.push_back(delta_or_infinity(char_polyhedron(cur)));
  }
  return out;
}

ProbeCaseReport run_case(const Polynomial& f, const Polynomial& gamma,
                         std::string name, std::string seq, unsigned p) {
  const FramePtr& frame = f.frame();
  std::optional<ChartSpec> leading;
  ChartSpec iterate = ChartSpec::point_u1();
  if (seq == "I") {
    leading = ChartSpec::point_translated(
        Polynomial::constant(frame, Scalar::one(frame->field())));
    iterate = ChartSpec::point_u1();
  } else if (seq == "II") {
    iterate = ChartSpec::point_u2();
  } else {
    iterate = ChartSpec::point_u1();
  }

  // Candidate coordinate t: rewrite f via y -> y - gamma so that the y of
  // the transformed polynomial is the candidate.
  std::map<std::string, Polynomial> img;
  img[frame->y_names()[0]] =
      Polynomial::variable(frame, frame->y_names()[0]) - gamma;
  Polynomial ft = substitute(f, img, frame);

  SeqResult zs = run_sequence(f, leading, iterate, p, true);
  SeqResult ts = run_sequence(ft, leading, iterate, p, false);

  ProbeCaseReport rep{std::move(name), std::move(seq), gamma, {}, std::nullopt};
  for (unsigned q = 0; q < zs.deltas.size(); ++q) {
    rep.steps.push_back({q, zs.deltas[q], ts.deltas[q]});
    if (!rep.first_violation && !zs.deltas[q].is_infinite() &&
        !ts.deltas[q].is_infinite() &&
        zs.deltas[q] - ts.deltas[q] > ExtRat(Rat(1)))
      rep.first_violation = q;
  }
  return rep;
}

}  // namespace

ProbeReport maximal_contact_probe(unsigned p, unsigned a, unsigned b,
                                  unsigned A, unsigned long N,
                                  const std::optional<Polynomial>& custom_gamma) {
  if (!(a > 0 && b > 0 && a < p && b < p && a + b == p && A > p && A % p != 0 &&
        N >= static_cast<unsigned long>(p) * p * A))
    throw BadParameters("probe parameters violate the construction");

  FieldPtr field = FieldSpec::prime(p);
  FramePtr frame = std::make_shared<const Frame>(
      std::vector<std::string>{"y"}, std::vector<std::string>{"u1", "u2"},
      field);
  Scalar one = Scalar::one(field);
  Polynomial y = Polynomial::variable(frame, "y");
  unsigned n = static_cast<unsigned>(N);

  Polynomial f = y.pow(p) + y * u_monomial(frame, n, n, one) +
                 u_monomial(frame, a, b, one) *
                     (u_monomial(frame, 1, 0, one) + u_monomial(frame, 0, 1, one))
                         .pow(p * A);

  ProbeReport report{f, delta_invariant(char_polyhedron(Label(frame, {f}))), {}};

  if (custom_gamma) {
    Polynomial gamma = reframe(*custom_gamma, frame);
    unsigned dmin = ~0u;
    for (const auto& [e, c] : gamma.terms()) {
      if (e.deg_B() != 0) throw BadParameters("candidate shift must be in u");
      dmin = std::min(dmin, e.deg_A());
    }
    if (gamma.is_zero() || dmin < A + 1)
      throw BadParameters("candidate shift must lie in n^(A+1)");
    // Case split on the degree-(A+1) homogeneous part.
    std::vector<Scalar> G(A + 2, Scalar::zero(field));
    bool has_part = false;
    for (const auto& [e, c] : gamma.terms())
      if (e.deg_A() == A + 1) {
        G[e.A[1]] = c;
        has_part = true;
      }
    if (!has_part) {
      report.cases.push_back(run_case(f, gamma, "C != A (Gamma = 0)", "I", p));
    } else {
      auto [C, cof] = strip_root_minus_one(G, field);
      if (C != A) {
        report.cases.push_back(run_case(f, gamma, "C != A", "I", p));
      } else {
        // cof = c1 + c2 t after stripping (u1 + u2)^A.
        Scalar c2 = cof.size() > 1 ? cof[1] : Scalar::zero(field);
        if (!c2.is_zero())
          report.cases.push_back(run_case(f, gamma, "C = A, c2 != 0", "II", p));
        else
          report.cases.push_back(run_case(f, gamma, "C = A, c1 != 0", "III", p));
      }
    }
  } else {
    Polynomial g1 = u_monomial(frame, A + 2, 0, one);
    Polynomial g2 =
        (u_monomial(frame, 1, 0, one) + u_monomial(frame, 0, 1, one)).pow(A) *
        u_monomial(frame, 0, 1, one);
    report.cases.push_back(run_case(f, g1, "C != A", "I", p));
    report.cases.push_back(run_case(f, g2, "C = A, c2 != 0", "II", p));
  }
  return report;
}

}  // namespace polyres
