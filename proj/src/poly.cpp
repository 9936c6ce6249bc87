#include <polyres/poly.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <polyres/errors.hpp>

namespace polyres {

// ---- Frame ----------------------------------------------------------------

Frame::Frame(std::vector<std::string> y_names, std::vector<std::string> u_names,
             FieldPtr field)
    : y_names_(std::move(y_names)), u_names_(std::move(u_names)), field_(std::move(field)) {
  if (y_names_.empty() || u_names_.empty())
    throw BadParameters("a frame needs at least one y- and one u-variable");
  std::set<std::string> seen;
  for (const auto& n : y_names_)
    if (!seen.insert(n).second) throw BadParameters("duplicate variable " + n);
  for (const auto& n : u_names_)
    if (!seen.insert(n).second) throw BadParameters("duplicate variable " + n);
}

std::optional<std::pair<bool, std::size_t>> Frame::find(const std::string& name) const {
  for (std::size_t i = 0; i < y_names_.size(); ++i)
    if (y_names_[i] == name) return std::make_pair(true, i);
  for (std::size_t i = 0; i < u_names_.size(); ++i)
    if (u_names_[i] == name) return std::make_pair(false, i);
  return std::nullopt;
}

// ---- ExponentPair / LinearForm -------------------------------------------

unsigned ExponentPair::deg_B() const {
  return std::accumulate(B.begin(), B.end(), 0u);
}
unsigned ExponentPair::deg_A() const {
  return std::accumulate(A.begin(), A.end(), 0u);
}

LinearForm::LinearForm(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw BadParameters("empty linear form");
  bool nonzero = false;
  for (const auto& x : c_) {
    if (x < 0) throw BadParameters("linear form must be semi-positive");
    if (x > 0) nonzero = true;
  }
  if (!nonzero) throw BadParameters("linear form must be nonzero");
}

LinearForm LinearForm::L0(std::size_t e) {
  return LinearForm(std::vector<Rat>(e, Rat(1)));
}

bool LinearForm::positive() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return x > 0; });
}

Rat LinearForm::apply(const QPoint& a) const {
  if (a.size() != c_.size()) throw WrongDimension("linear form vs point");
  Rat s = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * a[i];
  return s;
}

Rat LinearForm::apply(const std::vector<unsigned>& a) const {
  if (a.size() != c_.size()) throw WrongDimension("linear form vs exponent");
  Rat s = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * static_cast<long>(a[i]);
  return s;
}

// ---- Polynomial basics ----------------------------------------------------

Polynomial Polynomial::constant(const FramePtr& f, const Scalar& c) {
  Polynomial p(f);
  ExponentPair e{std::vector<unsigned>(f->r(), 0), std::vector<unsigned>(f->e(), 0)};
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::variable(const FramePtr& f, const std::string& name) {
  auto pos = f->find(name);
  if (!pos) throw UndeclaredVariable(name);
  ExponentPair e{std::vector<unsigned>(f->r(), 0), std::vector<unsigned>(f->e(), 0)};
  if (pos->first)
    e.B[pos->second] = 1;
  else
    e.A[pos->second] = 1;
  return monomial(f, e, Scalar::one(f->field()));
}

Polynomial Polynomial::monomial(const FramePtr& f, const ExponentPair& e, const Scalar& c) {
  if (e.B.size() != f->r() || e.A.size() != f->e())
    throw FrameMismatch("exponent block lengths");
  Polynomial p(f);
  p.add_term(e, c);
  return p;
}

void Polynomial::add_term(const ExponentPair& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (!(*frame_ == *o.frame_)) throw FrameMismatch("polynomial addition");
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(frame_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::scaled(const Scalar& c) const {
  Polynomial r(frame_);
  if (c.is_zero()) return r;
  for (const auto& [e, k] : terms_) {
    Scalar v = k * c;
    if (!v.is_zero()) r.terms_.emplace(e, v);
  }
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (!(*frame_ == *o.frame_)) throw FrameMismatch("polynomial multiplication");
  Polynomial r(frame_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      ExponentPair e = ea;
      for (std::size_t i = 0; i < e.B.size(); ++i) e.B[i] += eb.B[i];
      for (std::size_t i = 0; i < e.A.size(); ++i) e.A[i] += eb.A[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial acc = constant(frame_, Scalar::one(frame_->field()));
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1u) acc = acc * base;
    base = base * base;
    n >>= 1u;
  }
  return acc;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool printed = false;
    std::string cs = c.str();
    if (cs != "1" || (e.deg_B() == 0 && e.deg_A() == 0)) {
      os << cs;
      printed = true;
    }
    auto emit = [&](const std::string& name, unsigned k) {
      if (k == 0) return;
      if (printed) os << "*";
      os << name;
      if (k > 1) os << "^" << k;
      printed = true;
    };
    for (std::size_t i = 0; i < e.B.size(); ++i) emit(frame_->y_names()[i], e.B[i]);
    for (std::size_t i = 0; i < e.A.size(); ++i) emit(frame_->u_names()[i], e.A[i]);
  }
  return os.str();
}

// ---- valuations and initial forms ----------------------------------------

ExtRat order_mod_u(const Polynomial& f) {
  ExtRat best = ExtRat::infinity();
  for (const auto& [e, c] : f.terms()) {
    if (e.deg_A() != 0) continue;
    ExtRat d{Rat(static_cast<long>(e.deg_B()))};
    if (d < best) best = d;
  }
  return best;
}

unsigned order_mod_u_finite(const Polynomial& f) {
  ExtRat n = order_mod_u(f);
  if (n.is_infinite()) throw Error("order mod <u> is infinite");
  return static_cast<unsigned>(n.value().get_num().get_ui());
}

ExtRat valuation(const Polynomial& f, const LinearForm& L) {
  ExtRat best = ExtRat::infinity();
  for (const auto& [e, c] : f.terms()) {
    ExtRat v{Rat(static_cast<long>(e.deg_B())) + L.apply(e.A)};
    if (v < best) best = v;
  }
  return best;
}

ExtRat multiplicity(const Polynomial& f) {
  ExtRat best = ExtRat::infinity();
  for (const auto& [e, c] : f.terms()) {
    ExtRat v{Rat(static_cast<long>(e.total()))};
    if (v < best) best = v;
  }
  return best;
}

ExtRat order_along_curve(const Polynomial& f, std::size_t u_idx) {
  ExtRat best = ExtRat::infinity();
  for (const auto& [e, c] : f.terms()) {
    ExtRat v{Rat(static_cast<long>(e.deg_B() + e.A[u_idx]))};
    if (v < best) best = v;
  }
  return best;
}

Polynomial initial_zero(const Polynomial& f) {
  const unsigned n = order_mod_u_finite(f);
  Polynomial r(f.frame());
  for (const auto& [e, c] : f.terms())
    if (e.deg_A() == 0 && e.deg_B() == n) r.add_term(e, c);
  return r;
}

Polynomial initial_at_vertex(const Polynomial& f, const QPoint& v) {
  const unsigned n = order_mod_u_finite(f);
  if (v.size() != f.frame()->e()) throw WrongDimension("vertex vs frame");
  Polynomial r = initial_zero(f);
  for (const auto& [e, c] : f.terms()) {
    const unsigned db = e.deg_B();
    if (db >= n || e.deg_A() == 0) continue;
    // The term lies over v iff A/(n - |B|) == v coordinatewise.
    bool at_v = true;
    const long denom = static_cast<long>(n - db);
    for (std::size_t i = 0; i < v.size() && at_v; ++i) {
      Rat q(static_cast<long>(e.A[i]), denom);
      q.canonicalize();
      at_v = (q == v[i]);
    }
    if (at_v) r.add_term(e, c);
  }
  return r;
}

Polynomial initial_on_face(const Polynomial& f, const LinearForm& L,
                           const std::optional<Rat>& level) {
  if (!L.positive()) throw UnboundedFace("face slope must be positive");
  const unsigned n = order_mod_u_finite(f);
  // delta_L over the polyhedron points of f.
  Rat delta;
  bool have = false;
  if (level) {
    delta = *level;
    have = true;
  } else {
    for (const auto& [e, c] : f.terms()) {
      const unsigned db = e.deg_B();
      if (db >= n) continue;
      Rat val = L.apply(e.A) / static_cast<long>(n - db);
      if (!have || val < delta) {
        delta = val;
        have = true;
      }
    }
  }
  Polynomial r = initial_zero(f);
  if (!have) return r;
  for (const auto& [e, c] : f.terms()) {
    const unsigned db = e.deg_B();
    if (db >= n || e.deg_A() == 0) continue;
    if (L.apply(e.A) == delta * static_cast<long>(n - db)) r.add_term(e, c);
  }
  return r;
}

Polynomial initial_origin(const Polynomial& f) {
  ExtRat m = multiplicity(f);
  if (m.is_infinite()) return Polynomial::zero(f.frame());
  const unsigned n = static_cast<unsigned>(m.value().get_num().get_ui());
  Polynomial r(f.frame());
  for (const auto& [e, c] : f.terms())
    if (e.total() == n) r.add_term(e, c);
  return r;
}

Polynomial initial_form(const Polynomial& f, const InitialSelector& sel) {
  switch (sel.kind) {
    case InitialSelector::Kind::Zero: return initial_zero(f);
    case InitialSelector::Kind::Vertex: return initial_at_vertex(f, sel.v);
    case InitialSelector::Kind::Form:
    case InitialSelector::Kind::Face: return initial_on_face(f, sel.L, sel.level);
  }
  throw Error("unreachable selector");
}

// ---- substitution / division / reframe -----------------------------------

Polynomial substitute(const Polynomial& f,
                      const std::map<std::string, Polynomial>& images,
                      const FramePtr& target) {
  const FramePtr& src = f.frame();
  for (const auto& [name, img] : images)
    if (!(*img.frame() == *target)) throw FrameMismatch("image of " + name);

  // Image of every source variable, as a polynomial over the target frame.
  std::vector<Polynomial> y_img(src->r()), u_img(src->e());
  auto image_of = [&](const std::string& name) {
    auto it = images.find(name);
    if (it != images.end()) return it->second;
    return Polynomial::variable(target, name);  // pass-through
  };
  for (std::size_t i = 0; i < src->r(); ++i) y_img[i] = image_of(src->y_names()[i]);
  for (std::size_t i = 0; i < src->e(); ++i) u_img[i] = image_of(src->u_names()[i]);

  // Power caches to keep the expansion near-linear in the term count.
  std::vector<std::vector<Polynomial>> y_pow(src->r()), u_pow(src->e());
  auto power = [&](std::vector<Polynomial>& cache, const Polynomial& base, unsigned k) {
    if (cache.empty())
      cache.push_back(Polynomial::constant(target, Scalar::one(target->field())));
    while (cache.size() <= k) cache.push_back(cache.back() * base);
    return cache[k];
  };

  Polynomial out(target);
  const FieldPtr tf = target->field();
  const bool field_changed = !(*src->field() == *tf);
  for (const auto& [e, c] : f.terms()) {
    Polynomial term =
        Polynomial::constant(target, field_changed ? embed(c, tf) : c);
    for (std::size_t i = 0; i < src->r(); ++i)
      if (e.B[i]) term = term * power(y_pow[i], y_img[i], e.B[i]);
    for (std::size_t i = 0; i < src->e(); ++i)
      if (e.A[i]) term = term * power(u_pow[i], u_img[i], e.A[i]);
    out = out + term;
  }
  return out;
}

Polynomial divide_u_power(const Polynomial& f, std::size_t u_idx, unsigned m) {
  if (u_idx >= f.frame()->e()) throw BadIndex("u index");
  Polynomial r(f.frame());
  for (const auto& [e, c] : f.terms()) {
    if (e.A[u_idx] < m)
      throw NonDivisible("term has " + f.frame()->u_names()[u_idx] + "-exponent " +
                         std::to_string(e.A[u_idx]) + " < " + std::to_string(m));
    ExponentPair d = e;
    d.A[u_idx] -= m;
    r.add_term(d, c);
  }
  return r;
}

Polynomial reframe(const Polynomial& f, const FramePtr& target) {
  Polynomial r(target);
  const bool field_changed = !(*f.frame()->field() == *target->field());
  for (const auto& [e, c] : f.terms()) {
    ExponentPair d{std::vector<unsigned>(target->r(), 0),
                   std::vector<unsigned>(target->e(), 0)};
    auto move_block = [&](const std::vector<std::string>& names,
                          const std::vector<unsigned>& exps) {
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (exps[i] == 0) continue;
        auto pos = target->find(names[i]);
        if (!pos) throw FrameMismatch("variable " + names[i] + " absent from target frame");
        (pos->first ? d.B[pos->second] : d.A[pos->second]) += exps[i];
      }
    };
    move_block(f.frame()->y_names(), e.B);
    move_block(f.frame()->u_names(), e.A);
    r.add_term(d, field_changed ? embed(c, target->field()) : c);
  }
  return r;
}

std::vector<QPoint> polyhedron_points(const Polynomial& f) {
  std::vector<QPoint> pts;
  ExtRat nx = order_mod_u(f);
  if (nx.is_infinite()) return pts;
  const unsigned n = static_cast<unsigned>(nx.value().get_num().get_ui());
  for (const auto& [e, c] : f.terms()) {
    const unsigned db = e.deg_B();
    if (db >= n) continue;
    QPoint p(f.frame()->e());
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = Rat(static_cast<long>(e.A[i]), static_cast<long>(n - db));
      p[i].canonicalize();
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace polyres
