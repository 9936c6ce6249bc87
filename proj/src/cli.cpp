#include <polyres/cli.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <json.hpp>

#include <polyres/blowup.hpp>
#include <polyres/errors.hpp>
#include <polyres/hilbert.hpp>
#include <polyres/prepare.hpp>
#include <polyres/resolve.hpp>

namespace polyres {

namespace {

using nlohmann::json;

// ---- lexer ----------------------------------------------------------------

struct Token {
  enum class Kind { Ident, Int, Sym, Newline, End };
  Kind kind;
  std::string text;
  int line, col;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string t, int l, int c) {
    out.push_back({k, std::move(t), l, c});
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      if (!out.empty() && out.back().kind != Token::Kind::Newline)
        push(Token::Kind::Newline, "\n", line, col);
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    int l = line, cc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_')) {
        id += text[i++];
        ++col;
      }
      push(Token::Kind::Ident, id, l, cc);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        num += text[i++];
        ++col;
      }
      push(Token::Kind::Int, num, l, cc);
      continue;
    }
    if (std::string("+-*^()=|:[],").find(c) != std::string::npos) {
      push(Token::Kind::Sym, std::string(1, c), l, cc);
      ++i;
      ++col;
      continue;
    }
    throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
  }
  push(Token::Kind::End, "", line, col);
  return out;
}

// ---- parser ---------------------------------------------------------------

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  const Token& peek() const { return t_[pos_]; }
  Token next() { return t_[pos_ < t_.size() - 1 ? pos_++ : pos_]; }
  bool at_sym(const std::string& s) const {
    return peek().kind == Token::Kind::Sym && peek().text == s;
  }
  void skip_newlines() {
    while (peek().kind == Token::Kind::Newline) next();
  }
  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(peek().line, peek().col, "expected " + expected);
  }
  Token expect_ident(const std::string& what) {
    if (peek().kind != Token::Kind::Ident) fail(what);
    return next();
  }
  Token expect_sym(const std::string& s) {
    if (!at_sym(s)) fail("'" + s + "'");
    return next();
  }
  void expect_keyword(const std::string& kw) {
    Token t = expect_ident("'" + kw + "'");
    if (t.text != kw)
      throw SyntaxError(t.line, t.col, "expected '" + kw + "'");
  }

  // Polynomial expression over the frame; "theta" names the extension
  // generator when the field is an extension.
  Polynomial parse_expr(const FramePtr& frame) {
    Polynomial acc = parse_term(frame);
    while (at_sym("+") || at_sym("-")) {
      bool minus = next().text == "-";
      Polynomial t = parse_term(frame);
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

 private:
  Polynomial parse_term(const FramePtr& frame) {
    Polynomial acc = parse_factor(frame);
    for (;;) {
      if (at_sym("*")) {
        next();
        acc = acc * parse_factor(frame);
      } else if ((peek().kind == Token::Kind::Ident && peek().text != "old" &&
                  peek().text != "new") ||
                 peek().kind == Token::Kind::Int || at_sym("(")) {
        acc = acc * parse_factor(frame);  // juxtaposition
      } else {
        return acc;
      }
    }
  }

  Polynomial parse_factor(const FramePtr& frame) {
    if (at_sym("-")) {
      next();
      return -parse_factor(frame);
    }
    Polynomial base = parse_primary(frame);
    if (at_sym("^")) {
      next();
      if (peek().kind != Token::Kind::Int) fail("exponent");
      unsigned long e = std::stoul(next().text);
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial parse_primary(const FramePtr& frame) {
    const FieldPtr& field = frame->field();
    if (peek().kind == Token::Kind::Int) {
      Token t = next();
      return Polynomial::constant(frame,
                                  Scalar::from_int(field, mpz_class(t.text)));
    }
    if (peek().kind == Token::Kind::Ident) {
      Token t = next();
      if (frame->find(t.text))
        return Polynomial::variable(frame, t.text);
      if (t.text == "theta" && field->kind() == FieldSpec::Kind::Extension)
        return Polynomial::constant(frame, theta_of(field));
      throw UndeclaredVariable(t.text + " at " + std::to_string(t.line) + ":" +
                               std::to_string(t.col));
    }
    if (at_sym("(")) {
      next();
      Polynomial e = parse_expr(frame);
      expect_sym(")");
      return e;
    }
    fail("polynomial");
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
};

// Univariate integer polynomial (for extension moduli): one free identifier.
std::vector<std::uint64_t> parse_modulus(Parser& p, std::uint64_t prime) {
  // Parse over a throwaway frame Q[T] where T is whatever identifier occurs.
  // Two passes are avoided by accepting any single identifier lazily: use a
  // frame with a placeholder and rename on first sight is overkill; instead
  // collect the bracketed tokens and re-lex with the seen identifier.
  std::vector<Token> inner;
  int depth = 1;
  while (depth > 0) {
    if (p.peek().kind == Token::Kind::End) p.fail("']'");
    if (p.at_sym("[")) ++depth;
    if (p.at_sym("]")) {
      --depth;
      if (depth == 0) {
        p.next();
        break;
      }
    }
    inner.push_back(p.next());
  }
  std::string var;
  for (const auto& t : inner)
    if (t.kind == Token::Kind::Ident) {
      var = t.text;
      break;
    }
  if (var.empty()) var = "T";
  inner.push_back({Token::Kind::End, "", 0, 0});
  FramePtr uf = std::make_shared<const Frame>(
      std::vector<std::string>{"_"}, std::vector<std::string>{var},
      FieldSpec::rationals());
  Parser sub(std::move(inner));
  Polynomial m = sub.parse_expr(uf);
  unsigned deg = 0;
  for (const auto& [e, c] : m.terms()) deg = std::max(deg, e.A[0]);
  std::vector<std::uint64_t> coeffs(deg + 1, 0);
  for (const auto& [e, c] : m.terms()) {
    Rat q = c.rat_value();
    if (!is_integer(q)) throw BadParameters("modulus coefficients must be integers");
    mpz_class v = q.get_num() % mpz_class(static_cast<unsigned long>(prime));
    if (v < 0) v += static_cast<unsigned long>(prime);
    coeffs[e.A[0]] = v.get_ui();
  }
  return coeffs;
}

}  // namespace

JobFile parse_job(const std::string& text) {
  Parser p(lex(text));
  JobFile job;
  p.skip_newlines();

  p.expect_keyword("field");
  Token ft = p.expect_ident("field name");
  if (ft.text == "Q") {
    job.field = FieldSpec::rationals();
  } else if (ft.text.rfind("F_", 0) == 0) {
    std::string digits = ft.text.substr(2);
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw SyntaxError(ft.line, ft.col, "expected F_<prime>");
    std::uint64_t prime = std::stoull(digits);
    if (p.at_sym("[")) {
      p.next();
      job.field = FieldSpec::extension(prime, parse_modulus(p, prime));
    } else {
      job.field = FieldSpec::prime(prime);
    }
  } else {
    throw SyntaxError(ft.line, ft.col, "expected Q or F_<prime>");
  }
  p.skip_newlines();

  p.expect_keyword("vars");
  std::vector<std::string> ys, us;
  while (p.peek().kind == Token::Kind::Ident) ys.push_back(p.next().text);
  if (ys.empty()) p.fail("variable name");
  p.expect_sym("|");
  while (p.peek().kind == Token::Kind::Ident) us.push_back(p.next().text);
  if (us.empty()) p.fail("variable name after '|'");
  job.frame = std::make_shared<const Frame>(ys, us, job.field);
  p.skip_newlines();

  while (p.peek().kind != Token::Kind::End) {
    Token head = p.expect_ident("statement");
    if (head.text == "boundary") {
      Token id = p.expect_ident("boundary name");
      p.expect_sym(":");
      Polynomial g = p.parse_expr(job.frame);
      Token age = p.expect_ident("'old' or 'new'");
      if (age.text != "old" && age.text != "new")
        throw SyntaxError(age.line, age.col, "expected 'old' or 'new'");
      job.boundary.push_back({g, id.text, age.text == "old"});
    } else {
      p.expect_sym("=");
      job.generators.emplace_back(head.text, p.parse_expr(job.frame));
    }
    p.skip_newlines();
  }
  if (job.generators.empty())
    throw SyntaxError(p.peek().line, p.peek().col, "expected a generator");
  return job;
}

Polynomial parse_poly(const std::string& text, const FramePtr& frame) {
  Parser p(lex(text));
  p.skip_newlines();
  Polynomial r = p.parse_expr(frame);
  p.skip_newlines();
  if (p.peek().kind != Token::Kind::End) p.fail("end of expression");
  return r;
}

Label JobFile::to_label() const {
  std::vector<Polynomial> gens;
  for (const auto& [n, g] : generators) gens.push_back(g);
  return Label(frame, gens, boundary);
}

namespace {

// Job-file rendering of a polynomial: coefficients containing '+' are
// parenthesized so the canonical form re-parses.
std::string poly_text(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    if (!first) os << " + ";
    first = false;
    std::string cs = c.str();
    bool printed = false;
    if (cs != "1" || (e.deg_B() == 0 && e.deg_A() == 0)) {
      if (cs.find('+') != std::string::npos || cs.find('-') != std::string::npos)
        cs = "(" + cs + ")";
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
    for (std::size_t i = 0; i < e.B.size(); ++i)
      emit(f.frame()->y_names()[i], e.B[i]);
    for (std::size_t i = 0; i < e.A.size(); ++i)
      emit(f.frame()->u_names()[i], e.A[i]);
  }
  return os.str();
}

std::string field_text(const FieldPtr& f) {
  switch (f->kind()) {
    case FieldSpec::Kind::Rationals: return "Q";
    case FieldSpec::Kind::Prime: return "F_" + std::to_string(f->p());
    case FieldSpec::Kind::Extension: {
      std::string s = "F_" + std::to_string(f->p()) + "[";
      const auto& m = f->modulus();
      bool first = true;
      for (std::size_t i = m.size(); i-- > 0;) {
        if (m[i] == 0) continue;
        if (!first) s += " + ";
        first = false;
        if (i == 0 || m[i] != 1) s += std::to_string(m[i]);
        if (i >= 1) {
          if (m[i] != 1) s += "*";
          s += "T";
          if (i >= 2) s += "^" + std::to_string(i);
        }
      }
      return s + "]";
    }
  }
  return "?";
}

}  // namespace

std::string JobFile::print() const {
  std::ostringstream os;
  os << "field " << field_text(field) << "\n";
  os << "vars";
  for (const auto& y : frame->y_names()) os << " " << y;
  os << " |";
  for (const auto& u : frame->u_names()) os << " " << u;
  os << "\n";
  for (const auto& [n, g] : generators) os << n << " = " << poly_text(g) << "\n";
  for (const auto& b : boundary)
    os << "boundary " << b.id << " : " << poly_text(b.gen) << " "
       << (b.old ? "old" : "new") << "\n";
  return os.str();
}

// ---- JSON helpers ---------------------------------------------------------

namespace {

json point_json(const QPoint& p) {
  json a = json::array();
  for (const auto& c : p) a.push_back(to_string(c));
  return a;
}

json fsubset_json(const FSubset& d) {
  json o;
  o["vertices"] = json::array();
  for (const auto& v : d.vertices()) o["vertices"].push_back(point_json(v));
  o["delta"] = delta_or_infinity(d).str();
  return o;
}

json invariants_json(const FSubset& d) {
  Invariants2 in = invariants2(d);
  json o;
  o["alpha"] = to_string(in.alpha);
  o["beta"] = to_string(in.beta);
  o["delta"] = to_string(in.delta);
  o["gamma_plus"] = to_string(in.gamma_plus);
  o["gamma_minus"] = to_string(in.gamma_minus);
  o["eps"] = to_string(in.eps);
  o["zeta"] = to_string(in.zeta);
  o["v"] = point_json(in.v);
  o["w_plus"] = point_json(in.w_plus);
  o["w_minus"] = point_json(in.w_minus);
  return o;
}

json label_json(const Label& label) {
  json o;
  o["field"] = field_text(label.frame()->field());
  o["generators"] = json::array();
  for (const auto& g : label.generators()) o["generators"].push_back(poly_text(g));
  json orders = json::array();
  for (unsigned n : label.orders()) orders.push_back(n);
  o["orders"] = orders;
  o["boundary"] = json::array();
  for (const auto& b : label.boundary()) {
    json bo;
    bo["id"] = b.id;
    bo["generator"] = poly_text(b.gen);
    bo["age"] = b.old ? "old" : "new";
    o["boundary"].push_back(bo);
  }
  return o;
}

// Integer pixel coordinate for an exact rational (round half up), no floats.
long px(const Rat& v, long scale) {
  return static_cast<long>(floor_z(v * scale + Rat(1, 2)).get_si());
}

std::string plot_svg(const FSubset& d) {
  Rat maxc = 1;
  for (const auto& v : d.vertices())
    for (const auto& c : v) maxc = std::max(maxc, c);
  Rat delta = d.empty() ? Rat(0) : delta_invariant(d);
  maxc = std::max(maxc, delta) + 1;
  const long scale = 400 / std::max<long>(1, floor_z(maxc).get_si());
  const long w = px(maxc, scale) + 60, h = px(maxc, scale) + 60;
  auto X = [&](const Rat& x) { return 40 + px(x, scale); };
  auto Y = [&](const Rat& y) { return h - 40 - px(y, scale); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\">\n";
  os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(maxc)
     << "\" y2=\"" << Y(0) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(0)
     << "\" y2=\"" << Y(maxc) << "\" stroke=\"black\"/>\n";
  if (!d.empty()) {
    // delta line of slope -1 through (delta, 0) and (0, delta)
    os << "<line x1=\"" << X(delta) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(0)
       << "\" y2=\"" << Y(delta)
       << "\" stroke=\"gray\" stroke-dasharray=\"4\"/>\n";
    std::vector<QPoint> vs = d.vertices();
    for (const auto& v : vs)
      os << "<circle cx=\"" << X(v[0]) << "\" cy=\"" << Y(v[1])
         << "\" r=\"4\" fill=\"red\"/>\n";
    for (std::size_t i = 0; i + 1 < vs.size(); ++i)
      os << "<line x1=\"" << X(vs[i][0]) << "\" y1=\"" << Y(vs[i][1])
         << "\" x2=\"" << X(vs[i + 1][0]) << "\" y2=\"" << Y(vs[i + 1][1])
         << "\" stroke=\"red\"/>\n";
    if (d.dim() == 2) {
      Invariants2 in = invariants2(d);
      os << "<text x=\"" << (w - 180) << "\" y=\"20\">alpha = "
         << to_string(in.alpha) << ", beta = " << to_string(in.beta)
         << "</text>\n";
      os << "<text x=\"" << (w - 180)
         << "\" y=\"38\">gamma+ = " << to_string(in.gamma_plus)
         << ", gamma- = " << to_string(in.gamma_minus) << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string plot_ascii(const FSubset& d) {
  const long W = 57, H = 19;
  Rat maxc = 1;
  for (const auto& v : d.vertices())
    for (const auto& c : v) maxc = std::max(maxc, c);
  Rat delta = d.empty() ? Rat(0) : delta_invariant(d);
  maxc = std::max(maxc, delta) + 1;
  std::vector<std::string> grid(H, std::string(W, ' '));
  auto C = [&](const Rat& x) {
    return static_cast<std::size_t>(px(x / maxc * (W - 1), 1));
  };
  auto R = [&](const Rat& y) {
    return static_cast<std::size_t>(H - 1 - px(y / maxc * (H - 1), 1));
  };
  for (long i = 0; i < W; ++i) grid[H - 1][static_cast<std::size_t>(i)] = '-';
  for (long i = 0; i < H; ++i) grid[static_cast<std::size_t>(i)][0] = '|';
  grid[H - 1][0] = '+';
  if (!d.empty()) {
    // delta line
    for (long i = 0; i <= 32; ++i) {
      Rat x = delta * Rat(i, 32);
      Rat y = delta - x;
      std::size_t r = R(y), c = C(x);
      if (grid[r][c] == ' ') grid[r][c] = '.';
    }
    for (const auto& v : d.vertices()) grid[R(v[1])][C(v[0])] = '*';
  }
  std::ostringstream os;
  for (const auto& row : grid) os << row << "\n";
  if (!d.empty() && d.dim() == 2) {
    Invariants2 in = invariants2(d);
    os << "alpha=" << to_string(in.alpha) << " beta=" << to_string(in.beta)
       << " gamma+=" << to_string(in.gamma_plus)
       << " gamma-=" << to_string(in.gamma_minus)
       << " delta=" << to_string(in.delta) << "\n";
  }
  return os.str();
}

void attach_plot(json& o, const FSubset& d, const std::string& mode) {
  if (mode == "svg")
    o["plot"] = plot_svg(d);
  else if (mode == "ascii")
    o["plot"] = plot_ascii(d);
  else if (!mode.empty())
    throw BadParameters("unknown plot mode: " + mode);
}

json trace_step_json(const TraceStep& st) {
  json o;
  o["chart"] = st.chart;
  switch (st.nearness.kind) {
    case Nearness::Kind::NotNear: o["nearness"] = "not-near"; break;
    case Nearness::Kind::Near: o["nearness"] = "near"; break;
    case Nearness::Kind::VeryNear: o["nearness"] = "very-near"; break;
  }
  o["delta"] = st.delta.str();
  json n = json::array();
  for (unsigned x : st.orders) n.push_back(x);
  o["orders"] = n;
  o["extension_degree"] = st.ext_degree;
  o["polyhedron"] = fsubset_json(char_polyhedron(st.label));
  return o;
}

json unit_json(const UnitRecord& u) {
  json o;
  o["length"] = u.length;
  o["beta_before"] = u.beta_before.str();
  o["beta_after"] = u.beta_after.str();
  o["residue_degree"] = u.residue_degree;
  o["trace"] = json::array();
  for (const auto& st : u.trace) o["trace"].push_back(trace_step_json(st));
  return o;
}

ChartSpec parse_chart(const std::string& spec, const FramePtr& frame) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "point-u1") return ChartSpec::point_u1();
  if (kind == "point-u2") return ChartSpec::point_u2();
  if (kind == "curve-u1") return ChartSpec::curve_u1();
  if (kind == "point-translated")
    return ChartSpec::point_translated(parse_poly(arg, frame));
  if (kind == "point-nonrational")
    return ChartSpec::point_nonrational(parse_poly(arg, frame));
  throw BadParameters("unknown chart: " + spec);
}

CommandResult finish(int code, const json& o) {
  return {code, o.dump(2) + "\n"};
}

CommandResult cmd_polyhedron(const JobFile& job, const DispatchOptions& opts) {
  Label label = job.to_label();
  FSubset d = char_polyhedron(label);
  json o = fsubset_json(d);
  if (!d.empty() && d.dim() == 2) o["invariants"] = invariants_json(d);
  json ess = json::array();
  for (const auto& p : essential_points(label)) ess.push_back(point_json(p));
  o["essential_points"] = ess;
  if (!label.boundary().empty()) {
    FSubset bd = boundary_polyhedron(label);
    o["boundary_polyhedron"] = fsubset_json(bd);
    if (!bd.empty() && bd.dim() == 2)
      o["boundary_invariants"] = invariants_json(bd);
  }
  attach_plot(o, d, opts.plot);
  return finish(0, o);
}

CommandResult cmd_prepare(const JobFile& job, const DispatchOptions& opts) {
  Label label = job.to_label();
  Rat M;
  if (opts.M) {
    M = *opts.M;
  } else {
    M = 1;
    FSubset d0 = char_polyhedron(label);
    for (const auto& v : d0.vertices()) M = std::max(M, Rat(coord_sum(v) + 1));
  }
  auto [out, rep] = prepare(label, M);
  json o;
  o["M"] = to_string(M);
  o["steps"] = json::array();
  for (const auto& st : rep.steps) {
    json s;
    s["vertex"] = point_json(st.vertex);
    switch (st.action) {
      case PrepStep::Action::Normalized: s["action"] = "normalized"; break;
      case PrepStep::Action::Dissolved: s["action"] = "dissolved"; break;
      case PrepStep::Action::AlreadyPrepared: s["action"] = "already-prepared"; break;
      case PrepStep::Action::Undecided: s["action"] = "undecided"; break;
    }
    if (st.action == PrepStep::Action::Dissolved) {
      json l = json::array();
      for (const auto& x : st.lambda) l.push_back(x.str());
      s["lambda"] = l;
    }
    o["steps"].push_back(s);
  }
  o["label"] = label_json(out);
  FSubset d = char_polyhedron(out);
  o["polyhedron"] = fsubset_json(d);
  attach_plot(o, d, opts.plot);
  return finish(rep.has_undecided ? 2 : 0, o);
}

CommandResult cmd_blowup(const JobFile& job, const DispatchOptions& opts) {
  Label label = job.to_label();
  ChartSpec chart = parse_chart(opts.chart, job.frame);
  Label out = chart.kind == ChartSpec::Kind::CurveU1 ? curve_chart(label)
                                                     : point_chart(label, chart);
  json o;
  o["chart"] = opts.chart;
  o["label"] = label_json(out);
  FSubset d = char_polyhedron(out);
  o["polyhedron"] = fsubset_json(d);
  Nearness nr = classify_nearness(out, false);
  o["nearness"] = nr.kind == Nearness::Kind::VeryNear ? "very-near"
                  : nr.kind == Nearness::Kind::Near   ? "near"
                                                      : "not-near";
  attach_plot(o, d, opts.plot);
  return finish(0, o);
}

CommandResult cmd_resolve(const JobFile& job, const DispatchOptions& opts) {
  Label label = job.to_label();
  ResolveTrace tr = resolve_driver(label, opts.max_units, opts.isolation);
  json o;
  switch (tr.outcome) {
    case ResolveTrace::Outcome::MultiplicityDrop: o["outcome"] = "multiplicity-drop"; break;
    case ResolveTrace::Outcome::EmptyPolyhedron: o["outcome"] = "empty-polyhedron"; break;
    case ResolveTrace::Outcome::MaxUnits: o["outcome"] = "max-units"; break;
    case ResolveTrace::Outcome::Inconclusive: o["outcome"] = "inconclusive"; break;
  }
  o["units"] = json::array();
  for (const auto& u : tr.units) o["units"].push_back(unit_json(u));
  o["notes"] = tr.notes;
  int code = (tr.outcome == ResolveTrace::Outcome::MultiplicityDrop ||
              tr.outcome == ResolveTrace::Outcome::EmptyPolyhedron)
                 ? 0
                 : 2;
  return finish(code, o);
}

CommandResult cmd_fundamental(const JobFile& job, const DispatchOptions&) {
  Label label = job.to_label();
  FundamentalSequence fs = fundamental_sequence(label);
  json o;
  if (fs.infinite) {
    o["diagnostic"] = "empty polyhedron: resolved or singular curve";
    return finish(2, o);
  }
  o["m"] = fs.m;
  o["trace"] = json::array();
  for (const auto& st : fs.trace) o["trace"].push_back(trace_step_json(st));
  return finish(0, o);
}

CommandResult cmd_hilbert(const DispatchOptions& opts) {
  if (opts.vars.empty()) throw BadParameters("hilbert needs --vars");
  std::vector<std::string> names;
  std::stringstream vs(opts.vars);
  std::string item;
  while (std::getline(vs, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  // The frame type always carries a y-block; park an unused placeholder there.
  FramePtr frame = std::make_shared<const Frame>(
      std::vector<std::string>{"_"}, names, FieldSpec::rationals());
  std::vector<std::vector<unsigned>> gens;
  if (!opts.ideal.empty()) {
    std::stringstream is(opts.ideal);
    while (std::getline(is, item, ',')) {
      Polynomial m = parse_poly(item, frame);
      if (m.term_count() != 1 || !(*m.terms().begin()).second.is_one() ||
          (*m.terms().begin()).first.deg_B() != 0)
        throw BadParameters("ideal entries must be monic monomials");
      gens.push_back((*m.terms().begin()).first.A);
    }
  }
  HilbertFunction h = hf_monomial(gens, names.size());
  if (opts.iterate > 0) h = iterate_sum(h, opts.iterate);
  json o;
  o["H"] = json::array();
  for (const auto& v : h.values) o["H"].push_back(v.get_str());
  o["P"] = h.tail.str();
  if (!h.tail.is_zero()) {
    json a = json::array();
    for (unsigned x : decompose(h.tail).a) a.push_back(x);
    o["a"] = a;
  }
  return finish(0, o);
}

CommandResult cmd_probe(const DispatchOptions& opts) {
  std::optional<Polynomial> candidate;
  if (!opts.candidate.empty()) {
    FieldPtr field = FieldSpec::prime(opts.p);
    FramePtr frame = std::make_shared<const Frame>(
        std::vector<std::string>{"y"}, std::vector<std::string>{"u1", "u2"},
        field);
    candidate = parse_poly(opts.candidate, frame);
  }
  ProbeReport rep =
      maximal_contact_probe(opts.p, opts.a, opts.b, opts.A, opts.N, candidate);
  json o;
  o["f"] = poly_text(rep.f);
  o["delta"] = to_string(rep.delta0);
  o["cases"] = json::array();
  bool all_violate = true;
  for (const auto& c : rep.cases) {
    json co;
    co["name"] = c.name;
    co["sequence"] = c.sequence;
    co["gamma"] = poly_text(c.gamma);
    co["steps"] = json::array();
    for (const auto& st : c.steps) {
      json so;
      so["q"] = st.q;
      so["delta_prepared"] = st.delta_z.str();
      so["delta_candidate"] = st.delta_t.str();
      if (!st.delta_z.is_infinite() && !st.delta_t.is_infinite())
        so["sigma"] = (st.delta_z - st.delta_t).str();
      co["steps"].push_back(so);
    }
    if (c.first_violation)
      co["first_violation_q"] = *c.first_violation;
    else
      all_violate = false;
    o["cases"].push_back(co);
  }
  o["certified"] = all_violate;
  return finish(all_violate ? 0 : 2, o);
}

}  // namespace

CommandResult dispatch(const std::string& command,
                       const std::optional<JobFile>& job,
                       const DispatchOptions& opts) {
  if (command == "hilbert") return cmd_hilbert(opts);
  if (command == "probe-max-contact") return cmd_probe(opts);
  if (!job) throw BadParameters("command '" + command + "' needs a job file");
  if (command == "polyhedron") return cmd_polyhedron(*job, opts);
  if (command == "prepare") return cmd_prepare(*job, opts);
  if (command == "blowup") return cmd_blowup(*job, opts);
  if (command == "resolve") return cmd_resolve(*job, opts);
  if (command == "fundamental") return cmd_fundamental(*job, opts);
  throw BadParameters("unknown command: " + command);
}

}  // namespace polyres
