#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <regex>
#include <string>

#include <json.hpp>

#include <polyres/cli.hpp>
#include <polyres/errors.hpp>
#include <polyres/prepare.hpp>

#include "helpers.hpp"

using namespace polyres;
using namespace polyres::testing;
using nlohmann::json;

namespace {

const char* kSurfaceJob =
    "field F_3\n"
    "vars y | u1 u2\n"
    "f = y^3 + y*u1^36*u2^36 + u1^2*u2*(u1+u2)^12\n";

json run(const std::string& command, const std::string& job_text,
         DispatchOptions opts = {}, int expect_code = 0) {
  std::optional<JobFile> job;
  if (!job_text.empty()) job = parse_job(job_text);
  CommandResult r = dispatch(command, job, opts);
  CHECK(r.exit_code == expect_code);
  // Exact arithmetic end to end: no floating-point literal ever appears.
  static const std::regex float_re("[0-9]\\.[0-9]|[0-9]e[+-][0-9]", std::regex::icase);
  CHECK_FALSE(std::regex_search(r.output, float_re));
  return json::parse(r.output);
}

int run_binary(const std::string& args) {
  int rc = std::system(("./charpoly " + args + " > /dev/null 2>&1").c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = std::string(::getenv("TMPDIR") ? ::getenv("TMPDIR") : "/tmp") +
                     "/" + name;
  std::ofstream out(path);
  out << text;
  return path;
}

}  // namespace

TEST_CASE("job files parse into labels") {
  JobFile j = parse_job(kSurfaceJob);
  CHECK(j.field->p() == 3);
  CHECK(j.field->degree() == 1);
  CHECK(j.frame->y_names() == std::vector<std::string>{"y"});
  CHECK(j.frame->u_names() == std::vector<std::string>{"u1", "u2"});
  REQUIRE(j.generators.size() == 1);
  CHECK(j.generators[0].first == "f");
  CHECK(j.generators[0].second ==
        poly(j.frame, "y^3 + y*u1^36*u2^36 + u1^2*u2*(u1+u2)^12"));
  CHECK(j.boundary.empty());
  CHECK(j.to_label().orders() == std::vector<unsigned>{3});

  // Comments and blank lines are ignored.
  JobFile c = parse_job("# a comment\nfield Q\n\nvars y | u1 u2\nf = y^2 + u1^3 # cusp\n");
  CHECK(c.generators[0].second == poly(c.frame, "y^2 + u1^3"));
}

TEST_CASE("boundary statements and extension fields") {
  JobFile j = parse_job(
      "field Q\n"
      "vars y | u1 u2\n"
      "f = y^2 + u1^2*u2^2\n"
      "boundary E1 : u2 new\n"
      "boundary H : y + u1^2 old\n");
  REQUIRE(j.boundary.size() == 2);
  CHECK(j.boundary[0].id == "E1");
  CHECK_FALSE(j.boundary[0].old);
  CHECK(j.boundary[1].id == "H");
  CHECK(j.boundary[1].old);
  CHECK(j.to_label().boundary().size() == 2);

  JobFile e = parse_job(
      "field F_3[T^2 + 1]\n"
      "vars y | u1 u2\n"
      "f = y^2 + theta*u1^3\n");
  CHECK(e.field->p() == 3);
  CHECK(e.field->degree() == 2);
  CHECK(e.to_label().orders() == std::vector<unsigned>{2});
}

TEST_CASE("print is a left inverse of parse") {
  for (const char* text :
       {kSurfaceJob,
        "field Q\nvars y | u1 u2\nf = y^2 + u1^3\nboundary E1 : u1 new\n",
        "field F_3[T^2 + 1]\nvars y | u1 u2\nf = y^2 + theta*u1^3\n",
        "field F_5\nvars z | s t\ng1 = z^2 + s*t\ng2 = z + t^4\n"}) {
    CAPTURE(text);
    JobFile a = parse_job(text);
    JobFile b = parse_job(a.print());
    CHECK(a.print() == b.print());
    REQUIRE(a.generators.size() == b.generators.size());
    for (std::size_t i = 0; i < a.generators.size(); ++i) {
      CHECK(a.generators[i].first == b.generators[i].first);
      CHECK(a.generators[i].second == b.generators[i].second);
    }
  }
}

TEST_CASE("malformed job files are rejected with positions") {
  CHECK_THROWS_AS((void)parse_job("field R\nvars y | u1 u2\nf = y^2\n"),
                  SyntaxError);
  CHECK_THROWS_AS((void)parse_job("field Q\nvars y |\nf = y^2\n"), SyntaxError);
  CHECK_THROWS_AS((void)parse_job("field Q\nvars y | u1 u2\ngen y^2\n"),
                  SyntaxError);
  CHECK_THROWS_AS((void)parse_job("field Q\nvars y | u1 u2\n"), SyntaxError);
  CHECK_THROWS_AS((void)parse_job("field Q\nvars y | u1 u2\nf = y$2\n"),
                  SyntaxError);
  // A bad age word reads as a stray variable inside the boundary expression.
  CHECK_THROWS_AS(
      (void)parse_job("field Q\nvars y | u1 u2\nf = y^2\nboundary E : u1 soon\n"),
      Error);
  try {
    (void)parse_job("field Q\nvars y |\nf = y^2\n");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 2);
  }
  // Undeclared variables are caught by the expression parser.
  CHECK_THROWS_AS((void)parse_job("field Q\nvars y | u1 u2\nf = y^2 + v^3\n"),
                  Error);
}

TEST_CASE("polyhedron command reports the exact invariants") {
  json o = run("polyhedron", kSurfaceJob);
  CHECK(o["delta"] == "5");
  REQUIRE(o["vertices"].size() == 2);
  CHECK(o["vertices"][0] == json::array({"2/3", "13/3"}));
  CHECK(o["vertices"][1] == json::array({"14/3", "1/3"}));
  for (const auto& v : o["vertices"])
    for (const auto& c : v) CHECK(c.is_string());  // fractions, never numbers
  CHECK(o["invariants"]["alpha"] == "2/3");
  CHECK(o["invariants"]["beta"] == "13/3");
  CHECK(o["invariants"]["gamma_minus"] == "1/3");
  CHECK(o["invariants"]["zeta"] == "14/3");
  CHECK(o["essential_points"].size() == 4);

  // The boundary-extended polyhedron appears only when a boundary exists.
  CHECK_FALSE(o.contains("boundary_polyhedron"));
  json b = run("polyhedron",
               "field Q\nvars y | u1 u2\nf = y^3 + u1^2*u2^2\n"
               "boundary H : y + u1^2 old\n");
  CHECK(b["boundary_polyhedron"]["vertices"] ==
        json::array({json::array({"2/3", "2/3"}), json::array({"2", "0"})}));
}

TEST_CASE("prepare command traces dissolutions") {
  const char* job = "field Q\nvars y | u1 u2\nf = y^2 - 2*y*u1^3 + u1^6 + u1^7\n";
  DispatchOptions opts;
  opts.M = rat(10);
  json o = run("prepare", job, opts);
  CHECK(o["M"] == "10");
  bool dissolved = false;
  for (const auto& s : o["steps"])
    if (s["action"] == "dissolved") {
      dissolved = true;
      CHECK(s["vertex"] == json::array({"3", "0"}));
      CHECK(s["lambda"].size() == 1);
    }
  CHECK(dissolved);
  CHECK(o["polyhedron"]["vertices"] == json::array({json::array({"7/2", "0"})}));
  CHECK(o["polyhedron"]["delta"] == "7/2");

  // The step cap turns the same run into an inconclusive one.
  ::setenv("CHARPOLY_STEP_CAP", "1", 1);
  std::optional<JobFile> j = parse_job(job);
  CHECK_THROWS_AS((void)dispatch("prepare", j, opts), NonTermination);
  ::unsetenv("CHARPOLY_STEP_CAP");
}

TEST_CASE("blowup command applies the requested chart") {
  const char* job = "field Q\nvars y | u1 u2\nf = y^2 + u1^2*u2 + u1^3\n";
  FramePtr q2 = frame_q2();

  DispatchOptions opts;
  opts.chart = "point-translated:-1";
  json o = run("blowup", job, opts);
  CHECK(parse_poly(o["label"]["generators"][0], q2) ==
        poly(q2, "y^2 + u1*u2 + 2*u1"));
  CHECK(o["nearness"] == "not-near");

  opts.chart = "point-u2";
  json p = run("blowup", job, opts);
  CHECK(parse_poly(p["label"]["generators"][0], q2) ==
        poly(q2, "y^2 + u1^2*u2 + u1^3*u2"));
  REQUIRE(p["label"]["boundary"].size() == 1);
  CHECK(p["label"]["boundary"][0]["age"] == "new");

  opts.chart = "spiral";
  std::optional<JobFile> j = parse_job(job);
  CHECK_THROWS_AS((void)dispatch("blowup", j, opts), BadParameters);
}

TEST_CASE("resolve and fundamental commands") {
  json o = run("resolve", kSurfaceJob);
  CHECK(o["outcome"] == "multiplicity-drop");
  REQUIRE(o["units"].size() == 2);
  CHECK(o["units"][0]["length"] == 4);
  CHECK(o["units"][0]["beta_before"] == "13/3");
  CHECK(o["units"][0]["beta_after"] == "1");
  CHECK(o["units"][0]["trace"][0]["chart"] == "point-u2");
  CHECK(o["units"][0]["trace"][0]["delta"] == "14/3");
  CHECK(o["units"][0]["trace"][0]["nearness"] == "very-near");

  json f = run("fundamental", kSurfaceJob);
  CHECK(f["m"] == 4);
  REQUIRE(f["trace"].size() == 4);
  CHECK(f["trace"][0]["chart"] == "point-u1");
  CHECK(f["trace"][3]["polyhedron"]["vertices"] ==
        json::array({json::array({"1", "1/3"})}));

  // An empty polyhedron has no fundamental sequence: inconclusive, code 2.
  json e = run("fundamental", "field Q\nvars y | u1 u2\nf = y^2 + y^5\n", {}, 2);
  CHECK(e.contains("diagnostic"));
}

TEST_CASE("hilbert command needs no job file") {
  DispatchOptions opts;
  opts.vars = "x,y";
  opts.ideal = "x^2,x*y";
  json o = run("hilbert", "", opts);
  REQUIRE(o["H"].size() >= 4);
  CHECK(o["H"][0] == "1");
  CHECK(o["H"][1] == "2");
  CHECK(o["H"][2] == "1");
  CHECK(o["H"][3] == "1");
  CHECK(o["P"] == "1");
  CHECK(o["a"] == json::array({0}));

  opts.ideal = "x + y";
  CHECK_THROWS_AS((void)dispatch("hilbert", std::nullopt, opts), BadParameters);
  DispatchOptions bare;
  CHECK_THROWS_AS((void)dispatch("hilbert", std::nullopt, bare), BadParameters);
  CHECK_THROWS_AS((void)dispatch("resolve", std::nullopt, bare), BadParameters);
}

TEST_CASE("probe command certifies both built-in sequences") {
  json o = run("probe-max-contact", "", {});  // defaults: p=3 a=2 b=1 A=4 N=36
  CHECK(o["delta"] == "5");
  CHECK(o["certified"] == true);
  REQUIRE(o["cases"].size() == 2);
  CHECK(o["cases"][0]["sequence"] == "I");
  CHECK(o["cases"][0]["first_violation_q"] == 0);
  CHECK(o["cases"][1]["sequence"] == "II");
  CHECK(o["cases"][1]["first_violation_q"] == 2);
  CHECK(o["cases"][1]["steps"][3]["sigma"] == "2");

  // The third family diverges only by 1/3 per step: within the probed
  // steps sigma reaches exactly 1, so that case stays uncertified (code 2).
  DispatchOptions opts;
  opts.candidate = "(u1 + u2)^4*u1";
  json c = run("probe-max-contact", "", opts, 2);
  REQUIRE(c["cases"].size() == 1);
  CHECK(c["cases"][0]["sequence"] == "III");
  CHECK_FALSE(c["cases"][0].contains("first_violation_q"));
  CHECK(c["cases"][0]["steps"][3]["sigma"] == "1");
  CHECK(c["certified"] == false);
}

TEST_CASE("plots are emitted on request, in exact coordinates") {
  DispatchOptions opts;
  opts.plot = "svg";
  json o = run("polyhedron", kSurfaceJob, opts);
  std::string svg = o["plot"];
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("circle") != std::string::npos);

  opts.plot = "ascii";
  json a = run("polyhedron", kSurfaceJob, opts);
  std::string art = a["plot"];
  CHECK(art.find('*') != std::string::npos);
  CHECK(art.find("delta=5") != std::string::npos);

  opts.plot = "oilpaint";
  std::optional<JobFile> j = parse_job(kSurfaceJob);
  CHECK_THROWS_AS((void)dispatch("polyhedron", j, opts), BadParameters);
}

TEST_CASE("the binary maps outcomes onto exit codes") {
  std::string ok = write_temp("charpoly_ok.job", kSurfaceJob);
  std::string bad = write_temp("charpoly_bad.job", "field Q\nvars y |\n");
  std::string empty =
      write_temp("charpoly_empty.job", "field Q\nvars y | u1 u2\nf = y^2 + y^5\n");

  CHECK(run_binary("polyhedron " + ok) == 0);
  CHECK(run_binary("resolve " + ok) == 0);
  CHECK(run_binary("fundamental " + empty) == 2);   // inconclusive analysis
  CHECK(run_binary("polyhedron " + bad) == 3);      // input error
  CHECK(run_binary("polyhedron /no/such/file.job") == 3);
  CHECK(run_binary("probe-max-contact --p 3 --a 1 --b 1 --A 4 --N 36") == 3);

  ::setenv("CHARPOLY_STEP_CAP", "1", 1);
  std::string prep = write_temp(
      "charpoly_prep.job",
      "field Q\nvars y | u1 u2\nf = y^2 - 2*y*u1^3 + u1^6 + u1^7\n");
  CHECK(run_binary("prepare " + prep) == 2);        // step cap: inconclusive
  ::unsetenv("CHARPOLY_STEP_CAP");
  CHECK(run_binary("prepare " + prep) == 0);
}
