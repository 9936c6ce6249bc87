#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <polyres/cli.hpp>
#include <polyres/errors.hpp>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw polyres::BadParameters("cannot open job file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Exact characteristic-polyhedron toolkit for surface singularities"};
  app.require_subcommand(1);

  polyres::DispatchOptions opts;
  std::string job_path;
  std::string command;

  auto add_job = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("job", job_path, "job file");
    if (required) o->required();
  };
  auto add_plot = [&](CLI::App* sub) {
    sub->add_option("--plot", opts.plot, "emit a drawing: svg or ascii");
  };

  auto* poly = app.add_subcommand("polyhedron", "characteristic polyhedron and invariants");
  add_job(poly, true);
  add_plot(poly);

  auto* prep = app.add_subcommand("prepare", "vertex preparation loop");
  add_job(prep, true);
  add_plot(prep);
  std::string m_text;
  prep->add_option("-M,--bound", m_text, "prepare vertices with |v| <= M");

  auto* blow = app.add_subcommand("blowup", "apply one blow-up chart");
  add_job(blow, true);
  add_plot(blow);
  blow->add_option("--chart", opts.chart,
                   "point-u1 | point-u2 | curve-u1 | point-translated:<poly> | "
                   "point-nonrational:<poly>");

  auto* res = app.add_subcommand("resolve", "run the local driver");
  add_job(res, true);
  res->add_option("--max-units", opts.max_units, "unit budget");
  res->add_flag("--isolation", opts.isolation,
                "assert the isolation-hypothesis consequences");

  auto* fund = app.add_subcommand("fundamental", "fundamental sequence length and trace");
  add_job(fund, true);

  auto* hil = app.add_subcommand("hilbert", "Hilbert function of a monomial ideal");
  hil->add_option("--ideal", opts.ideal, "comma-separated monomial generators");
  hil->add_option("--vars", opts.vars, "comma-separated variable names")->required();
  hil->add_option("--iterate", opts.iterate, "iterated-sum depth");

  auto* probe = app.add_subcommand("probe-max-contact",
                                   "maximal-contact non-existence probe");
  probe->add_option("--p", opts.p)->required();
  probe->add_option("--a", opts.a)->required();
  probe->add_option("--b", opts.b)->required();
  probe->add_option("--A", opts.A)->required();
  probe->add_option("--N", opts.N)->required();
  probe->add_option("--candidate", opts.candidate,
                    "candidate shift gamma (polynomial in u1, u2)");

  CLI11_PARSE(app, argc, argv);
  command = app.get_subcommands().front()->get_name();
  if (!m_text.empty()) opts.M = polyres::rat(m_text);

  std::optional<polyres::JobFile> job;
  if (!job_path.empty()) job = polyres::parse_job(read_file(job_path));

  polyres::CommandResult r = polyres::dispatch(command, job, opts);
  std::cout << r.output;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const polyres::InvariantViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const polyres::Inconclusive& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const polyres::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
