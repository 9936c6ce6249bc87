#ifndef POLYRES_CLI_HPP
#define POLYRES_CLI_HPP

#include <optional>
#include <string>
#include <vector>

#include <polyres/label.hpp>

namespace polyres {

// Parsed job file: field and frame declarations, named generators, boundary
// declarations.
struct JobFile {
  FieldPtr field;
  FramePtr frame;
  std::vector<std::pair<std::string, Polynomial>> generators;
  std::vector<BoundaryComponent> boundary;

  Label to_label() const;
  // Canonical text form; parse(print(j)) reproduces j.
  std::string print() const;
};

JobFile parse_job(const std::string& text);

// Parse a single polynomial expression in an existing frame (used for chart
// arguments and candidate shifts).
Polynomial parse_poly(const std::string& text, const FramePtr& frame);

struct DispatchOptions {
  std::string plot;  // "", "svg" or "ascii"
  std::optional<Rat> M;
  std::string chart = "point-u1";
  unsigned max_units = 64;
  bool isolation = false;
  // hilbert
  std::string ideal;
  std::string vars;
  unsigned iterate = 0;
  // probe-max-contact
  unsigned p = 3, a = 2, b = 1, A = 4;
  unsigned long N = 36;
  std::string candidate;
};

struct CommandResult {
  int exit_code = 0;
  std::string output;  // JSON document
};

// command in {polyhedron, prepare, blowup, resolve, fundamental, hilbert,
// probe-max-contact}; job required except for hilbert and probe-max-contact.
CommandResult dispatch(const std::string& command,
                       const std::optional<JobFile>& job,
                       const DispatchOptions& opts);

}  // namespace polyres

#endif
