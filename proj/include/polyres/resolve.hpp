#ifndef POLYRES_RESOLVE_HPP
#define POLYRES_RESOLVE_HPP

#include <optional>
#include <string>
#include <vector>

#include <polyres/blowup.hpp>
#include <polyres/label.hpp>
#include <polyres/prepare.hpp>

namespace polyres {

// One blow-up step of a driver run, with the label re-prepared afterwards.
struct TraceStep {
  std::string chart;  // human-readable chart description
  Nearness nearness;
  ExtRat delta;
  std::vector<unsigned> orders;
  std::size_t ext_degree;  // residue extension degree over the run's base
  Label label;             // state after the step
};

struct FundamentalSequence {
  bool infinite = false;  // empty polyhedron: no finite sequence
  unsigned m = 0;         // length, satisfying m < delta <= m+1
  std::vector<TraceStep> trace;
};

// Blow up the point, then follow the curve centers at the generic exceptional
// point while the transform stays very near; the one-coordinate delta there
// is the alpha invariant.
FundamentalSequence fundamental_sequence(const Label& label);

// A fundamental unit: one point chart followed by curve charts until
// nearness fails, with the beta ledger checked across it.
struct UnitRecord {
  Label initial;
  Label terminal;
  unsigned length = 1;
  ExtRat beta_before, beta_after;
  std::size_t residue_degree = 1;
  std::vector<TraceStep> trace;
};

UnitRecord run_unit(const Label& label, const ChartSpec& point, bool isolation);

// Candidate charts holding the near points of the next blow-up, read off the
// roots of the delta-face residual on the exceptional line.
std::vector<ChartSpec> near_point_charts(const Label& label);

struct ResolveTrace {
  enum class Outcome { MultiplicityDrop, EmptyPolyhedron, MaxUnits, Inconclusive };
  Outcome outcome;
  std::vector<UnitRecord> units;
  std::vector<std::string> notes;
};

ResolveTrace resolve_driver(const Label& label, unsigned max_units = 64,
                            bool isolation = false);

// --- the non-existence probe ----------------------------------------------

struct ProbeStep {
  unsigned q;
  ExtRat delta_z;  // prepared run
  ExtRat delta_t;  // candidate-coordinate run, unprepared
};

struct ProbeCaseReport {
  std::string name;      // case split of the candidate family
  std::string sequence;  // "I", "II" or "III"
  Polynomial gamma;
  std::vector<ProbeStep> steps;
  std::optional<unsigned> first_violation;  // first q with sigma_q > 1
};

struct ProbeReport {
  Polynomial f;
  Rat delta0;
  std::vector<ProbeCaseReport> cases;
};

// Builds f = y^p + y u1^N u2^N + u1^a u2^b (u1+u2)^{pA} over F_p and runs
// the blow-up sequences against candidate hypersurfaces t = y + gamma,
// reporting where the divergence sigma_q exceeds 1.  When custom_gamma is
// given it replaces the built-in candidate family.
ProbeReport maximal_contact_probe(unsigned p, unsigned a, unsigned b,
                                  unsigned A, unsigned long N,
                                  const std::optional<Polynomial>& custom_gamma =
                                      std::nullopt);

}  // namespace polyres

#endif
