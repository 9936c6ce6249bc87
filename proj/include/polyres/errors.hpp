#ifndef POLYRES_ERRORS_HPP
#define POLYRES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polyres {

// Base class for all library errors. Exit-code mapping (see cli):
//   input problems -> 3, inconclusive analyses -> 2, broken invariants -> 1.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- input / usage errors -------------------------------------------------
struct FrameMismatch : Error {
  explicit FrameMismatch(const std::string& m) : Error("frame mismatch: " + m) {}
};
struct NegativeCoordinate : Error {
  explicit NegativeCoordinate(const std::string& m) : Error("negative coordinate: " + m) {}
};
struct EmptyPolyhedron : Error {
  explicit EmptyPolyhedron(const std::string& m) : Error("empty polyhedron: " + m) {}
};
struct WrongDimension : Error {
  explicit WrongDimension(const std::string& m) : Error("wrong dimension: " + m) {}
};
struct BadIndex : Error {
  explicit BadIndex(const std::string& m) : Error("bad index: " + m) {}
};
struct UnboundedFace : Error {
  explicit UnboundedFace(const std::string& m) : Error("unbounded face: " + m) {}
};
struct NotAVertex : Error {
  explicit NotAVertex(const std::string& m) : Error("not a vertex: " + m) {}
};
struct NonDivisible : Error {
  explicit NonDivisible(const std::string& m) : Error("non-divisible: " + m) {}
};
struct ReducibleModulus : Error {
  explicit ReducibleModulus(const std::string& m) : Error("reducible modulus: " + m) {}
};
struct UnsupportedField : Error {
  explicit UnsupportedField(const std::string& m) : Error("unsupported field: " + m) {}
};
struct BoundaryInUIdeal : Error {
  explicit BoundaryInUIdeal(const std::string& m) : Error("boundary generator in <u>: " + m) {}
};
struct NotWeaklyNormalized : Error {
  explicit NotWeaklyNormalized(const std::string& m) : Error("not weakly normalized: " + m) {}
};
struct NotPrepared : Error {
  explicit NotPrepared(const std::string& m) : Error("label not prepared: " + m) {}
};
struct ScaleExceeded : Error {
  explicit ScaleExceeded(const std::string& m) : Error("desk-scale limit exceeded: " + m) {}
};
struct NotAHilbertPolynomial : Error {
  explicit NotAHilbertPolynomial(const std::string& m) : Error("not a Hilbert polynomial: " + m) {}
};
struct BadParameters : Error {
  explicit BadParameters(const std::string& m) : Error("bad parameters: " + m) {}
};
struct SyntaxError : Error {
  int line, col;
  SyntaxError(int l, int c, const std::string& m)
      : Error("syntax error at " + std::to_string(l) + ":" + std::to_string(c) + ": " + m),
        line(l), col(c) {}
};
struct UndeclaredVariable : Error {
  explicit UndeclaredVariable(const std::string& m) : Error("undeclared variable: " + m) {}
};

// --- invariant violations (these falsify the implementation, exit code 1) --
struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string& m) : Error("invariant violation: " + m) {}
};
struct MonotonicityViolation : InvariantViolation {
  explicit MonotonicityViolation(const std::string& m)
      : InvariantViolation("monotonicity: " + m) {}
};
struct LedgerViolation : InvariantViolation {
  explicit LedgerViolation(const std::string& m) : InvariantViolation("ledger: " + m) {}
};

// --- inconclusive analyses (exit code 2) ----------------------------------
struct Inconclusive : Error {
  explicit Inconclusive(const std::string& m) : Error("inconclusive: " + m) {}
};
struct NonTermination : Inconclusive {
  explicit NonTermination(const std::string& m) : Inconclusive("step cap exceeded: " + m) {}
};

}  // namespace polyres

#endif
