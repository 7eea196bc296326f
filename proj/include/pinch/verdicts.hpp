#pragma once

#include <string>
#include <vector>

#include "pinch/bw.hpp"
#include "pinch/yamabe.hpp"

namespace pinch {

enum class Verdict { strict, equality, violated, boundary_indeterminate, yamabe_unavailable };
const char* to_string(Verdict v);

enum class TheoremId {
  Gallot,
  degre1compactnorm,
  degre3compact,
  NormPinch,
  gursky1,
  gursky2,
  wplus4D,
  pinchingchang,
  degre1completeigen,
};
const char* to_string(TheoremId id);
TheoremId theorem_from_string(const std::string& name);

// Betti numbers of product models by the Künneth rule.
struct BettiTable {
  std::vector<long long> b;  // b_0 .. b_n
  int b2_plus = -1;          // dimension of self-dual harmonic 2-forms, n = 4 only
  long long operator[](int k) const { return b[k]; }
  bool poincare_dual() const;
};
BettiTable betti_of(const ModelSpace& m);

struct PinchReport {
  int schema = 1;
  std::string theorem;
  std::string model;
  int n = 0;
  int k = 0;  // degree the theorem concerns (fixed per theorem except NormPinch)
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  Verdict verdict = Verdict::strict;
  double yamabe = 0;
  std::string yamabe_provenance;
  long long betti = -1;
  bool betti_consistent = true;
  std::vector<std::string> notes;

  bool operator==(const PinchReport&) const = default;
};

Verdict classify(double lhs, double rhs, double tol);

PinchReport evaluate_theorem(TheoremId id, const ModelSpace& m, int k = 0, double tol = 1e-8);

// Einstein-normalized products of spheres and projective spaces with a
// partial dimension sum equal to k; every emitted model attains equality.
std::vector<PinchReport> sweep_equality_family(int n, int k, double tol = 1e-8);

std::string to_json(const PinchReport& r);
PinchReport report_from_json(const std::string& text);
std::string to_markdown(const PinchReport& r);
std::string csv_header();
std::string to_csv_row(const PinchReport& r);

// Model DSL:  model := factor ('x' factor)* | 'CoshCyl(' model ',' 'alpha=' float ')'
//             factor := 'S(' int ',' float ')' | 'CP(' int ',' float ')' | 'Circ(' float ')'
struct ModelParseError {
  std::size_t position;
  std::string message;
};
ModelSpace parse_model(const std::string& text);  // throws ModelParseError

// Frame-independence audit: pointwise scalars recomputed in rotated frames.
double homogeneity_audit(const ModelSpace& m, std::uint64_t seed, int rotations = 3);

}  // namespace pinch
