#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chow/dual_complex.hpp"
#include "chow/spectral.hpp"

namespace chow {

// Discrete Picard presentations for every stratum plus pullback matrices for
// each face inclusion (stratum of E_I into stratum of E_J, J = I minus one
// index).  Continuous Picard parts are out of scope; inputs may only note
// them, and the note is echoed as a caveat.
struct PicData {
  std::map<std::string, PresentedGroup> pic;
  // cell id -> face id -> matrix, rows = gens(cell), cols = gens(face)
  std::map<std::string, std::map<std::string, IntMatrix>> restrictions;
  std::map<std::string, std::string> continuous_notes;
};

// Everything the calculators need about one resolved variety: the ambient
// dimension, the dual complex of the exceptional divisor, Picard data, and
// how components sit over the singular points.
struct ResolutionData {
  int dimension = 3;  // d >= 2
  std::vector<Stratum> strata;
  PicData pic_data;
  int singular_points = 1;
  // vertex id -> singular point index in [0, singular_points); may be left
  // empty when there is a single singular point
  std::map<std::string, int> over_point;
  bool contractible_claim = false;
};

// Value of one Chow group.  Extensions between a torus part and a discrete
// part are never resolved: when both arise from different filtration steps
// the value is only an associated graded, and `graded` says so.
struct GradedPiece {
  int p = 0;
  int q = 0;
  std::size_t torus_rank = 0;
  FgAbGroup finite;  // roots-of-unity part riding with the torus
  FgAbGroup discrete;

  std::string to_string() const;
  bool operator==(const GradedPiece&) const = default;
};

struct MixedGroup {
  std::size_t torus_rank = 0;
  FgAbGroup finite;
  FgAbGroup discrete;
  bool graded = false;
  std::vector<GradedPiece> pieces;  // deepest filtration step first

  static MixedGroup trivial() { return {}; }
  static MixedGroup of(const FgAbGroup& g);
  static MixedGroup of(const DiagGroup& g);
  static MixedGroup of(const PageEntry& e);
  static MixedGroup from_pieces(std::vector<GradedPiece> pieces);

  bool is_trivial() const;
  std::size_t total_free_rank() const;  // torus rank + discrete free rank
  Int total_torsion_order() const;
  std::string to_string() const;
  bool operator==(const MixedGroup&) const = default;
};

struct HypothesisChecklist {
  enum class State { Pass, Fail, NotApplicable };
  State connected = State::NotApplicable;
  State irreducible = State::NotApplicable;
  State h2_zero = State::NotApplicable;  // only meaningful when d <= 3
  State acyclic = State::NotApplicable;
  State units_rank_one = State::NotApplicable;
  State units_surjective = State::NotApplicable;

  bool satisfied() const;  // some implemented criterion applies
};

// Outcome at the divisor level.  When the hypotheses fail the group table is
// absent and the page plus abutment caveats are the entire output; nothing
// is ever reported as a group value without a theorem behind it.
struct DivisorOutcome {
  int dimension = 3;
  HypothesisChecklist hypotheses;
  bool determinate = false;
  std::string rule;  // which degeneration criterion fired
  std::vector<FgAbGroup> gamma;  // H^t(Gamma), t = 0..dim(Gamma)
  Page e2;
  AbutmentReport abutment;
  std::map<int, MixedGroup> chc;  // m -> CHC^1(E, m), m in [2-d, 1]
  std::vector<std::string> caveats;
};

struct SequenceTerm {
  std::string name;
  MixedGroup value;
};

struct ExactSequence {
  std::string label;
  std::vector<SequenceTerm> terms;  // rendered 0 -> t0 -> ... -> tn -> 0
};

struct SequenceReport {
  std::vector<ExactSequence> sequences;
  bool rank_balance = false;
  bool torsion_consistent = false;
  std::vector<std::string> notes;
};

struct VarietyOutcome {
  DivisorOutcome divisor;
  bool determinate = false;
  MixedGroup units_degree;  // CHC^1(X, 1); exact in every regime
  std::map<int, MixedGroup> chc;  // m -> CHC^1(X, m), m in [1-d, 1]
  SequenceReport sequences;
  std::vector<std::string> caveats;
};

struct Smooth2ResInput {
  PresentedGroup pic_resolution;
  PresentedGroup pic_singular;
  PresentedGroup pic_divisor;
  IntMatrix map_resolution;  // gens(E) x gens(X~)
  IntMatrix map_singular;    // gens(E) x gens(X_sing)
  std::size_t pi0_resolution = 1;
  std::size_t pi0_singular = 1;
  std::size_t pi0_divisor = 1;
  // component incidence of E against the two bases; all-ones defaults are
  // only legal when both bases are connected
  std::optional<IntMatrix> incidence_resolution;
  std::optional<IntMatrix> incidence_singular;
};

struct Smooth2ResOutcome {
  MixedGroup units_degree;
  bool units_surjective = false;
  std::map<int, MixedGroup> chc;  // m in {-1, 0, 1}
  SequenceReport sequences;
  std::vector<std::string> caveats;
};

// CH^1 of a smooth complete variety by degree: units for m = 1, the Picard
// group for m = 0, nothing anywhere else.
MixedGroup ch1_smooth(std::size_t pi0, const FgAbGroup& pic, int m);

// Character-lattice model of the units row: C^t(Gamma) with the coboundary.
// Rejects dual complexes with reducible intersections.
CochainComplex units_row(const DualComplex& gamma);

// Row q = 0: direct sums of stratum Picard groups with the signed pullback
// differential.  Validates presence, shapes, relation compatibility and that
// bottom-dimensional strata carry trivial groups.
CochainComplex pic_row(const DualComplex& gamma, const PicData& pic, int dimension);

DivisorOutcome chc1_divisor(const ResolutionData& data);

VarietyOutcome chc1_variety(const ResolutionData& data,
                            const PresentedGroup& pic_resolution,
                            const std::map<std::string, IntMatrix>& to_components);

// d = 2 front end of the same pipeline; insists on a graph.
VarietyOutcome chc1_surface(const ResolutionData& data,
                            const PresentedGroup& pic_resolution,
                            const std::map<std::string, IntMatrix>& to_components);

Smooth2ResOutcome chc1_smooth_2resolution(const Smooth2ResInput& input);

}  // namespace chow
