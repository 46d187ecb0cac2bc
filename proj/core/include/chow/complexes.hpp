#pragma once

#include <map>
#include <utility>
#include <vector>

#include "chow/abelian.hpp"

namespace chow {

// Cohomology at one position, kept in a usable form: the columns of
// cocycle_basis generate {x : d(x) lies in the next term's relations}, and
// `group` presents the quotient by coboundaries and relations on exactly
// those generators.  This is what induced maps are computed against.
struct CohomologyPresentation {
  IntMatrix cocycle_basis;
  PresentedGroup group;
};

// Bounded complex of presented abelian groups with integer-matrix
// differentials acting on generators.  Construction verifies shapes, that
// differentials respect relations, and that d.d vanishes modulo relations.
// Terms outside the band are trivial; queries there are legal.
class CochainComplex {
public:
  CochainComplex() = default;
  CochainComplex(int min_degree, std::vector<PresentedGroup> terms,
                 std::vector<IntMatrix> differentials);

  static CochainComplex free_complex(int min_degree,
                                     const std::vector<std::size_t>& ranks,
                                     std::vector<IntMatrix> differentials);

  bool empty() const { return terms_.empty(); }
  int min_degree() const { return min_; }
  int max_degree() const { return min_ + static_cast<int>(terms_.size()) - 1; }
  bool in_band(int t) const {
    return !empty() && t >= min_degree() && t <= max_degree();
  }

  const PresentedGroup& term(int t) const;
  IntMatrix differential(int t) const;  // shaped zero map outside the band

  FgAbGroup cohomology(int t) const;
  CohomologyPresentation cohomology_presentation(int t) const;

  // term_t(shifted) = term_{t+k}; differentials pick up (-1)^k.
  CochainComplex shifted(int k) const;

private:
  int min_ = 0;
  std::vector<PresentedGroup> terms_;
  std::vector<IntMatrix> diffs_;  // diffs_[i]: terms_[i] -> terms_[i+1]
};

// Degreewise map of complexes commuting with the differentials (checked
// modulo target relations at construction).  Absent components are zero.
struct ChainMap {
  CochainComplex source;
  CochainComplex target;
  std::map<int, IntMatrix> components;

  ChainMap(CochainComplex src, CochainComplex tgt,
           std::map<int, IntMatrix> comps);

  IntMatrix component(int t) const;
};

// Cone(f)^t = source^t (+) target^{t-1}, d(a, b) = (d a, f(a) - d b).
// With this convention the cohomology long exact sequence reads
//   ... -> H^t(cone) -> H^t(source) -> H^t(target) -> H^{t+1}(cone) -> ...
CochainComplex mapping_cone(const ChainMap& f);

// Fourth-quadrant double complex (p >= 0, q <= 0) of presented groups.
// Horizontal d: (p,q) -> (p+1,q); vertical v: (p,q) -> (p,q+1).  The two
// differentials are stored commuting; totalization installs the sign.
class DoubleComplex {
public:
  void set_entry(int p, int q, PresentedGroup g);
  void set_horizontal(int p, int q, IntMatrix m);
  void set_vertical(int p, int q, IntMatrix m);

  const PresentedGroup& entry(int p, int q) const;
  IntMatrix horizontal(int p, int q) const;
  IntMatrix vertical(int p, int q) const;

  std::vector<std::pair<int, int>> support() const;  // sorted, stored entries
  int max_p() const;
  int min_q() const;

  // Column p as a complex in q (tight band; empty when the column is empty).
  CochainComplex column(int p) const;

  // Shape, commutation and d.d checks over the whole support.
  void validate() const;

private:
  std::map<std::pair<int, int>, PresentedGroup> entries_;
  std::map<std::pair<int, int>, IntMatrix> horizontal_;
  std::map<std::pair<int, int>, IntMatrix> vertical_;
};

// Tot^n = (+)_{p+q=n} entry(p,q) with differential d + (-1)^p v; blocks are
// ordered by ascending p inside each total degree.
CochainComplex total_complex(const DoubleComplex& dc);

// Matrix of the map induced on cohomology presentations by a degree
// component of a chain map.  The image of a cocycle generator is expressed
// in the target's cocycle generators.
IntMatrix induced_on_cohomology(const IntMatrix& f,
                                const CohomologyPresentation& source,
                                const CohomologyPresentation& target);

}  // namespace chow
