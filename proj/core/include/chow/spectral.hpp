#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chow/complexes.hpp"

namespace chow {

// One spot on a page.  Row q = 0 of the geometric situation carries discrete
// groups, row q = -1 carries diagonalizable ones; the two kinds never mix
// inside a single entry.
struct PageEntry {
  enum class Kind { Discrete, Torus };
  Kind kind = Kind::Discrete;
  FgAbGroup discrete;
  DiagGroup diag;

  static PageEntry of(FgAbGroup g) { return {Kind::Discrete, std::move(g), {}}; }
  static PageEntry of(DiagGroup g) { return {Kind::Torus, {}, std::move(g)}; }

  bool is_trivial() const;
  // free rank for discrete entries, torus rank for diagonalizable ones
  std::size_t rank() const;
  Int torsion_order() const;
  std::string to_string() const;
  bool operator==(const PageEntry&) const = default;
};

struct Page {
  int index = 1;
  std::map<std::pair<int, int>, PageEntry> entries;
  // Page-1 internals: for each row q, the complex of vertical-cohomology
  // presentations with the induced d1 as differentials (degree = p).
  std::map<int, CochainComplex> rows;

  PageEntry entry(int p, int q) const;
  void set(int p, int q, PageEntry e);
};

// E1 of a double complex: vertical cohomology with induced horizontal maps.
Page e1_page(const DoubleComplex& dc);

// E2: cohomology of the E1 rows.
Page e2_page(const Page& p1);

struct AbutmentPiece {
  int p = 0;
  int q = 0;
  PageEntry value;
};

struct AbutmentReport {
  bool degenerate = false;
  // total degree -> nontrivial graded pieces, deepest filtration step first
  // (descending p)
  std::map<int, std::vector<AbutmentPiece>> graded;
  std::vector<std::string> caveats;
};

// Degeneration test and abutment assembly for a page supported on rows
// q = 0 and q = -1.  The page collapses exactly when every potential
// d2: (t,0) -> (t+2,-1) has trivial source or target; r >= 3 differentials
// leave a two-row band.  When the test fails the report is marked
// indeterminate and carries no graded claims.
AbutmentReport two_row_abutment(const Page& p2, int dimension);

// Cohomology of a torus-row complex (terms are character lattices tensored
// with C*, differentials act by exponents).  Computed through character
// duality as Hom(H_t of the transposed chain complex, C*); all terms of
// `lattice_row` must be free.
DiagGroup torus_row_cohomology(const CochainComplex& lattice_row, int t);

}  // namespace chow
