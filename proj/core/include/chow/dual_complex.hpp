#pragma once

#include <string>
#include <vector>

#include "chow/complexes.hpp"

namespace chow {

// One irreducible stratum of the exceptional locus: the component of an
// intersection E_I indexed by the set I of divisor components meeting it.
// Several strata may carry the same index set only when that intersection is
// reducible; in that case every cell with such a face must name its faces
// explicitly (one id per omitted index, in order).
struct Stratum {
  std::string id;
  std::vector<int> indices;  // strictly increasing, nonempty
  bool irreducible = true;
  std::vector<std::string> faces;  // optional explicit face assignment
};

// Dual Delta-complex of a simple normal crossing divisor.  Cells of
// dimension t correspond to strata with |I| = t + 1; the j-th face of a cell
// omits the j-th index.
class DualComplex {
public:
  struct Cell {
    std::string id;
    std::vector<int> indices;
    bool irreducible = true;
    std::vector<std::size_t> faces;  // positions into cells(dim-1)
  };

  static DualComplex build(const std::vector<Stratum>& strata);

  bool empty() const { return cells_.empty(); }
  int dimension() const { return static_cast<int>(cells_.size()) - 1; }
  std::size_t cell_count(int t) const;
  const std::vector<Cell>& cells(int t) const;
  const Cell* find(const std::string& id) const;

  // True when every stratum is flagged irreducible and no index set repeats.
  bool all_irreducible() const;

  std::size_t component_count() const;
  // component id (0-based, by order of first vertex) for each vertex cell
  std::vector<std::size_t> vertex_component() const;

  // Free complex in degrees [0, dimension] with the simplicial coboundary:
  // <delta(s), c> = (-1)^j exactly when s is the j-th face of c.
  CochainComplex coboundary_complex() const;

  FgAbGroup cohomology(int t) const;
  bool is_acyclic() const;  // H^0 = Z and H^t = 0 for all t >= 1

  // 1-skeleton in DOT, deterministically ordered; parallel edges are kept.
  std::string export_dot() const;

private:
  std::vector<std::vector<Cell>> cells_;
};

}  // namespace chow
