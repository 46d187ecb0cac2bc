#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chow/int_matrix.hpp"

namespace chow {

// Finitely generated abelian group in invariant form: Z^free_rank plus
// cyclic factors Z/d1 + ... + Z/dk with 2 <= d1 | d2 | ... | dk.
struct FgAbGroup {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  Int torsion_order() const;

  bool operator==(const FgAbGroup&) const = default;

  // "0", "Z^2", "Z + Z/2 + Z/6", ...
  std::string to_string() const;
};

// Diagonalizable group (C*)^torus_rank x (finite abelian group of roots of
// unity).  The finite part is stored as a torsion chain with free_rank 0.
struct DiagGroup {
  std::size_t torus_rank = 0;
  FgAbGroup finite;

  bool is_trivial() const { return torus_rank == 0 && finite.is_trivial(); }
  bool operator==(const DiagGroup&) const = default;
  std::string to_string() const;  // "(C*)^2 + Z/3", "1" when trivial
};

// Group presented as coker(relations): Z^generators / column lattice of
// `relations`; relations has exactly `generators` rows.
struct PresentedGroup {
  std::size_t generators = 0;
  IntMatrix relations;  // generators x (number of relations)

  PresentedGroup() : relations(0, 0) {}
  PresentedGroup(std::size_t gens, IntMatrix rels);
  static PresentedGroup free_group(std::size_t rank) {
    return PresentedGroup(rank, IntMatrix(rank, 0));
  }
  static PresentedGroup trivial() { return free_group(0); }

  FgAbGroup invariants() const;
  // Presentation of the direct sum: generators concatenated, relations block
  // diagonal.  Order matters and is preserved.
  static PresentedGroup direct_sum(const std::vector<PresentedGroup>& parts);
};

// Smith normal form u * m * v = d with u, v unimodular, d diagonal,
// d(0,0) | d(1,1) | ... and every nonzero diagonal entry positive.
struct SnfResult {
  IntMatrix u, d, v;
  std::size_t rank = 0;  // number of nonzero diagonal entries

  std::vector<Int> diagonal() const;
};

SnfResult snf(const IntMatrix& m);

// Invariants of Z^rows(m) / (column lattice of m).
FgAbGroup cokernel(const IntMatrix& m);

// Columns form a Z-basis of ker(m: Z^cols -> Z^rows).  The kernel of an
// integer matrix is a saturated sublattice, so the basis is primitive.
IntMatrix kernel_basis(const IntMatrix& m);

// (lattice spanned by columns of z) / (lattice spanned by columns of b).
// Columns of b must lie in the lattice of z; otherwise NotSublattice.
// Columns of z may be linearly dependent.
FgAbGroup subquotient(const IntMatrix& z, const IntMatrix& b);

// A (x) C*: free part becomes a torus, torsion dies (C* is divisible).
DiagGroup tensor_torus(const FgAbGroup& a);

struct TorusMapParts {
  DiagGroup kernel;
  DiagGroup cokernel;  // always a pure torus
};

// Kernel and cokernel of (C*)^cols -> (C*)^rows with exponent matrix m,
// computed through character duality: dualize, run snf on the transpose,
// apply Hom(-, C*) back.
TorusMapParts torus_map_ker_coker(const IntMatrix& m);

// ---- lattice utilities ---------------------------------------------------
// These power every cohomology computation: membership, coordinates and
// preimages in column lattices, all through one snf per lattice.

// Solve gens * w = v exactly; nullopt when v is outside the lattice.
std::optional<std::vector<Int>> solve_in_lattice(const IntMatrix& gens,
                                                 const std::vector<Int>& v);

bool lattice_contains(const IntMatrix& gens, const IntMatrix& vectors);

// Coordinates of each column of `vectors` in terms of the columns of `gens`;
// NotSublattice if some column is outside the lattice.
IntMatrix lattice_coordinates(const IntMatrix& gens, const IntMatrix& vectors);

// Generators (columns) of the preimage lattice {x : f*x in lattice(target)}.
// The result spans the preimage but need not be a basis.
IntMatrix preimage_lattice(const IntMatrix& f, const IntMatrix& target);

// ---- maps of presented groups ---------------------------------------------
// f induces (Z^a / A) -> (Z^b / B) when f*A lands in lattice(B); the helpers
// below assume that and compute invariants of kernel, image and cokernel.

FgAbGroup presented_map_kernel(const IntMatrix& f, const PresentedGroup& source,
                               const PresentedGroup& target);
FgAbGroup presented_map_image(const IntMatrix& f, const PresentedGroup& target);
FgAbGroup presented_map_cokernel(const IntMatrix& f, const PresentedGroup& target);

}  // namespace chow
