#include "chow/abelian.hpp"

#include <algorithm>
#include <sstream>

#include "chow/errors.hpp"

namespace chow {

Int FgAbGroup::torsion_order() const {
  Int n = 1;
  for (const Int& d : torsion) n *= d;
  return n;
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " + ";
    first = false;
  };
  if (free_rank == 1) {
    sep();
    os << "Z";
  } else if (free_rank > 1) {
    sep();
    os << "Z^" << free_rank;
  }
  for (const Int& d : torsion) {
    sep();
    os << "Z/" << d;
  }
  return os.str();
}

std::string DiagGroup::to_string() const {
  if (is_trivial()) return "1";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << " + ";
    first = false;
  };
  if (torus_rank == 1) {
    sep();
    os << "C*";
  } else if (torus_rank > 1) {
    sep();
    os << "(C*)^" << torus_rank;
  }
  for (const Int& d : finite.torsion) {
    sep();
    os << "Z/" << d;
  }
  return os.str();
}

PresentedGroup::PresentedGroup(std::size_t gens, IntMatrix rels)
    : generators(gens), relations(std::move(rels)) {
  if (relations.rows() != generators)
    fail(ErrorCode::ShapeMismatch,
         "PresentedGroup: relations matrix must have one row per generator");
}

FgAbGroup PresentedGroup::invariants() const { return cokernel(relations); }

PresentedGroup PresentedGroup::direct_sum(const std::vector<PresentedGroup>& parts) {
  std::size_t gens = 0, rels = 0;
  for (const auto& p : parts) {
    gens += p.generators;
    rels += p.relations.cols();
  }
  IntMatrix block(gens, rels);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& p : parts) {
    block.set_block(r0, c0, p.relations);
    r0 += p.generators;
    c0 += p.relations.cols();
  }
  return PresentedGroup(gens, std::move(block));
}

std::vector<Int> SnfResult::diagonal() const {
  const std::size_t n = std::min(d.rows(), d.cols());
  std::vector<Int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = d(i, i);
  return out;
}

// Elementary-operation reduction.  Pivot selection always takes a nonzero
// entry of minimal absolute value in the trailing submatrix; the divisibility
// sweep after each lone pivot guarantees d_i | d_{i+1} without a second pass.
SnfResult snf(const IntMatrix& m) {
  SnfResult res;
  res.d = m;
  res.u = IntMatrix::identity(m.rows());
  res.v = IntMatrix::identity(m.cols());
  IntMatrix& d = res.d;
  IntMatrix& u = res.u;
  IntMatrix& v = res.v;
  const std::size_t rows = m.rows(), cols = m.cols();

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(d(a, j), d(b, j));
    for (std::size_t j = 0; j < rows; ++j) std::swap(u(a, j), u(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(d(i, a), d(i, b));
    for (std::size_t i = 0; i < cols; ++i) std::swap(v(i, a), v(i, b));
  };
  // row a += q * row b
  auto add_row = [&](std::size_t a, std::size_t b, const Int& q) {
    for (std::size_t j = 0; j < cols; ++j) d(a, j) += q * d(b, j);
    for (std::size_t j = 0; j < rows; ++j) u(a, j) += q * u(b, j);
  };
  auto add_col = [&](std::size_t a, std::size_t b, const Int& q) {
    for (std::size_t i = 0; i < rows; ++i) d(i, a) += q * d(i, b);
    for (std::size_t i = 0; i < cols; ++i) v(i, a) += q * v(i, b);
  };
  auto negate_row = [&](std::size_t a) {
    for (std::size_t j = 0; j < cols; ++j) d(a, j) = -d(a, j);
    for (std::size_t j = 0; j < rows; ++j) u(a, j) = -u(a, j);
  };

  const std::size_t n = std::min(rows, cols);
  std::size_t i = 0;
  for (; i < n; ++i) {
    bool trailing_zero = false;
    while (true) {
      // minimal nonzero |entry| in the trailing submatrix
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = i; r < rows; ++r)
        for (std::size_t c = i; c < cols; ++c) {
          if (d(r, c) == 0) continue;
          if (pr == rows || abs(d(r, c)) < abs(d(pr, pc))) {
            pr = r;
            pc = c;
          }
        }
      if (pr == rows) {
        trailing_zero = true;
        break;
      }
      swap_rows(i, pr);
      swap_cols(i, pc);

      bool clean = true;
      for (std::size_t r = i + 1; r < rows; ++r) {
        if (d(r, i) == 0) continue;
        add_row(r, i, -(d(r, i) / d(i, i)));
        if (d(r, i) != 0) clean = false;  // remainder survives, pivot will shrink
      }
      for (std::size_t c = i + 1; c < cols; ++c) {
        if (d(i, c) == 0) continue;
        add_col(c, i, -(d(i, c) / d(i, i)));
        if (d(i, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Lone pivot.  Pull any entry it fails to divide into row i and rerun;
      // this is what makes the diagonal a divisor chain.
      bool divides_all = true;
      for (std::size_t r = i + 1; r < rows && divides_all; ++r)
        for (std::size_t c = i + 1; c < cols && divides_all; ++c)
          if (d(r, c) % d(i, i) != 0) {
            add_row(i, r, 1);
            divides_all = false;
          }
      if (divides_all) break;
    }
    if (trailing_zero) break;
    if (d(i, i) < 0) negate_row(i);
  }
  res.rank = i;
  return res;
}

FgAbGroup cokernel(const IntMatrix& m) {
  const SnfResult s = snf(m);
  FgAbGroup g;
  g.free_rank = m.rows() - s.rank;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.d(i, i) > 1) g.torsion.push_back(s.d(i, i));
  return g;
}

IntMatrix kernel_basis(const IntMatrix& m) {
  const SnfResult s = snf(m);
  // m * v = u^{-1} * d, so the columns of v past the rank are killed by m.
  return s.v.slice_cols(s.rank, m.cols() - s.rank);
}

namespace {

// One snf of the generator matrix, reused to answer membership and
// coordinate queries for many vectors.
class LatticeSolver {
public:
  explicit LatticeSolver(const IntMatrix& gens) : gens_(gens), s_(snf(gens)) {}

  std::optional<std::vector<Int>> solve(const std::vector<Int>& v) const {
    if (v.size() != gens_.rows())
      fail(ErrorCode::ShapeMismatch, "lattice solve: vector length != rows");
    const std::vector<Int> c = s_.u.apply(v);
    std::vector<Int> y(gens_.cols());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i < s_.rank) {
        if (c[i] % s_.d(i, i) != 0) return std::nullopt;
        y[i] = c[i] / s_.d(i, i);
      } else if (c[i] != 0) {
        return std::nullopt;
      }
    }
    return s_.v.apply(y);
  }

private:
  const IntMatrix& gens_;
  SnfResult s_;
};

}  // namespace

FgAbGroup subquotient(const IntMatrix& z, const IntMatrix& b) {
  if (z.rows() != b.rows())
    fail(ErrorCode::ShapeMismatch, "subquotient: ambient ranks differ");
  const SnfResult s = snf(z);
  // In the basis u^{-1}(d_i e_i) the lattice of z is the standard Z^rank.
  IntMatrix w(s.rank, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const std::vector<Int> c = s.u.apply(b.column(j));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i < s.rank) {
        if (c[i] % s.d(i, i) != 0)
          fail(ErrorCode::NotSublattice,
               "subquotient: column " + std::to_string(j) +
                   " is not in the ambient lattice");
        w(i, j) = c[i] / s.d(i, i);
      } else if (c[i] != 0) {
        fail(ErrorCode::NotSublattice,
             "subquotient: column " + std::to_string(j) +
                 " is not in the ambient lattice");
      }
    }
  }
  return cokernel(w);
}

DiagGroup tensor_torus(const FgAbGroup& a) {
  // Torsion (x) C* = 0 because C* is divisible.
  return DiagGroup{a.free_rank, {}};
}

TorusMapParts torus_map_ker_coker(const IntMatrix& m) {
  // Hom(-, C*) is exact, so kernel and cokernel dualize to cokernel and
  // kernel of the transposed character map.
  const IntMatrix t = m.transpose();
  const SnfResult s = snf(t);
  FgAbGroup coker_t;
  coker_t.free_rank = t.rows() - s.rank;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.d(i, i) > 1) coker_t.torsion.push_back(s.d(i, i));

  TorusMapParts parts;
  parts.kernel = DiagGroup{coker_t.free_rank, FgAbGroup{0, coker_t.torsion}};
  parts.cokernel = DiagGroup{m.rows() - s.rank, {}};
  return parts;
}

std::optional<std::vector<Int>> solve_in_lattice(const IntMatrix& gens,
                                                 const std::vector<Int>& v) {
  return LatticeSolver(gens).solve(v);
}

bool lattice_contains(const IntMatrix& gens, const IntMatrix& vectors) {
  if (gens.rows() != vectors.rows())
    fail(ErrorCode::ShapeMismatch, "lattice_contains: ambient ranks differ");
  const LatticeSolver solver(gens);
  for (std::size_t j = 0; j < vectors.cols(); ++j)
    if (!solver.solve(vectors.column(j))) return false;
  return true;
}

IntMatrix lattice_coordinates(const IntMatrix& gens, const IntMatrix& vectors) {
  if (gens.rows() != vectors.rows())
    fail(ErrorCode::ShapeMismatch, "lattice_coordinates: ambient ranks differ");
  const LatticeSolver solver(gens);
  IntMatrix out(gens.cols(), vectors.cols());
  for (std::size_t j = 0; j < vectors.cols(); ++j) {
    const auto w = solver.solve(vectors.column(j));
    if (!w)
      fail(ErrorCode::NotSublattice,
           "lattice_coordinates: column " + std::to_string(j) +
               " is outside the lattice");
    for (std::size_t i = 0; i < w->size(); ++i) out(i, j) = (*w)[i];
  }
  return out;
}

IntMatrix preimage_lattice(const IntMatrix& f, const IntMatrix& target) {
  if (f.rows() != target.rows())
    fail(ErrorCode::ShapeMismatch, "preimage_lattice: ambient ranks differ");
  // {x : f x in lattice(target)} is the projection of ker[f | target].
  const IntMatrix k = kernel_basis(f.hstack(target));
  return k.slice_rows(0, f.cols());
}

FgAbGroup presented_map_kernel(const IntMatrix& f, const PresentedGroup& source,
                               const PresentedGroup& target) {
  if (f.cols() != source.generators || f.rows() != target.generators)
    fail(ErrorCode::ShapeMismatch, "presented_map_kernel: matrix shape");
  const IntMatrix pre = preimage_lattice(f, target.relations);
  return subquotient(pre, source.relations);
}

FgAbGroup presented_map_image(const IntMatrix& f, const PresentedGroup& target) {
  if (f.rows() != target.generators)
    fail(ErrorCode::ShapeMismatch, "presented_map_image: matrix shape");
  return subquotient(f.hstack(target.relations), target.relations);
}

FgAbGroup presented_map_cokernel(const IntMatrix& f, const PresentedGroup& target) {
  if (f.rows() != target.generators)
    fail(ErrorCode::ShapeMismatch, "presented_map_cokernel: matrix shape");
  return cokernel(f.hstack(target.relations));
}

}  // namespace chow
