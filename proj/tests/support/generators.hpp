#pragma once

// Seeded random instance generators shared by the unit and acceptance
// suites.  Everything draws from a caller-owned engine, so a fixed seed
// reproduces the whole instance stream.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chow/abelian.hpp"
#include "chow/complexes.hpp"
#include "chow/dual_complex.hpp"

namespace testgen {

using chow::CochainComplex;
using chow::DoubleComplex;
using chow::FgAbGroup;
using chow::Int;
using chow::IntMatrix;
using chow::PresentedGroup;
using chow::Stratum;

using Rng = std::mt19937_64;

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                               int lo, int hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rand_int(rng, lo, hi);
  return m;
}

// Product of elementary row operations applied to the identity: determinant
// stays +-1 and the entries stay small enough for exact arithmetic.
inline IntMatrix random_unimodular(Rng& rng, std::size_t n) {
  IntMatrix m = IntMatrix::identity(n);
  if (n < 2) return m;
  const int ops = static_cast<int>(2 * n + 4);
  for (int op = 0; op < ops; ++op) {
    const auto i = static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(n) - 1));
    auto j = static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(n) - 1));
    switch (rand_int(rng, 0, 2)) {
      case 0: {  // row_j += c * row_i
        if (j == i) j = (j + 1) % n;
        const int c = rand_int(rng, 0, 1) ? 1 : -1;
        for (std::size_t col = 0; col < n; ++col) m(j, col) += c * m(i, col);
        break;
      }
      case 1: {  // swap rows
        if (j == i) j = (j + 1) % n;
        for (std::size_t col = 0; col < n; ++col) std::swap(m(i, col), m(j, col));
        break;
      }
      default:  // negate a row
        for (std::size_t col = 0; col < n; ++col) m(i, col) = -m(i, col);
    }
  }
  return m;
}

// The columns of a unimodular matrix span all of Z^n, so coordinates of the
// standard basis exist and assemble the exact inverse.
inline IntMatrix unimodular_inverse(const IntMatrix& q) {
  return chow::lattice_coordinates(q, IntMatrix::identity(q.rows()));
}

inline FgAbGroup fg_direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  std::vector<Int> torsion = a.torsion;
  torsion.insert(torsion.end(), b.torsion.begin(), b.torsion.end());
  FgAbGroup out = chow::cokernel(IntMatrix::diagonal(torsion));
  out.free_rank = a.free_rank + b.free_rank;
  return out;
}

// ---- graphs ----------------------------------------------------------------

struct GraphData {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // 1-based, first < second, no repeats
};

inline GraphData random_tree(Rng& rng, int vertices) {
  GraphData g;
  g.vertices = vertices;
  for (int i = 2; i <= vertices; ++i) g.edges.push_back({rand_int(rng, 1, i - 1), i});
  return g;
}

inline GraphData random_connected_graph(Rng& rng, int vertices, int extra) {
  GraphData g = random_tree(rng, vertices);
  std::set<std::pair<int, int>> have(g.edges.begin(), g.edges.end());
  for (int attempts = 0; extra > 0 && attempts < 200 && vertices >= 2; ++attempts) {
    int a = rand_int(rng, 1, vertices), b = rand_int(rng, 1, vertices);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (!have.insert({a, b}).second) continue;
    g.edges.push_back({a, b});
    --extra;
  }
  return g;
}

inline std::vector<Stratum> graph_strata(const GraphData& g) {
  std::vector<Stratum> out;
  for (int i = 1; i <= g.vertices; ++i)
    out.push_back({"v" + std::to_string(i), {i}, true, {}});
  for (const auto& [a, b] : g.edges)
    out.push_back(
        {"e" + std::to_string(a) + "_" + std::to_string(b), {a, b}, true, {}});
  return out;
}

// Random simplicial complex: a few top cells together with every nonempty
// subset, so the family is closed under taking faces by construction.
inline std::vector<Stratum> random_downward_closed(Rng& rng, int max_components) {
  const int n = rand_int(rng, 2, max_components);
  std::set<std::vector<int>> cells;
  const int tops = rand_int(rng, 1, 4);
  for (int t = 0; t < tops; ++t) {
    const int size = rand_int(rng, 1, std::min(n, 4));
    std::vector<int> labels(static_cast<std::size_t>(n));
    std::iota(labels.begin(), labels.end(), 1);
    std::shuffle(labels.begin(), labels.end(), rng);
    labels.resize(static_cast<std::size_t>(size));
    std::sort(labels.begin(), labels.end());
    for (unsigned mask = 1; mask < (1u << size); ++mask) {
      std::vector<int> subset;
      for (int b = 0; b < size; ++b)
        if (mask & (1u << b)) subset.push_back(labels[static_cast<std::size_t>(b)]);
      cells.insert(subset);
    }
  }
  std::vector<Stratum> out;
  for (const auto& idx : cells) {
    std::string id = "c";
    for (int i : idx) id += "_" + std::to_string(i);
    out.push_back({id, idx, true, {}});
  }
  return out;
}

// ---- block-model free complexes --------------------------------------------
// A free complex assembled from elementary blocks (head |-> k * tail in the
// next degree) plus isolated generators.  Tails never start a block, so
// d.d = 0 holds identically; cohomology is read off blockwise when needed.

struct BlockModel {
  enum Role : int { Free = 0, Head = 1, Tail = 2 };
  int min_degree = 0;
  std::vector<std::size_t> ranks;
  std::vector<IntMatrix> diffs;          // block coordinates
  std::vector<std::vector<int>> roles;   // Role per generator and degree

  CochainComplex complex() const {
    return CochainComplex::free_complex(min_degree, ranks, diffs);
  }
};

inline BlockModel random_block_model(Rng& rng, int min_degree, int degrees,
                                     int max_blocks, int max_free, int max_k) {
  BlockModel m;
  m.min_degree = min_degree;
  m.ranks.assign(static_cast<std::size_t>(degrees), 0);
  m.roles.assign(static_cast<std::size_t>(degrees), {});
  struct Block {
    std::size_t t, head, tail;
    int k;
  };
  std::vector<Block> blocks;
  for (std::size_t t = 0; t + 1 < m.ranks.size(); ++t) {
    const int count = rand_int(rng, 0, max_blocks);
    for (int b = 0; b < count; ++b) {
      Block blk{t, m.ranks[t]++, m.ranks[t + 1]++, rand_int(rng, 1, max_k)};
      m.roles[t].push_back(BlockModel::Head);
      m.roles[t + 1].push_back(BlockModel::Tail);
      blocks.push_back(blk);
    }
  }
  for (std::size_t t = 0; t < m.ranks.size(); ++t) {
    const int count = rand_int(rng, 0, max_free);
    for (int f = 0; f < count; ++f) {
      ++m.ranks[t];
      m.roles[t].push_back(BlockModel::Free);
    }
  }
  for (std::size_t t = 0; t + 1 < m.ranks.size(); ++t)
    m.diffs.push_back(IntMatrix(m.ranks[t + 1], m.ranks[t]));
  for (const Block& blk : blocks) m.diffs[blk.t](blk.tail, blk.head) = blk.k;
  return m;
}

struct ConjugatedComplex {
  CochainComplex complex;
  std::vector<IntMatrix> q, qinv;  // block coordinates -> new coordinates
};

inline ConjugatedComplex conjugate(Rng& rng, const BlockModel& m) {
  ConjugatedComplex out;
  for (std::size_t r : m.ranks) {
    out.q.push_back(random_unimodular(rng, r));
    out.qinv.push_back(unimodular_inverse(out.q.back()));
  }
  std::vector<IntMatrix> diffs;
  for (std::size_t i = 0; i < m.diffs.size(); ++i)
    diffs.push_back(out.q[i + 1] * m.diffs[i] * out.qinv[i]);
  out.complex = CochainComplex::free_complex(m.min_degree, m.ranks, diffs);
  return out;
}

// Chain map between two block models over the same degree window, built from
// rules that commute exactly, plus null-homotopic noise d h + h d, which
// commutes for any degreewise h.  Returned in block coordinates.
inline std::vector<IntMatrix> random_block_chain_map(Rng& rng,
                                                     const BlockModel& a,
                                                     const BlockModel& b) {
  const std::size_t degrees = a.ranks.size();
  std::vector<IntMatrix> f;
  for (std::size_t t = 0; t < degrees; ++t)
    f.push_back(IntMatrix(b.ranks[t], a.ranks[t]));

  // source blocks land on target blocks in the same degrees; the two
  // coefficients solve alpha * k_b = k_a * beta exactly via the gcd
  for (std::size_t t = 0; t + 1 < degrees; ++t) {
    std::vector<std::pair<std::size_t, std::size_t>> a_blocks, b_blocks;
    for (std::size_t g = 0; g < a.ranks[t]; ++g)
      if (a.roles[t][g] == BlockModel::Head) a_blocks.push_back({t, g});
    for (std::size_t g = 0; g < b.ranks[t]; ++g)
      if (b.roles[t][g] == BlockModel::Head) b_blocks.push_back({t, g});
    if (b_blocks.empty()) continue;
    for (const auto& [ta, head_a] : a_blocks) {
      const auto& [tb, head_b] = b_blocks[static_cast<std::size_t>(
          rand_int(rng, 0, static_cast<int>(b_blocks.size()) - 1))];
      // locate the tails and the block coefficients
      std::size_t tail_a = 0, tail_b = 0;
      Int ka = 0, kb = 0;
      for (std::size_t r = 0; r < a.ranks[t + 1]; ++r)
        if (a.diffs[t](r, head_a) != 0) { tail_a = r; ka = a.diffs[t](r, head_a); }
      for (std::size_t r = 0; r < b.ranks[t + 1]; ++r)
        if (b.diffs[t](r, head_b) != 0) { tail_b = r; kb = b.diffs[t](r, head_b); }
      const Int g = boost::multiprecision::gcd(ka, kb);
      const Int s = rand_int(rng, -2, 2);
      f[t](head_b, head_a) += (ka / g) * s;
      f[t + 1](tail_b, tail_a) += (kb / g) * s;
    }
  }
  // free source generators map to anything the target differential kills
  for (std::size_t t = 0; t < degrees; ++t)
    for (std::size_t g = 0; g < a.ranks[t]; ++g) {
      if (a.roles[t][g] != BlockModel::Free) continue;
      for (std::size_t r = 0; r < b.ranks[t]; ++r)
        if (b.roles[t][r] != BlockModel::Head) f[t](r, g) = rand_int(rng, -2, 2);
    }
  // noise: f += d_B h + h d_A
  std::vector<IntMatrix> h;  // h[t]: A^t -> B^{t-1}
  h.push_back(IntMatrix(0, a.ranks[0]));
  for (std::size_t t = 1; t < degrees; ++t)
    h.push_back(random_matrix(rng, b.ranks[t - 1], a.ranks[t], -1, 1));
  h.push_back(IntMatrix(b.ranks[degrees - 1], 0));
  for (std::size_t t = 0; t < degrees; ++t) {
    IntMatrix noise(b.ranks[t], a.ranks[t]);
    if (t > 0) {
      const IntMatrix dh = b.diffs[t - 1] * h[t];
      for (std::size_t i = 0; i < noise.rows(); ++i)
        for (std::size_t j = 0; j < noise.cols(); ++j) noise(i, j) += dh(i, j);
    }
    if (t + 1 < degrees) {
      const IntMatrix hd = h[t + 1] * a.diffs[t];
      for (std::size_t i = 0; i < noise.rows(); ++i)
        for (std::size_t j = 0; j < noise.cols(); ++j) noise(i, j) += hd(i, j);
    }
    for (std::size_t i = 0; i < noise.rows(); ++i)
      for (std::size_t j = 0; j < noise.cols(); ++j) f[t](i, j) += noise(i, j);
  }
  return f;
}

// ---- two-row double complexes ----------------------------------------------
// Random fourth-quadrant double complexes supported on rows 0 and -1 whose
// second page provably degenerates and whose graded pieces assemble exactly:
// in each family, at every total degree either one piece is trivial, the
// top-row piece is free, or the rows do not interact, so the one extension
// that could mix a free subgroup into torsion above it always splits.

struct TwoRowData {
  std::size_t width = 2;           // columns 0 .. width-1
  std::vector<std::size_t> top;    // ranks of row 0
  std::vector<std::size_t> bot;    // ranks of row -1
  std::vector<IntMatrix> h_top;    // top[p] -> top[p+1]
  std::vector<IntMatrix> h_bot;    // bot[p] -> bot[p+1]
  std::vector<IntMatrix> v;        // bot[p] -> top[p]
};

inline DoubleComplex assemble_two_row(Rng& rng, const TwoRowData& d) {
  std::vector<IntMatrix> qt, qti, qb, qbi;
  for (std::size_t p = 0; p < d.width; ++p) {
    qt.push_back(random_unimodular(rng, d.top[p]));
    qti.push_back(unimodular_inverse(qt.back()));
    qb.push_back(random_unimodular(rng, d.bot[p]));
    qbi.push_back(unimodular_inverse(qb.back()));
  }
  DoubleComplex dc;
  for (std::size_t p = 0; p < d.width; ++p) {
    dc.set_entry(static_cast<int>(p), 0, PresentedGroup::free_group(d.top[p]));
    dc.set_entry(static_cast<int>(p), -1, PresentedGroup::free_group(d.bot[p]));
  }
  for (std::size_t p = 0; p + 1 < d.width; ++p) {
    dc.set_horizontal(static_cast<int>(p), 0, qt[p + 1] * d.h_top[p] * qti[p]);
    dc.set_horizontal(static_cast<int>(p), -1, qb[p + 1] * d.h_bot[p] * qbi[p]);
  }
  for (std::size_t p = 0; p < d.width; ++p)
    dc.set_vertical(static_cast<int>(p), -1, qt[p] * d.v[p] * qbi[p]);
  return dc;
}

// width 2, interacting squares; the column-0 vertical only has unit blocks,
// keeping the page entry at (0,0) free.
inline DoubleComplex two_row_squares(Rng& rng) {
  TwoRowData d;
  d.width = 2;
  d.top.assign(2, 0);
  d.bot.assign(2, 0);
  struct Square {
    std::size_t u, x, w, y;
    Int k, m;
  };
  struct Strand {
    std::size_t src, dst;
    Int k;
  };
  std::vector<Square> squares;
  std::vector<Strand> col0, col1, row_bot, row_top;
  const int n_sq = rand_int(rng, 0, 2);
  for (int i = 0; i < n_sq; ++i)
    squares.push_back({d.bot[0]++, d.top[0]++, d.bot[1]++, d.top[1]++,
                       rand_int(rng, 0, 4), rand_int(rng, 0, 4)});
  for (int i = rand_int(rng, 0, 2); i > 0; --i)
    col0.push_back({d.bot[0]++, d.top[0]++, rand_int(rng, 0, 1)});
  for (int i = rand_int(rng, 0, 2); i > 0; --i)
    col1.push_back({d.bot[1]++, d.top[1]++, rand_int(rng, 0, 5)});
  for (int i = rand_int(rng, 0, 2); i > 0; --i)
    row_bot.push_back({d.bot[0]++, d.bot[1]++, rand_int(rng, 0, 5)});
  for (int i = rand_int(rng, 0, 2); i > 0; --i)
    row_top.push_back({d.top[0]++, d.top[1]++, rand_int(rng, 0, 5)});
  d.top[0] += static_cast<std::size_t>(rand_int(rng, 0, 1));
  d.bot[1] += static_cast<std::size_t>(rand_int(rng, 0, 1));

  d.h_top = {IntMatrix(d.top[1], d.top[0])};
  d.h_bot = {IntMatrix(d.bot[1], d.bot[0])};
  d.v = {IntMatrix(d.top[0], d.bot[0]), IntMatrix(d.top[1], d.bot[1])};
  for (const Square& s : squares) {
    d.v[0](s.x, s.u) = 1;
    d.h_bot[0](s.w, s.u) = s.k;
    d.v[1](s.y, s.w) = s.m;
    d.h_top[0](s.y, s.x) = s.k * s.m;  // commutes across the square
  }
  for (const Strand& s : col0) d.v[0](s.dst, s.src) = s.k;
  for (const Strand& s : col1) d.v[1](s.dst, s.src) = s.k;
  for (const Strand& s : row_bot) d.h_bot[0](s.dst, s.src) = s.k;
  for (const Strand& s : row_top) d.h_top[0](s.dst, s.src) = s.k;
  return assemble_two_row(rng, d);
}

// wide band, zero top-row differential; verticals select fresh top-row
// generators away from block tails, so each top-row page entry stays free
// and v composed with the bottom differential vanishes.
inline DoubleComplex two_row_selected(Rng& rng) {
  const int width = rand_int(rng, 3, 5);
  BlockModel bot = random_block_model(rng, 0, width, 2, 2, 5);
  TwoRowData d;
  d.width = static_cast<std::size_t>(width);
  d.bot = bot.ranks;
  d.h_bot = bot.diffs;
  d.top.assign(d.width, 0);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> picks(d.width);
  for (std::size_t p = 0; p < d.width; ++p) {
    for (std::size_t g = 0; g < bot.ranks[p]; ++g)
      if (bot.roles[p][g] != BlockModel::Tail && rand_int(rng, 0, 1))
        picks[p].push_back({d.top[p]++, g});
    d.top[p] += static_cast<std::size_t>(rand_int(rng, 0, 2));
  }
  for (std::size_t p = 0; p < d.width; ++p) {
    IntMatrix vp(d.top[p], d.bot[p]);
    for (const auto& [row, g] : picks[p]) vp(row, g) = 1;
    d.v.push_back(vp);
  }
  for (std::size_t p = 0; p + 1 < d.width; ++p) {
    d.h_top.push_back(IntMatrix(d.top[p + 1], d.top[p]));
    // zero by construction; commutation reduces to v . h_bot = 0
  }
  return assemble_two_row(rng, d);
}

// zero verticals: the total complex splits as the direct sum of the rows.
inline DoubleComplex two_row_split(Rng& rng) {
  const int width = rand_int(rng, 2, 5);
  BlockModel top = random_block_model(rng, 0, width, 2, 2, 6);
  BlockModel bot = random_block_model(rng, 0, width, 2, 2, 6);
  TwoRowData d;
  d.width = static_cast<std::size_t>(width);
  d.top = top.ranks;
  d.bot = bot.ranks;
  d.h_top = top.diffs;
  d.h_bot = bot.diffs;
  for (std::size_t p = 0; p < d.width; ++p)
    d.v.push_back(IntMatrix(d.top[p], d.bot[p]));
  return assemble_two_row(rng, d);
}

inline DoubleComplex random_two_row(Rng& rng, int family) {
  switch (family % 3) {
    case 0: return two_row_squares(rng);
    case 1: return two_row_selected(rng);
    default: return two_row_split(rng);
  }
}

}  // namespace testgen
