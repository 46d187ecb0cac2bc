#include "chow/complexes.hpp"

#include <algorithm>
#include <string>

#include "chow/errors.hpp"

namespace chow {

namespace {

const PresentedGroup& trivial_group() {
  static const PresentedGroup g = PresentedGroup::trivial();
  return g;
}

std::string pos(int t) { return "degree " + std::to_string(t); }

// Columns of `vectors` must lie in the relation lattice of `target`.
bool vanishes_in(const IntMatrix& vectors, const PresentedGroup& target) {
  return lattice_contains(target.relations, vectors);
}

}  // namespace

CochainComplex::CochainComplex(int min_degree, std::vector<PresentedGroup> terms,
                               std::vector<IntMatrix> differentials)
    : min_(min_degree), terms_(std::move(terms)), diffs_(std::move(differentials)) {
  const std::size_t expected = terms_.empty() ? 0 : terms_.size() - 1;
  if (diffs_.size() != expected)
    fail(ErrorCode::ShapeMismatch,
         "complex: expected " + std::to_string(expected) + " differentials, got " +
             std::to_string(diffs_.size()));
  for (std::size_t i = 0; i < diffs_.size(); ++i) {
    if (diffs_[i].rows() != terms_[i + 1].generators ||
        diffs_[i].cols() != terms_[i].generators)
      fail(ErrorCode::ShapeMismatch,
           "complex: differential at " + pos(min_ + static_cast<int>(i)) +
               " has the wrong shape");
    if (!vanishes_in(diffs_[i] * terms_[i].relations, terms_[i + 1]))
      fail(ErrorCode::ShapeMismatch,
           "complex: differential at " + pos(min_ + static_cast<int>(i)) +
               " does not respect relations");
  }
  for (std::size_t i = 0; i + 1 < diffs_.size(); ++i) {
    if (!vanishes_in(diffs_[i + 1] * diffs_[i], terms_[i + 2]))
      fail(ErrorCode::D1NotComplex,
           "complex: d.d != 0 at " + pos(min_ + static_cast<int>(i)));
  }
}

CochainComplex CochainComplex::free_complex(int min_degree,
                                            const std::vector<std::size_t>& ranks,
                                            std::vector<IntMatrix> differentials) {
  std::vector<PresentedGroup> terms;
  terms.reserve(ranks.size());
  for (std::size_t r : ranks) terms.push_back(PresentedGroup::free_group(r));
  return CochainComplex(min_degree, std::move(terms), std::move(differentials));
}

const PresentedGroup& CochainComplex::term(int t) const {
  if (!in_band(t)) return trivial_group();
  return terms_[static_cast<std::size_t>(t - min_)];
}

IntMatrix CochainComplex::differential(int t) const {
  if (in_band(t) && t < max_degree())
    return diffs_[static_cast<std::size_t>(t - min_)];
  return IntMatrix(term(t + 1).generators, term(t).generators);
}

FgAbGroup CochainComplex::cohomology(int t) const {
  const IntMatrix cocycles = preimage_lattice(differential(t), term(t + 1).relations);
  const IntMatrix killed = differential(t - 1).hstack(term(t).relations);
  return subquotient(cocycles, killed);
}

CohomologyPresentation CochainComplex::cohomology_presentation(int t) const {
  CohomologyPresentation pres;
  pres.cocycle_basis = preimage_lattice(differential(t), term(t + 1).relations);
  const IntMatrix killed = differential(t - 1).hstack(term(t).relations);
  // Relations on the cocycle generators: everything they send into the
  // killed lattice, which also absorbs their own linear dependencies.
  IntMatrix rels = preimage_lattice(pres.cocycle_basis, killed);
  pres.group = PresentedGroup(pres.cocycle_basis.cols(), std::move(rels));
  return pres;
}

CochainComplex CochainComplex::shifted(int k) const {
  if (empty()) return {};
  std::vector<IntMatrix> diffs = diffs_;
  if (k % 2 != 0)
    for (IntMatrix& d : diffs) d = -d;
  return CochainComplex(min_ - k, terms_, std::move(diffs));
}

ChainMap::ChainMap(CochainComplex src, CochainComplex tgt,
                   std::map<int, IntMatrix> comps)
    : source(std::move(src)), target(std::move(tgt)), components(std::move(comps)) {
  for (const auto& [t, m] : components) {
    if (m.rows() != target.term(t).generators || m.cols() != source.term(t).generators)
      fail(ErrorCode::ShapeMismatch, "chain map: component at " + pos(t) +
                                         " has the wrong shape");
    if (!vanishes_in(m * source.term(t).relations, target.term(t)))
      fail(ErrorCode::ShapeMismatch,
           "chain map: component at " + pos(t) + " does not respect relations");
  }
  if (source.empty()) return;
  for (int t = source.min_degree(); t <= source.max_degree(); ++t) {
    const IntMatrix lhs = component(t + 1) * source.differential(t);
    const IntMatrix rhs = target.differential(t) * component(t);
    IntMatrix diff = lhs;
    for (std::size_t i = 0; i < diff.rows(); ++i)
      for (std::size_t j = 0; j < diff.cols(); ++j) diff(i, j) -= rhs(i, j);
    if (!vanishes_in(diff, target.term(t + 1)))
      fail(ErrorCode::ShapeMismatch,
           "chain map: does not commute with differentials at " + pos(t));
  }
}

IntMatrix ChainMap::component(int t) const {
  auto it = components.find(t);
  if (it != components.end()) return it->second;
  return IntMatrix(target.term(t).generators, source.term(t).generators);
}

CochainComplex mapping_cone(const ChainMap& f) {
  const CochainComplex& a = f.source;
  const CochainComplex& b = f.target;
  if (a.empty() && b.empty()) return {};
  int lo = 0, hi = 0;
  bool first = true;
  auto widen = [&](int l, int h) {
    if (first) {
      lo = l;
      hi = h;
      first = false;
    } else {
      lo = std::min(lo, l);
      hi = std::max(hi, h);
    }
  };
  if (!a.empty()) widen(a.min_degree(), a.max_degree());
  if (!b.empty()) widen(b.min_degree() + 1, b.max_degree() + 1);

  std::vector<PresentedGroup> terms;
  std::vector<IntMatrix> diffs;
  for (int t = lo; t <= hi; ++t)
    terms.push_back(PresentedGroup::direct_sum({a.term(t), b.term(t - 1)}));
  for (int t = lo; t < hi; ++t) {
    const std::size_t sa = a.term(t).generators, sb = b.term(t - 1).generators;
    const std::size_t ta = a.term(t + 1).generators, tb = b.term(t).generators;
    IntMatrix d(ta + tb, sa + sb);
    d.set_block(0, 0, a.differential(t));
    d.set_block(ta, 0, f.component(t));
    d.set_block(ta, sa, -b.differential(t - 1));
    diffs.push_back(std::move(d));
  }
  return CochainComplex(lo, std::move(terms), std::move(diffs));
}

void DoubleComplex::set_entry(int p, int q, PresentedGroup g) {
  if (p < 0 || q > 0)
    fail(ErrorCode::ShapeMismatch,
         "double complex: entries must sit in the fourth quadrant");
  entries_[{p, q}] = std::move(g);
}

void DoubleComplex::set_horizontal(int p, int q, IntMatrix m) {
  horizontal_[{p, q}] = std::move(m);
}

void DoubleComplex::set_vertical(int p, int q, IntMatrix m) {
  vertical_[{p, q}] = std::move(m);
}

const PresentedGroup& DoubleComplex::entry(int p, int q) const {
  auto it = entries_.find({p, q});
  if (it != entries_.end()) return it->second;
  return trivial_group();
}

IntMatrix DoubleComplex::horizontal(int p, int q) const {
  auto it = horizontal_.find({p, q});
  if (it != horizontal_.end()) return it->second;
  return IntMatrix(entry(p + 1, q).generators, entry(p, q).generators);
}

IntMatrix DoubleComplex::vertical(int p, int q) const {
  auto it = vertical_.find({p, q});
  if (it != vertical_.end()) return it->second;
  return IntMatrix(entry(p, q + 1).generators, entry(p, q).generators);
}

std::vector<std::pair<int, int>> DoubleComplex::support() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(entries_.size());
  for (const auto& [key, g] : entries_) out.push_back(key);
  return out;
}

int DoubleComplex::max_p() const {
  int m = 0;
  for (const auto& [key, g] : entries_) m = std::max(m, key.first);
  return m;
}

int DoubleComplex::min_q() const {
  int m = 0;
  for (const auto& [key, g] : entries_) m = std::min(m, key.second);
  return m;
}

CochainComplex DoubleComplex::column(int p) const {
  int lo = 1, hi = 0;
  for (const auto& [key, g] : entries_)
    if (key.first == p) {
      if (lo > hi) {
        lo = hi = key.second;
      } else {
        lo = std::min(lo, key.second);
        hi = std::max(hi, key.second);
      }
    }
  if (lo > hi) return {};
  std::vector<PresentedGroup> terms;
  std::vector<IntMatrix> diffs;
  for (int q = lo; q <= hi; ++q) {
    terms.push_back(entry(p, q));
    if (q < hi) diffs.push_back(vertical(p, q));
  }
  return CochainComplex(lo, std::move(terms), std::move(diffs));
}

void DoubleComplex::validate() const {
  for (const auto& [key, m] : horizontal_) {
    const auto [p, q] = key;
    if (m.rows() != entry(p + 1, q).generators || m.cols() != entry(p, q).generators)
      fail(ErrorCode::ShapeMismatch, "double complex: horizontal map at (" +
                                         std::to_string(p) + "," + std::to_string(q) +
                                         ") has the wrong shape");
  }
  for (const auto& [key, m] : vertical_) {
    const auto [p, q] = key;
    if (m.rows() != entry(p, q + 1).generators || m.cols() != entry(p, q).generators)
      fail(ErrorCode::ShapeMismatch, "double complex: vertical map at (" +
                                         std::to_string(p) + "," + std::to_string(q) +
                                         ") has the wrong shape");
  }
  for (const auto& [key, g] : entries_) {
    const auto [p, q] = key;
    const auto where = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    if (!vanishes_in(horizontal(p, q) * g.relations, entry(p + 1, q)) ||
        !vanishes_in(vertical(p, q) * g.relations, entry(p, q + 1)))
      fail(ErrorCode::ShapeMismatch,
           "double complex: differential at " + where + " does not respect relations");
    if (!vanishes_in(horizontal(p + 1, q) * horizontal(p, q), entry(p + 2, q)))
      fail(ErrorCode::D1NotComplex, "double complex: d.d != 0 at " + where);
    if (!vanishes_in(vertical(p, q + 1) * vertical(p, q), entry(p, q + 2)))
      fail(ErrorCode::D1NotComplex, "double complex: v.v != 0 at " + where);
    // stored commuting: v.d = d.v
    IntMatrix lhs = vertical(p + 1, q) * horizontal(p, q);
    const IntMatrix rhs = horizontal(p, q + 1) * vertical(p, q);
    for (std::size_t i = 0; i < lhs.rows(); ++i)
      for (std::size_t j = 0; j < lhs.cols(); ++j) lhs(i, j) -= rhs(i, j);
    if (!vanishes_in(lhs, entry(p + 1, q + 1)))
      fail(ErrorCode::D1NotComplex,
           "double complex: squares do not commute at " + where);
  }
}

CochainComplex total_complex(const DoubleComplex& dc) {
  dc.validate();
  const auto support = dc.support();
  if (support.empty()) return {};

  int lo = support.front().first + support.front().second;
  int hi = lo;
  for (const auto& [p, q] : support) {
    lo = std::min(lo, p + q);
    hi = std::max(hi, p + q);
  }

  // Per total degree: the (p,q) blocks in ascending p, with their generator
  // offsets inside the direct sum.
  std::map<int, std::vector<std::pair<int, int>>> blocks;
  for (const auto& [p, q] : support) blocks[p + q].push_back({p, q});
  for (auto& [n, list] : blocks) std::sort(list.begin(), list.end());

  std::map<std::pair<int, int>, std::size_t> offset;
  std::vector<PresentedGroup> terms;
  for (int n = lo; n <= hi; ++n) {
    std::vector<PresentedGroup> parts;
    std::size_t off = 0;
    for (const auto& key : blocks[n]) {
      offset[key] = off;
      off += dc.entry(key.first, key.second).generators;
      parts.push_back(dc.entry(key.first, key.second));
    }
    terms.push_back(PresentedGroup::direct_sum(parts));
  }

  std::vector<IntMatrix> diffs;
  for (int n = lo; n < hi; ++n) {
    IntMatrix d(terms[n + 1 - lo].generators, terms[n - lo].generators);
    for (const auto& [p, q] : blocks[n]) {
      const IntMatrix h = dc.horizontal(p, q);
      if (offset.count({p + 1, q}) && h.rows() > 0 && h.cols() > 0)
        d.set_block(offset.at({p + 1, q}), offset.at({p, q}), h);
      IntMatrix v = dc.vertical(p, q);
      if (p % 2 != 0) v = -v;
      if (offset.count({p, q + 1}) && v.rows() > 0 && v.cols() > 0)
        d.set_block(offset.at({p, q + 1}), offset.at({p, q}), v);
    }
    diffs.push_back(std::move(d));
  }
  return CochainComplex(lo, std::move(terms), std::move(diffs));
}

IntMatrix induced_on_cohomology(const IntMatrix& f,
                                const CohomologyPresentation& source,
                                const CohomologyPresentation& target) {
  try {
    return lattice_coordinates(target.cocycle_basis, f * source.cocycle_basis);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotSublattice)
      fail(ErrorCode::Internal,
           "induced map sends a cocycle outside the target cocycle lattice");
    throw;
  }
}

}  // namespace chow
