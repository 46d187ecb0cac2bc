#include "chow/spectral.hpp"

#include <algorithm>

#include "chow/errors.hpp"

namespace chow {

bool PageEntry::is_trivial() const {
  return kind == Kind::Discrete ? discrete.is_trivial() : diag.is_trivial();
}

std::size_t PageEntry::rank() const {
  return kind == Kind::Discrete ? discrete.free_rank : diag.torus_rank;
}

Int PageEntry::torsion_order() const {
  return kind == Kind::Discrete ? discrete.torsion_order()
                                : diag.finite.torsion_order();
}

std::string PageEntry::to_string() const {
  return kind == Kind::Discrete ? discrete.to_string() : diag.to_string();
}

PageEntry Page::entry(int p, int q) const {
  auto it = entries.find({p, q});
  if (it != entries.end()) return it->second;
  return {};
}

void Page::set(int p, int q, PageEntry e) { entries[{p, q}] = std::move(e); }

Page e1_page(const DoubleComplex& dc) {
  dc.validate();
  Page page;
  page.index = 1;

  const int pmax = dc.max_p();
  const int qmin = dc.min_q();

  // Vertical cohomology presentations, column by column.
  std::map<std::pair<int, int>, CohomologyPresentation> pres;
  std::vector<CochainComplex> columns;
  for (int p = 0; p <= pmax; ++p) columns.push_back(dc.column(p));
  for (int p = 0; p <= pmax; ++p)
    for (int q = qmin; q <= 0; ++q)
      pres[{p, q}] = columns[p].cohomology_presentation(q);

  // Induced d1 along the horizontal maps, assembled into one complex per row.
  for (int q = qmin; q <= 0; ++q) {
    std::vector<PresentedGroup> terms;
    std::vector<IntMatrix> diffs;
    for (int p = 0; p <= pmax; ++p) {
      terms.push_back(pres[{p, q}].group);
      if (p < pmax)
        diffs.push_back(
            induced_on_cohomology(dc.horizontal(p, q), pres[{p, q}], pres[{p + 1, q}]));
    }
    page.rows[q] = CochainComplex(0, std::move(terms), std::move(diffs));
    for (int p = 0; p <= pmax; ++p) {
      FgAbGroup h = pres[{p, q}].group.invariants();
      if (!h.is_trivial()) page.set(p, q, PageEntry::of(std::move(h)));
    }
  }
  return page;
}

Page e2_page(const Page& p1) {
  if (p1.index != 1)
    fail(ErrorCode::ShapeMismatch, "e2_page expects a page of index 1");
  Page page;
  page.index = 2;
  for (const auto& [q, row] : p1.rows) {
    if (row.empty()) continue;
    for (int p = row.min_degree(); p <= row.max_degree(); ++p) {
      FgAbGroup h = row.cohomology(p);
      if (!h.is_trivial()) page.set(p, q, PageEntry::of(std::move(h)));
    }
  }
  return page;
}

AbutmentReport two_row_abutment(const Page& p2, int dimension) {
  if (p2.index != 2)
    fail(ErrorCode::ShapeMismatch, "two_row_abutment expects a page of index 2");
  AbutmentReport report;
  for (const auto& [key, e] : p2.entries) {
    const auto [p, q] = key;
    if (e.is_trivial()) continue;
    if (q != 0 && q != -1)
      fail(ErrorCode::ShapeMismatch,
           "two_row_abutment: nontrivial entry outside rows {0,-1} at (" +
               std::to_string(p) + "," + std::to_string(q) + ")");
    if (p < 0 || p > dimension - 1)
      fail(ErrorCode::ShapeMismatch,
           "two_row_abutment: column " + std::to_string(p) +
               " outside [0," + std::to_string(dimension - 1) + "]");
  }

  bool collapses = true;
  for (const auto& [key, e] : p2.entries) {
    const auto [p, q] = key;
    if (q != 0 || e.is_trivial()) continue;
    const PageEntry target = p2.entry(p + 2, -1);
    if (!target.is_trivial()) {
      collapses = false;
      report.caveats.push_back(
          "indeterminate: d2 from (" + std::to_string(p) + ",0) to (" +
          std::to_string(p + 2) + ",-1) has nontrivial source and target");
    }
  }
  report.degenerate = collapses;
  if (!collapses) return report;

  for (const auto& [key, e] : p2.entries) {
    if (e.is_trivial()) continue;
    report.graded[key.first + key.second].push_back({key.first, key.second, e});
  }
  for (auto& [n, pieces] : report.graded)
    std::sort(pieces.begin(), pieces.end(),
              [](const AbutmentPiece& a, const AbutmentPiece& b) { return a.p > b.p; });
  return report;
}

DiagGroup torus_row_cohomology(const CochainComplex& lattice_row, int t) {
  if (lattice_row.empty()) return {};
  for (int s = lattice_row.min_degree(); s <= lattice_row.max_degree(); ++s)
    if (lattice_row.term(s).relations.cols() != 0)
      fail(ErrorCode::ShapeMismatch,
           "torus_row_cohomology: terms must be free character lattices");

  // Transposed chain complex, re-indexed so C_s sits in degree -s; its
  // cohomology at -t is H_t of the chains.
  const int lo = lattice_row.min_degree(), hi = lattice_row.max_degree();
  std::vector<PresentedGroup> terms;
  std::vector<IntMatrix> diffs;
  for (int s = hi; s >= lo; --s) {
    terms.push_back(lattice_row.term(s));
    if (s > lo) diffs.push_back(lattice_row.differential(s - 1).transpose());
  }
  const CochainComplex chains(-hi, std::move(terms), std::move(diffs));
  const FgAbGroup h = chains.cohomology(-t);
  // Hom(-, C*): free rank becomes torus rank, torsion is carried over as
  // roots of unity.
  return DiagGroup{h.free_rank, FgAbGroup{0, h.torsion}};
}

}  // namespace chow
