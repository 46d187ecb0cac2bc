#include "chow/dual_complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "chow/errors.hpp"

namespace chow {

namespace {

std::string join_indices(const std::vector<int>& idx) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
  os << "}";
  return os.str();
}

std::vector<int> omit(const std::vector<int>& idx, std::size_t j) {
  std::vector<int> out;
  out.reserve(idx.size() - 1);
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (i != j) out.push_back(idx[i]);
  return out;
}

}  // namespace

DualComplex DualComplex::build(const std::vector<Stratum>& strata) {
  std::set<std::string> seen;
  std::size_t max_size = 0;
  for (const Stratum& s : strata) {
    if (!seen.insert(s.id).second)
      fail(ErrorCode::DuplicateId, "stratum id repeated: " + s.id);
    if (s.indices.empty())
      fail(ErrorCode::ConsistencyError, "stratum " + s.id + ": empty index set");
    if (!std::is_sorted(s.indices.begin(), s.indices.end()) ||
        std::adjacent_find(s.indices.begin(), s.indices.end()) != s.indices.end())
      fail(ErrorCode::ConsistencyError,
           "stratum " + s.id + ": indices must be strictly increasing");
    max_size = std::max(max_size, s.indices.size());
  }

  DualComplex dc;
  if (strata.empty()) return dc;
  dc.cells_.resize(max_size);
  for (const Stratum& s : strata) {
    Cell c;
    c.id = s.id;
    c.indices = s.indices;
    c.irreducible = s.irreducible;
    dc.cells_[s.indices.size() - 1].push_back(std::move(c));
  }
  for (auto& level : dc.cells_)
    std::sort(level.begin(), level.end(), [](const Cell& a, const Cell& b) {
      return std::tie(a.indices, a.id) < std::tie(b.indices, b.id);
    });

  // Lookup tables: by id, and by index set within each dimension.
  std::map<std::string, std::pair<int, std::size_t>> by_id;
  std::vector<std::map<std::vector<int>, std::vector<std::size_t>>> by_indices(
      max_size);
  for (int t = 0; t < static_cast<int>(max_size); ++t)
    for (std::size_t i = 0; i < dc.cells_[t].size(); ++i) {
      by_id[dc.cells_[t][i].id] = {t, i};
      by_indices[t][dc.cells_[t][i].indices].push_back(i);
    }

  // Index sets may repeat only for reducible intersections.
  for (int t = 0; t < static_cast<int>(max_size); ++t)
    for (const auto& [idx, positions] : by_indices[t])
      if (positions.size() > 1)
        for (std::size_t i : positions)
          if (dc.cells_[t][i].irreducible)
            fail(ErrorCode::ConsistencyError,
                 "stratum " + dc.cells_[t][i].id + ": index set " +
                     join_indices(idx) +
                     " is shared, so the intersection cannot be irreducible");

  std::map<std::string, const Stratum*> input_by_id;
  for (const Stratum& s : strata) input_by_id[s.id] = &s;

  for (int t = 1; t < static_cast<int>(max_size); ++t) {
    for (Cell& cell : dc.cells_[t]) {
      const Stratum& input = *input_by_id.at(cell.id);
      const std::size_t nfaces = cell.indices.size();
      if (!input.faces.empty() && input.faces.size() != nfaces)
        fail(ErrorCode::ConsistencyError,
             "stratum " + cell.id + ": expected " + std::to_string(nfaces) +
                 " face ids, got " + std::to_string(input.faces.size()));
      for (std::size_t j = 0; j < nfaces; ++j) {
        const std::vector<int> want = omit(cell.indices, j);
        if (!input.faces.empty()) {
          auto it = by_id.find(input.faces[j]);
          if (it == by_id.end())
            fail(ErrorCode::MissingFace,
                 "stratum " + cell.id + ": face id " + input.faces[j] +
                     " does not exist");
          const auto [ft, fi] = it->second;
          if (ft != t - 1 || dc.cells_[t - 1][fi].indices != want)
            fail(ErrorCode::ConsistencyError,
                 "stratum " + cell.id + ": face " + input.faces[j] +
                     " does not have index set " + join_indices(want));
          cell.faces.push_back(fi);
          continue;
        }
        auto it = by_indices[t - 1].find(want);
        if (it == by_indices[t - 1].end())
          fail(ErrorCode::MissingFace, "stratum " + cell.id + ": no stratum with index set " +
                                           join_indices(want));
        if (it->second.size() > 1)
          fail(ErrorCode::AmbiguousFace,
               "stratum " + cell.id + ": index set " + join_indices(want) +
                   " names several strata; list faces explicitly");
        cell.faces.push_back(it->second.front());
      }
    }
  }
  return dc;
}

std::size_t DualComplex::cell_count(int t) const {
  if (t < 0 || t > dimension()) return 0;
  return cells_[t].size();
}

const std::vector<DualComplex::Cell>& DualComplex::cells(int t) const {
  static const std::vector<Cell> none;
  if (t < 0 || t > dimension()) return none;
  return cells_[t];
}

const DualComplex::Cell* DualComplex::find(const std::string& id) const {
  for (const auto& level : cells_)
    for (const Cell& c : level)
      if (c.id == id) return &c;
  return nullptr;
}

bool DualComplex::all_irreducible() const {
  for (const auto& level : cells_) {
    for (const Cell& c : level)
      if (!c.irreducible) return false;
    for (std::size_t i = 1; i < level.size(); ++i)
      if (level[i].indices == level[i - 1].indices) return false;
  }
  return true;
}

std::vector<std::size_t> DualComplex::vertex_component() const {
  const std::size_t n = cell_count(0);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Cell& e : cells(1)) parent[root(e.faces[0])] = root(e.faces[1]);
  std::vector<std::size_t> comp(n);
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = root(v);
    auto [it, fresh] = renumber.insert({r, renumber.size()});
    comp[v] = it->second;
  }
  return comp;
}

std::size_t DualComplex::component_count() const {
  const auto comp = vertex_component();
  return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
}

CochainComplex DualComplex::coboundary_complex() const {
  if (empty()) return {};
  std::vector<std::size_t> ranks;
  for (int t = 0; t <= dimension(); ++t) ranks.push_back(cell_count(t));
  std::vector<IntMatrix> diffs;
  for (int t = 0; t < dimension(); ++t) {
    IntMatrix d(cell_count(t + 1), cell_count(t));
    const auto& level = cells(t + 1);
    for (std::size_t r = 0; r < level.size(); ++r)
      for (std::size_t j = 0; j < level[r].faces.size(); ++j)
        d(r, level[r].faces[j]) += (j % 2 == 0) ? 1 : -1;
    diffs.push_back(std::move(d));
  }
  return CochainComplex::free_complex(0, ranks, std::move(diffs));
}

FgAbGroup DualComplex::cohomology(int t) const {
  if (empty() || t < 0 || t > dimension()) return {};
  return coboundary_complex().cohomology(t);
}

bool DualComplex::is_acyclic() const {
  if (empty()) return false;
  const CochainComplex c = coboundary_complex();
  if (c.cohomology(0) != FgAbGroup{1, {}}) return false;
  for (int t = 1; t <= dimension(); ++t)
    if (!c.cohomology(t).is_trivial()) return false;
  return true;
}

std::string DualComplex::export_dot() const {
  std::vector<std::string> nodes;
  for (const Cell& v : cells(0))
    nodes.push_back("  \"" + v.id + "\" [label=\"" + v.id + " " +
                    join_indices(v.indices) + "\"];");
  std::sort(nodes.begin(), nodes.end());

  std::vector<std::string> edges;
  for (const Cell& e : cells(1)) {
    std::string a = cells(0)[e.faces[0]].id;
    std::string b = cells(0)[e.faces[1]].id;
    if (b < a) std::swap(a, b);
    edges.push_back("  \"" + a + "\" -- \"" + b + "\" [label=\"" + e.id + "\"];");
  }
  std::sort(edges.begin(), edges.end());

  std::ostringstream os;
  os << "graph dual_complex {\n";
  for (const auto& line : nodes) os << line << "\n";
  for (const auto& line : edges) os << line << "\n";
  os << "}\n";
  return os.str();
}

}  // namespace chow
