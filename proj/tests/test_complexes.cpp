#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <optional>
#include <vector>

#include "chow/complexes.hpp"
#include "chow/errors.hpp"
#include "support/generators.hpp"

using namespace chow;
using testgen::Rng;

namespace {

template <typename F>
std::optional<ErrorCode> thrown_code(F&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

IntMatrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  return IntMatrix::from_rows(rows);
}

// Alternating sum of free ranks; equal for terms and cohomology on any
// bounded complex because rank is additive in short exact sequences.
long long chi_terms(const CochainComplex& c) {
  long long chi = 0;
  for (int t = c.min_degree(); t <= c.max_degree(); ++t) {
    const long long r = static_cast<long long>(c.term(t).invariants().free_rank);
    chi += (t % 2 == 0) ? r : -r;
  }
  return chi;
}

long long chi_cohomology(const CochainComplex& c) {
  long long chi = 0;
  for (int t = c.min_degree(); t <= c.max_degree(); ++t) {
    const long long r = static_cast<long long>(c.cohomology(t).free_rank);
    chi += (t % 2 == 0) ? r : -r;
  }
  return chi;
}

// Cone^t = source^t (+) target^{t-1}; these pick the two canonical maps.
IntMatrix cone_projection(const CochainComplex& cone, const CochainComplex& a,
                          int t) {
  const std::size_t sa = a.term(t).generators;
  IntMatrix p(sa, cone.term(t).generators);
  p.set_block(0, 0, IntMatrix::identity(sa));
  return p;
}

IntMatrix cone_inclusion(const CochainComplex& cone, const CochainComplex& a,
                         const CochainComplex& b, int t) {
  const std::size_t sb = b.term(t).generators;
  IntMatrix i(cone.term(t + 1).generators, sb);
  i.set_block(a.term(t + 1).generators, 0, IntMatrix::identity(sb));
  return i;
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  return lattice_contains(a, b) && lattice_contains(b, a);
}

}  // namespace

TEST_CASE("two-term free complex and out-of-band queries") {
  const auto c = CochainComplex::free_complex(0, {1, 1}, {mat({{2}})});
  CHECK(!c.empty());
  CHECK(c.min_degree() == 0);
  CHECK(c.max_degree() == 1);
  CHECK(c.in_band(0));
  CHECK(c.in_band(1));
  CHECK(!c.in_band(-1));
  CHECK(!c.in_band(2));

  CHECK(c.cohomology(0).is_trivial());
  CHECK(c.cohomology(1) == FgAbGroup{0, {2}});
  CHECK(c.cohomology(7).is_trivial());

  CHECK(c.term(5).generators == 0);
  CHECK(c.differential(-1).rows() == 1);
  CHECK(c.differential(-1).cols() == 0);
  CHECK(c.differential(1).rows() == 0);
  CHECK(c.differential(1).cols() == 1);
  CHECK(c.differential(5).rows() == 0);

  const CochainComplex empty;
  CHECK(empty.empty());
  CHECK(!empty.in_band(0));
  CHECK(empty.cohomology(0).is_trivial());
}

TEST_CASE("construction rejects bad shapes and non-complexes") {
  const auto z = PresentedGroup::free_group(1);

  CHECK(thrown_code([&] {
          CochainComplex(0, {z, z}, {mat({{1}}), mat({{1}})});
        }) == ErrorCode::ShapeMismatch);

  CHECK(thrown_code([&] {
          CochainComplex(0, {PresentedGroup::free_group(2), z},
                         {mat({{1}})});
        }) == ErrorCode::ShapeMismatch);

  // d must carry source relations into the target relation lattice
  const PresentedGroup z2(1, mat({{2}}));
  CHECK(thrown_code([&] {
          CochainComplex(0, {z2, z}, {mat({{1}})});
        }) == ErrorCode::ShapeMismatch);

  CHECK(thrown_code([&] {
          CochainComplex::free_complex(0, {1, 1, 1}, {mat({{1}}), mat({{1}})});
        }) == ErrorCode::D1NotComplex);

  // d.d lands in the relations of the target, so this one is fine
  const PresentedGroup z4(1, mat({{4}}));
  const CochainComplex ok(0, {z, z4, z2}, {mat({{2}}), mat({{2}})});
  CHECK(ok.cohomology(0) == FgAbGroup{1, {}});
  CHECK(ok.cohomology(1) == FgAbGroup{0, {2}});
  CHECK(ok.cohomology(2) == FgAbGroup{0, {2}});
  CHECK(chi_terms(ok) == chi_cohomology(ok));
}

TEST_CASE("presented terms: Z/4 -> Z/8 by multiplication by 2") {
  const PresentedGroup z4(1, mat({{4}}));
  const PresentedGroup z8(1, mat({{8}}));
  const CochainComplex c(0, {z4, z8}, {mat({{2}})});
  CHECK(c.cohomology(0).is_trivial());
  CHECK(c.cohomology(1) == FgAbGroup{0, {2}});
}

TEST_CASE("shift moves terms and flips odd-shift differentials") {
  Rng rng(4101);
  const auto model = testgen::random_block_model(rng, -2, 4, 2, 2, 6);
  const auto c = testgen::conjugate(rng, model).complex;

  for (int k : {1, 2, -1}) {
    const auto s = c.shifted(k);
    CHECK(s.min_degree() == c.min_degree() - k);
    for (int t = s.min_degree() - 1; t <= s.max_degree() + 1; ++t) {
      CHECK(s.cohomology(t) == c.cohomology(t + k));
      CHECK(s.term(t).generators == c.term(t + k).generators);
      const IntMatrix expect =
          (k % 2 != 0) ? -c.differential(t + k) : c.differential(t + k);
      CHECK(s.differential(t) == expect);
    }
  }
}

TEST_CASE("Euler characteristic of terms equals Euler characteristic of cohomology") {
  for (int seed = 0; seed < 10; ++seed) {
    Rng rng(5200 + seed);
    const int lo = testgen::rand_int(rng, -3, 0);
    const int degrees = testgen::rand_int(rng, 2, 5);
    const auto model = testgen::random_block_model(rng, lo, degrees, 3, 2, 9);
    const auto c = testgen::conjugate(rng, model).complex;
    CHECK(chi_terms(c) == chi_cohomology(c));
  }
}

TEST_CASE("cone of multiplication by two on a single term") {
  const auto a = CochainComplex::free_complex(0, {1}, {});
  const auto b = CochainComplex::free_complex(0, {1}, {});
  const ChainMap f(a, b, {{0, mat({{2}})}});
  const auto cone = mapping_cone(f);
  CHECK(cone.min_degree() == 0);
  CHECK(cone.max_degree() == 1);
  CHECK(cone.cohomology(0).is_trivial());
  CHECK(cone.cohomology(1) == FgAbGroup{0, {2}});
}

TEST_CASE("cone of the identity is acyclic") {
  Rng rng(6300);
  const auto model = testgen::random_block_model(rng, -2, 4, 2, 2, 5);
  const auto c = testgen::conjugate(rng, model).complex;
  std::map<int, IntMatrix> comps;
  for (int t = c.min_degree(); t <= c.max_degree(); ++t)
    comps[t] = IntMatrix::identity(c.term(t).generators);
  const auto cone = mapping_cone(ChainMap(c, c, comps));
  for (int t = cone.min_degree() - 1; t <= cone.max_degree() + 1; ++t)
    CHECK(cone.cohomology(t).is_trivial());
}

TEST_CASE("cone of the zero map sums the cohomologies") {
  for (int seed = 0; seed < 5; ++seed) {
    Rng rng(7400 + seed);
    const int lo = testgen::rand_int(rng, -2, 0);
    const int degrees = testgen::rand_int(rng, 2, 4);
    const auto a =
        testgen::conjugate(rng, testgen::random_block_model(rng, lo, degrees, 2, 2, 6))
            .complex;
    const auto b =
        testgen::conjugate(rng, testgen::random_block_model(rng, lo, degrees, 2, 2, 6))
            .complex;
    const auto cone = mapping_cone(ChainMap(a, b, {}));
    for (int t = cone.min_degree() - 1; t <= cone.max_degree() + 1; ++t)
      CHECK(cone.cohomology(t) ==
            testgen::fg_direct_sum(a.cohomology(t), b.cohomology(t - 1)));
  }
}

TEST_CASE("mapping cone long exact sequence is exact") {
  for (int seed = 0; seed < 40; ++seed) {
    CAPTURE(seed);
    Rng rng(9000 + seed);
    const int lo = testgen::rand_int(rng, -3, 0);
    const int degrees = testgen::rand_int(rng, 2, 4);
    const auto am = testgen::random_block_model(rng, lo, degrees, 2, 2, 6);
    const auto bm = testgen::random_block_model(rng, lo, degrees, 2, 2, 6);
    const auto fb = testgen::random_block_chain_map(rng, am, bm);
    const auto a = testgen::conjugate(rng, am);
    const auto b = testgen::conjugate(rng, bm);
    std::map<int, IntMatrix> comps;
    for (int i = 0; i < degrees; ++i)
      comps[lo + i] = b.q[static_cast<std::size_t>(i)] *
                      fb[static_cast<std::size_t>(i)] *
                      a.qinv[static_cast<std::size_t>(i)];
    const ChainMap f(a.complex, b.complex, comps);
    const auto cone = mapping_cone(f);

    CHECK(chi_cohomology(cone) == chi_cohomology(a.complex) - chi_cohomology(b.complex));

    for (int t = cone.min_degree() - 1; t <= cone.max_degree(); ++t) {
      CAPTURE(t);
      const auto hc = cone.cohomology_presentation(t);
      const auto hc1 = cone.cohomology_presentation(t + 1);
      const auto ha = a.complex.cohomology_presentation(t);
      const auto ha1 = a.complex.cohomology_presentation(t + 1);
      const auto hb = b.complex.cohomology_presentation(t);

      const IntMatrix pt =
          induced_on_cohomology(cone_projection(cone, a.complex, t), hc, ha);
      const IntMatrix pt1 =
          induced_on_cohomology(cone_projection(cone, a.complex, t + 1), hc1, ha1);
      const IntMatrix ft = induced_on_cohomology(f.component(t), ha, hb);
      const IntMatrix ft1 =
          induced_on_cohomology(f.component(t + 1), ha1, b.complex.cohomology_presentation(t + 1));
      const IntMatrix it =
          induced_on_cohomology(cone_inclusion(cone, a.complex, b.complex, t), hb, hc1);

      // im = ker at the three spots reachable from degree t
      CHECK(same_lattice(pt.hstack(ha.group.relations),
                         preimage_lattice(ft, hb.group.relations)));
      CHECK(same_lattice(ft.hstack(hb.group.relations),
                         preimage_lattice(it, hc1.group.relations)));
      CHECK(same_lattice(it.hstack(hc1.group.relations),
                         preimage_lattice(pt1, ha1.group.relations)));

      // 0 -> coker(f at t) -> H^{t+1}(cone) -> ker(f at t+1) -> 0
      const FgAbGroup cok = presented_map_cokernel(ft, hb.group);
      const FgAbGroup kf = presented_map_kernel(
          ft1, ha1.group, b.complex.cohomology_presentation(t + 1).group);
      const FgAbGroup mid = cone.cohomology(t + 1);
      CHECK(mid.free_rank == cok.free_rank + kf.free_rank);
      CHECK(mid.torsion_order() % cok.torsion_order() == 0);
      CHECK((cok.torsion_order() * kf.torsion_order()) % mid.torsion_order() == 0);
    }
  }
}

TEST_CASE("two-column double complex totalizes to the mapping cone") {
  for (int seed = 0; seed < 8; ++seed) {
    CAPTURE(seed);
    Rng rng(11000 + seed);
    const int degrees = testgen::rand_int(rng, 2, 4);
    const int lo = testgen::rand_int(rng, -3, 1 - degrees);
    const auto am = testgen::random_block_model(rng, lo, degrees, 2, 2, 6);
    const auto bm = testgen::random_block_model(rng, lo, degrees, 2, 2, 6);
    const auto fb = testgen::random_block_chain_map(rng, am, bm);
    const auto a = testgen::conjugate(rng, am);
    const auto b = testgen::conjugate(rng, bm);
    std::map<int, IntMatrix> comps;
    for (int i = 0; i < degrees; ++i)
      comps[lo + i] = b.q[static_cast<std::size_t>(i)] *
                      fb[static_cast<std::size_t>(i)] *
                      a.qinv[static_cast<std::size_t>(i)];
    const ChainMap f(a.complex, b.complex, comps);

    DoubleComplex dc;
    for (int t = lo; t < lo + degrees; ++t) {
      dc.set_entry(0, t, a.complex.term(t));
      dc.set_entry(1, t, b.complex.term(t));
      if (t + 1 < lo + degrees) {
        dc.set_vertical(0, t, a.complex.differential(t));
        dc.set_vertical(1, t, b.complex.differential(t));
      }
      dc.set_horizontal(0, t, f.component(t));
    }

    const auto tot = total_complex(dc);
    const auto cone = mapping_cone(f);
    REQUIRE(tot.min_degree() == cone.min_degree());
    REQUIRE(tot.max_degree() == cone.max_degree());
    for (int t = tot.min_degree(); t <= tot.max_degree(); ++t) {
      CHECK(tot.term(t).generators == cone.term(t).generators);
      CHECK(tot.differential(t) == cone.differential(t));
      CHECK(tot.cohomology(t) == cone.cohomology(t));
    }

    // column accessor returns the stored complexes
    const auto col0 = dc.column(0);
    CHECK(col0.min_degree() == lo);
    for (int t = lo; t < lo + degrees; ++t)
      CHECK(col0.cohomology(t) == a.complex.cohomology(t));
  }
}

TEST_CASE("identity square totalizes to an acyclic complex") {
  DoubleComplex dc;
  const auto z = PresentedGroup::free_group(1);
  dc.set_entry(0, -1, z);
  dc.set_entry(0, 0, z);
  dc.set_entry(1, -1, z);
  dc.set_entry(1, 0, z);
  dc.set_vertical(0, -1, mat({{1}}));
  dc.set_vertical(1, -1, mat({{1}}));
  dc.set_horizontal(0, -1, mat({{1}}));
  dc.set_horizontal(0, 0, mat({{1}}));
  const auto tot = total_complex(dc);
  for (int t = tot.min_degree(); t <= tot.max_degree(); ++t)
    CHECK(tot.cohomology(t).is_trivial());
}

TEST_CASE("double complex validation catches the standard mistakes") {
  const auto z = PresentedGroup::free_group(1);

  CHECK(thrown_code([&] {
          DoubleComplex dc;
          dc.set_entry(-1, 0, z);
        }) == ErrorCode::ShapeMismatch);
  CHECK(thrown_code([&] {
          DoubleComplex dc;
          dc.set_entry(0, 1, z);
        }) == ErrorCode::ShapeMismatch);

  // non-commuting square
  CHECK(thrown_code([&] {
          DoubleComplex dc;
          dc.set_entry(0, -1, z);
          dc.set_entry(0, 0, z);
          dc.set_entry(1, -1, z);
          dc.set_entry(1, 0, z);
          dc.set_vertical(0, -1, mat({{1}}));
          dc.set_vertical(1, -1, mat({{1}}));
          dc.set_horizontal(0, -1, mat({{2}}));
          dc.set_horizontal(0, 0, mat({{1}}));
          dc.validate();
        }) == ErrorCode::D1NotComplex);

  // vertical composite fails to vanish
  CHECK(thrown_code([&] {
          DoubleComplex dc;
          dc.set_entry(0, -2, z);
          dc.set_entry(0, -1, z);
          dc.set_entry(0, 0, z);
          dc.set_vertical(0, -2, mat({{1}}));
          dc.set_vertical(0, -1, mat({{1}}));
          dc.validate();
        }) == ErrorCode::D1NotComplex);

  // wrong horizontal shape
  CHECK(thrown_code([&] {
          DoubleComplex dc;
          dc.set_entry(0, 0, z);
          dc.set_entry(1, 0, PresentedGroup::free_group(2));
          dc.set_horizontal(0, 0, mat({{1}}));
          dc.validate();
        }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("chain maps must commute with the differentials") {
  const auto a = CochainComplex::free_complex(0, {1, 1}, {mat({{2}})});
  CHECK(thrown_code([&] {
          ChainMap(a, a, {{0, mat({{1}})}});
        }) == ErrorCode::ShapeMismatch);
  // the fix: also map degree 1 by the identity
  const ChainMap ok(a, a, {{0, mat({{1}})}, {1, mat({{1}})}});
  CHECK(ok.component(0) == mat({{1}}));
  CHECK(ok.component(5).rows() == 0);
}
