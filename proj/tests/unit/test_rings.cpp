#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "random.hpp"
#include "ringdiag/complex.hpp"
#include "ringdiag/error.hpp"
#include "ringdiag/smith.hpp"

using namespace ringdiag;

namespace {

const Ring Z = Ring::integers();

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Internal;
}

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

// Brute force over the finite target Z[T^-1]/(b) = Z/b: the image of 1 is 1,
// so a map exists iff a maps to 0 and every inverted source prime has an
// inverse mod b.
bool map_exists_brute(const Ring& src, long b) {
  const long a = src.modulus().get_si();
  if (a % b != 0 && !(a == 0)) return false;
  for (const auto& p : src.inverted()) {
    bool found = false;
    for (long v = 0; v < b && !found; ++v) found = (p.get_si() * v) % b == 1 % b;
    if (!found) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("ring construction") {
  CHECK(code_of([] { Ring::make(ints({4})); }) == ErrorCode::InvalidRing);
  CHECK(code_of([] { Ring::make(ints({2}), 6); }) == ErrorCode::InvalidRing);
  CHECK(code_of([] { Ring::make_all(5); }) == ErrorCode::InvalidRing);
  CHECK(Ring::make_all(1).is_zero_ring());
  CHECK(Ring::make(ints({3, 2, 3})).inverted() == ints({2, 3}));

  Ring r = Ring::localized({2}, 0);
  CHECK(r.contains(Rational(3, 8)));
  CHECK_FALSE(r.contains(Rational(1, 3)));
  CHECK(r.is_unit(Rational(-4)));
  CHECK_FALSE(r.is_unit(Rational(6)));
  CHECK(r.strip_units(24) == 3);

  Ring q = Ring::localized({3}, 4);
  CHECK(q.canonical(Rational(1, 3)) == 3);
  CHECK(q.canonical(Rational(-1)) == 3);
  CHECK(Ring::zero().canonical(Rational(7)) == 0);
}

TEST_CASE("canonical ring maps") {
  CHECK_NOTHROW(RingMap::canonical(Z, Ring::make({}, 4)));
  CHECK(code_of([] { RingMap::canonical(Ring::localized({2}), Ring::make({}, 4)); }) == ErrorCode::NoCanonicalMap);
  CHECK(code_of([] { RingMap::canonical(Ring::make({}, 4), Z); }) == ErrorCode::NoCanonicalMap);
  CHECK(code_of([] { RingMap::canonical(Ring::localized({2}), Z); }) == ErrorCode::NoCanonicalMap);
  CHECK_NOTHROW(RingMap::canonical(Ring::localized({2}), Ring::rationals()));

  // Z/12 -> Z[1/3]/(4), compared elementwise with the reduction Z/12 -> Z/4
  RingMap f = RingMap::canonical(Ring::make({}, 12), Ring::localized({3}, 4));
  for (long x = 0; x < 12; ++x) CHECK(f.apply(Rational(x)) == x % 4);
  std::size_t unital_maps = 0;
  for (long u = 0; u < 4; ++u) {
    bool ok = (12 * u) % 4 == 0 && u == 1;
    for (long x = 0; x < 12 && ok; ++x)
      for (long y = 0; y < 12 && ok; ++y) ok = ((x * y % 12) * u) % 4 == ((x * u) % 4) * ((y * u) % 4) % 4;
    unital_maps += ok;
  }
  CHECK(unital_maps == 1);
}

TEST_CASE("map existence matches brute force on finite targets") {
  const std::vector<std::vector<long>> sets{{}, {2}, {3}, {5}, {2, 3}, {3, 5}};
  for (const auto& s : sets)
    for (long a : {0L, 1L, 2L, 3L, 4L, 6L, 7L, 8L, 9L, 12L, 15L, 25L, 35L}) {
      std::vector<Integer> si(s.begin(), s.end());
      Ring src;
      try {
        src = Ring::make(si, a);
      } catch (const Error&) {
        continue;
      }
      for (const auto& t : std::vector<std::vector<long>>{{}, {2}, {3}, {2, 5}})
        for (long b = 1; b <= 16; ++b) {
          std::vector<Integer> ti(t.begin(), t.end());
          Ring dst;
          try {
            dst = Ring::make(ti, b);
          } catch (const Error&) {
            continue;
          }
          const bool exists = !RingMap::obstruction(src, dst).has_value();
          CAPTURE(src.name());
          CAPTURE(dst.name());
          CHECK(exists == map_exists_brute(src, b));
          if (exists) {
            RingMap f = RingMap::canonical(src, dst);
            for (const auto& p : src.inverted()) CHECK(dst.canonical(f.apply(Rational(1, p)) * p) == dst.canonical(1));
          }
        }
    }
}

TEST_CASE("module-finite maps") {
  CHECK(RingMap::canonical(Z, Ring::make({}, 4)).is_module_finite());
  CHECK(RingMap::identity(Ring::localized({2})).is_module_finite());
  CHECK_FALSE(RingMap::canonical(Z, Ring::localized({2})).is_module_finite());
  RingMap g = RingMap::canonical(Z, Ring::localized({2}, 3));
  CHECK(g.is_module_finite());
  CHECK(g.apply(g.lift(Rational(1, 2))) == Ring::localized({2}, 3).canonical(Rational(1, 2)));
}

TEST_CASE("Smith normal form examples") {
  SmithForm s = smith_normal_form(Z, Matrix{{2, 4}, {6, 8}});
  CHECK(s.diagonal == ints({2, 4}));
  CHECK(oracle::minor_gcd_factors({{2, 4}, {6, 8}}) == ints({2, 4}));

  CHECK(smith_normal_form(Ring::localized({2}), Matrix{{2}}).diagonal == ints({1}));
  SmithForm id = smith_normal_form(Z, Matrix::identity(3));
  CHECK(id.D == Matrix::identity(3));

  SmithForm empty = smith_normal_form(Z, Matrix(0, 3));
  CHECK(empty.rank == 0);
  CHECK(empty.V.rows() == 3);
}

TEST_CASE("Smith normal form round trip and minor-gcd agreement") {
  gen::Rng rng(21);
  const std::vector<Ring> rings{Z, Ring::localized({2}), Ring::localized({2, 3}), Ring::rationals()};
  for (int trial = 0; trial < 300; ++trial) {
    const Ring& r = rng.pick(rings);
    Matrix m = gen::random_matrix(rng, rng.uniform(0, 4), rng.uniform(0, 4), -30, 30);
    if (!r.inverts_all() && rng.coin(0.3) && !r.inverted().empty())
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (m.cols() > 0) m(i, 0) /= r.inverted().front();
    SmithForm s = smith_normal_form(r, m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(s.U * s.U_inv == Matrix::identity(m.rows()));
    CHECK(s.V * s.V_inv == Matrix::identity(m.cols()));
    for (const Matrix* x : {&s.U, &s.U_inv, &s.V, &s.V_inv})
      for (std::size_t i = 0; i < x->rows(); ++i)
        for (std::size_t j = 0; j < x->cols(); ++j) CHECK(r.contains((*x)(i, j)));
    for (std::size_t i = 1; i < s.diagonal.size(); ++i) CHECK(s.diagonal[i] % s.diagonal[i - 1] == 0);

    auto expected = oracle::minor_gcd_factors(oracle::clear_denominators(m));
    REQUIRE(expected.size() == s.rank);
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(s.diagonal[i] == r.strip_units(expected[i]));
  }
}

TEST_CASE("module invariants") {
  CHECK(FPModule(Z, 2, Matrix{{2, 0}, {0, 3}}).invariants() == ModuleInvariants{0, ints({6})});
  CHECK(FPModule::free(Ring::rationals(), 2).invariants() == ModuleInvariants{2, {}});
  CHECK(FPModule(Ring::make({}, 4), 1, Matrix{{2}}).invariants() == ModuleInvariants{0, ints({2})});
  CHECK(FPModule::free(Ring::make({}, 4), 1).invariants() == ModuleInvariants{1, {}});
  CHECK(FPModule::zero(Ring::zero()).is_zero());
  CHECK(FPModule::free(Ring::zero(), 3).is_zero());
  CHECK(FPModule::from_invariants(Z, {1, ints({2, 4})}).invariants() == ModuleInvariants{1, ints({2, 4})});
}

TEST_CASE("invariants over quotient rings agree with element counting") {
  gen::Rng rng(22);
  const std::vector<Ring> rings{Ring::make({}, 4), Ring::make({}, 12), Ring::localized({5}, 9), Ring::make({}, 8)};
  for (int trial = 0; trial < 80; ++trial) {
    const Ring& r = rng.pick(rings);
    std::size_t g = static_cast<std::size_t>(rng.uniform(0, 2));
    FPModule m(r, g, gen::random_matrix(rng, g, static_cast<std::size_t>(rng.uniform(0, 2)), -6, 6).reduced(r));
    auto h = oracle::finite_complex_homology(ChainComplex::from_module(m));
    CAPTURE(m.to_string());
    CHECK(oracle::group_of(m.invariants(), r) == h.at(0));
  }
}

TEST_CASE("invariants over localizations agree with minor gcds") {
  gen::Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    Ring r = rng.coin() ? Z : Ring::localized({3});
    std::size_t g = static_cast<std::size_t>(rng.uniform(0, 4));
    Matrix rel = gen::random_matrix(rng, g, static_cast<std::size_t>(rng.uniform(0, 4)), -12, 12);
    FPModule m(r, g, rel);
    auto f = oracle::minor_gcd_factors(oracle::clear_denominators(rel));
    ModuleInvariants expected{g - f.size(), {}};
    for (const auto& d : f)
      if (r.strip_units(d) != 1) expected.torsion.push_back(r.strip_units(d));
    CHECK(m.invariants() == expected);
  }
}

TEST_CASE("kernels, images and cokernels") {
  Matrix k = kernel_basis(Z, Matrix{{2, -1}});
  REQUIRE(k.cols() == 1);
  CHECK(((k(0, 0) == 1 && k(1, 0) == 2) || (k(0, 0) == -1 && k(1, 0) == -2)));
  CHECK((Matrix{{2, -1}} * k).is_zero());

  CHECK(cokernel(FPModule::free(Z, 2), FPModule::free(Z, 2), Matrix::identity(2)).is_zero());

  Ring z4 = Ring::make({}, 4);
  Subobject ker = kernel(FPModule::free(z4, 1), FPModule::free(z4, 1), Matrix{{2}});
  CHECK(ker.module.invariants() == ModuleInvariants{0, ints({2})});
  REQUIRE(ker.inclusion.cols() == 1);
  CHECK(z4.canonical(ker.inclusion(0, 0)) == 2);

  Subobject im = image(FPModule::free(Z, 2), FPModule::free(Z, 1), Matrix{{4, 6}});
  CHECK(im.module.invariants() == ModuleInvariants{1, {}});
  CHECK(is_surjective(FPModule::free(Z, 2), FPModule::free(Z, 1), Matrix{{2, 3}}));
  CHECK_FALSE(is_injective(FPModule::free(Z, 2), FPModule::free(Z, 1), Matrix{{2, 3}}));
  CHECK(is_isomorphism(FPModule::cyclic(Z, 6), FPModule(Z, 2, Matrix{{2, 0}, {0, 3}}), Matrix{{1}, {1}}));
}

TEST_CASE("kernel columns are solutions and span every solution") {
  gen::Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix a = gen::random_matrix(rng, rng.uniform(1, 3), rng.uniform(1, 4), -5, 5);
    Matrix k = kernel_basis(Z, a);
    CHECK((a * k).is_zero());
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.transposed().col(i));
    CHECK(k.cols() == a.cols() - oracle::rational_rank(rows));
    // saturation: the kernel lattice has trivial invariant factors
    for (const auto& d : smith_normal_form(Z, k).diagonal) CHECK(d == 1);
  }
}

TEST_CASE("base change and restriction examples") {
  Ring z4 = Ring::make({}, 4);
  RingMap to4 = RingMap::canonical(Z, z4);
  FPModule z2 = FPModule::cyclic(Z, 2);
  CHECK(base_change(z2, to4).invariants() == ModuleInvariants{0, ints({2})});
  CHECK(base_change(FPModule::free(Z, 2), RingMap::canonical(Z, Ring::localized({5}))).invariants() ==
        ModuleInvariants{2, {}});
  CHECK(base_change(FPModule::cyclic(Z, 3), RingMap::canonical(Z, Ring::localized({3}))).is_zero());

  CHECK(restrict_scalars(FPModule::cyclic(z4, 2), to4).invariants() == ModuleInvariants{0, ints({2})});
  CHECK(code_of([] {
          restrict_scalars(FPModule::free(Ring::localized({2}), 1), RingMap::canonical(Z, Ring::localized({2})));
        }) == ErrorCode::NotModuleFinite);
  Ring r = Ring::localized({2}, 3);
  CHECK(restrict_scalars(FPModule::free(r, 1), RingMap::canonical(Z, r)).invariants() ==
        ModuleInvariants{0, ints({3})});
}

TEST_CASE("base change is functorial") {
  gen::Rng rng(25);
  const std::vector<std::vector<Ring>> chains{
      {Z, Ring::make({}, 12), Ring::localized({3}, 4)},
      {Z, Ring::localized({2}), Ring::localized({2, 3})},
      {Ring::localized({5}), Ring::localized({5}, 9), Ring::localized({5}, 3)},
      {Z, Ring::localized({3}), Ring::localized({3}, 2)},
  };
  for (int trial = 0; trial < 60; ++trial) {
    const auto& c = rng.pick(chains);
    RingMap f = RingMap::canonical(c[0], c[1]);
    RingMap g = RingMap::canonical(c[1], c[2]);
    std::size_t gens = static_cast<std::size_t>(rng.uniform(0, 3));
    FPModule m(c[0], gens, gen::random_matrix(rng, gens, static_cast<std::size_t>(rng.uniform(0, 3)), -9, 9));
    FPModule two_step = base_change(base_change(m, f), g);
    FPModule one_step = base_change(m, f.then(g));
    CHECK(two_step == one_step);
    CHECK(two_step.invariants() == one_step.invariants());
  }
}

TEST_CASE("restriction and extension triangle identities on free modules") {
  for (const auto& [src, dst] : std::vector<std::pair<Ring, Ring>>{{Z, Ring::make({}, 4)},
                                                                   {Z, Ring::localized({2}, 3)},
                                                                   {Ring::make({}, 12), Ring::localized({3}, 4)},
                                                                   {Ring::localized({2}), Ring::localized({2})}}) {
    RingMap f = RingMap::canonical(src, dst);
    for (std::size_t rank = 0; rank <= 3; ++rank) {
      FPModule m = FPModule::free(src, rank);
      FPModule n = FPModule::free(dst, rank);
      FPModule rb = restrict_scalars(base_change(m, f), f);
      FPModule br = base_change(restrict_scalars(n, f), f);
      REQUIRE(rb.generators() == rank);
      REQUIRE(br.generators() == rank);
      Matrix unit = Matrix::identity(rank);
      Matrix counit = Matrix::identity(rank);
      CHECK(is_valid_map(m, rb, unit));
      CHECK(is_valid_map(br, n, counit));
      // counit o f_*(unit) = id on f_* M, f^*(counit) o unit = id on f^* N
      CHECK(maps_equal(base_change(m, f), counit * map_entries(f, unit), Matrix::identity(rank)));
      CHECK(maps_equal(restrict_scalars(n, f), lift_entries(f, counit) * unit, Matrix::identity(rank)));
      CHECK(is_isomorphism(br, n, counit));
    }
  }
}
