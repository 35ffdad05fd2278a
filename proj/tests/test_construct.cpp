#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include <plateau/plateau.hpp>

using namespace plateau;

namespace {

BooleanFunction fn(const std::string& text, std::optional<int> n = {}) {
  return parse_function(text, n);
}

WalshSupport table2_support() {
  std::vector<BooleanFunction> cols;
  for (int i = 1; i <= 4; ++i)
    cols.push_back(fn("anf:x" + std::to_string(i), 4));
  cols.push_back(fn("anf:x3*x4", 4));
  return support_from_columns(cols);
}

WalshSupport wreath5(const BooleanFunction& mu) {
  std::vector<BooleanFunction> cols;
  for (int i = 1; i <= 4; ++i)
    cols.push_back(fn("anf:x" + std::to_string(i), 4));
  cols.push_back(mu);
  return support_from_columns(cols);
}

std::vector<std::uint32_t> identity_perm(int k) {
  std::vector<std::uint32_t> p(std::size_t(1) << k);
  for (std::uint32_t i = 0; i < p.size(); ++i) p[i] = i;
  return p;
}

/* A random spectrum prescription for the gate agreement test: half the
   trials use an affine support, half a wreath support; half take a valid
   dual, half a corrupted one. */
SpectralSpec random_spec(int trial, std::mt19937_64& rng) {
  bool wreath = trial % 2;
  WalshSupport sup;
  if (wreath) {
    BooleanFunction mu = random_function(4, rng);
    sup = wreath5(mu);
  } else {
    std::uint32_t off = static_cast<std::uint32_t>(rng()) & 31;
    std::vector<BitVector> pts;
    for (std::uint32_t x = 0; x < 16; ++x) pts.emplace_back(5, (x << 1) ^ off);
    sup = canonical_order(pts);
  }
  std::vector<std::uint32_t> psi = identity_perm(2);
  std::shuffle(psi.begin(), psi.end(), rng);
  BooleanFunction dual = mm_bent(psi, random_function(2, rng));
  if (trial % 4 < 2) {
    // corrupt: xor a random function, usually breaking the distance
    dual ^= random_function(4, rng);
  }
  return {sup, dual};
}

}  // namespace

TEST_CASE("spectral construction reproduces the Table-2 function exactly") {
  BooleanFunction f =
      build_from_spectrum({table2_support(), fn("anf:x1*x3+x2*x4")});
  CHECK(f == fn("anf:x1*x3+x2*x4+x1*x2*x5"));
}

TEST_CASE("spectral construction reproduces the 7-variable example") {
  std::vector<BitVector> pts;
  for (std::uint32_t x = 0; x < 64; ++x) pts.emplace_back(7, x << 1);
  WalshSupport sup =
      order_support(pts, BitVector(7, 0b1010111), BinaryMatrix::identity(7));
  BooleanFunction h =
      build_from_spectrum({sup, fn("anf:x1*x4+x2*x5+x3*x6", 6)});
  CHECK(h == fn("anf:x1+x3+x1*x4+x5+x2*x5+x6+x3*x6+x7"));
}

TEST_CASE("affine support with a non-bent dual fails the gate") {
  std::vector<BitVector> pts;
  for (std::uint32_t x = 0; x < 16; ++x) pts.emplace_back(5, x << 1);
  WalshSupport sup = canonical_order(pts);
  CHECK_THROWS_AS(build_from_spectrum({sup, fn("anf:x1*x2", 4)}),
                  NotPlateaued);
}

TEST_CASE("profile distance check agrees with a brute-force distance scan") {
  WalshSupport sup = table2_support();
  CHECK(bent_distance_to_profile(sup, fn("anf:x1*x3+x2*x4")).ok);

  ProfileDistanceCheck bad = bent_distance_to_profile(sup, fn("anf:x1*x2", 4));
  REQUIRE_FALSE(bad.ok);
  // oracle: first u whose profile column is not at bent distance
  BooleanFunction g = fn("anf:x1*x2", 4);
  std::uint32_t expect = 0;
  for (std::uint32_t u = 0; u < 32; ++u) {
    BooleanFunction phi = sequence_profile_column(sup, BitVector(5, u));
    auto d = g.hamming_distance(phi);
    if (d != 6 && d != 10) {
      expect = u;
      break;
    }
  }
  CHECK(bad.witness.bits == expect);
}

TEST_CASE("gate and distance check agree, witnesses included") {
  std::mt19937_64 rng(211);
  int failures = 0;
  for (int trial = 0; trial < 40; ++trial) {
    SpectralSpec spec = random_spec(trial, rng);
    ProfileDistanceCheck check =
        bent_distance_to_profile(spec.support, spec.dual);
    try {
      build_from_spectrum(spec);
      REQUIRE(check.ok);
    } catch (const NotPlateaued& e) {
      ++failures;
      REQUIRE_FALSE(check.ok);
      REQUIRE(e.witness == check.witness.bits);
      REQUIRE(e.distance == check.distance);
    }
  }
  CHECK(failures > 0);
}

TEST_CASE("mm_bent base cases") {
  CHECK(mm_bent(identity_perm(2), BooleanFunction(2)) ==
        fn("anf:x1*x3+x2*x4"));
  CHECK(mm_bent(identity_perm(3), fn("anf:x1*x2*x3", 3)) ==
        fn("anf:x1*x4+x2*x5+x3*x6+x4*x5*x6"));
  std::mt19937_64 rng(223);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::uint32_t> psi = identity_perm(3);
    std::shuffle(psi.begin(), psi.end(), rng);
    REQUIRE(is_bent(mm_bent(psi, random_function(3, rng))));
  }
  CHECK_THROWS_AS(mm_bent({0, 0, 1, 2}, BooleanFunction(2)),
                  PreconditionError);
}

TEST_CASE("mm family members have disjoint spectra and order 2s-n") {
  // smallest instance: k=1, s=2; members on F2^3 are semi-bent (order 1,
  // matching the parity of n = 3)
  std::vector<std::vector<std::uint32_t>> phis = {{0, 1}, {2, 3}};
  std::vector<BooleanFunction> gs = {BooleanFunction(1), BooleanFunction(1)};
  auto members = mm_plateaued_family(1, 2, phis, gs);
  REQUIRE(members.size() == 2);
  std::vector<std::uint8_t> covered(8, 0);
  for (const auto& m : members) {
    auto prof = plateaued_profile(m);
    REQUIRE(prof.has_value());
    REQUIRE(prof->s == 1);
    for (BitVector p : walsh_support(m)) {
      REQUIRE_FALSE(covered[p.bits]);
      covered[p.bits] = 1;
    }
  }
  CHECK(std::count(covered.begin(), covered.end(), 1) == 8);
}

TEST_CASE("mm family with a full partition of F2^3, k=2") {
  std::vector<std::vector<std::uint32_t>> phis = {{0, 1, 2, 3}, {4, 5, 6, 7}};
  std::vector<BooleanFunction> gs = {fn("anf:x1*x2", 2), BooleanFunction(2)};
  auto members = mm_plateaued_family(2, 3, phis, gs);
  std::vector<std::uint8_t> covered(32, 0);
  for (const auto& m : members) {
    auto prof = plateaued_profile(m);
    REQUIRE(prof.has_value());
    REQUIRE(prof->s == 1);  // 2s - n = 6 - 5
    for (BitVector p : walsh_support(m)) covered[p.bits] = 1;
  }
  CHECK(std::count(covered.begin(), covered.end(), 1) == 32);
}

TEST_CASE("non-affine images give nontrivial members") {
  std::vector<std::vector<std::uint32_t>> phis = {{0, 1, 2, 7}};
  std::vector<BooleanFunction> gs = {BooleanFunction(2)};
  auto members = mm_plateaued_family(2, 3, phis, gs);
  CHECK(classify_plateaued(members[0]).kind == PlateauKind::Nontrivial);
}

TEST_CASE("mm family input validation") {
  CHECK_THROWS_AS(
      mm_plateaued_family(2, 2, {{0, 1, 2, 3}}, {BooleanFunction(2)}),
      PreconditionError);  // s > k required
  CHECK_THROWS_AS(mm_plateaued_family(1, 2, {{0, 1}, {1, 2}},
                                      {BooleanFunction(1), BooleanFunction(1)}),
                  PreconditionError);  // overlap
  CHECK_THROWS_AS(
      mm_plateaued_family(1, 2, {{1, 1}}, {BooleanFunction(1)}),
      PreconditionError);  // not injective
}

TEST_CASE("generic plateaued construction: worked instance") {
  BooleanFunction f =
      construct_thm41(identity_perm(2), BooleanFunction(2), BitVector(4, 0),
                      BinaryMatrix::identity(4), {fn("anf:x1*x2", 2)});
  CHECK(f == fn("anf:x1*x3+x2*x4+x1*x2*x5"));
}

TEST_CASE("generic plateaued construction: order two and dual recovery") {
  BooleanFunction f = construct_thm41(
      identity_perm(2), BooleanFunction(2), BitVector(4, 0),
      BinaryMatrix::identity(4), {fn("anf:x1*x2", 2), fn("anf:x1", 2)});
  auto prof = plateaued_profile(f);
  REQUIRE(prof.has_value());
  CHECK(prof->s == 2);
  CHECK(f.n() == 6);

  WalshSupport sup = thm41_support(2, BitVector(4, 0),
                                   BinaryMatrix::identity(4),
                                   {fn("anf:x1*x2", 2), fn("anf:x1", 2)});
  CHECK(extract_dual(f, sup).base ==
        mm_bent(identity_perm(2), BooleanFunction(2)));
}

TEST_CASE("generic plateaued construction with nontrivial (c, M)") {
  std::mt19937_64 rng(227);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::uint32_t> psi = identity_perm(2);
    std::shuffle(psi.begin(), psi.end(), rng);
    BooleanFunction t = random_function(2, rng);
    BitVector c(4, static_cast<std::uint32_t>(rng()) & 15);
    BinaryMatrix m = random_invertible(4, rng());
    std::vector<BooleanFunction> cols = {random_function(2, rng)};
    BooleanFunction f = construct_thm41(psi, t, c, m, cols);
    auto prof = plateaued_profile(f);
    REQUIRE(prof.has_value());
    REQUIRE(prof->s == 1);
    WalshSupport sup = thm41_support(2, c, m, cols);
    REQUIRE(extract_dual(f, sup).base == mm_bent(psi, t));
  }
}

TEST_CASE("column functions must live on the y block") {
  CHECK_THROWS_AS(
      construct_thm41(identity_perm(2), BooleanFunction(2), BitVector(4, 0),
                      BinaryMatrix::identity(4), {fn("anf:x1*x3", 4)}),
      PreconditionError);
}

TEST_CASE("subspace indicators") {
  CHECK(subspace_indicator({BitVector(2, 0b10), BitVector(2, 0b01)}, 2) ==
        BooleanFunction::constant(2, 1));
  BooleanFunction zero_only = subspace_indicator({}, 3);
  CHECK(zero_only.weight() == 1);
  CHECK(zero_only.get(0) == 1);
  BooleanFunction plane =
      subspace_indicator({BitVector(4, 0b1000), BitVector(4, 0b0100)}, 4);
  CHECK(plane.weight() == 4);
  CHECK_THROWS_AS(
      subspace_indicator({BitVector(3, 0b110), BitVector(3, 0b110)}, 3),
      PreconditionError);
}

TEST_CASE("indicator-column construction, variant D") {
  Thm42Params p;
  p.variant = Thm42Variant::D;
  p.psi = identity_perm(2);
  p.e1 = {BitVector(2, 0b01)};            // E1 = {00, 01}
  p.e2 = {BitVector(2, 0b10)};            // E2 = {00, 10} = E1 perp
  p.c = BitVector(4, 0);
  p.m_mat = BinaryMatrix::identity(4);
  BooleanFunction f = construct_thm42(p);
  auto prof = plateaued_profile(f);
  REQUIRE(prof.has_value());
  CHECK(prof->s == 1);
  CHECK(f.n() == 5);

  p.e2 = {BitVector(2, 0b01)};  // psi(E2) = E2 != E1 perp
  CHECK_THROWS_WITH(construct_thm42(p),
                    Catch::Matchers::ContainsSubstring("E1^perp"));
}

TEST_CASE("indicator-column construction, variant C with a linear psi") {
  Thm42Params p;
  p.variant = Thm42Variant::C;
  // psi(y) = yM for an invertible M on F2^2: table {0,1,2,3} -> {0,3,1,2}
  p.psi = {0, 3, 1, 2};
  p.l = {BitVector(2, 0b01)};
  p.c = BitVector(4, 0b1001);
  p.m_mat = BinaryMatrix::identity(4);
  BooleanFunction f = construct_thm42(p);
  auto prof = plateaued_profile(f);
  REQUIRE(prof.has_value());
  CHECK(prof->s == 1);
}

TEST_CASE("variant C rejects nonlinear psi with a non-affine preimage") {
  Thm42Params p;
  p.variant = Thm42Variant::C;
  p.psi = {0, 1, 2, 3, 4, 5, 7, 6};
  p.l = {BitVector(3, 0b001)};
  p.c = BitVector(6, 0);
  p.m_mat = BinaryMatrix::identity(6);
  CHECK_THROWS_WITH(construct_thm42(p),
                    Catch::Matchers::ContainsSubstring("not affine"));
}

TEST_CASE("vectorial-bent construction") {
  // two GF(4) multiplier components: x . (y), x . (w y)
  VectorialBent h;
  h.m = 4;
  h.components = {mm_bent({0, 1, 2, 3}, BooleanFunction(2)),
                  mm_bent({0, 2, 3, 1}, BooleanFunction(2))};
  verify_vectorial_bent(h);

  BooleanFunction f = construct_thm43(h, 1, {}, {2}, BitVector(4, 0),
                                      BinaryMatrix::identity(4));
  auto prof = plateaued_profile(f);
  REQUIRE(prof.has_value());
  CHECK(prof->s == 1);
  CHECK(f.n() == 5);
  // dual is recovered through the construction's own support
  WalshSupport sup;
  sup.n = 5;
  sup.s = 1;
  for (std::uint32_t x = 0; x < 16; ++x)
    sup.points.emplace_back(5, (x << 1) | h.components[1].get(x));
  CHECK(extract_dual(f, sup).base == h.components[0]);

  // r = 0: affine columns only -> trivial
  BooleanFunction t = fn("anf:x1+x4", 4);
  BooleanFunction f0 = construct_thm43(h, 1, {t}, {}, BitVector(4, 0b0110),
                                       BinaryMatrix::identity(4));
  CHECK(classify_plateaued(f0).kind == PlateauKind::Trivial);

  CHECK_THROWS_AS(construct_thm43(h, 1, {}, {1}, BitVector(4, 0),
                                  BinaryMatrix::identity(4)),
                  PreconditionError);  // column equals the dual index
  CHECK_THROWS_AS(construct_thm43(h, 1, {fn("anf:x1*x2", 4)}, {2},
                                  BitVector(4, 0), BinaryMatrix::identity(4)),
                  PreconditionError);  // nonlinear t
}

TEST_CASE("q_partition") {
  auto q1 = q_partition(5, 1);
  REQUIRE(q1.size() == 2);
  CHECK(q1[0].bits == 0);
  CHECK(q1[1].bits == 1);
  auto q2 = q_partition(6, 2);
  REQUIRE(q2.size() == 4);
  for (std::uint32_t i = 0; i < 4; ++i) CHECK(q2[i].bits == i);
  // closed under addition
  for (BitVector a : q2)
    for (BitVector b : q2)
      CHECK(std::find(q2.begin(), q2.end(), a + b) != q2.end());
}

TEST_CASE("disjoint families partition the space") {
  std::vector<BooleanFunction> duals = {fn("anf:x1*x3+x2*x4"),
                                        fn("anf:x1*x3+x2*x4")};
  PlateauedFamily fam = disjoint_family(table2_support(), duals);
  REQUIRE(fam.members.size() == 2);
  CHECK(fam.members[0] == fn("anf:x1*x3+x2*x4+x1*x2*x5"));
  std::vector<std::uint8_t> covered(32, 0);
  for (const auto& m : fam.members)
    for (BitVector p : walsh_support(m)) {
      REQUIRE_FALSE(covered[p.bits]);
      covered[p.bits] = 1;
    }
  CHECK(std::count(covered.begin(), covered.end(), 1) == 32);
}

TEST_CASE("a disjoint-spectra partner of the transformed example") {
  BooleanFunction F = fn(
      "anf:x1*x2*x5+x3*x4*x5+x1*x3+x1*x4+x2*x4+x2*x5+x3*x4+x4*x5+x3+x4+x5");
  // shifted support F2^4 wr T_{mu+1}
  WalshSupport shifted = wreath5(fn("anf:x1*x2+x3*x4", 4));
  auto duals = search_valid_duals(shifted, /*keep_list=*/true);
  REQUIRE(duals.count == 384);
  BooleanFunction partner = build_from_spectrum({shifted, duals.duals[0]});
  REQUIRE(plateaued_profile(partner).has_value());
  // disjoint spectra
  auto s1 = walsh_support(F);
  auto s2 = walsh_support(partner);
  for (BitVector p : s1)
    CHECK(std::find(s2.begin(), s2.end(), p) == s2.end());
}

TEST_CASE("corrupted duals are rejected member-by-member") {
  std::vector<BooleanFunction> duals = {fn("anf:x1*x3+x2*x4"),
                                        fn("anf:x1*x2", 4)};
  try {
    disjoint_family(table2_support(), duals);
    FAIL("expected a member failure");
  } catch (const NotPlateaued& e) {
    CHECK(std::string(e.what()).find("member 1") != std::string::npos);
  }
}

TEST_CASE("concatenating a disjoint family gives a bent function") {
  std::vector<BooleanFunction> duals = {fn("anf:x1*x3+x2*x4"),
                                        fn("anf:x1*x3+x2*x4")};
  PlateauedFamily fam = disjoint_family(table2_support(), duals);
  BooleanFunction f = concat_bent(fam);
  CHECK(f.n() == 6);
  CHECK(is_bent(f));
}

TEST_CASE("degenerate single-member family") {
  PlateauedFamily fam;
  fam.n = 4;
  fam.s = 0;
  fam.members = {fn("anf:x1*x3+x2*x4")};
  CHECK(concat_bent(fam) == fam.members[0]);
}

TEST_CASE("a structurally broken family fails the bent gate with a witness") {
  std::vector<BooleanFunction> duals = {fn("anf:x1*x3+x2*x4"),
                                        fn("anf:x1*x3+x2*x4")};
  PlateauedFamily fam = disjoint_family(table2_support(), duals);
  fam.members[1] = fam.members[0];  // spectra now overlap
  CHECK_THROWS_WITH(concat_bent(fam),
                    Catch::Matchers::ContainsSubstring("witness"));
}

TEST_CASE("dual search counts") {
  CHECK(search_valid_duals(wreath5(fn("anf:x1*x2+x3*x4", 4))).count == 384);
  // affine block: every bent function on four variables qualifies
  std::vector<BitVector> pts;
  for (std::uint32_t x = 0; x < 16; ++x) pts.emplace_back(5, x << 1);
  CHECK(search_valid_duals(canonical_order(pts)).count == 896);
  // a profile that admits no dual at all
  CHECK(search_valid_duals(wreath5(fn("anf:x1*x2*x3", 4))).count == 0);
}

TEST_CASE("dual search samples larger blocks with a budget") {
  std::vector<BitVector> pts;
  for (std::uint32_t x = 0; x < 64; ++x) pts.emplace_back(7, x << 1);
  WalshSupport sup = canonical_order(pts);
  CHECK_THROWS_AS(search_valid_duals(sup), PreconditionError);
  DualSearchResult r = search_valid_duals(sup, false, 2000, 99);
  CHECK_FALSE(r.exhaustive);
}
