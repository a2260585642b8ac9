#include "loewner/certificates.hpp"
#include "loewner/error.hpp"
#include "loewner/instances.hpp"
#include "loewner/means.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace loewner;

namespace {

const SymMatrix kA = SymMatrix::diagonal({1.0, 4.0});
const SymMatrix kB = SymMatrix::diagonal({4.0, 1.0});
const auto kGeo = ScalarKernel::geometric();
const auto kAri = ScalarKernel::arithmetic();
const auto kHar = ScalarKernel::harmonic();

MapSpec map(std::string_view spec, int dim = 2) { return MapSpec::parse(spec, dim, 1); }
MonotoneFunction fn(std::string_view id) { return MonotoneFunction::parse(id); }

const SymMatrix& mat(const Side& s) { return std::get<SymMatrix>(s); }
double scal(const Side& s) { return std::get<double>(s); }

void expect_mat(const Side& s, const SymMatrix& ref, double tol = 1e-12) {
  EXPECT_LE((mat(s) - ref).max_abs(), tol) << "got diag " << mat(s)(0, 0) << ", " << mat(s)(mat(s).dim() - 1, mat(s).dim() - 1);
}

// Brute-force check of a positive verdict: v^T (RHS - LHS) v >= -tol on 1000 unit vectors.
void oracle_confirms(const Certificate& c) {
  if (!c.holds || !std::holds_alternative<SymMatrix>(c.lhs)) return;
  const auto& l = mat(c.lhs);
  const auto& r = mat(c.rhs);
  const auto q = oracle::quadratic_form_range(oracle::from_rows(l.dim(), l.row_major()),
                                              oracle::from_rows(r.dim(), r.row_major()), 1000, 4242);
  EXPECT_GE(q.lo, -c.tolerance) << c.inequality_id;
}

}  // namespace

TEST(PolyaSzego, TraceMapEqualityWitness) {
  const auto c = check_polya_szego(map("ntrace:1"), kA, kB, 1, 4);
  EXPECT_NEAR(scal(Side(mat(c.lhs)(0, 0))), 2.5, 1e-14);
  expect_mat(c.rhs, SymMatrix::scalar(1, 2.5));
  EXPECT_DOUBLE_EQ(c.constant, 1.25);
  EXPECT_NEAR(c.ratio, 1.25, 1e-10);
  EXPECT_NEAR(c.slack, 0.0, 1e-10);
  EXPECT_TRUE(c.holds);
}

TEST(PolyaSzego, EqualPairHasRatioOne) {
  const auto a = random_spd(3, 1, 4, 9);
  const auto c = check_polya_szego(map("identity", 3), a, a, 1, 4);
  EXPECT_NEAR(c.ratio, 1.0, 1e-10);
  EXPECT_TRUE(c.holds);
  EXPECT_THROW(check_polya_szego(map("identity"), kA, kB, 1, 3), HypothesisError);
}

TEST(KantorovichF, CommutingEvaluation) {
  const auto c = check_kantorovich_f(map("identity"), kGeo, kGeo, fn("sqrt"), kA, kB, 1, 4);
  expect_mat(c.lhs, SymMatrix::scalar(2, std::sqrt(2.0)));
  expect_mat(c.rhs, SymMatrix::scalar(2, 1.5625 * std::sqrt(2.0)));
  EXPECT_DOUBLE_EQ(c.constant, 25.0 / 16.0);
  EXPECT_TRUE(c.holds);
  EXPECT_THROW(check_kantorovich_f(map("identity"), kGeo, kGeo, fn("square"), kA, kB, 1, 4), HypothesisError);
}

TEST(SandwichLemma, DoubleEqualityWitness) {
  const auto [left, right] = check_sandwich_lemma(kA, kB, 0.25, 4);
  EXPECT_NEAR(left.slack, 0.0, 1e-10);
  EXPECT_NEAR(right.slack, 0.0, 1e-10);
  EXPECT_TRUE(left.holds && right.holds);
  // 0.8 (A nabla B) = A # B = 1.25 (A ! B)
  EXPECT_LE((0.8 * arithmetic(kA, kB) - geometric(kA, kB)).max_abs(), 1e-12);
  EXPECT_LE((geometric(kA, kB) - 1.25 * harmonic(kA, kB)).max_abs(), 1e-12);
  const auto [l2, r2] = check_sandwich_lemma(kA, kA, 1, 1);
  EXPECT_NEAR(l2.slack, 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(l2.constant, 1.0);
}

TEST(SandwichLemma, BoundedSubstitutionReproducesKantorovichFactor) {
  const double m = 1, big_m = 4;
  const auto [left, right] = check_sandwich_lemma(kA, kB, m / big_m, big_m / m);
  EXPECT_NEAR(left.constant, (big_m + m) / (2 * std::sqrt(big_m * m)), 1e-14);
  EXPECT_TRUE(check_sandwich_lemma_scalar(0.25, 4).holds);
  EXPECT_TRUE(check_sandwich_lemma_scalar(0.2, 0.9).holds);
}

TEST(AlphaScaling, Examples) {
  const auto c = check_alpha_scaling(fn("sqrt"), 4);
  EXPECT_TRUE(c.holds);
  EXPECT_NEAR(c.tightness(), 0.5, 1e-12);
  const auto d = check_alpha_scaling(fn("inverse"), 4);
  EXPECT_TRUE(d.holds);
  EXPECT_NEAR(d.slack, 0.0, 1e-12);
  EXPECT_TRUE(check_alpha_scaling(fn("log1p"), 2).holds);
  EXPECT_THROW(check_alpha_scaling(fn("sqrt"), 0.5), HypothesisError);
}

TEST(MainMonotone, Examples) {
  const auto c = check_main_monotone(map("ntrace:1"), kGeo, kGeo, fn("sqrt"), kA, kB, 0.25, 4);
  expect_mat(c.lhs, SymMatrix::scalar(1, 1.5));
  expect_mat(c.rhs, SymMatrix::scalar(1, 1.5625 * std::sqrt(2.0)));
  EXPECT_TRUE(c.holds);
  const auto e = check_main_monotone(map("identity"), kAri, kAri, fn("log1p"), kA, kA, 1, 1);
  EXPECT_DOUBLE_EQ(e.constant, 1.0);
  EXPECT_NEAR(e.slack, 0.0, 1e-12);
  EXPECT_THROW(check_main_monotone(map("identity"), kGeo, kGeo, fn("sqrt"), kA, kB, 0.5, 2), HypothesisError);
}

TEST(MainDecreasing, Examples) {
  const auto c = check_main_decreasing(map("identity"), kGeo, kGeo, fn("inverse"), kA, kB, 0.25, 4);
  expect_mat(c.lhs, SymMatrix::scalar(2, 0.5));
  expect_mat(c.rhs, SymMatrix::scalar(2, 1.5625 * 0.5));
  EXPECT_TRUE(c.holds);
  const auto pair = random_sandwich_pair(3, 0.3, 5, 12);
  const auto r = check_main_decreasing(map("ntrace:1", 3), kAri, kHar, fn("shifted_inverse:1"), pair.a, pair.b,
                                       0.3, 5);
  EXPECT_TRUE(r.holds);
  oracle_confirms(r);
}

TEST(Gruss, UnitalAndNonUnital) {
  const auto c = check_gruss(map("ntrace:1"), kGeo, kGeo, fn("sqrt"), kA, kB, 1, 4, GrussFamily::Monotone);
  expect_mat(c.lhs, SymMatrix::scalar(1, 1.5 - std::sqrt(2.0)));
  EXPECT_NEAR(scal(Side(mat(c.rhs)(0, 0))), 1.125, 1e-14);
  EXPECT_TRUE(c.holds);
  const auto tenfold = map("mix:20*ntrace:1");
  EXPECT_THROW(check_gruss(tenfold, kGeo, kGeo, fn("identity"), kA, kB, 1, 4, GrussFamily::Monotone),
               HypothesisError);
  const auto raw = gruss_difference(tenfold, kGeo, kGeo, fn("identity"), kA, kB, 1, 4, GrussFamily::Monotone);
  expect_mat(raw.lhs, SymMatrix::scalar(1, 10.0), 1e-11);
  EXPECT_NEAR(mat(raw.rhs)(0, 0), 2.25, 1e-14);
  EXPECT_FALSE(raw.holds);
  const auto half = check_gruss(map("ntrace:1"), kGeo, kGeo, fn("identity"), kA, kB, 1, 4, GrussFamily::Monotone);
  expect_mat(half.lhs, SymMatrix::scalar(1, 0.5));
  EXPECT_TRUE(half.holds);
  const auto g = check_gruss(map("identity"), kGeo, kGeo, fn("inverse"), kA, kA, 1, 4, GrussFamily::Decreasing);
  EXPECT_TRUE(g.holds);
}

TEST(NormRatio, PinnedInstance) {
  NormRatioInput in;
  in.g = fn("square");
  in.norm = NormKind::op();
  in.s = 0.25;
  in.t = 4;
  in.mode = NormRatioMode::TauSide;
  in.tau = kAri;
  const auto tau = check_norm_ratio(in, kA, kB);
  EXPECT_NEAR(scal(tau.lhs), 3.4, 1e-12);
  EXPECT_NEAR(scal(tau.rhs), 3.125, 1e-12);
  EXPECT_FALSE(tau.holds);
  in.mode = NormRatioMode::Power4;
  const auto p4 = check_norm_ratio(in, kA, kB);
  EXPECT_NEAR(scal(p4.rhs), 1.5625 * 1.5625 * 2, 1e-12);
  EXPECT_TRUE(p4.holds);
  in.mode = NormRatioMode::Eq15;
  in.m = 1;
  in.big_m = 4;
  const auto e15 = check_norm_ratio(in, kA, kB);
  EXPECT_NEAR(scal(e15.lhs), 2.0, 1e-12);
  EXPECT_NEAR(scal(e15.rhs), 6.25, 1e-12);
  EXPECT_TRUE(e15.holds);
  in.g = fn("sqrt");
  EXPECT_THROW(check_norm_ratio(in, kA, kB), HypothesisError);
  in.g = fn("square");
  in.mode = NormRatioMode::TauSide;
  in.tau = kHar;
  EXPECT_THROW(check_norm_ratio(in, kA, kB), HypothesisError);
}

TEST(Squared, Examples) {
  const auto c = check_squared(SymMatrix::identity(2), SymMatrix::diagonal({1, 2}), 1, 1);
  EXPECT_DOUBLE_EQ(c.constant, 1.0);
  EXPECT_TRUE(c.holds);
  const auto d = check_squared(kA, SymMatrix::diagonal({2, 5}), 1, 4);
  expect_mat(d.lhs, SymMatrix::diagonal({1, 16}));
  expect_mat(d.rhs, SymMatrix::diagonal({25.0 / 16 * 4, 25.0 / 16 * 25}));
  EXPECT_TRUE(d.holds);
  EXPECT_THROW(check_squared(kA, kB, 1, 4), HypothesisError);
  const auto f = check_squared_consequence_f(fn("sqrt"), kA, kB, 1, 4);
  expect_mat(f.lhs, SymMatrix::scalar(2, 2.0));
  EXPECT_NEAR(f.constant, std::pow(25.0 / 16, 2), 1e-14);
  EXPECT_TRUE(f.holds);
  EXPECT_TRUE(check_squared_consequence_g(fn("inverse"), kA, kB, 1, 4).holds);
}

TEST(Midpoint, EqualityWitness) {
  const auto c = check_midpoint(kA, kB, 0.25, 4);
  expect_mat(c.lhs, SymMatrix::scalar(2, 2.5));
  expect_mat(c.rhs, SymMatrix::scalar(2, 2.5));
  EXPECT_NEAR(c.slack, 0.0, 1e-10);
  EXPECT_NEAR(c.tightness(), 1.0, 1e-10);
  EXPECT_TRUE(check_midpoint(kA, kA, 1, 1).holds);
}

TEST(DiazMetcalf, Examples) {
  const auto c = check_diaz_metcalf(map("identity"), kGeo, kGeo, fn("identity"), kA, kB, 0.25, 4);
  expect_mat(c.lhs, SymMatrix::scalar(2, 2.0));
  EXPECT_DOUBLE_EQ(c.constant, 1.5625);
  EXPECT_NEAR(c.slack, 1.125, 1e-12);
  const auto e = check_diaz_metcalf(map("identity"), kAri, kHar, fn("identity"), kA, kA, 1, 1);
  EXPECT_NEAR(e.slack, 0.0, 1e-12);
  // Branch on sqrt(st): the two formulas agree at sqrt(st) = 1.
  const double s = 0.5, t = 2.0;
  const double sum = std::sqrt(s) + std::sqrt(t);
  const auto pair = random_sandwich_pair(2, s, t, 4);
  EXPECT_NEAR(check_diaz_metcalf(map("identity"), kGeo, kGeo, fn("sqrt"), pair.a, pair.b, s, t).constant,
              sum * sum / 4, 1e-14);
  EXPECT_NEAR(check_diaz_metcalf(map("identity"), kGeo, kGeo, fn("sqrt"), pair.a, pair.b, 0.5, 1.8).constant,
              std::pow(std::sqrt(0.5) + std::sqrt(1.8), 2) / (4 * std::sqrt(0.9)), 1e-14);
}

TEST(KlamkinMcLenaghan, Witness) {
  const auto c = check_klamkin_mclenaghan(map("identity"), kGeo, fn("identity"), kA, kB, 0.25, 4);
  expect_mat(c.lhs, SymMatrix::zero(2));
  expect_mat(c.rhs, SymMatrix::scalar(2, 0.625));
  EXPECT_TRUE(c.holds);
  const auto e = check_klamkin_mclenaghan(map("identity"), kGeo, fn("identity"), kA, kA, 1, 1);
  expect_mat(e.lhs, SymMatrix::zero(2));
  expect_mat(e.rhs, SymMatrix::zero(2));
}

TEST(KlamkinMcLenaghan, InverseIdentityResidual) {
  for (int k = 0; k < 100; ++k) {
    const int dim = 1 + k % 8;
    const auto t = random_spd(dim, 0.01, 100, derive_seed(1, "eq20", static_cast<std::uint64_t>(k)));
    EXPECT_LE(t_inverse_identity_residual(t), 1e-9);
  }
}

TEST(Specht, Examples) {
  const auto c = check_specht_bound(1, 4);
  EXPECT_DOUBLE_EQ(scal(c.lhs), 2.5);
  EXPECT_NEAR(scal(c.rhs), 2.5275, 1e-4);
  EXPECT_TRUE(c.holds);
  const auto e = check_specht_bound(3, 3);
  EXPECT_NEAR(e.slack, 0.0, 1e-12);
}

TEST(StrengthenedRemark, Links) {
  const auto pair = random_sandwich_pair(3, 1, 4, 3);
  const auto c = check_strengthened_remark(map("identity", 3), kGeo, kGeo, fn("sqrt"), pair.a, pair.b, 1, 4);
  ASSERT_EQ(c.parts.size(), 2u);
  EXPECT_TRUE(c.parts[0].holds);
  EXPECT_TRUE(c.parts[1].holds);
  EXPECT_TRUE(c.holds);
  const auto eq = check_strengthened_remark(map("identity"), kGeo, kGeo, fn("sqrt"), kA, kB, 0.25, 4);
  EXPECT_NEAR(eq.parts[0].slack, 0.0, 1e-12);
  EXPECT_THROW(check_strengthened_remark(map("identity"), kGeo, kGeo, fn("sqrt"), kA, kA * 0.5, 0.4, 0.6),
               HypothesisError);
}

TEST(Ando, HoldsOnRandomPairs) {
  for (int k = 0; k < 20; ++k) {
    const auto p = random_bounded_pair(3, 0.5, 5, static_cast<std::uint64_t>(k));
    for (const auto& spec : {"kraus:2", "congruence:random:3x2", "pinching:2,1"}) {
      const auto c = ando_check(map(spec, 3), kGeo, p.a, p.b);
      EXPECT_TRUE(c.holds) << spec;
      oracle_confirms(c);
    }
  }
}

// Every certificate's positive verdict survives the quadratic-form oracle.
TEST(Certificates, QuadraticFormOracleOnRandomInstances) {
  for (int k = 0; k < 30; ++k) {
    const int dim = 2 + k % 3;
    const auto sp = random_sandwich_pair(dim, 0.3, 3.0, static_cast<std::uint64_t>(k));
    const auto bp = random_bounded_pair(dim, 0.5, 4.0, static_cast<std::uint64_t>(k + 100));
    const auto phi = map("kraus:3:unital", dim);
    oracle_confirms(check_polya_szego(phi, bp.a, bp.b, 0.5, 4));
    oracle_confirms(check_kantorovich_f(phi, kAri, kHar, fn("log1p"), bp.a, bp.b, 0.5, 4));
    oracle_confirms(check_main_monotone(phi, kGeo, kAri, fn("sqrt"), sp.a, sp.b, 0.3, 3));
    oracle_confirms(check_main_decreasing(phi, kGeo, kAri, fn("inverse"), sp.a, sp.b, 0.3, 3));
    oracle_confirms(check_gruss(phi, kGeo, kGeo, fn("sqrt"), bp.a, bp.b, 0.5, 4, GrussFamily::Monotone));
    oracle_confirms(check_midpoint(sp.a, sp.b, 0.3, 3));
    oracle_confirms(check_diaz_metcalf(phi, kGeo, kGeo, fn("sqrt"), sp.a, sp.b, 0.3, 3));
    oracle_confirms(check_klamkin_mclenaghan(phi, kGeo, fn("sqrt"), sp.a, sp.b, 0.3, 3));
    oracle_confirms(check_squared_consequence_f(fn("sqrt"), bp.a, bp.b, 0.5, 4));
    const auto [l, r] = check_sandwich_lemma(sp.a, sp.b, 0.3, 3);
    oracle_confirms(l);
    oracle_confirms(r);
  }
}

TEST(Certificates, ScaleInvarianceOfVerdicts) {
  const auto pair = random_sandwich_pair(3, 0.4, 2.5, 77);
  for (double c : {0.01, 1.0, 100.0}) {
    const auto a = c * pair.a, b = c * pair.b;
    EXPECT_TRUE(check_midpoint(a, b, 0.4, 2.5).holds);
    EXPECT_TRUE(check_main_monotone(map("identity", 3), kGeo, kGeo, fn("identity"), a, b, 0.4, 2.5).holds);
    EXPECT_TRUE(check_main_monotone(map("identity", 3), kGeo, kGeo, fn("sqrt"), a, b, 0.4, 2.5).holds);
  }
}

TEST(Certificates, SpecializationCoherence) {
  const auto bp = random_bounded_pair(3, 1, 4, 5);
  const auto [s, t] = estimate_sandwich(bp.a, bp.b);
  ASSERT_GE(s, 0.25 - 1e-12);
  ASSERT_LE(t, 4 + 1e-12);
  const auto c = check_main_monotone(map("identity", 3), kGeo, kGeo, fn("sqrt"), bp.a, bp.b, 0.25, 4);
  const auto k = check_kantorovich_f(map("identity", 3), kGeo, kGeo, fn("sqrt"), bp.a, bp.b, 1, 4);
  EXPECT_NEAR(c.constant, k.constant, 1e-14);
  EXPECT_TRUE(c.holds && k.holds);
}

TEST(Evaluate, MatchesDirectCallsAndCarriesSeed) {
  CheckRequest req{"midpoint", {}, kA, kB};
  req.params.s = 0.25;
  req.params.t = 4;
  req.params.seed = 99;
  const auto c = evaluate(req);
  EXPECT_EQ(c.params.seed, 99u);
  EXPECT_NEAR(c.slack, check_midpoint(kA, kB, 0.25, 4).slack, 1e-15);
  CheckRequest sw{"sandwich-lemma", {}, kA, kB};
  sw.params.s = 0.25;
  sw.params.t = 4;
  const auto l = evaluate(sw);
  EXPECT_EQ(l.parts.size(), 3u);
  EXPECT_TRUE(l.holds);
  EXPECT_THROW(evaluate({"midpoint", {}, kA, kB}), InvalidArgument);
  EXPECT_THROW(evaluate({"no-such", {}, kA, kB}), ParseError);
  EXPECT_EQ(inequality_registry().size(), 21u);
  const auto scaled = evaluate(req, {1e-9, 0.5});
  EXPECT_FALSE(scaled.holds);
}
