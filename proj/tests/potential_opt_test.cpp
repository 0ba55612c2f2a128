#include <gtest/gtest.h>

#include "abelframe/modrep.hpp"
#include "abelframe/potential_opt.hpp"
#include "test_util.hpp"

namespace abelframe {
namespace {

using testing::all_subgroups;
using testing::random_bank;
using testing::test_groups;

Subgroup h02() {
  static const GroupSpec g({2, 4});
  const GroupElement gen{0, 2};
  return Subgroup::closure(g, std::span(&gen, 1));
}

using Norms = std::vector<double>;

TEST(SplitIndex, ComputeM0Examples) {
  EXPECT_EQ(compute_m0(Norms{1, 1, 1, 1}, 4), std::optional<std::size_t>(0));
  EXPECT_EQ(compute_m0(Norms{3, 1, 1, 1, 1}, 4), std::optional<std::size_t>(1));
  EXPECT_EQ(compute_m0(Norms{2, 1, 1, 1}, 4), std::optional<std::size_t>(1));
  EXPECT_EQ(compute_m0(Norms{1, 1}, 4), std::nullopt);
  EXPECT_EQ(compute_m0(Norms{5}, 1), std::optional<std::size_t>(0));
}

TEST(SplitIndex, ExistsWheneverEnoughFilters) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int t = 0; t < 200; ++t) {
    const std::size_t N = 1 + rng() % 6;
    const std::size_t n = N + rng() % 4;
    Norms a(n);
    for (auto& v : a) v = u(rng);
    std::sort(a.rbegin(), a.rend());
    auto m0 = compute_m0(a, N);
    ASSERT_TRUE(m0.has_value());
    EXPECT_LT(*m0, N);
    EXPECT_EQ(*m0 == 0, fundamental_frame_inequality(a, N));
  }
}

TEST(SplitIndex, FundamentalFrameInequality) {
  EXPECT_TRUE(fundamental_frame_inequality(Norms{1, 1, 1}, 2));
  EXPECT_FALSE(fundamental_frame_inequality(Norms{2, 1, 1}, 2));
  EXPECT_TRUE(fundamental_frame_inequality(Norms{7, 1, 0.5}, 1));
}

TEST(SplitIndex, Regimes) {
  EXPECT_EQ(split_index(Norms{1, 1, 1, 1, 1}, 4).regime, Regime::tight);
  EXPECT_EQ(split_index(Norms{3, 1, 1, 1, 1}, 4).regime, Regime::split);
  auto u = split_index(Norms{1, 1}, 4);
  EXPECT_EQ(u.regime, Regime::underdetermined);
  EXPECT_EQ(u.m0, 2u);
}

TEST(SplitIndex, ValidateNorms) {
  EXPECT_NO_THROW(validate_norms(Norms{2, 2, 1}));
  try {
    validate_norms(Norms{1, 2});
    FAIL();
  } catch (const InputError& e) {
    EXPECT_STREQ(e.what(), "norms must be nonincreasing");
  }
  EXPECT_THROW(validate_norms(Norms{1, 0}), InputError);
  EXPECT_THROW(validate_norms(Norms{}), InputError);
}

TEST(FpFloor, Examples) {
  EXPECT_DOUBLE_EQ(fp_floor(Norms{1, 1, 1, 1}, 2, 4, 0), 8.0);
  EXPECT_DOUBLE_EQ(fp_floor(Norms{1.5}, 1, 1, 0), std::pow(1.5, 4));
  EXPECT_NEAR(fp_floor(Norms{3, 1, 1, 1, 1}, 2, 4, 1), 2.0 * (81.0 + 16.0 / 3.0), 1e-12);
  EXPECT_DOUBLE_EQ(fp_floor(Norms{1, 1}, 2, 4, 2), 4.0);
}

// The four coset deltas of <(0,2)> form an orthonormal basis of l(G) under
// translation, so they attain the equal-norm floor.
TEST(FpFloor, AttainedByConstructedTightBank) {
  const GroupSpec g({2, 4});
  std::vector<Signal> f;
  for (std::size_t x : {0, 1, 4, 5}) f.push_back(delta(g, g.element_at(x)));
  FilterBank fb(h02(), f);
  EXPECT_NEAR(frame_potential(expand_system(fb)), fp_floor(Norms{1, 1, 1, 1}, 2, 4, 0), 1e-12);
}

double directional_fd(const FilterBank& fb, const std::vector<Signal>& d, double h) {
  std::vector<Signal> plus, minus;
  for (std::size_t m = 0; m < fb.size(); ++m) {
    plus.push_back(fb.filter(m) + Complex(h) * d[m]);
    minus.push_back(fb.filter(m) - Complex(h) * d[m]);
  }
  return (frame_potential_fb(fb.with_filters(plus)) - frame_potential_fb(fb.with_filters(minus))) / (2.0 * h);
}

class GradientProperties : public ::testing::TestWithParam<GroupSpec> {};

TEST_P(GradientProperties, FiniteDifferences) {
  const auto& g = GetParam();
  std::mt19937_64 rng(53);
  const auto subs = all_subgroups(g);
  for (int t = 0; t < 10; ++t) {
    const auto& H = subs[static_cast<std::size_t>(t) % subs.size()];
    auto fb = random_bank(H, 1 + static_cast<std::size_t>(t) % 3, rng);
    std::vector<Signal> d;
    for (std::size_t m = 0; m < fb.size(); ++m) d.push_back(testing::random_signal(g, rng));
    const auto grad = fp_gradient(fb);
    double analytic = 0.0;
    for (std::size_t m = 0; m < fb.size(); ++m) analytic += inner(d[m], grad[m]).real();
    const double fd = directional_fd(fb, d, 1e-5);
    EXPECT_LE(std::abs(fd - analytic), 1e-5 * std::abs(analytic)) << "H order " << H.order();
  }
}

TEST_P(GradientProperties, CubicScaling) {
  const auto& g = GetParam();
  std::mt19937_64 rng(59);
  for (const auto& H : all_subgroups(g)) {
    auto fb = random_bank(H, 2, rng);
    const double c = 1.3;
    std::vector<Signal> scaled;
    for (const auto& f : fb.filters()) scaled.push_back(Complex(c) * f);
    const auto g1 = fp_gradient(fb);
    const auto g2 = fp_gradient(fb.with_filters(scaled));
    for (std::size_t m = 0; m < 2; ++m) {
      EXPECT_LT(testing::max_abs_diff(g2[m].values(), (Complex(c * c * c) * g1[m]).values()),
                1e-10 * g2[m].norm());
    }
  }
}

TEST_P(GradientProperties, RiemannianGradientIsTangent) {
  const auto& g = GetParam();
  std::mt19937_64 rng(61);
  for (const auto& H : all_subgroups(g)) {
    auto fb = random_bank(H, 3, rng);
    const auto rg = riemannian_gradient(fb);
    for (std::size_t m = 0; m < 3; ++m) {
      EXPECT_LT(std::abs(inner(rg[m], fb.filter(m)).real()), 1e-10 * rg[m].norm() * fb.filter(m).norm());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, GradientProperties, ::testing::ValuesIn(test_groups()),
                         [](const auto& info) { return testing::group_name(info.param); });

TEST(Gradient, TightBankIsStationary) {
  for (const auto& g : test_groups()) {
    auto fb = standard_basis_bank(g);
    EXPECT_LT(stacked_norm(riemannian_gradient(fb)), 1e-9);
  }
  const GroupSpec g({2, 4});
  std::vector<Signal> f;
  for (std::size_t x : {0, 1, 4, 5}) f.push_back(delta(g, g.element_at(x)));
  EXPECT_LT(stacked_norm(riemannian_gradient(FilterBank(h02(), f))), 1e-9);
}

DesignProblem problem(Subgroup H, Norms norms, std::uint64_t seed) {
  DesignProblem p{.subgroup = std::move(H), .norms = std::move(norms)};
  p.seed = seed;
  return p;
}

void expect_monotone(const DesignReport& r) {
  std::size_t next_restart = 0;
  for (std::size_t i = 1; i < r.fp_trajectory.size(); ++i) {
    if (next_restart < r.restarts.size() && r.restarts[next_restart] == i) {
      ++next_restart;
      continue;
    }
    EXPECT_LE(r.fp_trajectory[i], r.fp_trajectory[i - 1]) << "step " << i;
  }
}

TEST(MinimizeFp, EqualNormsTight) {
  std::vector<double> finals;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = minimize_fp(problem(h02(), Norms(5, 1.0), seed));
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(r.tight);
    EXPECT_TRUE(r.verified(1e-5));
    EXPECT_LE(r.bounds.upper / r.bounds.lower - 1.0, 1e-6);
    EXPECT_NEAR(r.fp, 12.5, 1e-5 * 12.5);
    EXPECT_DOUBLE_EQ(r.fp_floor, 12.5);
    EXPECT_NEAR(r.fp_trajectory.back(), r.fp, 1e-9 * r.fp);
    expect_monotone(r);
    finals.push_back(r.fp);

    // A tight bank reproduces A f from its analysis coefficients.
    std::mt19937_64 rng(seed);
    auto f = testing::random_signal(r.filters.group(), rng);
    const double A = is_tight(r.filters, 1e-6).bound;
    auto back = synthesize(r.filters, analyze(r.filters, f));
    EXPECT_LT(testing::max_abs_diff(back.values(), (Complex(A) * f).values()), 1e-5 * f.norm());
  }
  for (double v : finals) EXPECT_NEAR(v, finals[0], 1e-5 * finals[0]);
}

TEST(MinimizeFp, SingleFilterFullSubgroup) {
  const GroupSpec g({6});
  const auto r = minimize_fp(problem(Subgroup::full(g), Norms{1.0}, 4));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.fp, 6.0, 1e-6);
  // Optimal filters have flat spectra.
  const auto spectrum = dft(r.filters.filter(0));
  for (auto v : spectrum.values()) EXPECT_NEAR(std::abs(v), 1.0, 1e-4);
}

TEST(MinimizeFp, SplitRegime) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = minimize_fp(problem(h02(), Norms{3, 1, 1, 1, 1}, seed));
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.split.regime, Regime::split);
    EXPECT_EQ(r.split.m0, 1u);
    ASSERT_TRUE(r.partition.has_value());
    EXPECT_LE(r.partition->max_defect(), 1e-5);
    EXPECT_EQ(r.partition->tight_rank, 6u);
    EXPECT_EQ(r.partition->expected_rank, 6u);
    EXPECT_NEAR(r.fp, 2.0 * (81.0 + 16.0 / 3.0), 1e-4 * r.fp);
    expect_monotone(r);
  }
}

TEST(MinimizeFp, Underdetermined) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = minimize_fp(problem(h02(), Norms{1, 1}, seed));
    EXPECT_TRUE(r.converged);
    ASSERT_TRUE(r.underdetermined.has_value());
    EXPECT_LE(r.underdetermined->orthogonality_defect, 1e-6);
    EXPECT_NEAR(r.fp, 4.0, 1e-5 * 4.0);
    expect_monotone(r);
  }
}

TEST(MinimizeFp, Deterministic) {
  const auto a = minimize_fp(problem(h02(), Norms{2, 1, 1, 1}, 9));
  const auto b = minimize_fp(problem(h02(), Norms{2, 1, 1, 1}, 9));
  EXPECT_EQ(a.fp_trajectory, b.fp_trajectory);
  for (std::size_t m = 0; m < 4; ++m) {
    EXPECT_EQ(testing::max_abs_diff(a.filters.filter(m).values(), b.filters.filter(m).values()), 0.0);
  }
}

TEST(MinimizeFp, BudgetExhaustionIsReported) {
  auto p = problem(h02(), Norms(5, 1.0), 1);
  p.max_iters = 1;
  const auto r = minimize_fp(p);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1u);
}

TEST(MinimizeFp, RejectsInvalidProblems) {
  EXPECT_THROW(minimize_fp(problem(h02(), Norms{1, 2}, 1)), InputError);
  EXPECT_THROW(minimize_fp(problem(h02(), Norms{}, 1)), InputError);
}

TEST(VerifyTheorem, TightBankHasNoDefects) {
  auto rep = verify_theorem(standard_basis_bank(GroupSpec({2, 4})), 0, 1e-9);
  EXPECT_EQ(rep.orthogonality_defect, 0.0);
  EXPECT_EQ(rep.cross_orthogonality_defect, 0.0);
  EXPECT_LE(rep.max_defect(), 1e-12);
  EXPECT_TRUE(rep.passed(1e-9));
}

TEST(VerifyTheorem, RandomBankFails) {
  std::mt19937_64 rng(71);
  auto fb = random_bank(h02(), 5, rng);
  auto rep = verify_theorem(fb, 1, 1e-5);
  EXPECT_GT(rep.orthogonality_defect + rep.cross_orthogonality_defect, 1e-3);
  EXPECT_GT(rep.max_defect(), 1e-3);
  EXPECT_FALSE(rep.passed(1e-5));
  EXPECT_THROW(verify_theorem(fb, 4, 1e-5), InputError);
}

TEST(VerifyUnderdetermined, Examples) {
  const GroupSpec g({2, 4});
  std::mt19937_64 rng(73);
  auto single = random_bank(Subgroup::trivial(g), 1, rng);
  EXPECT_EQ(verify_underdetermined(single, 1e-9).orthogonality_defect, 0.0);
  auto basis = standard_basis_bank(g);
  auto rep = verify_underdetermined(basis, 1e-9);
  EXPECT_EQ(rep.orthogonality_defect, 0.0);
  EXPECT_TRUE(rep.passed(1e-9));
  auto noisy = random_bank(h02(), 2, rng);
  EXPECT_FALSE(verify_underdetermined(noisy, 1e-6).passed(1e-6));
}

}  // namespace
}  // namespace abelframe
