#include <gtest/gtest.h>

#include <numbers>

#include "abelframe/filterbank.hpp"
#include "abelframe/modrep.hpp"
#include "test_util.hpp"

namespace abelframe {
namespace {

using testing::all_subgroups;
using testing::max_abs_diff;
using testing::random_bank;
using testing::random_coefficients;
using testing::random_signal;
using testing::test_groups;

Subgroup h02() {
  static const GroupSpec g({2, 4});
  const GroupElement gen{0, 2};
  return Subgroup::closure(g, std::span(&gen, 1));
}

TEST(FilterBank, ExpandSystemExamples) {
  const GroupSpec g({2, 4});
  std::mt19937_64 rng(1);
  auto fb = random_bank(Subgroup::trivial(g), 3, rng);
  auto sys = expand_system(fb);
  ASSERT_EQ(sys.size(), 3u);
  for (std::size_t m = 0; m < 3; ++m) EXPECT_EQ(max_abs_diff(sys[m].values(), fb.filter(m).values()), 0.0);

  const GroupSpec z4({4});
  auto basis = expand_system(standard_basis_bank(z4));
  ASSERT_EQ(basis.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t x = 0; x < 4; ++x) EXPECT_EQ(basis[k][x], Complex(k == x ? 1.0 : 0.0));
  }

  auto fb2 = random_bank(h02(), 5, rng);
  auto sys2 = expand_system(fb2);
  ASSERT_EQ(sys2.size(), 10u);
  auto oracle = testing::oracle_system(fb2);
  for (std::size_t i = 0; i < sys2.size(); ++i) EXPECT_EQ(max_abs_diff(sys2[i].values(), oracle[i].values()), 0.0);
}

TEST(FilterBank, StandardBasisBank) {
  for (const auto& g : test_groups()) {
    auto fb = standard_basis_bank(g);
    std::mt19937_64 rng(2);
    auto f = random_signal(g, rng);
    auto y = analyze(fb, f);
    ASSERT_EQ(y.size(), 1u);
    EXPECT_LT(max_abs_diff(y[0], f.values()), 1e-15);
    EXPECT_LT(max_abs_diff(frame_operator_apply(fb, f).values(), f.values()), 1e-15);
    auto b = frame_bounds(fb);
    EXPECT_NEAR(b.lower, 1.0, 1e-12);
    EXPECT_NEAR(b.upper, 1.0, 1e-12);
    EXPECT_NEAR(frame_potential_fb(fb), static_cast<double>(g.order()), 1e-12);
    auto v = is_tight(fb, 1e-8);
    EXPECT_TRUE(v.tight);
    EXPECT_NEAR(v.bound, 1.0, 1e-12);

    auto twice = fb.with_filters({fb.filter(0), fb.filter(0)});
    auto b2 = frame_bounds(twice);
    EXPECT_NEAR(b2.lower, 2.0, 1e-12);
    EXPECT_NEAR(b2.upper, 2.0, 1e-12);

    const double c = 1.7;
    auto scaled = fb.with_filters({Complex(c) * fb.filter(0)});
    EXPECT_LT(max_abs_diff(frame_operator_apply(scaled, f).values(), (Complex(c * c) * f).values()), 1e-12);
  }
}

TEST(FilterBank, AnalyzeOrthogonalInputIsZero) {
  const GroupSpec z4({4});
  const GroupElement two{2};
  const auto H = Subgroup::closure(z4, std::span(&two, 1));
  FilterBank fb(H, {delta(z4, {0})});
  Signal f(z4, {0, 1, 0, 1});
  const auto y = analyze(fb, f);
  for (auto v : y[0]) EXPECT_EQ(v, Complex{});
}

TEST(FilterBank, SynthesizeZero) {
  std::mt19937_64 rng(3);
  auto fb = random_bank(h02(), 3, rng);
  std::vector<SubgroupSignal> y(3, SubgroupSignal(2, 0.0));
  EXPECT_EQ(synthesize(fb, y).norm(), 0.0);
  std::vector<SubgroupSignal> bad(3, SubgroupSignal(3, 0.0));
  EXPECT_THROW(synthesize(fb, bad), InputError);
  EXPECT_THROW(synthesize(fb, std::vector<SubgroupSignal>(2, SubgroupSignal(2))), InputError);
}

TEST(FilterBank, RankDeficientBank) {
  const GroupSpec g({2, 4});
  // Supported on H, so its H-translates stay inside l(H).
  Signal f0(g);
  f0[0] = 1.0;
  f0[2] = 0.5;
  FilterBank fb(h02(), {f0});
  auto b = frame_bounds(fb);
  EXPECT_NEAR(b.lower, 0.0, 1e-12);
  EXPECT_GT(b.upper, 0.5);
  EXPECT_FALSE(is_tight(fb, 1e-8).tight);
}

TEST(FilterBank, FramePotentialExamples) {
  const GroupSpec g({2, 4});
  std::vector<Signal> onb;
  for (std::size_t x = 0; x < g.order(); ++x) onb.push_back(delta(g, g.element_at(x)));
  EXPECT_NEAR(frame_potential(onb), 8.0, 1e-12);

  Signal v(g);
  v[3] = Complex(0.6, 0.8) * 1.5;
  EXPECT_NEAR(frame_potential(std::vector<Signal>{v}), std::pow(1.5, 4), 1e-12);
}

// Three vectors A^j u in C^2 with A = diag(w, w^2), modelled as l(Z/2).
TEST(FilterBank, ThreeVectorExample) {
  const GroupSpec c2({2});
  const Complex w = std::exp(Complex(0.0, 2.0 * std::numbers::pi / 3.0));
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Signal> xs;
  for (int j = 0; j < 3; ++j) xs.emplace_back(c2, std::vector<Complex>{r * std::pow(w, j), r * std::pow(w, 2 * j)});
  EXPECT_NEAR(frame_potential(xs), 4.5, 1e-12);
  for (double e : frame_operator_eigenvalues(xs)) EXPECT_NEAR(e, 1.5, 1e-12);
}

TEST(FilterBank, TightBankPotential) {
  // delta_0 and delta_1 with H = <(0,2)> of index 4 span half the space; add
  // the other two coset representatives to get a tight bank with bound 1.
  const GroupSpec g({2, 4});
  std::vector<Signal> f;
  for (std::size_t x : {0, 1, 4, 5}) f.push_back(delta(g, g.element_at(x)));
  FilterBank fb(h02(), f);
  auto v = is_tight(fb, 1e-12);
  ASSERT_TRUE(v.tight);
  EXPECT_NEAR(frame_potential_fb(fb), 8.0 * v.bound * v.bound, 1e-10);
}

class FilterBankProperties : public ::testing::TestWithParam<GroupSpec> {};

TEST_P(FilterBankProperties, OperatorsAgreeWithOracles) {
  const auto& g = GetParam();
  std::mt19937_64 rng(31);
  for (const auto& H : all_subgroups(g)) {
    for (std::size_t n : {1, 2, 3}) {
      auto fb = random_bank(H, n, rng);
      auto f = random_signal(g, rng);
      auto y = random_coefficients(fb, rng);
      const auto sys = testing::oracle_system(fb);
      const double scale = 1.0 + f.norm_squared() * static_cast<double>(n * H.order());

      auto a = analyze(fb, f);
      auto ac = analyze_convolution(fb, f);
      for (std::size_t m = 0; m < n; ++m) {
        EXPECT_LT(max_abs_diff(a[m], ac[m]), 1e-10 * scale);
        for (std::size_t k = 0; k < H.order(); ++k) {
          EXPECT_LT(std::abs(a[m][k] - inner(f, sys[m * H.order() + k])), 1e-10 * scale);
        }
      }

      auto s = synthesize(fb, y);
      EXPECT_LT(max_abs_diff(s.values(), synthesize_convolution(fb, y).values()), 1e-10 * scale);
      Complex lhs{}, direct{};
      for (std::size_t m = 0; m < n; ++m) {
        lhs += inner(std::span<const Complex>(a[m]), std::span<const Complex>(y[m]));
      }
      direct = inner(f, s);
      EXPECT_LT(std::abs(lhs - direct), 1e-10 * scale);

      auto Ff = frame_operator_apply(fb, f);
      EXPECT_LT(max_abs_diff(Ff.values(), testing::oracle_frame_apply(sys, f)), 1e-10 * scale);
      EXPECT_LT(max_abs_diff(Ff.values(), synthesize(fb, a).values()), 1e-10 * scale);

      // F commutes with translation by H.
      for (auto h : H.element_indices()) {
        EXPECT_LT(max_abs_diff(frame_operator_apply(fb, translate_index(f, h)).values(),
                               translate_index(Ff, h).values()),
                  1e-10 * scale);
      }
    }
  }
}

TEST_P(FilterBankProperties, PotentialAndBoundsAgree) {
  const auto& g = GetParam();
  std::mt19937_64 rng(37);
  for (const auto& H : all_subgroups(g)) {
    for (std::size_t n : {1, 2, 4}) {
      auto fb = random_bank(H, n, rng);
      const auto sys = expand_system(fb);
      const double direct = frame_potential(sys);
      const double blocks = frame_potential_fb(fb);
      EXPECT_LE(std::abs(direct - blocks), 1e-9 * direct);
      EXPECT_LE(std::abs(direct - testing::oracle_potential(sys)), 1e-9 * direct);
      double trace = 0.0;
      for (double e : frame_operator_eigenvalues(sys)) trace += e * e;
      EXPECT_LE(std::abs(trace - direct), 1e-8 * direct);

      auto b = frame_bounds(fb);
      auto d = frame_bounds_dense(fb);
      EXPECT_NEAR(b.lower, d.lower, 1e-9 * (1.0 + d.upper));
      EXPECT_NEAR(b.upper, d.upper, 1e-9 * (1.0 + d.upper));
      EXPECT_GE(b.lower, -1e-9 * d.upper);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, FilterBankProperties, ::testing::ValuesIn(test_groups()),
                         [](const auto& info) { return testing::group_name(info.param); });

}  // namespace
}  // namespace abelframe
