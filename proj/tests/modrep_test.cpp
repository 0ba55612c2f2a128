#include <gtest/gtest.h>

#include "abelframe/modrep.hpp"
#include "test_util.hpp"

namespace abelframe {
namespace {

using testing::all_subgroups;
using testing::random_bank;
using testing::random_coefficients;
using testing::test_groups;

TEST(Modrep, FullSubgroupBlocksAreSpectrumEntries) {
  const GroupSpec g({2, 4});
  std::mt19937_64 rng(5);
  auto fb = random_bank(Subgroup::full(g), 3, rng);
  auto sb = build_modrep(fb);
  ASSERT_EQ(sb.count(), 8u);
  for (std::size_t l = 0; l < 8; ++l) {
    ASSERT_EQ(sb.blocks[l].rows(), 1);
    ASSERT_EQ(sb.blocks[l].cols(), 3);
    EXPECT_EQ(sb.fiber_labels(l), std::vector<std::size_t>{l});
    for (std::size_t m = 0; m < 3; ++m) EXPECT_LT(std::abs(sb.blocks[l](0, m) - dft(fb.filter(m))[l]), 1e-12);
  }
}

TEST(Modrep, TrivialSubgroupBlockIsScaledDft) {
  const GroupSpec g({2, 4});
  std::mt19937_64 rng(6);
  auto fb = random_bank(Subgroup::trivial(g), 2, rng);
  auto sb = build_modrep(fb);
  ASSERT_EQ(sb.count(), 1u);
  ASSERT_EQ(sb.blocks[0].rows(), 8);
  for (std::size_t m = 0; m < 2; ++m) {
    auto F = dft(fb.filter(m));
    for (std::size_t a = 0; a < 8; ++a) EXPECT_LT(std::abs(sb.blocks[0](a, m) - F[a] / std::sqrt(8.0)), 1e-12);
  }
  auto y = random_coefficients(fb, rng);
  EXPECT_LE(verify_factorization(fb, sb, y), 1e-10);
}

TEST(Modrep, ShapeForIndexFourSubgroup) {
  const GroupSpec g({2, 4});
  const GroupElement gen{0, 2};
  const auto H = Subgroup::closure(g, std::span(&gen, 1));
  std::mt19937_64 rng(7);
  auto fb = random_bank(H, 4, rng);
  auto sb = build_modrep(fb);
  ASSERT_EQ(sb.count(), 2u);
  for (const auto& B : sb.blocks) {
    EXPECT_EQ(B.rows(), 4);
    EXPECT_EQ(B.cols(), 4);
  }
  EXPECT_EQ(verify_factorization(fb, sb, std::vector<SubgroupSignal>(4, SubgroupSignal(2))), 0.0);
}

TEST(Modrep, ZeroAndSingleFilterPotential) {
  const GroupSpec g({6});
  FilterBank zero(Subgroup::trivial(g), {Signal(g), Signal(g)});
  EXPECT_EQ(block_frame_potential(build_modrep(zero)), 0.0);
  Signal f(g, {0.0, 2.0, 0.0, 0.0, 0.0, 0.0});
  EXPECT_NEAR(block_frame_potential(build_modrep(FilterBank(Subgroup::trivial(g), {f}))), 16.0, 1e-12);
}

TEST(Modrep, VanishingFiberGivesZeroLowerBound) {
  const GroupSpec g({2, 4});
  const GroupElement gen{0, 2};
  const auto H = Subgroup::closure(g, std::span(&gen, 1));
  const auto part = fiber_partition(H);
  // Spectrum supported on the first fiber only.
  Spectrum F(g);
  for (auto a : part.fibers[0]) F[a] = Complex(1.0 + static_cast<double>(a), 0.5);
  FilterBank fb(H, {idft(F)});
  EXPECT_NEAR(block_frame_bounds(build_modrep(fb)).lower, 0.0, 1e-12);
}

class ModrepProperties : public ::testing::TestWithParam<GroupSpec> {};

TEST_P(ModrepProperties, FactorizationAndSpectrum) {
  const auto& g = GetParam();
  std::mt19937_64 rng(41);
  for (const auto& H : all_subgroups(g)) {
    for (std::size_t n : {1, 3, 5}) {
      auto fb = random_bank(H, n, rng);
      auto sb = build_modrep(fb);
      ASSERT_EQ(sb.count(), H.order());
      std::vector<int> hits(g.order(), 0);
      for (std::size_t l = 0; l < sb.count(); ++l) {
        EXPECT_EQ(sb.blocks[l].rows(), static_cast<Eigen::Index>(H.index()));
        EXPECT_EQ(sb.blocks[l].cols(), static_cast<Eigen::Index>(n));
        for (auto a : sb.fiber_labels(l)) ++hits[a];
      }
      for (int h : hits) EXPECT_EQ(h, 1);

      // Column norms spread the filter norm over the blocks.
      for (std::size_t m = 0; m < n; ++m) {
        double s = 0.0;
        for (const auto& B : sb.blocks) s += B.col(static_cast<Eigen::Index>(m)).squaredNorm();
        const double expect = static_cast<double>(H.order()) * fb.filter(m).norm_squared();
        EXPECT_LE(std::abs(s - expect), 1e-10 * expect);
      }

      for (int t = 0; t < 4; ++t) {
        auto y = random_coefficients(fb, rng);
        double ynorm = 0.0;
        for (const auto& v : y) {
          for (auto c : v) ynorm += std::norm(c);
        }
        EXPECT_LE(verify_factorization(fb, sb, y), 1e-10 * (1.0 + std::sqrt(ynorm)));
      }

      auto dense = frame_operator_eigenvalues(expand_system(fb));
      auto block = block_eigenvalues(sb);
      ASSERT_EQ(dense.size(), block.size());
      for (std::size_t i = 0; i < dense.size(); ++i) EXPECT_NEAR(dense[i], block[i], 1e-8);

      auto bb = block_frame_bounds(sb);
      auto db = frame_bounds_dense(fb);
      EXPECT_NEAR(bb.lower, db.lower, 1e-9);
      EXPECT_NEAR(bb.upper, db.upper, 1e-9 * (1.0 + db.upper));

      const double fp = frame_potential(expand_system(fb));
      EXPECT_LE(std::abs(block_frame_potential(sb) - fp), 1e-10 * fp);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, ModrepProperties, ::testing::ValuesIn(test_groups()),
                         [](const auto& info) { return testing::group_name(info.param); });

}  // namespace
}  // namespace abelframe
