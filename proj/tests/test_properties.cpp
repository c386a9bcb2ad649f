// Property suites; none of them touches the search or its cache.

#include <gtest/gtest.h>

#include "property_checks.hpp"

namespace {

std::string first(const checks::Failures& f) { return f.empty() ? "" : f.front() + " (+" + std::to_string(f.size() - 1) + " more)"; }

}  // namespace

TEST(Property, Monotonicity) {
  const auto f = checks::monotonicity();
  EXPECT_TRUE(f.empty()) << first(f);
}

TEST(Property, Containment) {
  const auto f = checks::containment();
  EXPECT_TRUE(f.empty()) << first(f);
}

TEST(Property, ComplementDuality) {
  const auto f = checks::complement_duality();
  EXPECT_TRUE(f.empty()) << first(f);
}

TEST(Property, AffineEquivariance) {
  const auto f = checks::affine_equivariance();
  EXPECT_TRUE(f.empty()) << first(f);
}

TEST(Property, LemmaSubsetValidUpTo20) {
  const auto f = checks::lemma_subset_valid(20);
  EXPECT_TRUE(f.empty()) << first(f);
}

TEST(Property, SpanCosetCountUpTo24) {
  const auto f = checks::span_coset_count(24);
  EXPECT_TRUE(f.empty()) << first(f);
}

TEST(Property, DpMatchesEnumerationUpTo12) {
  const auto f = checks::dp_matches_enumeration(12);
  EXPECT_TRUE(f.empty()) << first(f);
}

TEST(Property, FormulaMatchesConstructionUpTo24) {
  std::size_t cells = 0;
  const auto f = checks::formula_matches_construction(24, &cells);
  EXPECT_TRUE(f.empty()) << first(f);
  EXPECT_GT(cells, 10000U);
}
