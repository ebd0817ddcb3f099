#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wallis/identities.hpp"

namespace {

using std::numbers::pi;

TEST(Reflection, GammaSideForEvenB) {
  for (int b = 2; b <= 64; b += 2) EXPECT_NEAR(wallis::reflection_check(1.0 / b), 1.0, 1e-12) << b;
  for (double z : {0.1, 0.37, -1.3, 2.6}) EXPECT_NEAR(wallis::reflection_check(z), 1.0, 1e-12) << z;
  EXPECT_THROW(wallis::reflection_check(2.0), wallis::PoleError);
}

TEST(Reflection, ProductBridge) {
  for (int b : {2, 4, 6, 10, 32, 64}) {
    const auto ev = wallis::reflection_product_rhs(wallis::ReflectionCase(b), 1e-9);
    const double rhs = pi / wallis::sin_pi(1.0 / b);
    EXPECT_NEAR(ev.value, rhs, 1e-8) << b;
    EXPECT_LE(std::abs(ev.value - rhs), ev.error_bound);
  }
}

TEST(Reflection, CaseValidation) {
  const wallis::ReflectionCase c(8);
  EXPECT_DOUBLE_EQ(c.z(), 0.125);
  EXPECT_DOUBLE_EQ(c.family().a(), 3.0);
  EXPECT_THROW(wallis::ReflectionCase(3), wallis::PreconditionError);
  EXPECT_THROW(wallis::ReflectionCase(0), wallis::PreconditionError);
}

TEST(SineProduct, TailCorrectionRemovesTruncationError) {
  for (double z : {0.5, 0.25, 1.0 / 6.0, 0.125, 0.9}) {
    const auto p = wallis::sine_product(z, 100000);
    const double exact = wallis::sin_pi(z) / pi;
    EXPECT_NEAR(p.corrected.value, exact, 1e-13) << z;
    EXPECT_LE(std::abs(p.corrected.value - exact), p.corrected.error_bound + 1e-16) << z;
    EXPECT_GT(std::abs(p.partial - exact), 1e-9) << z;
  }
  EXPECT_DOUBLE_EQ(wallis::sine_product(1.0, 10).corrected.value, 0.0);
  EXPECT_THROW(wallis::sine_product(50.0, 10), wallis::PreconditionError);
}

TEST(SineProduct, HalfShiftVariant) {
  for (double z : {0.25, 1.0 / 3.0, 0.4}) {
    const auto p = wallis::half_shift_sine_product(z, 1000);
    EXPECT_NEAR(p.corrected.value, wallis::sin_pi(z) / pi, 1e-10) << z;
  }
}

TEST(NestedRadical, MatchesSine) {
  for (int n = 3; n <= 25; ++n) {
    const double s = std::sin(pi / std::ldexp(1.0, n));
    EXPECT_NEAR(wallis::nested_radical_sin(n), s, 1e-12) << n;
    EXPECT_NEAR(wallis::nested_radical_sin(n) / s, 1.0, 1e-14) << n;
  }
  EXPECT_NEAR(wallis::nested_radical_sin(3), 0.5 * std::sqrt(2.0 - std::sqrt(2.0)), 1e-16);
  EXPECT_THROW(wallis::nested_radical_sin(2), wallis::PreconditionError);
}

TEST(HalfShift, ThreeFormsAgree) {
  for (int b : {4, 6, 8, 12, 16}) {
    const auto h = wallis::half_shift_reflection_check(b, 1e-10);
    EXPECT_NEAR(h.gamma_form, h.cosine_form, 1e-12 * h.cosine_form) << b;
    EXPECT_NEAR(h.product.value, h.cosine_form, 1e-10) << b;
    EXPECT_TRUE(h.consistent(1e-9)) << b;
    EXPECT_EQ(h.dimension, b / 2 + 1);
  }
  EXPECT_THROW(wallis::half_shift_reflection_check(2, 1e-8), wallis::PreconditionError);
  EXPECT_THROW(wallis::half_shift_reflection_check(5, 1e-8), wallis::PreconditionError);
}

TEST(SpecialValues, EachWithinTolerance) {
  for (const auto& sv : wallis::all_special_values()) {
    const double scale = sv.chain.multiplier / (sv.chain.strip_prefactor ? wallis::prefactor(sv.family) : 1.0);
    const auto ev = sv.apply(wallis::evaluate(sv.family, 1e-9 / std::max(1.0, scale)));
    EXPECT_NEAR(ev.value, sv.target, 1e-9) << sv.id;
    EXPECT_LE(std::abs(ev.value - sv.target), ev.error_bound) << sv.id;
  }
}

TEST(SpecialValues, NamedTargets) {
  EXPECT_NEAR(wallis::special_value("B6_A0").target, 2.4057768647475545962, 1e-15);
  EXPECT_NEAR(wallis::special_value("B6_A0").alternate_target, 2.4057768647475545962, 1e-12);
  EXPECT_NEAR(wallis::special_value("EIGHTS").target, 1.02617215297703088887, 1e-15);
  EXPECT_NEAR(wallis::special_value("POW2(3)").target, 8.209377223816247111, 1e-14);
  EXPECT_NEAR(wallis::special_value("POW2(4)").target, 16.103272684793022913, 1e-13);
  EXPECT_NEAR(wallis::special_value("POW2(5)").target, 32.051462050687197262, 1e-13);
  EXPECT_EQ(wallis::special_value("PI_3").family.describe(), "b=6 a=2 N=3");
  EXPECT_EQ(wallis::all_special_values(5).size(), 9u);
}

TEST(SpecialValues, UnknownIdentifiers) {
  EXPECT_THROW(wallis::special_value("PI_4"), wallis::DomainError);
  EXPECT_THROW(wallis::special_value("POW2(x)"), wallis::DomainError);
  EXPECT_THROW(wallis::special_value("POW2(2)"), wallis::DomainError);
}

}  // namespace
