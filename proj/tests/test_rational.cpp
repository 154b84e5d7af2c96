#include <hexacarpet/rational.hpp>

#include <gtest/gtest.h>

#include <sstream>

using hexacarpet::Rational;

TEST(Rational, NormalizesSignAndLowestTerms)
{
	const Rational r(6, -4);
	EXPECT_EQ(r.num(), -3);
	EXPECT_EQ(r.den(), 2);
	EXPECT_EQ(Rational(0, 7), Rational(0));
	EXPECT_EQ(Rational(0, 7).den(), 1);
}

TEST(Rational, Arithmetic)
{
	const Rational a(1, 2), b(1, 3);
	EXPECT_EQ(a + b, Rational(5, 6));
	EXPECT_EQ(a - b, Rational(1, 6));
	EXPECT_EQ(a * b, Rational(1, 6));
	EXPECT_EQ(a / b, Rational(3, 2));
	EXPECT_EQ(-a, Rational(-1, 2));
	Rational c = a;
	c += b;
	c *= Rational(6);
	EXPECT_EQ(c, Rational(5));
}

TEST(Rational, Ordering)
{
	EXPECT_LT(Rational(1, 3), Rational(1, 2));
	EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
	EXPECT_LE(Rational(2, 4), Rational(1, 2));
}

TEST(Rational, ErrorsAndOutput)
{
	EXPECT_THROW(Rational(1, 0), hexacarpet::InvalidArgument);
	EXPECT_THROW(Rational(1) / Rational(0), hexacarpet::InvalidArgument);
	const Rational big(INT64_MAX / 2);
	EXPECT_THROW(big * big, hexacarpet::Error);
	std::ostringstream os;
	os << Rational(-3, 9);
	EXPECT_EQ(os.str(), "-1/3");
	EXPECT_EQ(Rational(7, 2).str(), "7/2");
	EXPECT_DOUBLE_EQ(Rational(1, 4).to_double(), 0.25);
}
