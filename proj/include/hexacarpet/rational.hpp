#pragma once

#include "error.hpp"

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

namespace hexacarpet {

/**
 * Exact rational number with 64-bit numerator and denominator.
 *
 * Always stored in lowest terms with a positive denominator. Intermediate
 * products are formed in 128-bit arithmetic; a result that does not fit back
 * into 64 bits throws.
 */
class Rational
{
  public:
	constexpr Rational() = default;
	constexpr Rational(std::int64_t value) : num_(value), den_(1) {}
	Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

	std::int64_t num() const noexcept { return num_; }
	std::int64_t den() const noexcept { return den_; }

	double to_double() const noexcept
	{
		return static_cast<double>(num_) / static_cast<double>(den_);
	}

	std::string str() const
	{
		return std::to_string(num_) + "/" + std::to_string(den_);
	}

	friend Rational operator+(const Rational& a, const Rational& b)
	{
		return from_wide(static_cast<__int128>(a.num_) * b.den_ +
							 static_cast<__int128>(b.num_) * a.den_,
						 static_cast<__int128>(a.den_) * b.den_);
	}
	friend Rational operator-(const Rational& a, const Rational& b)
	{
		return from_wide(static_cast<__int128>(a.num_) * b.den_ -
							 static_cast<__int128>(b.num_) * a.den_,
						 static_cast<__int128>(a.den_) * b.den_);
	}
	friend Rational operator*(const Rational& a, const Rational& b)
	{
		return from_wide(static_cast<__int128>(a.num_) * b.num_,
						 static_cast<__int128>(a.den_) * b.den_);
	}
	friend Rational operator/(const Rational& a, const Rational& b)
	{
		if (b.num_ == 0)
			throw InvalidArgument("rational division by zero");
		return from_wide(static_cast<__int128>(a.num_) * b.den_,
						 static_cast<__int128>(a.den_) * b.num_);
	}
	Rational operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

	Rational& operator+=(const Rational& o) { return *this = *this + o; }
	Rational& operator-=(const Rational& o) { return *this = *this - o; }
	Rational& operator*=(const Rational& o) { return *this = *this * o; }
	Rational& operator/=(const Rational& o) { return *this = *this / o; }

	friend bool operator==(const Rational& a, const Rational& b) = default;
	friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
	{
		const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
		const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
		if (lhs < rhs)
			return std::strong_ordering::less;
		if (lhs > rhs)
			return std::strong_ordering::greater;
		return std::strong_ordering::equal;
	}

	friend std::ostream& operator<<(std::ostream& os, const Rational& r)
	{
		return os << r.num_ << '/' << r.den_;
	}

  private:
	static __int128 gcd128(__int128 a, __int128 b)
	{
		if (a < 0)
			a = -a;
		if (b < 0)
			b = -b;
		while (b != 0) {
			const __int128 t = a % b;
			a = b;
			b = t;
		}
		return a;
	}

	static Rational from_wide(__int128 num, __int128 den)
	{
		if (den == 0)
			throw InvalidArgument("rational with zero denominator");
		if (den < 0) {
			num = -num;
			den = -den;
		}
		const __int128 g = gcd128(num, den);
		if (g > 1) {
			num /= g;
			den /= g;
		}
		constexpr __int128 lim = INT64_MAX;
		if (num > lim || num < -lim || den > lim)
			throw Error("rational overflow");
		Rational r;
		r.num_ = static_cast<std::int64_t>(num);
		r.den_ = static_cast<std::int64_t>(den);
		return r;
	}

	void assign(std::int64_t num, std::int64_t den) { *this = from_wide(num, den); }

	std::int64_t num_ = 0;
	std::int64_t den_ = 1;
};

} // namespace hexacarpet
