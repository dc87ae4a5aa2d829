#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace darboux {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Build a rational from numerator/denominator, normalising the sign into the
/// numerator. The backing type insists on a positive denominator.
inline Rational make_rational(Integer num, Integer den) {
	if (den == 0)
		throw InputError("rational with zero denominator");
	if (den < 0) {
		num = -num;
		den = -den;
	}
	return Rational(std::move(num), std::move(den));
}

/// Parse "num" or "num/den" with an optional leading minus. Whitespace is not
/// allowed; the denominator must be a positive integer literal.
inline Rational parse_rational(std::string_view text) {
	auto fail = [&] { throw ParseError("bad rational literal '" + std::string(text) + "'"); };
	std::size_t slash = text.find('/');
	std::string_view num_part = text.substr(0, slash);
	bool negative = false;
	if (!num_part.empty() && (num_part.front() == '-' || num_part.front() == '+')) {
		negative = num_part.front() == '-';
		num_part.remove_prefix(1);
	}
	auto digits = [&](std::string_view s) {
		if (s.empty())
			fail();
		for (char c : s)
			if (c < '0' || c > '9')
				fail();
		return Integer(std::string(s));
	};
	Integer num = digits(num_part);
	if (negative)
		num = -num;
	Integer den = 1;
	if (slash != std::string_view::npos) {
		den = digits(text.substr(slash + 1));
		if (den == 0)
			fail();
	}
	return Rational(std::move(num), std::move(den));
}

/// Canonical text form: "num" when the denominator is 1, otherwise "num/den".
inline std::string rational_str(const Rational& r) {
	std::string s = numerator(r).str();
	if (denominator(r) != 1)
		s += "/" + denominator(r).str();
	return s;
}

/// r^e for non-negative integral e.
inline Rational rational_pow(const Rational& r, unsigned e) {
	Rational out = 1;
	for (unsigned k = 0; k < e; ++k)
		out *= r;
	return out;
}

} // namespace darboux
