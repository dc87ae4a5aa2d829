#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>

#include "errors.hpp"
#include "rational.hpp"

namespace darboux {

/// Monomial: coordinate name -> positive exponent. The empty map is 1.
using Monomial = std::map<std::string, unsigned>;

inline unsigned monomial_degree(const Monomial& m) {
	unsigned d = 0;
	for (const auto& [name, e] : m)
		d += e;
	return d;
}

inline std::string monomial_str(const Monomial& m) {
	std::string s;
	for (const auto& [name, e] : m) {
		if (!s.empty())
			s += " ";
		s += name;
		if (e > 1)
			s += "^" + std::to_string(e);
	}
	return s;
}

/// Multivariate polynomial with exact rational coefficients, stored as a
/// sparse ordered map from monomials to non-zero coefficients. The zero
/// polynomial has no terms, so equality is plain map equality.
class Polynomial {
  public:
	Polynomial() = default;

	static Polynomial constant(Rational c) {
		Polynomial p;
		if (c != 0)
			p.terms_.emplace(Monomial{}, std::move(c));
		return p;
	}

	static Polynomial constant(long c) { return constant(Rational(c)); }

	static Polynomial variable(const std::string& name, unsigned power = 1) {
		if (name.empty())
			throw InputError("variable with empty name");
		if (power == 0)
			return constant(1);
		Polynomial p;
		p.terms_.emplace(Monomial{{name, power}}, 1);
		return p;
	}

	static Polynomial term(Monomial m, Rational c) {
		Polynomial p;
		if (c != 0) {
			for (auto it = m.begin(); it != m.end();)
				it = it->second == 0 ? m.erase(it) : std::next(it);
			p.terms_.emplace(std::move(m), std::move(c));
		}
		return p;
	}

	const std::map<Monomial, Rational>& terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	bool is_constant() const {
		return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
	}

	/// The coefficient of a monomial, zero when absent.
	Rational coefficient(const Monomial& m) const {
		auto it = terms_.find(m);
		return it == terms_.end() ? Rational(0) : it->second;
	}

	Rational constant_value() const {
		if (!is_constant())
			throw InputError("polynomial is not constant");
		return terms_.empty() ? Rational(0) : terms_.begin()->second;
	}

	Polynomial& operator+=(const Polynomial& o) {
		for (const auto& [m, c] : o.terms_)
			add_term(m, c);
		return *this;
	}

	Polynomial& operator-=(const Polynomial& o) {
		for (const auto& [m, c] : o.terms_)
			add_term(m, -c);
		return *this;
	}

	Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

	Polynomial& operator*=(const Rational& c) {
		if (c == 0) {
			terms_.clear();
			return *this;
		}
		for (auto& [m, v] : terms_)
			v *= c;
		return *this;
	}

	friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
	friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

	friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
		Polynomial out;
		for (const auto& [ma, ca] : a.terms_)
			for (const auto& [mb, cb] : b.terms_) {
				Monomial m = ma;
				for (const auto& [name, e] : mb)
					m[name] += e;
				out.add_term(std::move(m), ca * cb);
			}
		return out;
	}

	friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
	friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

	Polynomial operator-() const {
		Polynomial out = *this;
		for (auto& [m, c] : out.terms_)
			c = -c;
		return out;
	}

	friend bool operator==(const Polynomial& a, const Polynomial& b) {
		return a.terms_ == b.terms_;
	}

	Polynomial pow(unsigned e) const {
		Polynomial out = constant(1);
		for (unsigned k = 0; k < e; ++k)
			out *= *this;
		return out;
	}

	/// Partial derivative with respect to one coordinate.
	Polynomial derivative(const std::string& name) const {
		Polynomial out;
		for (const auto& [m, c] : terms_) {
			auto it = m.find(name);
			if (it == m.end())
				continue;
			Monomial dm = m;
			if (it->second == 1)
				dm.erase(name);
			else
				--dm[name];
			out.add_term(std::move(dm), c * Rational(it->second));
		}
		return out;
	}

	/// Antiderivative with respect to one coordinate, with zero constant term.
	Polynomial antiderivative(const std::string& name) const {
		Polynomial out;
		for (const auto& [m, c] : terms_) {
			Monomial am = m;
			unsigned e = ++am[name];
			out.add_term(std::move(am), c / Rational(e));
		}
		return out;
	}

	/// Substitute polynomials for coordinates; unmapped coordinates stay fixed.
	Polynomial substitute(const std::map<std::string, Polynomial>& images) const {
		Polynomial out;
		for (const auto& [m, c] : terms_) {
			Polynomial prod = constant(c);
			for (const auto& [name, e] : m) {
				auto it = images.find(name);
				prod *= it == images.end() ? variable(name, e) : it->second.pow(e);
			}
			out += prod;
		}
		return out;
	}

	/// Evaluate at a full assignment of coordinate values.
	Rational evaluate(const std::map<std::string, Rational>& values) const {
		Rational out = 0;
		for (const auto& [m, c] : terms_) {
			Rational v = c;
			for (const auto& [name, e] : m) {
				auto it = values.find(name);
				if (it == values.end())
					throw InputError("no value for coordinate '" + name + "'");
				v *= rational_pow(it->second, e);
			}
			out += v;
		}
		return out;
	}

	std::set<std::string> variables() const {
		std::set<std::string> vars;
		for (const auto& [m, c] : terms_)
			for (const auto& [name, e] : m)
				vars.insert(name);
		return vars;
	}

	bool depends_on(const std::string& name) const {
		for (const auto& [m, c] : terms_)
			if (m.count(name))
				return true;
		return false;
	}

	unsigned total_degree() const {
		unsigned d = 0;
		for (const auto& [m, c] : terms_)
			d = std::max(d, monomial_degree(m));
		return d;
	}

	std::string str() const {
		if (terms_.empty())
			return "0";
		std::string s;
		for (const auto& [m, c] : terms_) {
			Rational a = c;
			if (s.empty()) {
				if (a < 0) {
					s += "-";
					a = -a;
				}
			} else {
				s += a < 0 ? " - " : " + ";
				if (a < 0)
					a = -a;
			}
			if (m.empty())
				s += rational_str(a);
			else {
				if (a != 1)
					s += rational_str(a) + " ";
				s += monomial_str(m);
			}
		}
		return s;
	}

  private:
	void add_term(Monomial m, Rational c) {
		if (c == 0)
			return;
		auto it = terms_.find(m);
		if (it == terms_.end()) {
			terms_.emplace(std::move(m), std::move(c));
			return;
		}
		it->second += c;
		if (it->second == 0)
			terms_.erase(it);
	}

	std::map<Monomial, Rational> terms_;
};

} // namespace darboux
