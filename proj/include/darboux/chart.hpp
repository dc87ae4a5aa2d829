#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace darboux {

enum class CoordinateRole { base, position, momentum, energy };

struct Coordinate {
	std::string name;
	CoordinateRole role;
};

/// A Darboux coordinate chart. Extended charts carry base coordinates
/// x1..xn, positions q1..qN, multimomenta p{i}_{mu} ordered
/// lexicographically in (i, mu), and the energy coordinate p. Ordinary
/// charts drop the energy coordinate and carry momenta p{i}_{a} with the
/// label index a running to the label count instead of n.
class Chart {
  public:
	enum class Kind { extended, ordinary };

	Kind kind() const { return kind_; }
	int base_count() const { return n_; }
	int position_count() const { return N_; }
	/// Number of momentum labels: n on extended charts, nhat on ordinary ones.
	int label_count() const { return kind_ == Kind::extended ? n_ : nhat_; }
	int dimension() const { return static_cast<int>(coords_.size()); }

	const std::vector<Coordinate>& coordinates() const { return coords_; }
	const std::string& name(int index) const { return coords_.at(index).name; }
	CoordinateRole role(int index) const { return coords_.at(index).role; }
	bool is_vertical(int index) const { return role(index) != CoordinateRole::base; }

	bool has(const std::string& name) const { return index_.count(name) != 0; }

	int index_of(const std::string& name) const {
		auto it = index_.find(name);
		if (it == index_.end())
			throw InputError("unknown coordinate '" + name + "'");
		return it->second;
	}

	/// Index of x^mu, mu in 1..n.
	int base_index(int mu) const {
		check_range(mu, n_, "base index");
		return mu - 1;
	}

	/// Index of q^i, i in 1..N.
	int position_index(int i) const {
		check_range(i, N_, "position index");
		return n_ + (i - 1);
	}

	/// Index of p{i}_{a}, i in 1..N, a in 1..label_count().
	int momentum_index(int i, int a) const {
		check_range(i, N_, "position index");
		check_range(a, label_count(), "momentum label");
		return n_ + N_ + (i - 1) * label_count() + (a - 1);
	}

	/// Index of the energy coordinate p (extended charts only).
	int energy_index() const {
		if (kind_ != Kind::extended)
			throw InputError("ordinary chart has no energy coordinate");
		return dimension() - 1;
	}

	friend bool operator==(const Chart& a, const Chart& b) {
		return a.kind_ == b.kind_ && a.n_ == b.n_ && a.N_ == b.N_ && a.nhat_ == b.nhat_;
	}
	friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

	std::string str() const {
		std::string s = kind_ == Kind::extended ? "extended(" : "ordinary(";
		s += std::to_string(n_) + "," + std::to_string(N_);
		if (kind_ == Kind::ordinary && nhat_ != n_)
			s += "," + std::to_string(nhat_);
		return s + ")";
	}

	static std::shared_ptr<const Chart> make(Kind kind, int n, int N, int nhat) {
		return std::shared_ptr<const Chart>(new Chart(kind, n, N, nhat));
	}

  private:
	Chart(Kind kind, int n, int N, int nhat) : kind_(kind), n_(n), N_(N), nhat_(nhat) {
		if (n < 1 || N < 1 || (kind == Kind::ordinary && nhat < 1))
			throw InputError("chart dimensions must be positive");
		for (int mu = 1; mu <= n; ++mu)
			push("x" + std::to_string(mu), CoordinateRole::base);
		for (int i = 1; i <= N; ++i)
			push("q" + std::to_string(i), CoordinateRole::position);
		int labels = kind == Kind::extended ? n : nhat;
		for (int i = 1; i <= N; ++i)
			for (int a = 1; a <= labels; ++a)
				push("p" + std::to_string(i) + "_" + std::to_string(a), CoordinateRole::momentum);
		if (kind == Kind::extended)
			push("p", CoordinateRole::energy);
	}

	void push(std::string name, CoordinateRole role) {
		index_.emplace(name, static_cast<int>(coords_.size()));
		coords_.push_back({std::move(name), role});
	}

	static void check_range(int v, int hi, const char* what) {
		if (v < 1 || v > hi)
			throw InputError(std::string(what) + " " + std::to_string(v) + " out of range");
	}

	Kind kind_;
	int n_, N_, nhat_;
	std::vector<Coordinate> coords_;
	std::map<std::string, int> index_;
};

using ChartPtr = std::shared_ptr<const Chart>;

/// Extended multiphase space chart: dimension (N+1)(n+1).
inline ChartPtr build_extended_chart(int n, int N) {
	return Chart::make(Chart::Kind::extended, n, N, n);
}

/// Ordinary multiphase space chart: dimension n + N + N*nhat.
/// nhat defaults to n when omitted or zero.
inline ChartPtr build_ordinary_chart(int n, int N, int nhat = 0) {
	return Chart::make(Chart::Kind::ordinary, n, N, nhat == 0 ? n : nhat);
}

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b) {
	if (!a || !b || *a != *b)
		throw InputError("chart mismatch");
}

/// A point of a chart: one rational value per coordinate, in chart order.
struct Point {
	ChartPtr chart;
	std::vector<Rational> values;

	static Point make(ChartPtr chart, const std::map<std::string, Rational>& assignment) {
		Point pt;
		pt.chart = chart;
		pt.values.reserve(chart->dimension());
		for (const auto& coord : chart->coordinates()) {
			auto it = assignment.find(coord.name);
			if (it == assignment.end())
				throw InputError("point is missing coordinate '" + coord.name + "'");
			pt.values.push_back(it->second);
		}
		if (assignment.size() != static_cast<std::size_t>(chart->dimension()))
			throw InputError("point assigns values outside the chart");
		return pt;
	}

	const Rational& value(int index) const { return values.at(index); }

	std::map<std::string, Rational> named() const {
		std::map<std::string, Rational> out;
		for (int i = 0; i < chart->dimension(); ++i)
			out.emplace(chart->name(i), values[i]);
		return out;
	}
};

} // namespace darboux
