#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chart.hpp"
#include "errors.hpp"
#include "forms.hpp"
#include "multisymplectic.hpp"
#include "polynomial.hpp"
#include "polysymplectic.hpp"
#include "rational.hpp"

// Deterministic random instance generation on top of splitmix64. The child
// seed rule is part of the tool contract (reports must be reproducible from
// (seed, trial) alone):
//   child_seed(s, t) = mix64(s + (t+1) * 0x9e3779b97f4a7c15)
// which equals the (t+1)-th raw output of a splitmix64 stream seeded with s.

namespace darboux {

inline constexpr std::uint64_t splitmix_gamma = 0x9e3779b97f4a7c15ull;

inline std::uint64_t mix64(std::uint64_t z) {
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
	return z ^ (z >> 31);
}

inline std::uint64_t child_seed(std::uint64_t seed, std::uint64_t t) {
	return mix64(seed + (t + 1) * splitmix_gamma);
}

/// splitmix64 stream.
class Rng {
  public:
	explicit Rng(std::uint64_t seed) : state_(seed) {}

	std::uint64_t next() {
		state_ += splitmix_gamma;
		return mix64(state_);
	}

	/// Uniform draw from [0, bound), bias-free via rejection.
	std::uint64_t below(std::uint64_t bound) {
		if (bound == 0)
			throw InternalError("Rng::below needs a positive bound");
		const std::uint64_t threshold = (0 - bound) % bound;
		for (;;) {
			std::uint64_t v = next();
			if (v >= threshold)
				return v % bound;
		}
	}

	/// Uniform draw from [lo, hi], inclusive.
	int range(int lo, int hi) {
		if (hi < lo)
			throw InternalError("Rng::range needs lo <= hi");
		return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
	}

	bool coin() { return below(2) == 1; }

  private:
	std::uint64_t state_;
};

/// Coefficient pool used everywhere: numerator ±1..±9, denominator 1..4.
inline Rational random_coefficient(Rng& rng) {
	int num = rng.range(1, 9) * (rng.coin() ? 1 : -1);
	return make_rational(num, rng.range(1, 4));
}

/// Point values may also be zero.
inline Rational random_value(Rng& rng) {
	return make_rational(rng.range(-9, 9), rng.range(1, 4));
}

inline std::vector<std::string> names_with_roles(const ChartPtr& chart,
                                                 std::initializer_list<CoordinateRole> roles) {
	std::vector<std::string> out;
	for (int i = 0; i < chart->dimension(); ++i)
		for (CoordinateRole r : roles)
			if (chart->role(i) == r) {
				out.push_back(chart->name(i));
				break;
			}
	return out;
}

inline std::vector<std::string> all_names(const ChartPtr& chart) {
	std::vector<std::string> out;
	for (int i = 0; i < chart->dimension(); ++i)
		out.push_back(chart->name(i));
	return out;
}

inline Monomial random_monomial(Rng& rng, const std::vector<std::string>& vars, int degree) {
	Monomial m;
	if (vars.empty())
		return m;
	for (int j = 0; j < degree; ++j)
		++m[vars[rng.below(vars.size())]];
	return m;
}

/// 1..3 terms of degree <= max_degree each; may cancel to zero.
inline Polynomial random_polynomial(Rng& rng, const std::vector<std::string>& vars,
                                    int max_degree) {
	Polynomial p;
	int terms = rng.range(1, 3);
	for (int t = 0; t < terms; ++t) {
		int degree = vars.empty() ? 0 : rng.range(0, max_degree);
		p += Polynomial::term(random_monomial(rng, vars, degree), random_coefficient(rng));
	}
	return p;
}

/// Strictly increasing multi-index of the given length drawn from a pool of
/// coordinate indices (partial Fisher-Yates, then sort).
inline MultiIndex random_multi_index(Rng& rng, std::vector<int> pool, int degree) {
	if (degree > static_cast<int>(pool.size()))
		throw InternalError("multi-index degree exceeds coordinate pool");
	for (int j = 0; j < degree; ++j) {
		std::size_t k = j + rng.below(pool.size() - j);
		std::swap(pool[j], pool[k]);
	}
	MultiIndex idx(pool.begin(), pool.begin() + degree);
	std::sort(idx.begin(), idx.end());
	return idx;
}

inline std::vector<int> all_indices(const ChartPtr& chart) {
	std::vector<int> out;
	for (int i = 0; i < chart->dimension(); ++i)
		out.push_back(i);
	return out;
}

inline std::vector<int> vertical_indices(const ChartPtr& chart) {
	std::vector<int> out;
	for (int i = 0; i < chart->dimension(); ++i)
		if (chart->is_vertical(i))
			out.push_back(i);
	return out;
}

/// 1..3 terms with indices from the given pool and coefficients over all
/// chart variables.
inline DifferentialForm random_form_over(Rng& rng, const ChartPtr& chart, int degree,
                                         int max_degree, const std::vector<int>& pool) {
	DifferentialForm f(chart, degree);
	auto vars = all_names(chart);
	int terms = rng.range(1, 3);
	for (int t = 0; t < terms; ++t)
		f.accumulate(random_multi_index(rng, pool, degree),
		             random_polynomial(rng, vars, max_degree));
	return f;
}

inline DifferentialForm random_form(Rng& rng, const ChartPtr& chart, int degree,
                                    int max_degree) {
	return random_form_over(rng, chart, degree, max_degree, all_indices(chart));
}

/// 1..3 components over arbitrary coordinates.
inline VectorField random_vector_field(Rng& rng, const ChartPtr& chart, int max_degree) {
	VectorField X(chart);
	auto vars = all_names(chart);
	int comps = rng.range(1, 3);
	for (int t = 0; t < comps; ++t)
		X.add_component(static_cast<int>(rng.below(chart->dimension())),
		                random_polynomial(rng, vars, max_degree));
	return X;
}

/// Vertical field (no base components).
inline VectorField random_vertical_field(Rng& rng, const ChartPtr& chart, int max_degree) {
	VectorField X(chart);
	auto vars = all_names(chart);
	auto pool = vertical_indices(chart);
	int comps = rng.range(1, 3);
	for (int t = 0; t < comps; ++t)
		X.add_component(pool[rng.below(pool.size())], random_polynomial(rng, vars, max_degree));
	return X;
}

inline Point random_point(Rng& rng, const ChartPtr& chart) {
	std::map<std::string, Rational> assignment;
	for (int i = 0; i < chart->dimension(); ++i)
		assignment[chart->name(i)] = random_value(rng);
	return Point::make(chart, assignment);
}

/// The documented test chart pool {(1,1),(2,1),(2,2),(3,2)}.
inline std::pair<int, int> random_chart_sizes(Rng& rng) {
	static const std::pair<int, int> pool[] = {{1, 1}, {2, 1}, {2, 2}, {3, 2}};
	return pool[rng.below(4)];
}

inline ChartPtr random_extended_chart(Rng& rng) {
	auto [n, N] = random_chart_sizes(rng);
	return build_extended_chart(n, N);
}

inline ChartPtr random_ordinary_chart(Rng& rng) {
	auto [n, N] = random_chart_sizes(rng);
	return build_ordinary_chart(n, N);
}

inline ChartPtr random_chart(Rng& rng) {
	return rng.coin() ? random_extended_chart(rng) : random_ordinary_chart(rng);
}

/// Random generator data for the hamiltonian construction. Every component
/// is present with probability 1/2; zero draws are dropped so the maps stay
/// normalized.
inline HamiltonianGenerators random_generators(Rng& rng, const ChartPtr& chart,
                                               int max_degree) {
	HamiltonianGenerators g;
	g.chart = chart;
	const int n = chart->base_count(), N = chart->position_count();
	auto base = names_with_roles(chart, {CoordinateRole::base});
	auto base_pos = names_with_roles(chart, {CoordinateRole::base, CoordinateRole::position});
	const auto& xmu_pool = N == 1 ? base_pos : base;
	for (int mu = 1; mu <= n; ++mu)
		if (rng.coin()) {
			Polynomial p = random_polynomial(rng, xmu_pool, max_degree);
			if (!p.is_zero())
				g.Xmu[mu] = std::move(p);
		}
	for (int i = 1; i <= N; ++i)
		if (rng.coin()) {
			Polynomial p = random_polynomial(rng, base_pos, max_degree);
			if (!p.is_zero())
				g.Xi[i] = std::move(p);
		}
	for (int mu = 1; mu <= n; ++mu)
		if (rng.coin()) {
			Polynomial p = random_polynomial(rng, base_pos, max_degree);
			if (!p.is_zero())
				g.f0[mu] = std::move(p);
		}
	return g;
}

inline PolyHamiltonianGenerators random_poly_generators(Rng& rng, const ChartPtr& chart,
                                                        int max_degree) {
	PolyHamiltonianGenerators g;
	g.chart = chart;
	auto base_pos = names_with_roles(chart, {CoordinateRole::base, CoordinateRole::position});
	for (int i = 1; i <= chart->position_count(); ++i)
		if (rng.coin()) {
			Polynomial p = random_polynomial(rng, base_pos, max_degree);
			if (!p.is_zero())
				g.Xi[i] = std::move(p);
		}
	for (int a = 1; a <= chart->label_count(); ++a)
		if (rng.coin()) {
			Polynomial p = random_polynomial(rng, base_pos, max_degree);
			if (!p.is_zero())
				g.f0[a] = std::move(p);
		}
	return g;
}

} // namespace darboux
