#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "forms.hpp"

namespace darboux {

/// Exterior product a ∧ b. The sign of each merged basis term counts the
/// transpositions needed to interleave the two increasing index lists.
inline DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
	require_same_chart(a.chart(), b.chart());
	DifferentialForm out(a.chart(), a.degree() + b.degree());
	for (const auto& [ia, ca] : a.terms())
		for (const auto& [ib, cb] : b.terms()) {
			MultiIndex merged;
			merged.reserve(ia.size() + ib.size());
			int sign = 1;
			bool collapses = false;
			std::size_t i = 0, j = 0;
			while (i < ia.size() && j < ib.size()) {
				if (ia[i] < ib[j])
					merged.push_back(ia[i++]);
				else if (ia[i] > ib[j]) {
					if ((ia.size() - i) % 2)
						sign = -sign;
					merged.push_back(ib[j++]);
				} else {
					collapses = true;
					break;
				}
			}
			if (collapses)
				continue;
			merged.insert(merged.end(), ia.begin() + i, ia.end());
			merged.insert(merged.end(), ib.begin() + j, ib.end());
			Polynomial c = ca * cb;
			out.accumulate(merged, sign < 0 ? -c : c);
		}
	return out;
}

namespace detail {

/// Derivative part shared by d and d_V: differentiate coefficients with
/// respect to the coordinates accepted by the filter and wedge d(coord) in
/// front, i.e. insert the coordinate index with the parity of its position.
template <class Filter>
DifferentialForm coefficient_derivative(const DifferentialForm& a, Filter&& keep) {
	const Chart& chart = *a.chart();
	DifferentialForm out(a.chart(), a.degree() + 1);
	for (const auto& [idx, poly] : a.terms())
		for (const auto& name : poly.variables()) {
			int c = chart.index_of(name);
			if (!keep(c))
				continue;
			if (std::binary_search(idx.begin(), idx.end(), c))
				continue;
			Polynomial dp = poly.derivative(name);
			auto pos = std::lower_bound(idx.begin(), idx.end(), c) - idx.begin();
			MultiIndex extended = idx;
			extended.insert(extended.begin() + pos, c);
			out.accumulate(extended, pos % 2 ? -dp : dp);
		}
	return out;
}

} // namespace detail

/// Exterior derivative d.
inline DifferentialForm exterior_derivative(const DifferentialForm& a) {
	return detail::coefficient_derivative(a, [](int) { return true; });
}

/// Vertical (fibre) derivative d_V: differentiates along every coordinate
/// except the base ones.
inline DifferentialForm vertical_derivative(const DifferentialForm& a) {
	const Chart& chart = *a.chart();
	return detail::coefficient_derivative(a, [&](int c) { return chart.is_vertical(c); });
}

/// Interior product i_X a for a of degree >= 1.
inline DifferentialForm interior_product(const VectorField& X, const DifferentialForm& a) {
	require_same_chart(X.chart(), a.chart());
	if (a.degree() < 1)
		throw InputError("interior product needs a form of degree >= 1");
	DifferentialForm out(a.chart(), a.degree() - 1);
	for (const auto& [idx, poly] : a.terms())
		for (std::size_t j = 0; j < idx.size(); ++j) {
			const Polynomial& comp = X.component(idx[j]);
			if (comp.is_zero())
				continue;
			MultiIndex rest = idx;
			rest.erase(rest.begin() + j);
			Polynomial c = comp * poly;
			out.accumulate(rest, j % 2 ? -c : c);
		}
	return out;
}

/// Lie derivative via the Cartan formula L_X = i_X d + d i_X
/// (for 0-forms just i_X d, the directional derivative).
inline DifferentialForm lie_derivative(const VectorField& X, const DifferentialForm& a) {
	DifferentialForm out = interior_product(X, exterior_derivative(a));
	if (a.degree() > 0)
		out += exterior_derivative(interior_product(X, a));
	return out;
}

namespace detail {

/// Poincaré homotopy operator over the coordinate block S marked in
/// `scaled`: radially scale the S-coordinates around 0 while treating the
/// rest as parameters. For a k-form term c(ξ) dξ^{I} the operator yields
///   Σ_j (-1)^{j-1} [∫_0^1 t^{s+k-1} dt] c(ξ) ξ^{I_j} dξ^{I \ I_j}
/// per coefficient monomial, where s is the monomial degree in the scaled
/// coordinates, so the integral contributes the factor 1/(s+k). Every
/// multi-index coordinate must belong to S for this to be defined.
inline DifferentialForm partial_homotopy(const DifferentialForm& a, const std::vector<char>& scaled) {
	if (a.degree() < 1)
		throw InputError("homotopy operator needs a form of degree >= 1");
	const Chart& chart = *a.chart();
	const int k = a.degree();
	DifferentialForm out(a.chart(), k - 1);
	for (const auto& [idx, poly] : a.terms()) {
		for (int c : idx)
			if (!scaled[c])
				throw InputError("homotopy block does not cover d" + chart.name(c));
		for (const auto& [mono, coeff] : poly.terms()) {
			unsigned s = 0;
			for (const auto& [name, e] : mono)
				if (scaled[chart.index_of(name)])
					s += e;
			Rational factor = coeff / Rational(s + k);
			for (std::size_t j = 0; j < idx.size(); ++j) {
				MultiIndex rest = idx;
				rest.erase(rest.begin() + j);
				Polynomial c = Polynomial::term(mono, j % 2 ? -factor : factor) *
				               Polynomial::variable(chart.name(idx[j]));
				out.accumulate(rest, c);
			}
		}
	}
	return out;
}

} // namespace detail

/// Homotopy operator I of the Poincaré lemma, scaling all coordinates:
/// d(I a) + I(d a) = a for every k-form with k >= 1.
inline DifferentialForm poincare_homotopy(const DifferentialForm& a) {
	return detail::partial_homotopy(a, std::vector<char>(a.chart()->dimension(), 1));
}

/// Homotopy operator scaling only the fibre coordinates; the input must not
/// involve base differentials. Inverts d_V in the same way: d_V(I_V a) +
/// I_V(d_V a) = a.
inline DifferentialForm vertical_homotopy(const DifferentialForm& a) {
	const Chart& chart = *a.chart();
	std::vector<char> scaled(chart.dimension(), 0);
	for (int c = 0; c < chart.dimension(); ++c)
		scaled[c] = chart.is_vertical(c) ? 1 : 0;
	return detail::partial_homotopy(a, scaled);
}

/// The base volume form d^n x = dx^1 ∧ ... ∧ dx^n.
inline DifferentialForm volume_form(const ChartPtr& chart) {
	MultiIndex idx;
	for (int mu = 1; mu <= chart->base_count(); ++mu)
		idx.push_back(chart->base_index(mu));
	DifferentialForm f(chart, chart->base_count());
	f.accumulate(idx, Polynomial::constant(1));
	return f;
}

/// d^n x_mu = i_{∂/∂x^mu} d^n x. For n = 1 this is the 0-form 1.
inline DifferentialForm volume_contraction(const ChartPtr& chart, int mu) {
	return interior_product(VectorField::basis(chart, "x" + std::to_string(mu)), volume_form(chart));
}

/// d^n x_{mu nu} = i_{∂/∂x^nu} i_{∂/∂x^mu} d^n x (needs n >= 2).
inline DifferentialForm volume_contraction(const ChartPtr& chart, int mu, int nu) {
	return interior_product(VectorField::basis(chart, "x" + std::to_string(nu)),
	                        volume_contraction(chart, mu));
}

/// Evaluate every coefficient at a point; zero values are dropped.
inline std::map<MultiIndex, Rational> evaluate_at(const DifferentialForm& a, const Point& pt) {
	require_same_chart(a.chart(), pt.chart);
	auto values = pt.named();
	std::map<MultiIndex, Rational> out;
	for (const auto& [idx, poly] : a.terms()) {
		Rational v = poly.evaluate(values);
		if (v != 0)
			out.emplace(idx, std::move(v));
	}
	return out;
}

namespace detail {

/// Basis of the nullspace of a rational matrix via Gauss–Jordan elimination.
/// Rows may be fewer than columns; the basis vectors have one unit entry per
/// free column, listed in column order.
inline std::vector<std::vector<Rational>> nullspace(std::vector<std::vector<Rational>> M, int cols) {
	const int rows = static_cast<int>(M.size());
	std::vector<int> pivot_cols;
	int rank = 0;
	for (int c = 0; c < cols && rank < rows; ++c) {
		int piv = -1;
		for (int r = rank; r < rows; ++r)
			if (M[r][c] != 0) {
				piv = r;
				break;
			}
		if (piv < 0)
			continue;
		std::swap(M[rank], M[piv]);
		Rational lead = M[rank][c];
		for (int cc = c; cc < cols; ++cc)
			M[rank][cc] /= lead;
		for (int r = 0; r < rows; ++r) {
			if (r == rank || M[r][c] == 0)
				continue;
			Rational f = M[r][c];
			for (int cc = c; cc < cols; ++cc)
				M[r][cc] -= f * M[rank][cc];
		}
		pivot_cols.push_back(c);
		++rank;
	}
	std::vector<char> is_pivot(cols, 0);
	for (int c : pivot_cols)
		is_pivot[c] = 1;
	std::vector<std::vector<Rational>> basis;
	for (int c = 0; c < cols; ++c) {
		if (is_pivot[c])
			continue;
		std::vector<Rational> v(cols, Rational(0));
		v[c] = 1;
		for (int r = 0; r < rank; ++r)
			v[pivot_cols[r]] = -M[r][c];
		basis.push_back(std::move(v));
	}
	return basis;
}

/// Contractions of a form against every coordinate basis vector, evaluated
/// at a point: per coordinate, the (k-1)-multi-index -> value map of
/// i_{∂/∂ξ^c} a (pt).
inline std::vector<std::map<MultiIndex, Rational>> basis_contractions_at(const DifferentialForm& a,
                                                                         const Point& pt) {
	require_same_chart(a.chart(), pt.chart);
	auto values = pt.named();
	std::vector<std::map<MultiIndex, Rational>> out(a.chart()->dimension());
	for (const auto& [idx, poly] : a.terms()) {
		Rational v = poly.evaluate(values);
		if (v == 0)
			continue;
		for (std::size_t j = 0; j < idx.size(); ++j) {
			MultiIndex rest = idx;
			rest.erase(rest.begin() + j);
			auto& cell = out[idx[j]][rest];
			cell += j % 2 ? -v : v;
			if (cell == 0)
				out[idx[j]].erase(rest);
		}
	}
	return out;
}

} // namespace detail

/// Basis of { v : i_v a(pt) = 0 } as coordinate tuples in chart order. The
/// linear system has one column per chart coordinate and one row per
/// (k-1)-multi-index that appears in some basis contraction.
inline std::vector<std::vector<Rational>> kernel_at(const DifferentialForm& a, const Point& pt) {
	if (a.degree() < 1)
		throw InputError("kernel of a form needs degree >= 1");
	const int dim = a.chart()->dimension();
	auto contractions = detail::basis_contractions_at(a, pt);
	std::map<MultiIndex, int> row_of;
	for (const auto& col : contractions)
		for (const auto& [mi, v] : col)
			row_of.try_emplace(mi, 0);
	int r = 0;
	for (auto& [mi, row] : row_of)
		row = r++;
	std::vector<std::vector<Rational>> M(row_of.size(), std::vector<Rational>(dim, Rational(0)));
	for (int c = 0; c < dim; ++c)
		for (const auto& [mi, v] : contractions[c])
			M[row_of[mi]][c] = v;
	return detail::nullspace(std::move(M), dim);
}

// --- vector-valued forms -------------------------------------------------

inline VectorValuedForm interior_product(const VectorField& X, const VectorValuedForm& a) {
	require_same_chart(X.chart(), a.chart());
	VectorValuedForm out(a.chart(), a.degree() - 1, a.labels());
	for (int l = 1; l <= a.labels(); ++l)
		out.set_component(l, interior_product(X, a.component(l)));
	return out;
}

inline VectorValuedForm vertical_derivative(const VectorValuedForm& a) {
	VectorValuedForm out(a.chart(), a.degree() + 1, a.labels());
	for (int l = 1; l <= a.labels(); ++l)
		out.set_component(l, vertical_derivative(a.component(l)));
	return out;
}

/// Lie derivative of a vector-valued form along a vertical field, via the
/// vertical Cartan formula L_X = i_X d_V + d_V i_X applied per component.
inline VectorValuedForm lie_derivative(const VectorField& X, const VectorValuedForm& a) {
	require_same_chart(X.chart(), a.chart());
	if (!X.is_vertical())
		throw InputError("Lie derivative of a vector-valued form needs a vertical field");
	VectorValuedForm out(a.chart(), a.degree(), a.labels());
	for (int l = 1; l <= a.labels(); ++l) {
		const DifferentialForm& comp = a.component(l);
		DifferentialForm d = interior_product(X, vertical_derivative(comp));
		if (comp.degree() > 0)
			d += vertical_derivative(interior_product(X, comp));
		out.set_component(l, std::move(d));
	}
	return out;
}

/// Basis of { v vertical : i_v a(pt) = 0 for every label } as full-length
/// coordinate tuples (base entries are zero). Rows stack all labels.
inline std::vector<std::vector<Rational>> vertical_kernel_at(const VectorValuedForm& a,
                                                             const Point& pt) {
	if (a.degree() < 1)
		throw InputError("kernel of a form needs degree >= 1");
	const Chart& chart = *a.chart();
	const int dim = chart.dimension();
	std::vector<int> vertical;
	for (int c = 0; c < dim; ++c)
		if (chart.is_vertical(c))
			vertical.push_back(c);
	std::vector<std::vector<std::map<MultiIndex, Rational>>> per_label;
	per_label.reserve(a.labels());
	for (int l = 1; l <= a.labels(); ++l)
		per_label.push_back(detail::basis_contractions_at(a.component(l), pt));
	std::map<std::pair<int, MultiIndex>, int> row_of;
	for (int l = 0; l < a.labels(); ++l)
		for (int c : vertical)
			for (const auto& [mi, v] : per_label[l][c])
				row_of.try_emplace({l, mi}, 0);
	int r = 0;
	for (auto& [key, row] : row_of)
		row = r++;
	std::vector<std::vector<Rational>> M(row_of.size(),
	                                     std::vector<Rational>(vertical.size(), Rational(0)));
	for (std::size_t vc = 0; vc < vertical.size(); ++vc)
		for (int l = 0; l < a.labels(); ++l)
			for (const auto& [mi, v] : per_label[l][vertical[vc]])
				M[row_of[{l, mi}]][vc] = v;
	auto reduced = detail::nullspace(std::move(M), static_cast<int>(vertical.size()));
	std::vector<std::vector<Rational>> out;
	out.reserve(reduced.size());
	for (const auto& v : reduced) {
		std::vector<Rational> full(dim, Rational(0));
		for (std::size_t vc = 0; vc < vertical.size(); ++vc)
			full[vertical[vc]] = v[vc];
		out.push_back(std::move(full));
	}
	return out;
}

} // namespace darboux
