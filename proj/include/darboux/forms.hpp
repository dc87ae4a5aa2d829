#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "chart.hpp"
#include "polynomial.hpp"

namespace darboux {

/// Strictly increasing list of chart coordinate indices; names the basis
/// covector dξ^{I_1} ∧ ... ∧ dξ^{I_k}. The empty index is the 0-form basis.
using MultiIndex = std::vector<int>;

/// Sort an index list into increasing order, returning the permutation sign,
/// or 0 when an index repeats (the wedge collapses).
inline std::pair<MultiIndex, int> normalize_index(MultiIndex idx) {
	int sign = 1;
	for (std::size_t i = 1; i < idx.size(); ++i)
		for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
			if (idx[j - 1] == idx[j])
				return {MultiIndex{}, 0};
			std::swap(idx[j - 1], idx[j]);
			sign = -sign;
		}
	return {std::move(idx), sign};
}

inline void check_polynomial_on_chart(const Polynomial& p, const Chart& chart) {
	for (const auto& name : p.variables())
		if (!chart.has(name))
			throw InputError("polynomial mentions '" + name + "' which is not a chart coordinate");
}

/// A differential k-form on a chart, stored as a sparse map from strictly
/// increasing multi-indices to non-zero polynomial coefficients.
class DifferentialForm {
  public:
	/// Degrees above the chart dimension are allowed but such forms are
	/// forcibly zero (no strictly increasing index of that length exists).
	DifferentialForm(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
		if (!chart_)
			throw InputError("form without a chart");
		if (degree_ < 0)
			throw InputError("form degree must be non-negative");
	}

	static DifferentialForm scalar(ChartPtr chart, Polynomial value) {
		DifferentialForm f(std::move(chart), 0);
		f.accumulate({}, std::move(value));
		return f;
	}

	static DifferentialForm scalar(ChartPtr chart, Rational value) {
		return scalar(std::move(chart), Polynomial::constant(std::move(value)));
	}

	/// The differential of a coordinate: d(name), a 1-form.
	static DifferentialForm differential(ChartPtr chart, const std::string& name) {
		int idx = chart->index_of(name);
		DifferentialForm f(std::move(chart), 1);
		f.accumulate({idx}, Polynomial::constant(1));
		return f;
	}

	const ChartPtr& chart() const { return chart_; }
	int degree() const { return degree_; }
	const std::map<MultiIndex, Polynomial>& terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	const Polynomial& coefficient(const MultiIndex& idx) const {
		static const Polynomial zero;
		auto it = terms_.find(idx);
		return it == terms_.end() ? zero : it->second;
	}

	/// Add c * dξ^idx where idx is already strictly increasing.
	void accumulate(const MultiIndex& idx, Polynomial c) {
		validate_index(idx);
		check_polynomial_on_chart(c, *chart_);
		if (c.is_zero())
			return;
		auto it = terms_.find(idx);
		if (it == terms_.end()) {
			terms_.emplace(idx, std::move(c));
			return;
		}
		it->second += c;
		if (it->second.is_zero())
			terms_.erase(it);
	}

	/// Add c * dξ^idx for an arbitrary index list, sorting and signing it.
	void accumulate_unsorted(MultiIndex idx, const Polynomial& c) {
		auto [sorted, sign] = normalize_index(std::move(idx));
		if (sign == 0)
			return;
		accumulate(sorted, sign < 0 ? -c : c);
	}

	DifferentialForm& operator+=(const DifferentialForm& o) {
		require_same_chart(chart_, o.chart_);
		if (degree_ != o.degree_)
			throw InputError("adding forms of different degree");
		for (const auto& [idx, c] : o.terms_)
			accumulate(idx, c);
		return *this;
	}

	DifferentialForm& operator-=(const DifferentialForm& o) { return *this += -o; }

	friend DifferentialForm operator+(DifferentialForm a, const DifferentialForm& b) {
		a += b;
		return a;
	}
	friend DifferentialForm operator-(DifferentialForm a, const DifferentialForm& b) {
		a -= b;
		return a;
	}

	DifferentialForm operator-() const {
		DifferentialForm out(chart_, degree_);
		for (const auto& [idx, c] : terms_)
			out.terms_.emplace(idx, -c);
		return out;
	}

	friend DifferentialForm operator*(const Polynomial& p, const DifferentialForm& f) {
		DifferentialForm out(f.chart_, f.degree_);
		for (const auto& [idx, c] : f.terms_)
			out.accumulate(idx, p * c);
		return out;
	}

	friend DifferentialForm operator*(const Rational& r, const DifferentialForm& f) {
		return Polynomial::constant(r) * f;
	}

	friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
		return *a.chart_ == *b.chart_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
	}
	friend bool operator!=(const DifferentialForm& a, const DifferentialForm& b) {
		return !(a == b);
	}

	std::string str() const {
		if (terms_.empty())
			return "0";
		std::string s;
		for (const auto& [idx, c] : terms_) {
			std::string basis;
			for (int i : idx) {
				if (!basis.empty())
					basis += "^";
				basis += "d" + chart_->name(i);
			}
			bool single = c.terms().size() == 1;
			Polynomial a = c;
			if (s.empty()) {
				if (single && c.terms().begin()->second < 0) {
					s += "-";
					a = -a;
				}
			} else {
				if (single && c.terms().begin()->second < 0) {
					s += " - ";
					a = -a;
				} else
					s += " + ";
			}
			if (idx.empty())
				s += single ? a.str() : "(" + a.str() + ")";
			else if (a == Polynomial::constant(1))
				s += basis;
			else if (single)
				s += a.str() + " " + basis;
			else
				s += "(" + a.str() + ") " + basis;
		}
		return s;
	}

  private:
	void validate_index(const MultiIndex& idx) const {
		if (static_cast<int>(idx.size()) != degree_)
			throw InputError("multi-index length does not match form degree");
		for (std::size_t i = 0; i < idx.size(); ++i) {
			if (idx[i] < 0 || idx[i] >= chart_->dimension())
				throw InputError("multi-index entry out of range");
			if (i > 0 && idx[i - 1] >= idx[i])
				throw InputError("multi-index is not strictly increasing");
		}
	}

	ChartPtr chart_;
	int degree_;
	std::map<MultiIndex, Polynomial> terms_;
};

/// A vector field on a chart: sparse map from coordinate index to the
/// polynomial component in front of ∂/∂ξ^index.
class VectorField {
  public:
	explicit VectorField(ChartPtr chart) : chart_(std::move(chart)) {
		if (!chart_)
			throw InputError("vector field without a chart");
	}

	/// The coordinate basis field ∂/∂name.
	static VectorField basis(ChartPtr chart, const std::string& name) {
		VectorField v(std::move(chart));
		v.set_component(name, Polynomial::constant(1));
		return v;
	}

	const ChartPtr& chart() const { return chart_; }
	const std::map<int, Polynomial>& components() const { return comps_; }

	const Polynomial& component(int index) const {
		static const Polynomial zero;
		auto it = comps_.find(index);
		return it == comps_.end() ? zero : it->second;
	}

	const Polynomial& component(const std::string& name) const {
		return component(chart_->index_of(name));
	}

	void set_component(int index, Polynomial value) {
		if (index < 0 || index >= chart_->dimension())
			throw InputError("component index out of range");
		check_polynomial_on_chart(value, *chart_);
		if (value.is_zero())
			comps_.erase(index);
		else
			comps_[index] = std::move(value);
	}

	void set_component(const std::string& name, Polynomial value) {
		set_component(chart_->index_of(name), std::move(value));
	}

	void add_component(int index, const Polynomial& value) {
		set_component(index, component(index) + value);
	}

	bool is_zero() const { return comps_.empty(); }

	/// True when every non-zero component sits on a fibre coordinate.
	bool is_vertical() const {
		for (const auto& [i, c] : comps_)
			if (!chart_->is_vertical(i))
				return false;
		return true;
	}

	VectorField& operator+=(const VectorField& o) {
		require_same_chart(chart_, o.chart_);
		for (const auto& [i, c] : o.comps_)
			add_component(i, c);
		return *this;
	}

	friend VectorField operator+(VectorField a, const VectorField& b) {
		a += b;
		return a;
	}

	VectorField operator-() const {
		VectorField out(chart_);
		for (const auto& [i, c] : comps_)
			out.comps_.emplace(i, -c);
		return out;
	}

	friend bool operator==(const VectorField& a, const VectorField& b) {
		return *a.chart_ == *b.chart_ && a.comps_ == b.comps_;
	}
	friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }

	std::string str() const {
		if (comps_.empty())
			return "0";
		std::string s;
		for (const auto& [i, c] : comps_) {
			if (!s.empty())
				s += " + ";
			bool single = c.terms().size() == 1 || c.is_zero();
			s += (single ? c.str() : "(" + c.str() + ")");
			s += " d/d" + chart_->name(i);
		}
		return s;
	}

  private:
	ChartPtr chart_;
	std::map<int, Polynomial> comps_;
};

/// A form with values in R^labels: one component form per label index,
/// all of the same degree on the same chart.
class VectorValuedForm {
  public:
	VectorValuedForm(ChartPtr chart, int degree, int labels) : chart_(std::move(chart)) {
		if (labels < 1)
			throw InputError("vector-valued form needs at least one label");
		comps_.reserve(labels);
		for (int a = 0; a < labels; ++a)
			comps_.emplace_back(chart_, degree);
	}

	const ChartPtr& chart() const { return chart_; }
	int degree() const { return comps_.front().degree(); }
	int labels() const { return static_cast<int>(comps_.size()); }

	/// Component for label a, a in 1..labels().
	DifferentialForm& component(int a) { return comps_.at(a - 1); }
	const DifferentialForm& component(int a) const { return comps_.at(a - 1); }

	void set_component(int a, DifferentialForm f) {
		require_same_chart(chart_, f.chart());
		if (f.degree() != degree())
			throw InputError("component degree mismatch");
		comps_.at(a - 1) = std::move(f);
	}

	bool is_zero() const {
		for (const auto& f : comps_)
			if (!f.is_zero())
				return false;
		return true;
	}

	VectorValuedForm& operator+=(const VectorValuedForm& o) {
		require_same_chart(chart_, o.chart_);
		if (labels() != o.labels() || degree() != o.degree())
			throw InputError("vector-valued form shape mismatch");
		for (int a = 0; a < labels(); ++a)
			comps_[a] += o.comps_[a];
		return *this;
	}

	friend VectorValuedForm operator+(VectorValuedForm a, const VectorValuedForm& b) {
		a += b;
		return a;
	}

	VectorValuedForm operator-() const {
		VectorValuedForm out = *this;
		for (auto& f : out.comps_)
			f = -f;
		return out;
	}

	friend VectorValuedForm operator-(VectorValuedForm a, const VectorValuedForm& b) {
		a += -b;
		return a;
	}

	friend bool operator==(const VectorValuedForm& a, const VectorValuedForm& b) {
		return *a.chart_ == *b.chart_ && a.comps_ == b.comps_;
	}
	friend bool operator!=(const VectorValuedForm& a, const VectorValuedForm& b) {
		return !(a == b);
	}

	std::string str() const {
		std::string s;
		for (int a = 1; a <= labels(); ++a) {
			if (!s.empty())
				s += "\n";
			s += "[e_" + std::to_string(a) + "] " + component(a).str();
		}
		return s;
	}

  private:
	ChartPtr chart_;
	std::vector<DifferentialForm> comps_;
};

} // namespace darboux
