#pragma once

#include <optional>

#include "calculus.hpp"
#include "multisymplectic.hpp" // TermWitness, HamiltonianStatus

namespace darboux {

inline void require_ordinary(const ChartPtr& chart) {
	if (!chart || chart->kind() != Chart::Kind::ordinary)
		throw InputError("operation needs an ordinary multiphase chart");
}

/// Canonical polysymplectic potential θ̂ = Σ_i p_i^a dq^i ⊗ ê_a.
inline VectorValuedForm canonical_theta_hat(const ChartPtr& chart) {
	require_ordinary(chart);
	const int N = chart->position_count(), labels = chart->label_count();
	VectorValuedForm theta(chart, 1, labels);
	for (int a = 1; a <= labels; ++a) {
		DifferentialForm comp(chart, 1);
		for (int i = 1; i <= N; ++i)
			comp.accumulate({chart->position_index(i)},
			                Polynomial::variable(chart->name(chart->momentum_index(i, a))));
		theta.set_component(a, std::move(comp));
	}
	return theta;
}

/// Canonical polysymplectic form ω̂ = Σ_i dq^i ∧ dp_i^a ⊗ ê_a, built from its
/// explicit expansion; ω̂ = −d_V θ̂ is asserted by the test suite.
inline VectorValuedForm canonical_omega_hat(const ChartPtr& chart) {
	require_ordinary(chart);
	const int N = chart->position_count(), labels = chart->label_count();
	VectorValuedForm omega(chart, 2, labels);
	for (int a = 1; a <= labels; ++a) {
		DifferentialForm comp(chart, 2);
		for (int i = 1; i <= N; ++i)
			comp += wedge(
			    DifferentialForm::differential(chart, chart->name(chart->position_index(i))),
			    DifferentialForm::differential(chart, chart->name(chart->momentum_index(i, a))));
		omega.set_component(a, std::move(comp));
	}
	return omega;
}

/// Closed-form contraction i_X ω̂ = (X^i dp_i^a − X_i^a dq^i) ⊗ ê_a.
inline VectorValuedForm contraction_omega_hat(const VectorField& X) {
	const ChartPtr& chart = X.chart();
	require_ordinary(chart);
	const int N = chart->position_count(), labels = chart->label_count();
	VectorValuedForm out(chart, 1, labels);
	for (int a = 1; a <= labels; ++a) {
		DifferentialForm comp(chart, 1);
		for (int i = 1; i <= N; ++i) {
			comp.accumulate({chart->momentum_index(i, a)}, X.component(chart->position_index(i)));
			comp.accumulate({chart->position_index(i)}, -X.component(chart->momentum_index(i, a)));
		}
		out.set_component(a, std::move(comp));
	}
	return out;
}

/// Closed-form contraction i_X θ̂ = p_i^a X^i ⊗ ê_a (0-forms).
inline VectorValuedForm contraction_theta_hat(const VectorField& X) {
	const ChartPtr& chart = X.chart();
	require_ordinary(chart);
	const int N = chart->position_count(), labels = chart->label_count();
	VectorValuedForm out(chart, 0, labels);
	for (int a = 1; a <= labels; ++a) {
		Polynomial c;
		for (int i = 1; i <= N; ++i)
			c += Polynomial::variable(chart->name(chart->momentum_index(i, a))) *
			     X.component(chart->position_index(i));
		out.set_component(a, DifferentialForm::scalar(chart, std::move(c)));
	}
	return out;
}

/// Generators of a vertical hamiltonian field on an ordinary chart: X^i and
/// f_0^a may depend on base and position coordinates only.
struct PolyHamiltonianGenerators {
	ChartPtr chart;
	std::map<int, Polynomial> Xi; // i -> X^i
	std::map<int, Polynomial> f0; // a -> f_0^a

	const Polynomial& q_component(int i) const { return lookup(Xi, i); }
	const Polynomial& f0_component(int a) const { return lookup(f0, a); }

	void validate() const {
		require_ordinary(chart);
		check_keys(Xi, chart->position_count(), "X^i");
		check_keys(f0, chart->label_count(), "f_0^a");
		for (const auto& [i, c] : Xi)
			check_vars(c, "X^i");
		for (const auto& [a, c] : f0)
			check_vars(c, "f_0^a");
	}

	friend bool operator==(const PolyHamiltonianGenerators& a, const PolyHamiltonianGenerators& b) {
		return *a.chart == *b.chart && a.Xi == b.Xi && a.f0 == b.f0;
	}

  private:
	static const Polynomial& lookup(const std::map<int, Polynomial>& m, int k) {
		static const Polynomial zero;
		auto it = m.find(k);
		return it == m.end() ? zero : it->second;
	}

	static void check_keys(const std::map<int, Polynomial>& m, int hi, const char* what) {
		for (const auto& [k, c] : m)
			if (k < 1 || k > hi)
				throw InputError(std::string(what) + " index out of range");
	}

	void check_vars(const Polynomial& c, const char* what) const {
		for (const auto& name : c.variables()) {
			CoordinateRole role = chart->role(chart->index_of(name));
			if (role != CoordinateRole::base && role != CoordinateRole::position)
				throw InputError(std::string(what) + " may not depend on '" + name + "'");
		}
	}
};

/// Build the vertical hamiltonian field with the given generators:
///   X = X^i ∂/∂q^i + X_i^a ∂/∂p_i^a,
///   X_i^a = −p_j^a ∂X^j/∂q^i + ∂f_0^a/∂q^i.
inline VectorField construct_polyhamiltonian_vf(const PolyHamiltonianGenerators& g) {
	g.validate();
	const ChartPtr& chart = g.chart;
	const int N = chart->position_count(), labels = chart->label_count();
	VectorField X(chart);
	for (int i = 1; i <= N; ++i)
		X.set_component(chart->position_index(i), g.q_component(i));
	for (int i = 1; i <= N; ++i) {
		const std::string qi = chart->name(chart->position_index(i));
		for (int a = 1; a <= labels; ++a) {
			Polynomial comp = g.f0_component(a).derivative(qi);
			for (int j = 1; j <= N; ++j)
				comp -= Polynomial::variable(chart->name(chart->momentum_index(j, a))) *
				        g.q_component(j).derivative(qi);
			X.set_component(chart->momentum_index(i, a), comp);
		}
	}
	return X;
}

/// The hamiltonian section f^a = p_i^a X^i − f_0^a ⊗ ê_a; verifies
/// d_V f = i_X ω̂ for the field built from the same generators.
inline VectorValuedForm hamiltonian_section_of(const VectorField& X,
                                               const PolyHamiltonianGenerators& g) {
	require_same_chart(X.chart(), g.chart);
	g.validate();
	const ChartPtr& chart = g.chart;
	const int N = chart->position_count(), labels = chart->label_count();
	VectorValuedForm f(chart, 0, labels);
	for (int a = 1; a <= labels; ++a) {
		Polynomial c = -g.f0_component(a);
		for (int i = 1; i <= N; ++i)
			c += Polynomial::variable(chart->name(chart->momentum_index(i, a))) * g.q_component(i);
		f.set_component(a, DifferentialForm::scalar(chart, std::move(c)));
	}
	if (vertical_derivative(f) != interior_product(X, canonical_omega_hat(chart)))
		throw InternalError("hamiltonian section does not satisfy d_V f = i_X omega-hat");
	return f;
}

struct PolyClassificationVerdict {
	ChartPtr chart;
	HamiltonianStatus status = HamiltonianStatus::not_hamiltonian;
	std::optional<PolyHamiltonianGenerators> generators;
	std::optional<VectorValuedForm> hamiltonian_section;
	std::optional<TermWitness> witness; // first surviving term of d_V(i_X ω̂)

	friend bool operator==(const PolyClassificationVerdict& a, const PolyClassificationVerdict& b) {
		return *a.chart == *b.chart && a.status == b.status && a.generators == b.generators &&
		       a.hamiltonian_section == b.hamiltonian_section && a.witness == b.witness;
	}
};

/// Decide whether a vertical field is locally hamiltonian for ω̂
/// (d_V(i_X ω̂) = 0), recover generators when it has the classification
/// normal form, refine to exact when L_X θ̂ = 0. On n̂ = 1 charts
/// the fibres are ordinary symplectic planes and a closed contraction can
/// have momentum-dependent X^i; the verdict then reports the status and a
/// hamiltonian section from the vertical homotopy, but carries no
/// generators.
inline PolyClassificationVerdict classify_vertical(const VectorField& X) {
	const ChartPtr& chart = X.chart();
	require_ordinary(chart);
	if (!X.is_vertical())
		throw InputError("classification over omega-hat needs a vertical field");
	const int N = chart->position_count(), labels = chart->label_count();
	VectorValuedForm eta = interior_product(X, canonical_omega_hat(chart));
	VectorValuedForm deta = vertical_derivative(eta);
	PolyClassificationVerdict verdict;
	verdict.chart = chart;
	for (int a = 1; a <= labels; ++a)
		if (!deta.component(a).is_zero()) {
			verdict.status = HamiltonianStatus::not_hamiltonian;
			verdict.witness = first_term_witness(deta.component(a), a);
			return verdict;
		}

	verdict.status = lie_derivative(X, canonical_theta_hat(chart)).is_zero()
	                     ? HamiltonianStatus::exact_hamiltonian
	                     : HamiltonianStatus::locally_hamiltonian;

	// A vertical primitive of each η̂^a gives the hamiltonian section.
	VectorValuedForm section(chart, 0, labels);
	for (int a = 1; a <= labels; ++a) {
		Polynomial f_a = eta.component(a).is_zero()
		                     ? Polynomial()
		                     : vertical_homotopy(eta.component(a)).coefficient(MultiIndex{});
		section.set_component(a, DifferentialForm::scalar(chart, std::move(f_a)));
	}
	if (vertical_derivative(section) != eta)
		throw InternalError("homotopy primitive fails d_V f = i_X omega-hat");

	bool momentum_free = true;
	for (int i = 1; i <= N && momentum_free; ++i)
		for (const auto& name : X.component(chart->position_index(i)).variables())
			if (chart->role(chart->index_of(name)) == CoordinateRole::momentum) {
				momentum_free = false;
				break;
			}
	if (!momentum_free) {
		verdict.hamiltonian_section = std::move(section);
		return verdict;
	}

	PolyHamiltonianGenerators g;
	g.chart = chart;
	for (int i = 1; i <= N; ++i) {
		const Polynomial& c = X.component(chart->position_index(i));
		if (!c.is_zero())
			g.Xi.emplace(i, c);
	}
	// f_0^a = p_i^a X^i − f^a is momentum-free whenever X^i is.
	for (int a = 1; a <= labels; ++a) {
		Polynomial f0_a = -section.component(a).coefficient(MultiIndex{});
		for (int i = 1; i <= N; ++i)
			f0_a += Polynomial::variable(chart->name(chart->momentum_index(i, a))) * g.q_component(i);
		if (!f0_a.is_zero())
			g.f0.emplace(a, std::move(f0_a));
	}

	VectorField rebuilt(chart);
	try {
		rebuilt = construct_polyhamiltonian_vf(g);
	} catch (const InputError& e) {
		throw InternalError(std::string("classification produced invalid generators: ") + e.what());
	}
	if (rebuilt != X)
		throw InternalError("classification failed to reproduce the field from its generators");

	verdict.generators = g;
	verdict.hamiltonian_section = hamiltonian_section_of(X, g);
	return verdict;
}

/// Invert the contraction map for ω̂: find the vertical X with i_X ω̂ = η̂.
/// Per label, dq^i coefficients give −X_i^a and dp_i^a coefficients give
/// X^i (consistently across labels); anything else rules the form out.
inline VectorField solve_inverse_poly(const VectorValuedForm& eta) {
	const ChartPtr& chart = eta.chart();
	require_ordinary(chart);
	const int N = chart->position_count(), labels = chart->label_count();
	if (eta.degree() != 1)
		throw InputError("contraction preimage needs a vector-valued 1-form");
	if (eta.labels() != labels)
		throw InputError("label count does not match the chart");
	VectorField X(chart);
	for (int i = 1; i <= N; ++i) {
		std::optional<Polynomial> common;
		for (int a = 1; a <= labels; ++a) {
			Polynomial c = eta.component(a).coefficient({chart->momentum_index(i, a)});
			if (!common)
				common = c;
			else if (*common != c)
				throw NotInImageError("dp_i^a coefficients disagree across labels for i=" +
				                      std::to_string(i));
		}
		X.set_component(chart->position_index(i), std::move(*common));
	}
	for (int a = 1; a <= labels; ++a)
		for (int i = 1; i <= N; ++i)
			X.set_component(chart->momentum_index(i, a),
			                -eta.component(a).coefficient({chart->position_index(i)}));
	VectorValuedForm residual = eta - interior_product(X, canonical_omega_hat(chart));
	for (int a = 1; a <= labels; ++a)
		if (!residual.component(a).is_zero()) {
			auto w = first_term_witness(residual.component(a), a);
			std::string basis;
			for (int c : w->index)
				basis += (basis.empty() ? "d" : "^d") + chart->name(c);
			throw NotInImageError("form is not a contraction of omega-hat: unmatched term at " +
			                      basis + " in label " + std::to_string(a));
		}
	return X;
}

} // namespace darboux
