#pragma once

#include <array>
#include <optional>
#include <utility>

#include "calculus.hpp"

namespace darboux {

/// One monomial of one form term, used to report why a field fails to be
/// hamiltonian: the coefficient `coeff * powers` in front of dξ^index
/// (of the component with the given label, for vector-valued forms).
struct TermWitness {
	int label = 0; // 0 for scalar forms, 1-based otherwise
	MultiIndex index;
	Monomial powers;
	Rational coeff;

	friend bool operator==(const TermWitness& a, const TermWitness& b) {
		return a.label == b.label && a.index == b.index && a.powers == b.powers &&
		       a.coeff == b.coeff;
	}
};

inline std::optional<TermWitness> first_term_witness(const DifferentialForm& a, int label = 0) {
	for (const auto& [idx, poly] : a.terms())
		for (const auto& [mono, c] : poly.terms())
			return TermWitness{label, idx, mono, c};
	return std::nullopt;
}

inline void require_extended(const ChartPtr& chart) {
	if (!chart || chart->kind() != Chart::Kind::extended)
		throw InputError("operation needs an extended multiphase chart");
}

/// Canonical multisymplectic potential
///   θ = Σ_{i,μ} p_i^μ dq^i ∧ d^n x_μ + p d^n x.
inline DifferentialForm canonical_theta(const ChartPtr& chart) {
	require_extended(chart);
	const int n = chart->base_count(), N = chart->position_count();
	DifferentialForm theta(chart, n);
	for (int i = 1; i <= N; ++i) {
		auto dq = DifferentialForm::differential(chart, chart->name(chart->position_index(i)));
		for (int mu = 1; mu <= n; ++mu) {
			Polynomial p = Polynomial::variable(chart->name(chart->momentum_index(i, mu)));
			theta += p * wedge(dq, volume_contraction(chart, mu));
		}
	}
	theta += Polynomial::variable("p") * volume_form(chart);
	return theta;
}

/// Canonical multisymplectic form, built from its explicit expansion
///   ω = Σ_{i,μ} dq^i ∧ dp_i^μ ∧ d^n x_μ − dp ∧ d^n x.
/// The identity ω = −dθ is asserted by the test suite, not used here.
inline DifferentialForm canonical_omega(const ChartPtr& chart) {
	require_extended(chart);
	const int n = chart->base_count(), N = chart->position_count();
	DifferentialForm omega(chart, n + 1);
	for (int i = 1; i <= N; ++i) {
		auto dq = DifferentialForm::differential(chart, chart->name(chart->position_index(i)));
		for (int mu = 1; mu <= n; ++mu) {
			auto dp = DifferentialForm::differential(chart, chart->name(chart->momentum_index(i, mu)));
			omega += wedge(wedge(dq, dp), volume_contraction(chart, mu));
		}
	}
	omega -= wedge(DifferentialForm::differential(chart, "p"), volume_form(chart));
	return omega;
}

/// Closed-form contraction i_X ω for an arbitrary field
///   X = X^μ ∂_μ + X^i ∂_i + X_i^μ ∂/∂p_i^μ + X_0 ∂/∂p:
///   i_X ω = −X_i^μ dq^i ∧ d^n x_μ + X^i dp_i^μ ∧ d^n x_μ
///         + X^μ dp ∧ d^n x_μ − X_0 d^n x + X^ν dq^i ∧ dp_i^μ ∧ d^n x_{μν}.
inline DifferentialForm contraction_omega(const VectorField& X) {
	const ChartPtr& chart = X.chart();
	require_extended(chart);
	const int n = chart->base_count(), N = chart->position_count();
	DifferentialForm out(chart, n);
	for (int i = 1; i <= N; ++i) {
		auto dq = DifferentialForm::differential(chart, chart->name(chart->position_index(i)));
		for (int mu = 1; mu <= n; ++mu) {
			auto dp = DifferentialForm::differential(chart, chart->name(chart->momentum_index(i, mu)));
			const Polynomial& Ximu = X.component(chart->momentum_index(i, mu));
			if (!Ximu.is_zero())
				out -= Ximu * wedge(dq, volume_contraction(chart, mu));
			const Polynomial& Xi = X.component(chart->position_index(i));
			if (!Xi.is_zero())
				out += Xi * wedge(dp, volume_contraction(chart, mu));
			for (int nu = 1; nu <= n; ++nu) {
				if (nu == mu)
					continue;
				const Polynomial& Xnu = X.component(chart->base_index(nu));
				if (!Xnu.is_zero())
					out += Xnu * wedge(wedge(dq, dp), volume_contraction(chart, mu, nu));
			}
		}
	}
	auto dp_energy = DifferentialForm::differential(chart, "p");
	for (int mu = 1; mu <= n; ++mu) {
		const Polynomial& Xmu = X.component(chart->base_index(mu));
		if (!Xmu.is_zero())
			out += Xmu * wedge(dp_energy, volume_contraction(chart, mu));
	}
	const Polynomial& X0 = X.component(chart->energy_index());
	if (!X0.is_zero())
		out -= X0 * volume_form(chart);
	return out;
}

/// Closed-form contraction
///   i_X θ = (p_i^μ X^i + p X^μ) d^n x_μ − p_i^μ X^ν dq^i ∧ d^n x_{μν}.
inline DifferentialForm contraction_theta(const VectorField& X) {
	const ChartPtr& chart = X.chart();
	require_extended(chart);
	const int n = chart->base_count(), N = chart->position_count();
	DifferentialForm out(chart, n - 1);
	for (int mu = 1; mu <= n; ++mu) {
		Polynomial coeff = Polynomial::variable("p") * X.component(chart->base_index(mu));
		for (int i = 1; i <= N; ++i)
			coeff += Polynomial::variable(chart->name(chart->momentum_index(i, mu))) *
			         X.component(chart->position_index(i));
		if (!coeff.is_zero())
			out += coeff * volume_contraction(chart, mu);
	}
	for (int i = 1; i <= N; ++i) {
		auto dq = DifferentialForm::differential(chart, chart->name(chart->position_index(i)));
		for (int mu = 1; mu <= n; ++mu)
			for (int nu = 1; nu <= n; ++nu) {
				if (nu == mu)
					continue;
				Polynomial c = Polynomial::variable(chart->name(chart->momentum_index(i, mu))) *
				               X.component(chart->base_index(nu));
				if (!c.is_zero())
					out -= c * wedge(dq, volume_contraction(chart, mu, nu));
			}
	}
	return out;
}

/// Generators of a hamiltonian vector field on an extended chart: the freely
/// choosable data (X^μ, X^i, f_0^μ). X^μ may depend on x only (on x and q
/// when N = 1); X^i and f_0^μ may depend on x and q.
struct HamiltonianGenerators {
	ChartPtr chart;
	std::map<int, Polynomial> Xmu; // mu -> X^mu
	std::map<int, Polynomial> Xi;  // i  -> X^i
	std::map<int, Polynomial> f0;  // mu -> f_0^mu

	const Polynomial& x_component(int mu) const { return lookup(Xmu, mu); }
	const Polynomial& q_component(int i) const { return lookup(Xi, i); }
	const Polynomial& f0_component(int mu) const { return lookup(f0, mu); }

	void validate() const {
		require_extended(chart);
		const int n = chart->base_count(), N = chart->position_count();
		check_keys(Xmu, n, "X^mu");
		check_keys(Xi, N, "X^i");
		check_keys(f0, n, "f_0^mu");
		for (const auto& [mu, c] : Xmu)
			check_vars(c, N == 1, "X^mu");
		for (const auto& [i, c] : Xi)
			check_vars(c, true, "X^i");
		for (const auto& [mu, c] : f0)
			check_vars(c, true, "f_0^mu");
	}

	friend bool operator==(const HamiltonianGenerators& a, const HamiltonianGenerators& b) {
		return *a.chart == *b.chart && a.Xmu == b.Xmu && a.Xi == b.Xi && a.f0 == b.f0;
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

	void check_vars(const Polynomial& c, bool allow_positions, const char* what) const {
		for (const auto& name : c.variables()) {
			CoordinateRole role = chart->role(chart->index_of(name));
			bool ok = role == CoordinateRole::base ||
			          (allow_positions && role == CoordinateRole::position);
			if (!ok)
				throw InputError(std::string(what) + " may not depend on '" + name + "'");
		}
	}
};

/// Build the unique (locally) hamiltonian vector field with the given
/// generators. Momentum and energy components:
///   X_i^μ = −p ∂X^μ/∂q^i − p_j^μ ∂X^j/∂q^i + p_i^ν ∂X^μ/∂x^ν
///           − p_i^μ ∂X^ν/∂x^ν + ∂f_0^μ/∂q^i,
///   X_0   = −p ∂X^μ/∂x^μ − p_i^μ ∂X^i/∂x^μ + ∂f_0^μ/∂x^μ.
/// (The −p ∂X^μ/∂q^i term can only be non-zero when N = 1, where X^μ may
/// depend on positions.)
inline VectorField construct_hamiltonian_vf(const HamiltonianGenerators& g) {
	g.validate();
	const ChartPtr& chart = g.chart;
	const int n = chart->base_count(), N = chart->position_count();
	const Polynomial p_energy = Polynomial::variable("p");
	VectorField X(chart);
	for (int mu = 1; mu <= n; ++mu)
		X.set_component(chart->base_index(mu), g.x_component(mu));
	for (int i = 1; i <= N; ++i)
		X.set_component(chart->position_index(i), g.q_component(i));
	for (int i = 1; i <= N; ++i) {
		const std::string qi = chart->name(chart->position_index(i));
		for (int mu = 1; mu <= n; ++mu) {
			Polynomial comp = -(p_energy * g.x_component(mu).derivative(qi));
			comp += g.f0_component(mu).derivative(qi);
			for (int j = 1; j <= N; ++j)
				comp -= Polynomial::variable(chart->name(chart->momentum_index(j, mu))) *
				        g.q_component(j).derivative(qi);
			const Polynomial p_imu = Polynomial::variable(chart->name(chart->momentum_index(i, mu)));
			for (int nu = 1; nu <= n; ++nu) {
				const std::string xnu = chart->name(chart->base_index(nu));
				comp += Polynomial::variable(chart->name(chart->momentum_index(i, nu))) *
				        g.x_component(mu).derivative(xnu);
				comp -= p_imu * g.x_component(nu).derivative(xnu);
			}
			X.set_component(chart->momentum_index(i, mu), comp);
		}
	}
	Polynomial X0;
	for (int mu = 1; mu <= n; ++mu) {
		const std::string xmu = chart->name(chart->base_index(mu));
		X0 -= p_energy * g.x_component(mu).derivative(xmu);
		X0 += g.f0_component(mu).derivative(xmu);
		for (int i = 1; i <= N; ++i)
			X0 -= Polynomial::variable(chart->name(chart->momentum_index(i, mu))) *
			      g.q_component(i).derivative(xmu);
	}
	X.set_component(chart->energy_index(), X0);
	return X;
}

/// Components of the hamiltonian (n−1)-form f associated with a hamiltonian
/// field:  f = f^μ d^n x_μ + Σ_{μ<ν} f_i^{μν} dq^i ∧ d^n x_{μν}  with
///   f^μ = p_i^μ X^i + p X^μ − f_0^μ,   f_i^{μν} = p_i^ν X^μ − p_i^μ X^ν.
struct HamiltonianFormComponents {
	ChartPtr chart;
	std::map<int, Polynomial> f_mu;                    // mu -> f^mu
	std::map<std::array<int, 3>, Polynomial> f_imunu;  // {i, mu, nu} (mu < nu)
};

inline HamiltonianFormComponents hamiltonian_form_components(const HamiltonianGenerators& g) {
	g.validate();
	const ChartPtr& chart = g.chart;
	const int n = chart->base_count(), N = chart->position_count();
	HamiltonianFormComponents out;
	out.chart = chart;
	for (int mu = 1; mu <= n; ++mu) {
		Polynomial f = Polynomial::variable("p") * g.x_component(mu) - g.f0_component(mu);
		for (int i = 1; i <= N; ++i)
			f += Polynomial::variable(chart->name(chart->momentum_index(i, mu))) * g.q_component(i);
		if (!f.is_zero())
			out.f_mu.emplace(mu, std::move(f));
	}
	for (int i = 1; i <= N; ++i)
		for (int mu = 1; mu <= n; ++mu)
			for (int nu = mu + 1; nu <= n; ++nu) {
				Polynomial f =
				    Polynomial::variable(chart->name(chart->momentum_index(i, nu))) * g.x_component(mu) -
				    Polynomial::variable(chart->name(chart->momentum_index(i, mu))) * g.x_component(nu);
				if (!f.is_zero())
					out.f_imunu.emplace(std::array<int, 3>{i, mu, nu}, std::move(f));
			}
	return out;
}

/// Assemble the hamiltonian form and verify d f = i_X ω for the field built
/// from the same generators. A mismatch is an internal invariant breach.
inline DifferentialForm hamiltonian_form_of(const VectorField& X, const HamiltonianGenerators& g) {
	require_same_chart(X.chart(), g.chart);
	auto comps = hamiltonian_form_components(g);
	const ChartPtr& chart = g.chart;
	const int n = chart->base_count();
	DifferentialForm f(chart, n - 1);
	for (const auto& [mu, c] : comps.f_mu)
		f += c * volume_contraction(chart, mu);
	for (const auto& [key, c] : comps.f_imunu) {
		auto dq = DifferentialForm::differential(chart, chart->name(chart->position_index(key[0])));
		f += c * wedge(dq, volume_contraction(chart, key[1], key[2]));
	}
	if (exterior_derivative(f) != interior_product(X, canonical_omega(chart)))
		throw InternalError("hamiltonian form does not satisfy d f = i_X omega");
	return f;
}

enum class HamiltonianStatus { not_hamiltonian, locally_hamiltonian, exact_hamiltonian };

inline const char* status_name(HamiltonianStatus s) {
	switch (s) {
	case HamiltonianStatus::not_hamiltonian: return "not_hamiltonian";
	case HamiltonianStatus::locally_hamiltonian: return "locally_hamiltonian";
	default: return "exact_hamiltonian";
	}
}

struct ClassificationVerdict {
	ChartPtr chart;
	HamiltonianStatus status = HamiltonianStatus::not_hamiltonian;
	std::optional<HamiltonianGenerators> generators;
	std::optional<DifferentialForm> hamiltonian_form;
	std::optional<TermWitness> witness; // first surviving term of d(i_X ω)

	friend bool operator==(const ClassificationVerdict& a, const ClassificationVerdict& b) {
		return *a.chart == *b.chart && a.status == b.status && a.generators == b.generators &&
		       a.hamiltonian_form == b.hamiltonian_form && a.witness == b.witness;
	}
};

namespace detail {

/// Whether the base/position components of X fit the variable profile of
/// generator data: X^μ, X^i free of momenta and energy, and X^μ free of
/// positions when N > 1. For n ≥ 2 every closed contraction satisfies this;
/// for n = 1 the chart is an ordinary symplectic cotangent chart, which
/// admits closed contractions outside that normal form.
inline bool generator_profile(const VectorField& X) {
	const Chart& chart = *X.chart();
	const int n = chart.base_count(), N = chart.position_count();
	for (int mu = 1; mu <= n; ++mu)
		for (const auto& name : X.component(chart.base_index(mu)).variables()) {
			CoordinateRole role = chart.role(chart.index_of(name));
			if (role != CoordinateRole::base && !(N == 1 && role == CoordinateRole::position))
				return false;
		}
	for (int i = 1; i <= N; ++i)
		for (const auto& name : X.component(chart.position_index(i)).variables()) {
			CoordinateRole role = chart.role(chart.index_of(name));
			if (role != CoordinateRole::base && role != CoordinateRole::position)
				return false;
		}
	return true;
}

} // namespace detail

/// Decide whether X is locally hamiltonian (d(i_X ω) = 0), recover its
/// generators when it has the classification normal form,
/// and refine to exact when L_X θ = 0. On n = 1 charts a closed contraction
/// can fall outside the normal form (the chart is an ordinary cotangent
/// chart, where any function generates); the verdict then reports the
/// status and a hamiltonian form from the Poincaré homotopy, but carries
/// no generators.
inline ClassificationVerdict classify(const VectorField& X) {
	const ChartPtr& chart = X.chart();
	require_extended(chart);
	const int n = chart->base_count(), N = chart->position_count();
	DifferentialForm eta = interior_product(X, canonical_omega(chart));
	DifferentialForm deta = exterior_derivative(eta);
	ClassificationVerdict verdict;
	verdict.chart = chart;
	if (!deta.is_zero()) {
		verdict.status = HamiltonianStatus::not_hamiltonian;
		verdict.witness = first_term_witness(deta);
		return verdict;
	}

	verdict.status = lie_derivative(X, canonical_theta(chart)).is_zero()
	                     ? HamiltonianStatus::exact_hamiltonian
	                     : HamiltonianStatus::locally_hamiltonian;

	if (!detail::generator_profile(X)) {
		DifferentialForm primitive = poincare_homotopy(eta);
		if (exterior_derivative(primitive) != eta)
			throw InternalError("homotopy primitive fails d f = i_X omega");
		verdict.hamiltonian_form = std::move(primitive);
		return verdict;
	}

	// Undo the structural momentum/energy terms; what remains of X_i^μ is
	// ∂f_0^μ/∂q^i and what remains of X_0 is ∂f_0^μ/∂x^μ.
	HamiltonianGenerators g;
	g.chart = chart;
	const Polynomial p_energy = Polynomial::variable("p");
	for (int mu = 1; mu <= n; ++mu) {
		const Polynomial& c = X.component(chart->base_index(mu));
		if (!c.is_zero())
			g.Xmu.emplace(mu, c);
	}
	for (int i = 1; i <= N; ++i) {
		const Polynomial& c = X.component(chart->position_index(i));
		if (!c.is_zero())
			g.Xi.emplace(i, c);
	}
	std::vector<char> q_block(chart->dimension(), 0);
	for (int i = 1; i <= N; ++i)
		q_block[chart->position_index(i)] = 1;
	Polynomial divergence_residual = X.component(chart->energy_index());
	for (int mu = 1; mu <= n; ++mu) {
		const std::string xmu = chart->name(chart->base_index(mu));
		divergence_residual += p_energy * g.x_component(mu).derivative(xmu);
		for (int i = 1; i <= N; ++i)
			divergence_residual += Polynomial::variable(chart->name(chart->momentum_index(i, mu))) *
			                       g.q_component(i).derivative(xmu);
	}
	for (int mu = 1; mu <= n; ++mu) {
		DifferentialForm gradient(chart, 1);
		for (int i = 1; i <= N; ++i) {
			const std::string qi = chart->name(chart->position_index(i));
			Polynomial gi = X.component(chart->momentum_index(i, mu));
			gi += p_energy * g.x_component(mu).derivative(qi);
			for (int j = 1; j <= N; ++j)
				gi += Polynomial::variable(chart->name(chart->momentum_index(j, mu))) *
				      g.q_component(j).derivative(qi);
			const Polynomial p_imu = Polynomial::variable(chart->name(chart->momentum_index(i, mu)));
			for (int nu = 1; nu <= n; ++nu) {
				const std::string xnu = chart->name(chart->base_index(nu));
				gi -= Polynomial::variable(chart->name(chart->momentum_index(i, nu))) *
				      g.x_component(mu).derivative(xnu);
				gi += p_imu * g.x_component(nu).derivative(xnu);
			}
			gradient.accumulate({chart->position_index(i)}, gi);
		}
		Polynomial f0_mu =
		    gradient.is_zero()
		        ? Polynomial()
		        : detail::partial_homotopy(gradient, q_block).coefficient(MultiIndex{});
		divergence_residual -= f0_mu.derivative(chart->name(chart->base_index(mu)));
		if (!f0_mu.is_zero())
			g.f0.emplace(mu, std::move(f0_mu));
	}
	// The leftover divergence depends on x alone; fold its x^1-antiderivative
	// into f_0^1, which changes nothing else.
	if (!divergence_residual.is_zero()) {
		Polynomial extra = divergence_residual.antiderivative("x1");
		auto it = g.f0.find(1);
		if (it == g.f0.end())
			g.f0.emplace(1, std::move(extra));
		else {
			it->second += extra;
			if (it->second.is_zero())
				g.f0.erase(it);
		}
	}

	VectorField rebuilt(chart);
	try {
		rebuilt = construct_hamiltonian_vf(g);
	} catch (const InputError& e) {
		throw InternalError(std::string("classification produced invalid generators: ") + e.what());
	}
	if (rebuilt != X)
		throw InternalError("classification failed to reproduce the field from its generators");

	verdict.generators = g;
	verdict.hamiltonian_form = hamiltonian_form_of(X, g);
	return verdict;
}

/// Invert the contraction map: find the unique X with i_X ω = η, or prove
/// that η is not of that shape. Components are read off disjoint basis
/// families of the expansion of i_X ω; the remainder must vanish exactly.
inline VectorField solve_inverse(const DifferentialForm& eta) {
	const ChartPtr& chart = eta.chart();
	require_extended(chart);
	const int n = chart->base_count(), N = chart->position_count();
	if (eta.degree() != n)
		throw InputError("contraction preimage needs an n-form");
	VectorField X(chart);

	// Single-term helper: the canonical index and sign of a wedge product.
	auto single = [](const DifferentialForm& f) {
		if (f.terms().size() != 1)
			throw InternalError("basis form is not a single term");
		const auto& [idx, poly] = *f.terms().begin();
		return std::make_pair(idx, poly.constant_value());
	};

	for (int i = 1; i <= N; ++i) {
		auto dq = DifferentialForm::differential(chart, chart->name(chart->position_index(i)));
		for (int mu = 1; mu <= n; ++mu) {
			auto [idx, sign] = single(wedge(dq, volume_contraction(chart, mu)));
			Polynomial c = eta.coefficient(idx) * (Rational(-1) / sign);
			X.set_component(chart->momentum_index(i, mu), std::move(c));
		}
	}
	for (int i = 1; i <= N; ++i) {
		std::optional<Polynomial> common;
		for (int mu = 1; mu <= n; ++mu) {
			auto dp = DifferentialForm::differential(chart, chart->name(chart->momentum_index(i, mu)));
			auto [idx, sign] = single(wedge(dp, volume_contraction(chart, mu)));
			Polynomial c = eta.coefficient(idx) * (Rational(1) / sign);
			if (!common)
				common = c;
			else if (*common != c)
				throw NotInImageError("dp_i^mu ∧ d^n x_mu coefficients disagree across mu for i=" +
				                      std::to_string(i));
		}
		X.set_component(chart->position_index(i), std::move(*common));
	}
	auto dp_energy = DifferentialForm::differential(chart, "p");
	for (int mu = 1; mu <= n; ++mu) {
		auto [idx, sign] = single(wedge(dp_energy, volume_contraction(chart, mu)));
		X.set_component(chart->base_index(mu), eta.coefficient(idx) * (Rational(1) / sign));
	}
	{
		auto [idx, sign] = single(volume_form(chart));
		X.set_component(chart->energy_index(), eta.coefficient(idx) * (Rational(-1) / sign));
	}

	DifferentialForm residual = eta - interior_product(X, canonical_omega(chart));
	if (!residual.is_zero()) {
		auto w = first_term_witness(residual);
		std::string basis;
		for (int c : w->index)
			basis += (basis.empty() ? "d" : "^d") + chart->name(c);
		throw NotInImageError("form is not a contraction of omega: unmatched term at " + basis);
	}
	return X;
}

/// Pull the canonical ω back along the section p = −H(x, q, p_i^μ) of the
/// energy fibration: substitutes −H for p and −dH for dp and transports the
/// result to the ordinary chart with label count n.
inline DifferentialForm pullback_by_section(const Polynomial& H, const ChartPtr& extended) {
	require_extended(extended);
	const int n = extended->base_count(), N = extended->position_count();
	ChartPtr ordinary = build_ordinary_chart(n, N, n);
	check_polynomial_on_chart(H, *ordinary);

	DifferentialForm omega = canonical_omega(extended);
	const std::map<std::string, Polynomial> subst = {{"p", -H}};
	DifferentialForm dH = exterior_derivative(DifferentialForm::scalar(ordinary, H));
	DifferentialForm out(ordinary, omega.degree());
	for (const auto& [idx, poly] : omega.terms()) {
		DifferentialForm term = DifferentialForm::scalar(ordinary, poly.substitute(subst));
		for (int c : idx) {
			if (extended->role(c) == CoordinateRole::energy)
				term = wedge(term, -dH);
			else
				term = wedge(term, DifferentialForm::differential(ordinary, extended->name(c)));
		}
		out += term;
	}
	return out;
}

/// The symbol of ω on the extended chart: the vector-valued 2-form
/// Σ_i dq^i ∧ dp_i^μ ⊗ ê_μ whose vertical kernel is spanned by ∂/∂p.
inline VectorValuedForm extended_symbol(const ChartPtr& extended) {
	require_extended(extended);
	const int n = extended->base_count(), N = extended->position_count();
	VectorValuedForm sym(extended, 2, n);
	for (int mu = 1; mu <= n; ++mu) {
		DifferentialForm comp(extended, 2);
		for (int i = 1; i <= N; ++i)
			comp += wedge(
			    DifferentialForm::differential(extended, extended->name(extended->position_index(i))),
			    DifferentialForm::differential(extended, extended->name(extended->momentum_index(i, mu))));
		sym.set_component(mu, std::move(comp));
	}
	return sym;
}

/// Project the symbol of ω to the ordinary chart with label count n by
/// transporting coordinates by name. The result is the polysymplectic
/// structure the extended space induces.
inline std::pair<ChartPtr, VectorValuedForm> symbol_projection(const ChartPtr& extended) {
	require_extended(extended);
	ChartPtr ordinary = build_ordinary_chart(extended->base_count(), extended->position_count(),
	                                         extended->base_count());
	VectorValuedForm sym = extended_symbol(extended);
	// The symbol drops the dp ∧ d^n x block of ω, so its vertical kernel must
	// be exactly the energy direction ∂/∂p (constant coefficients: one point
	// suffices).
	{
		std::map<std::string, Rational> origin;
		for (const auto& coord : extended->coordinates())
			origin.emplace(coord.name, 0);
		auto kernel = vertical_kernel_at(sym, Point::make(extended, origin));
		bool ok = kernel.size() == 1;
		if (ok)
			for (int c = 0; c < extended->dimension(); ++c) {
				bool is_energy = c == extended->energy_index();
				if ((kernel[0][c] != 0) != is_energy)
					ok = false;
			}
		if (!ok)
			throw InternalError("symbol degeneracy direction is not spanned by d/dp");
	}
	VectorValuedForm out(ordinary, 2, sym.labels());
	for (int a = 1; a <= sym.labels(); ++a) {
		DifferentialForm comp(ordinary, 2);
		for (const auto& [idx, poly] : sym.component(a).terms()) {
			MultiIndex mapped;
			for (int c : idx) {
				if (extended->role(c) == CoordinateRole::energy)
					throw InternalError("symbol of omega involves the energy differential");
				mapped.push_back(ordinary->index_of(extended->name(c)));
			}
			Polynomial coeff = poly;
			check_polynomial_on_chart(coeff, *ordinary);
			comp.accumulate_unsorted(std::move(mapped), coeff);
		}
		out.set_component(a, std::move(comp));
	}
	return {ordinary, out};
}

} // namespace darboux
