#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "calculus.hpp"
#include "chart.hpp"
#include "errors.hpp"
#include "forms.hpp"
#include "io.hpp"
#include "multisymplectic.hpp"
#include "polynomial.hpp"
#include "polysymplectic.hpp"
#include "random_gen.hpp"
#include "rational.hpp"

// Randomized verification suites. Trial t of check k (0-based, in report
// order) draws all of its data from Rng(child_seed(child_seed(seed, t), k)),
// so every failure is reproducible from (seed, trial, check) alone and
// reports are byte-identical across runs.

namespace darboux {

struct CheckFailure {
	std::uint64_t trial = 0;
	std::uint64_t rng_seed = 0;
	Json chart;
	std::vector<Json> inputs;
	std::string witness;
};

struct CheckReport {
	std::string name;
	std::uint64_t attempted = 0;
	std::uint64_t passed = 0;
	std::vector<CheckFailure> failures; // at most max_recorded_failures kept
};

inline constexpr std::size_t max_recorded_failures = 5;

struct TrialOutcome {
	bool pass = true;
	Json chart;
	std::vector<Json> inputs;
	std::string witness;
};

struct Check {
	std::string name;
	std::function<TrialOutcome(Rng&, int)> run;
};

struct TrialReport {
	std::string suite;
	std::uint64_t seed = 0;
	std::uint64_t trials = 0;
	int max_degree = 3;
	std::vector<CheckReport> checks;

	std::uint64_t attempted() const {
		std::uint64_t total = 0;
		for (const auto& c : checks)
			total += c.attempted;
		return total;
	}

	std::uint64_t passed() const {
		std::uint64_t total = 0;
		for (const auto& c : checks)
			total += c.passed;
		return total;
	}

	bool ok() const { return attempted() == passed(); }

	Json to_json() const {
		Json j;
		j["suite"] = suite;
		j["seed"] = std::to_string(seed);
		j["trials"] = trials;
		j["max_degree"] = max_degree;
		j["attempted"] = attempted();
		j["passed"] = passed();
		j["ok"] = ok();
		Json cs = Json::array();
		for (const auto& c : checks) {
			Json cj;
			cj["name"] = c.name;
			cj["attempted"] = c.attempted;
			cj["passed"] = c.passed;
			Json fs = Json::array();
			for (const auto& f : c.failures) {
				Json fj;
				fj["trial"] = f.trial;
				fj["rng_seed"] = std::to_string(f.rng_seed);
				fj["chart"] = f.chart;
				fj["inputs"] = f.inputs;
				fj["witness"] = f.witness;
				fs.push_back(std::move(fj));
			}
			cj["failures"] = std::move(fs);
			cs.push_back(std::move(cj));
		}
		j["checks"] = std::move(cs);
		return j;
	}

	std::string str() const {
		std::string s = "suite: " + suite + "  seed: " + std::to_string(seed) +
		                "  trials: " + std::to_string(trials) +
		                "  max-degree: " + std::to_string(max_degree) + "\n";
		for (const auto& c : checks) {
			bool pass = c.attempted == c.passed;
			std::string line = std::string("  [") + (pass ? "PASS" : "FAIL") + "] " + c.name;
			do
				line += ' ';
			while (line.size() < 56);
			s += line + std::to_string(c.passed) + "/" + std::to_string(c.attempted) + "\n";
			for (const auto& f : c.failures) {
				s += "      trial " + std::to_string(f.trial) + " (rng seed " +
				     std::to_string(f.rng_seed) + "): " + f.witness + "\n";
				s += "        chart: " + f.chart.dump() + "\n";
				for (const auto& in : f.inputs)
					s += "        input: " + in.dump() + "\n";
			}
		}
		s += std::string("result: ") + (ok() ? "PASS" : "FAIL") + " (" +
		     std::to_string(passed()) + "/" + std::to_string(attempted()) + ")\n";
		return s;
	}
};

namespace detail {

inline TrialOutcome check_pass() { return {}; }

inline std::string witness_str(const ChartPtr& chart, const TermWitness& w) {
	std::string s = rational_str(w.coeff) + " * " + monomial_key(w.powers);
	if (!w.index.empty()) {
		s += " [";
		for (std::size_t j = 0; j < w.index.size(); ++j)
			s += (j ? "^" : "") + std::string("d") + chart->name(w.index[j]);
		s += "]";
	}
	if (w.label != 0)
		s += " (label " + std::to_string(w.label) + ")";
	return s;
}

template <class T>
inline Json input_json(const T& v) {
	return Json::parse(serialize(v));
}

inline TrialOutcome check_fail(const ChartPtr& chart, std::vector<Json> inputs,
                               std::string witness) {
	TrialOutcome out;
	out.pass = false;
	out.chart = encode_chart(chart);
	out.inputs = std::move(inputs);
	out.witness = std::move(witness);
	return out;
}

/// Failure whose witness is the first surviving term of a nonzero form.
inline TrialOutcome check_fail_form(const ChartPtr& chart, std::vector<Json> inputs,
                                    const DifferentialForm& residual) {
	auto w = first_term_witness(residual);
	return check_fail(chart, std::move(inputs),
	                  w ? witness_str(chart, *w) : "zero residual (unexpected)");
}

inline TrialOutcome check_fail_vvform(const ChartPtr& chart, std::vector<Json> inputs,
                                      const VectorValuedForm& residual) {
	for (int a = 1; a <= residual.labels(); ++a)
		if (auto w = first_term_witness(residual.component(a), a))
			return check_fail(chart, std::move(inputs), witness_str(chart, *w));
	return check_fail(chart, std::move(inputs), "zero residual (unexpected)");
}

// Scoped chart pools for the completeness (perturbation) checks. On n = 1
// extended charts the space is an ordinary cotangent bundle and on n-hat = 1
// ordinary charts the fibres are symplectic planes; in both cases single
// momentum-dependent perturbations can stay hamiltonian, so those checks
// draw from the n >= 2 pools only.
inline ChartPtr extended_chart_n2(Rng& rng) {
	static const std::pair<int, int> pool[] = {{2, 1}, {2, 2}, {3, 2}};
	auto [n, N] = pool[rng.below(3)];
	return build_extended_chart(n, N);
}

inline ChartPtr extended_chart_N2(Rng& rng) {
	static const std::pair<int, int> pool[] = {{2, 2}, {3, 2}};
	auto [n, N] = pool[rng.below(2)];
	return build_extended_chart(n, N);
}

inline ChartPtr ordinary_chart_n2(Rng& rng) {
	static const std::pair<int, int> pool[] = {{2, 1}, {2, 2}, {3, 2}};
	auto [n, N] = pool[rng.below(3)];
	return build_ordinary_chart(n, N);
}

/// Monomial guaranteed to contain at least one factor from `required`, with
/// up to max_degree - 1 further factors over the whole chart.
inline Monomial violating_monomial(Rng& rng, const ChartPtr& chart,
                                   const std::vector<std::string>& required, int max_degree) {
	Monomial m = random_monomial(rng, all_names(chart), rng.range(0, max_degree - 1));
	++m[required[rng.below(required.size())]];
	return m;
}

inline std::vector<std::string> momentum_energy_names(const ChartPtr& chart) {
	return names_with_roles(chart, {CoordinateRole::momentum, CoordinateRole::energy});
}

} // namespace detail

inline std::vector<Check> kernel_checks() {
	using namespace detail;
	std::vector<Check> checks;

	checks.push_back({"d_after_d_is_zero", [](Rng& rng, int md) {
		ChartPtr chart = random_chart(rng);
		int k = rng.range(0, std::min(chart->dimension() - 1, 5));
		DifferentialForm a = random_form(rng, chart, k, md);
		DifferentialForm dda = exterior_derivative(exterior_derivative(a));
		if (dda.is_zero())
			return check_pass();
		return check_fail_form(chart, {input_json(a)}, dda);
	}});

	checks.push_back({"dv_after_dv_is_zero", [](Rng& rng, int md) {
		ChartPtr chart = random_chart(rng);
		int k = rng.range(0, std::min(chart->dimension() - 1, 5));
		DifferentialForm a = random_form(rng, chart, k, md);
		DifferentialForm dda = vertical_derivative(vertical_derivative(a));
		if (dda.is_zero())
			return check_pass();
		return check_fail_form(chart, {input_json(a)}, dda);
	}});

	checks.push_back({"wedge_graded_commutativity", [](Rng& rng, int md) {
		ChartPtr chart = random_chart(rng);
		int k = rng.range(0, 2), l = rng.range(0, 2);
		DifferentialForm a = random_form(rng, chart, k, md);
		DifferentialForm b = random_form(rng, chart, l, md);
		DifferentialForm lhs = wedge(a, b), rhs = wedge(b, a);
		if ((k * l) % 2 != 0)
			rhs = -rhs;
		if (lhs == rhs)
			return check_pass();
		return check_fail_form(chart, {input_json(a), input_json(b)}, lhs - rhs);
	}});

	checks.push_back({"d_leibniz", [](Rng& rng, int md) {
		ChartPtr chart = random_chart(rng);
		int k = rng.range(0, 2), l = rng.range(0, 2);
		DifferentialForm a = random_form(rng, chart, k, md);
		DifferentialForm b = random_form(rng, chart, l, md);
		DifferentialForm lhs = exterior_derivative(wedge(a, b));
		DifferentialForm rhs = wedge(exterior_derivative(a), b);
		DifferentialForm second = wedge(a, exterior_derivative(b));
		rhs = rhs + (k % 2 != 0 ? -second : second);
		if (lhs == rhs)
			return check_pass();
		return check_fail_form(chart, {input_json(a), input_json(b)}, lhs - rhs);
	}});

	checks.push_back({"dv_leibniz", [](Rng& rng, int md) {
		ChartPtr chart = random_chart(rng);
		int k = rng.range(0, 2), l = rng.range(0, 2);
		DifferentialForm a = random_form(rng, chart, k, md);
		DifferentialForm b = random_form(rng, chart, l, md);
		DifferentialForm lhs = vertical_derivative(wedge(a, b));
		DifferentialForm rhs = wedge(vertical_derivative(a), b);
		DifferentialForm second = wedge(a, vertical_derivative(b));
		rhs = rhs + (k % 2 != 0 ? -second : second);
		if (lhs == rhs)
			return check_pass();
		return check_fail_form(chart, {input_json(a), input_json(b)}, lhs - rhs);
	}});

	checks.push_back({"interior_product_squares_to_zero", [](Rng& rng, int md) {
		ChartPtr chart = random_chart(rng);
		int k = rng.range(2, std::min(chart->dimension(), 5));
		DifferentialForm a = random_form(rng, chart, k, md);
		VectorField X = random_vector_field(rng, chart, md);
		DifferentialForm res = interior_product(X, interior_product(X, a));
		if (res.is_zero())
			return check_pass();
		return check_fail_form(chart, {input_json(X), input_json(a)}, res);
	}});

	checks.push_back({"interior_product_antiderivation", [](Rng& rng, int md) {
		ChartPtr chart = random_chart(rng);
		int k = rng.range(1, 2), l = rng.range(1, 2);
		DifferentialForm a = random_form(rng, chart, k, md);
		DifferentialForm b = random_form(rng, chart, l, md);
		VectorField X = random_vector_field(rng, chart, md);
		DifferentialForm lhs = interior_product(X, wedge(a, b));
		DifferentialForm rhs = wedge(interior_product(X, a), b);
		DifferentialForm second = wedge(a, interior_product(X, b));
		rhs = rhs + (k % 2 != 0 ? -second : second);
		if (lhs == rhs)
			return check_pass();
		return check_fail_form(chart, {input_json(X), input_json(a), input_json(b)}, lhs - rhs);
	}});

	checks.push_back({"homotopy_identity", [](Rng& rng, int md) {
		ChartPtr chart = random_chart(rng);
		int k = rng.range(1, std::min(chart->dimension(), 5));
		DifferentialForm a = random_form(rng, chart, k, md);
		DifferentialForm rebuilt =
		    exterior_derivative(poincare_homotopy(a)) + poincare_homotopy(exterior_derivative(a));
		if (rebuilt == a)
			return check_pass();
		return check_fail_form(chart, {input_json(a)}, rebuilt - a);
	}});

	checks.push_back({"vertical_homotopy_identity", [](Rng& rng, int md) {
		ChartPtr chart = random_chart(rng);
		auto pool = vertical_indices(chart);
		int k = rng.range(1, std::min(static_cast<int>(pool.size()), 4));
		DifferentialForm a = random_form_over(rng, chart, k, md, pool);
		DifferentialForm rebuilt =
		    vertical_derivative(vertical_homotopy(a)) + vertical_homotopy(vertical_derivative(a));
		if (rebuilt == a)
			return check_pass();
		return check_fail_form(chart, {input_json(a)}, rebuilt - a);
	}});

	checks.push_back({"serialization_roundtrip_core", [](Rng& rng, int md) {
		ChartPtr chart = random_chart(rng);
		DifferentialForm a = random_form(rng, chart, rng.range(0, 3), md);
		VectorField X = random_vector_field(rng, chart, md);
		std::string cb = serialize(chart), ab = serialize(a), xb = serialize(X);
		Document cd = parse_document(cb), ad = parse_document(ab), xd = parse_document(xb);
		bool ok = *expect_chart(cd) == *chart && expect_form(ad) == a &&
		          expect_vector_field(xd) == X && serialize(expect_chart(cd)) == cb &&
		          serialize(expect_form(ad)) == ab && serialize(expect_vector_field(xd)) == xb;
		if (ok)
			return check_pass();
		return check_fail(chart, {input_json(a), input_json(X)}, "roundtrip mismatch");
	}});

	return checks;
}

inline std::vector<Check> multisymplectic_checks() {
	using namespace detail;
	std::vector<Check> checks;

	checks.push_back({"omega_is_minus_d_theta", [](Rng& rng, int) {
		ChartPtr chart = random_extended_chart(rng);
		DifferentialForm res =
		    canonical_omega(chart) + exterior_derivative(canonical_theta(chart));
		if (res.is_zero())
			return check_pass();
		return check_fail_form(chart, {}, res);
	}});

	checks.push_back({"omega_kernel_empty_at_point", [](Rng& rng, int) {
		ChartPtr chart = random_extended_chart(rng);
		Point pt = random_point(rng, chart);
		if (kernel_at(canonical_omega(chart), pt).empty())
			return check_pass();
		return check_fail(chart, {}, "nonzero kernel vector at a random point");
	}});

	checks.push_back({"contraction_omega_matches_generic", [](Rng& rng, int md) {
		ChartPtr chart = random_extended_chart(rng);
		VectorField X = random_vector_field(rng, chart, md);
		DifferentialForm res =
		    contraction_omega(X) - interior_product(X, canonical_omega(chart));
		if (res.is_zero())
			return check_pass();
		return check_fail_form(chart, {input_json(X)}, res);
	}});

	checks.push_back({"contraction_theta_matches_generic", [](Rng& rng, int md) {
		ChartPtr chart = random_extended_chart(rng);
		VectorField X = random_vector_field(rng, chart, md);
		DifferentialForm res =
		    contraction_theta(X) - interior_product(X, canonical_theta(chart));
		if (res.is_zero())
			return check_pass();
		return check_fail_form(chart, {input_json(X)}, res);
	}});

	checks.push_back({"construct_contraction_closed", [](Rng& rng, int md) {
		ChartPtr chart = random_extended_chart(rng);
		HamiltonianGenerators g = random_generators(rng, chart, md);
		VectorField X = construct_hamiltonian_vf(g);
		DifferentialForm res =
		    exterior_derivative(interior_product(X, canonical_omega(chart)));
		if (res.is_zero())
			return check_pass();
		return check_fail_form(chart, {input_json(g), input_json(X)}, res);
	}});

	checks.push_back({"hamiltonian_form_differential", [](Rng& rng, int md) {
		ChartPtr chart = random_extended_chart(rng);
		HamiltonianGenerators g = random_generators(rng, chart, md);
		VectorField X = construct_hamiltonian_vf(g);
		DifferentialForm f = hamiltonian_form_of(X, g);
		DifferentialForm res =
		    exterior_derivative(f) - interior_product(X, canonical_omega(chart));
		if (res.is_zero())
			return check_pass();
		return check_fail_form(chart, {input_json(g), input_json(f)}, res);
	}});

	// L_X theta = d(f_0^mu d^n x_mu): the f_0 = 0 case is exactly the exact
	// hamiltonian clause, and the general case pins the gauge freedom.
	checks.push_back({"lie_theta_equals_d_f0_volume", [](Rng& rng, int md) {
		ChartPtr chart = random_extended_chart(rng);
		HamiltonianGenerators g = random_generators(rng, chart, md);
		VectorField X = construct_hamiltonian_vf(g);
		DifferentialForm f0vol(chart, chart->base_count() - 1);
		for (const auto& [mu, poly] : g.f0)
			f0vol = f0vol + poly * volume_contraction(chart, mu);
		DifferentialForm res =
		    lie_derivative(X, canonical_theta(chart)) - exterior_derivative(f0vol);
		if (res.is_zero())
			return check_pass();
		return check_fail_form(chart, {input_json(g)}, res);
	}});

	checks.push_back({"classify_recovers_construction", [](Rng& rng, int md) {
		ChartPtr chart = random_extended_chart(rng);
		HamiltonianGenerators g = random_generators(rng, chart, md);
		VectorField X = construct_hamiltonian_vf(g);
		ClassificationVerdict v = classify(X);
		bool ok = v.status != HamiltonianStatus::not_hamiltonian && v.generators &&
		          v.generators->Xmu == g.Xmu && v.generators->Xi == g.Xi &&
		          construct_hamiltonian_vf(*v.generators) == X && v.hamiltonian_form;
		if (ok)
			return check_pass();
		return check_fail(chart, {input_json(g), input_json(X)},
		                  "classification failed to recover the generators");
	}});

	checks.push_back({"perturbed_position_component_not_closed", [](Rng& rng, int md) {
		ChartPtr chart = extended_chart_n2(rng);
		HamiltonianGenerators g = random_generators(rng, chart, md);
		VectorField X = construct_hamiltonian_vf(g);
		int i = rng.range(1, chart->position_count());
		Monomial m = violating_monomial(rng, chart, momentum_energy_names(chart), md);
		X.add_component(chart->position_index(i),
		                Polynomial::term(std::move(m), random_coefficient(rng)));
		ClassificationVerdict v = classify(X);
		if (v.status == HamiltonianStatus::not_hamiltonian && v.witness)
			return check_pass();
		return check_fail(chart, {input_json(X)},
		                  "momentum-dependent X^i classified as hamiltonian");
	}});

	checks.push_back({"perturbed_base_component_position_not_closed", [](Rng& rng, int md) {
		ChartPtr chart = extended_chart_N2(rng);
		HamiltonianGenerators g = random_generators(rng, chart, md);
		VectorField X = construct_hamiltonian_vf(g);
		int mu = rng.range(1, chart->base_count());
		auto positions = names_with_roles(chart, {CoordinateRole::position});
		Monomial m = violating_monomial(rng, chart, positions, md);
		X.add_component(chart->base_index(mu),
		                Polynomial::term(std::move(m), random_coefficient(rng)));
		ClassificationVerdict v = classify(X);
		if (v.status == HamiltonianStatus::not_hamiltonian && v.witness)
			return check_pass();
		return check_fail(chart, {input_json(X)},
		                  "position-dependent X^mu classified as hamiltonian");
	}});

	checks.push_back({"perturbed_base_component_momentum_not_closed", [](Rng& rng, int md) {
		ChartPtr chart = extended_chart_n2(rng);
		HamiltonianGenerators g = random_generators(rng, chart, md);
		VectorField X = construct_hamiltonian_vf(g);
		int mu = rng.range(1, chart->base_count());
		Monomial m = violating_monomial(rng, chart, momentum_energy_names(chart), md);
		X.add_component(chart->base_index(mu),
		                Polynomial::term(std::move(m), random_coefficient(rng)));
		ClassificationVerdict v = classify(X);
		if (v.status == HamiltonianStatus::not_hamiltonian && v.witness)
			return check_pass();
		return check_fail(chart, {input_json(X)},
		                  "momentum-dependent X^mu classified as hamiltonian");
	}});

	checks.push_back({"solve_inverse_roundtrip", [](Rng& rng, int md) {
		ChartPtr chart = random_extended_chart(rng);
		HamiltonianGenerators g = random_generators(rng, chart, md);
		VectorField X = construct_hamiltonian_vf(g);
		DifferentialForm f = hamiltonian_form_of(X, g);
		VectorField Y = solve_inverse(exterior_derivative(f));
		if (Y == X)
			return check_pass();
		return check_fail(chart, {input_json(g), input_json(f)},
		                  "solver did not return the constructed field");
	}});

	checks.push_back({"symbol_projection_matches_omega_hat", [](Rng& rng, int) {
		ChartPtr chart = random_extended_chart(rng);
		auto [ordinary, symbol] = symbol_projection(chart);
		VectorValuedForm expected = canonical_omega_hat(ordinary);
		if (symbol == expected)
			return check_pass();
		return check_fail_vvform(chart, {}, symbol - expected);
	}});

	checks.push_back({"omega_h_closed_and_nondegenerate", [](Rng& rng, int md) {
		ChartPtr chart = random_extended_chart(rng);
		auto vars = names_with_roles(
		    chart, {CoordinateRole::base, CoordinateRole::position, CoordinateRole::momentum});
		Polynomial H = random_polynomial(rng, vars, md);
		DifferentialForm omega_h = pullback_by_section(H, chart);
		DifferentialForm d_omega_h = exterior_derivative(omega_h);
		if (!d_omega_h.is_zero())
			return check_fail_form(chart, {}, d_omega_h);
		Point pt = random_point(rng, omega_h.chart());
		// The evolution direction: on an n = 1 chart H*omega is presymplectic
		// with a one-dimensional kernel; for n >= 2 it is non-degenerate.
		std::size_t expected = chart->base_count() == 1 ? 1 : 0;
		if (kernel_at(omega_h, pt).size() == expected)
			return check_pass();
		return check_fail(chart, {}, "unexpected pointwise kernel of H*omega");
	}});

	// Base-independent vertical constructions on the ordinary space lift to
	// hamiltonian fields on the extended space with zero energy component.
	checks.push_back({"ordinary_lift_is_hamiltonian", [](Rng& rng, int md) {
		ChartPtr ordinary = random_ordinary_chart(rng);
		auto positions = names_with_roles(ordinary, {CoordinateRole::position});
		PolyHamiltonianGenerators pg;
		pg.chart = ordinary;
		for (int i = 1; i <= ordinary->position_count(); ++i)
			if (rng.coin()) {
				Polynomial p = random_polynomial(rng, positions, md);
				if (!p.is_zero())
					pg.Xi[i] = std::move(p);
			}
		for (int a = 1; a <= ordinary->label_count(); ++a)
			if (rng.coin()) {
				Polynomial p = random_polynomial(rng, positions, md);
				if (!p.is_zero())
					pg.f0[a] = std::move(p);
			}
		VectorField Y = construct_polyhamiltonian_vf(pg);
		ChartPtr extended =
		    build_extended_chart(ordinary->base_count(), ordinary->position_count());
		VectorField lift(extended);
		for (const auto& [idx, poly] : Y.components())
			lift.set_component(ordinary->name(idx), poly);
		ClassificationVerdict v = classify(lift);
		bool ok = v.status != HamiltonianStatus::not_hamiltonian && v.generators &&
		          v.generators->Xi == pg.Xi && v.generators->Xmu.empty();
		if (ok)
			return check_pass();
		return check_fail(extended, {input_json(pg), input_json(lift)},
		                  "lifted vertical construction is not hamiltonian");
	}});

	checks.push_back({"serialization_roundtrip_verdicts", [](Rng& rng, int md) {
		ChartPtr chart = random_extended_chart(rng);
		HamiltonianGenerators g = random_generators(rng, chart, md);
		ClassificationVerdict v = classify(construct_hamiltonian_vf(g));
		std::string gb = serialize(g), vb = serialize(v);
		Document gd = parse_document(gb), vd = parse_document(vb);
		auto* gp = std::get_if<HamiltonianGenerators>(&gd.payload);
		auto* vp = std::get_if<ClassificationVerdict>(&vd.payload);
		bool ok = gp && vp && *gp == g && *vp == v && serialize(*gp) == gb &&
		          serialize(*vp) == vb;
		if (ok)
			return check_pass();
		return check_fail(chart, {input_json(g)}, "verdict roundtrip mismatch");
	}});

	return checks;
}

inline std::vector<Check> polysymplectic_checks() {
	using namespace detail;
	std::vector<Check> checks;

	checks.push_back({"omega_hat_is_minus_dv_theta_hat", [](Rng& rng, int) {
		ChartPtr chart = random_ordinary_chart(rng);
		VectorValuedForm res =
		    canonical_omega_hat(chart) + vertical_derivative(canonical_theta_hat(chart));
		if (res.is_zero())
			return check_pass();
		return check_fail_vvform(chart, {}, res);
	}});

	checks.push_back({"omega_hat_vertical_kernel_empty", [](Rng& rng, int) {
		ChartPtr chart = random_ordinary_chart(rng);
		Point pt = random_point(rng, chart);
		if (vertical_kernel_at(canonical_omega_hat(chart), pt).empty())
			return check_pass();
		return check_fail(chart, {}, "nonzero vertical kernel vector at a random point");
	}});

	checks.push_back({"contraction_omega_hat_matches_generic", [](Rng& rng, int md) {
		ChartPtr chart = random_ordinary_chart(rng);
		VectorField X = random_vector_field(rng, chart, md);
		VectorValuedForm res =
		    contraction_omega_hat(X) - interior_product(X, canonical_omega_hat(chart));
		if (res.is_zero())
			return check_pass();
		return check_fail_vvform(chart, {input_json(X)}, res);
	}});

	checks.push_back({"contraction_theta_hat_matches_generic", [](Rng& rng, int md) {
		ChartPtr chart = random_ordinary_chart(rng);
		VectorField X = random_vector_field(rng, chart, md);
		VectorValuedForm res =
		    contraction_theta_hat(X) - interior_product(X, canonical_theta_hat(chart));
		if (res.is_zero())
			return check_pass();
		return check_fail_vvform(chart, {input_json(X)}, res);
	}});

	checks.push_back({"poly_construct_contraction_dv_closed", [](Rng& rng, int md) {
		ChartPtr chart = random_ordinary_chart(rng);
		PolyHamiltonianGenerators g = random_poly_generators(rng, chart, md);
		VectorField X = construct_polyhamiltonian_vf(g);
		VectorValuedForm res =
		    vertical_derivative(interior_product(X, canonical_omega_hat(chart)));
		if (res.is_zero())
			return check_pass();
		return check_fail_vvform(chart, {input_json(g), input_json(X)}, res);
	}});

	checks.push_back({"hamiltonian_section_differential", [](Rng& rng, int md) {
		ChartPtr chart = random_ordinary_chart(rng);
		PolyHamiltonianGenerators g = random_poly_generators(rng, chart, md);
		VectorField X = construct_polyhamiltonian_vf(g);
		VectorValuedForm f = hamiltonian_section_of(X, g);
		VectorValuedForm res =
		    vertical_derivative(f) - interior_product(X, canonical_omega_hat(chart));
		if (res.is_zero())
			return check_pass();
		return check_fail_vvform(chart, {input_json(g), input_json(f)}, res);
	}});

	// L_X theta-hat^a = d_V f_0^a: with f_0 = 0 this is the exactness clause,
	// and x-only f_0 is precisely the gauge freedom that leaves X unchanged.
	checks.push_back({"lie_theta_hat_equals_dv_f0", [](Rng& rng, int md) {
		ChartPtr chart = random_ordinary_chart(rng);
		PolyHamiltonianGenerators g = random_poly_generators(rng, chart, md);
		VectorField X = construct_polyhamiltonian_vf(g);
		VectorValuedForm lhs = lie_derivative(X, canonical_theta_hat(chart));
		VectorValuedForm rhs(chart, 1, chart->label_count());
		for (const auto& [a, poly] : g.f0)
			rhs.set_component(a, vertical_derivative(DifferentialForm::scalar(chart, poly)));
		VectorValuedForm res = lhs - rhs;
		if (res.is_zero())
			return check_pass();
		return check_fail_vvform(chart, {input_json(g)}, res);
	}});

	checks.push_back({"poly_classify_recovers_construction", [](Rng& rng, int md) {
		ChartPtr chart = random_ordinary_chart(rng);
		PolyHamiltonianGenerators g = random_poly_generators(rng, chart, md);
		VectorField X = construct_polyhamiltonian_vf(g);
		PolyClassificationVerdict v = classify_vertical(X);
		bool ok = v.status != HamiltonianStatus::not_hamiltonian && v.generators &&
		          v.generators->Xi == g.Xi &&
		          construct_polyhamiltonian_vf(*v.generators) == X && v.hamiltonian_section;
		if (ok)
			return check_pass();
		return check_fail(chart, {input_json(g), input_json(X)},
		                  "vertical classification failed to recover the generators");
	}});

	checks.push_back({"poly_perturbed_position_not_closed", [](Rng& rng, int md) {
		ChartPtr chart = ordinary_chart_n2(rng);
		PolyHamiltonianGenerators g = random_poly_generators(rng, chart, md);
		VectorField X = construct_polyhamiltonian_vf(g);
		int i = rng.range(1, chart->position_count());
		auto momenta = names_with_roles(chart, {CoordinateRole::momentum});
		Monomial m = violating_monomial(rng, chart, momenta, md);
		X.add_component(chart->position_index(i),
		                Polynomial::term(std::move(m), random_coefficient(rng)));
		PolyClassificationVerdict v = classify_vertical(X);
		if (v.status == HamiltonianStatus::not_hamiltonian && v.witness)
			return check_pass();
		return check_fail(chart, {input_json(X)},
		                  "momentum-dependent X^i classified as hamiltonian");
	}});

	checks.push_back({"poly_solve_inverse_roundtrip", [](Rng& rng, int md) {
		ChartPtr chart = random_ordinary_chart(rng);
		PolyHamiltonianGenerators g = random_poly_generators(rng, chart, md);
		VectorField X = construct_polyhamiltonian_vf(g);
		VectorValuedForm f = hamiltonian_section_of(X, g);
		VectorField Y = solve_inverse_poly(vertical_derivative(f));
		if (Y == X)
			return check_pass();
		return check_fail(chart, {input_json(g), input_json(f)},
		                  "solver did not return the constructed field");
	}});

	checks.push_back({"serialization_roundtrip_poly", [](Rng& rng, int md) {
		ChartPtr chart = random_ordinary_chart(rng);
		PolyHamiltonianGenerators g = random_poly_generators(rng, chart, md);
		PolyClassificationVerdict v = classify_vertical(construct_polyhamiltonian_vf(g));
		VectorValuedForm oh = canonical_omega_hat(chart);
		std::string gb = serialize(g), vb = serialize(v), ob = serialize(oh);
		Document gd = parse_document(gb), vd = parse_document(vb), od = parse_document(ob);
		auto* gp = std::get_if<PolyHamiltonianGenerators>(&gd.payload);
		auto* vp = std::get_if<PolyClassificationVerdict>(&vd.payload);
		bool ok = gp && vp && *gp == g && *vp == v && expect_vvform(od) == oh &&
		          serialize(*gp) == gb && serialize(*vp) == vb &&
		          serialize(expect_vvform(od)) == ob;
		if (ok)
			return check_pass();
		return check_fail(chart, {input_json(g)}, "poly document roundtrip mismatch");
	}});

	return checks;
}

inline std::vector<Check> suite_checks(const std::string& suite) {
	if (suite == "kernel")
		return kernel_checks();
	if (suite == "multisymplectic")
		return multisymplectic_checks();
	if (suite == "polysymplectic")
		return polysymplectic_checks();
	if (suite == "all") {
		std::vector<Check> checks = kernel_checks();
		for (auto& c : multisymplectic_checks())
			checks.push_back(std::move(c));
		for (auto& c : polysymplectic_checks())
			checks.push_back(std::move(c));
		return checks;
	}
	throw InputError("unknown suite '" + suite + "'");
}

inline TrialReport run_suite(const std::string& suite, std::uint64_t trials,
                             std::uint64_t seed, int max_degree) {
	std::vector<Check> checks = suite_checks(suite);
	TrialReport report;
	report.suite = suite;
	report.seed = seed;
	report.trials = trials;
	report.max_degree = max_degree;
	for (std::size_t k = 0; k < checks.size(); ++k) {
		CheckReport cr;
		cr.name = checks[k].name;
		for (std::uint64_t t = 0; t < trials; ++t) {
			std::uint64_t rng_seed = child_seed(child_seed(seed, t), k);
			Rng rng(rng_seed);
			++cr.attempted;
			TrialOutcome outcome;
			try {
				outcome = checks[k].run(rng, max_degree);
			} catch (const InternalError&) {
				throw;
			} catch (const Error& e) {
				outcome.pass = false;
				outcome.witness = std::string("exception: ") + e.what();
			}
			if (outcome.pass) {
				++cr.passed;
			} else if (cr.failures.size() < max_recorded_failures) {
				CheckFailure f;
				f.trial = t;
				f.rng_seed = rng_seed;
				f.chart = std::move(outcome.chart);
				f.inputs = std::move(outcome.inputs);
				f.witness = std::move(outcome.witness);
				cr.failures.push_back(std::move(f));
			}
		}
		report.checks.push_back(std::move(cr));
	}
	return report;
}

} // namespace darboux
