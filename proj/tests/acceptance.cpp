// Acceptance gate: one line per criterion, "PASS criterion N: ..." or
// "FAIL criterion N: ...". Exits non-zero if any criterion fails. Every
// count, seed, and bound is pinned here; all identity checks are exact
// (rational arithmetic, tolerance is literal zero).

#include <darboux/darboux.hpp>

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

using namespace darboux;

namespace {

constexpr std::uint64_t root_seed = 20260816;

const std::vector<std::pair<int, int>> chart_pool = {{1, 1}, {2, 1}, {2, 2}, {3, 2}};

constexpr int kernel_trials = 200;       // criterion 1, per check
constexpr double kernel_budget_s = 60.0; // criterion 1 wall-clock bound
constexpr int structure_points = 50;     // criterion 2, per chart
constexpr int contraction_trials = 200;  // criterion 3, per case
constexpr int soundness_trials = 200;    // criteria 4 and 6, per chart
constexpr int perturbation_trials = 100; // criteria 5 and 6, per kind
constexpr int roundtrip_trials = 100;    // criterion 7, per roundtrip family
constexpr int hamiltonian_draws = 50;    // criterion 8, random hamiltonians
constexpr int hamiltonian_points = 50;   // criterion 8, points per hamiltonian

int failures = 0;

void report(int number, const std::string& description, bool ok, const std::string& detail) {
	std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << description;
	if (!ok && !detail.empty())
		std::cout << " [" << detail << "]";
	std::cout << "\n";
	if (!ok)
		++failures;
}

Polynomial var(const char* name) { return Polynomial::variable(name); }

/// Criterion 1: the exterior-calculus kernel identities hold on randomized
/// polynomial instances (degree <= 3, charts up to (3,2)) within the budget.
void criterion_1() {
	auto start = std::chrono::steady_clock::now();
	TrialReport r = run_suite("kernel", kernel_trials, root_seed, 3);
	double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	bool ok = r.ok() && r.attempted() == static_cast<std::uint64_t>(kernel_trials) * 10 &&
	          secs < kernel_budget_s;
	std::ostringstream desc;
	desc << "kernel identities (d.d, d_V.d_V, graded commutativity, Leibniz, i_X.i_X, "
	     << "i_X anti-derivation, homotopy) pass " << kernel_trials
	     << " randomized trials per check at degree <= 3 on charts up to (3,2) in "
	     << std::fixed << std::setprecision(1) << secs << "s";
	std::string detail = r.ok() ? "over time budget" : "identity violation:\n" + r.str();
	report(1, desc.str(), ok, detail);
}

/// Criterion 2: omega = -d theta and omega-hat = -d_V theta-hat exactly on
/// every pool chart, with empty (vertical) pointwise kernels.
void criterion_2() {
	Rng rng(child_seed(root_seed, 2));
	bool ok = true;
	std::string detail;
	for (auto [n, N] : chart_pool) {
		ChartPtr e = build_extended_chart(n, N);
		if (!(canonical_omega(e) == -exterior_derivative(canonical_theta(e)))) {
			ok = false;
			detail = "omega != -d theta on " + e->str();
		}
		for (int t = 0; t < structure_points; ++t)
			if (!kernel_at(canonical_omega(e), random_point(rng, e)).empty()) {
				ok = false;
				detail = "omega degenerate at a point of " + e->str();
			}
		ChartPtr o = build_ordinary_chart(n, N);
		if (!(canonical_omega_hat(o) == -vertical_derivative(canonical_theta_hat(o)))) {
			ok = false;
			detail = "omega-hat != -d_V theta-hat on " + o->str();
		}
		for (int t = 0; t < structure_points; ++t)
			if (!vertical_kernel_at(canonical_omega_hat(o), random_point(rng, o)).empty()) {
				ok = false;
				detail = "omega-hat vertically degenerate at a point of " + o->str();
			}
	}
	std::ostringstream desc;
	desc << "canonical structures satisfy omega = -d theta and omega-hat = -d_V theta-hat "
	     << "on all pool charts with empty pointwise kernels at " << structure_points
	     << " random points per chart";
	report(2, desc.str(), ok, detail);
}

/// Criterion 3: the closed-form contractions of theta, omega, theta-hat and
/// omega-hat agree with the generic interior product on random fields.
void criterion_3() {
	Rng rng(child_seed(root_seed, 3));
	bool ok = true;
	std::string detail;
	for (int t = 0; t < contraction_trials; ++t) {
		ChartPtr e = random_extended_chart(rng);
		VectorField X = random_vector_field(rng, e, 3);
		if (!(contraction_omega(X) == interior_product(X, canonical_omega(e)))) {
			ok = false;
			detail = "i_X omega mismatch on " + e->str();
		}
		if (!(contraction_theta(X) == interior_product(X, canonical_theta(e)))) {
			ok = false;
			detail = "i_X theta mismatch on " + e->str();
		}
		ChartPtr o = random_ordinary_chart(rng);
		VectorField Y = random_vector_field(rng, o, 3);
		if (!(contraction_omega_hat(Y) == interior_product(Y, canonical_omega_hat(o)))) {
			ok = false;
			detail = "i_X omega-hat mismatch on " + o->str();
		}
		if (!(contraction_theta_hat(Y) == interior_product(Y, canonical_theta_hat(o)))) {
			ok = false;
			detail = "i_X theta-hat mismatch on " + o->str();
		}
	}
	std::ostringstream desc;
	desc << "closed-form contractions of theta, omega, theta-hat and omega-hat match the "
	     << "generic interior product on " << contraction_trials << " random fields per case";
	report(3, desc.str(), ok, detail);
}

/// Criterion 4: constructed fields close the contraction, the hamiltonian
/// form satisfies df = i_X omega, the gauge identity L_X theta = d(f_0^mu
/// vol_mu) holds, and zero f_0 gives L_X theta = 0 exactly.
void criterion_4() {
	Rng rng(child_seed(root_seed, 4));
	bool ok = true;
	std::string detail;
	for (auto [n, N] : chart_pool) {
		ChartPtr e = build_extended_chart(n, N);
		for (int t = 0; t < soundness_trials; ++t) {
			HamiltonianGenerators g = random_generators(rng, e, 3);
			VectorField X = construct_hamiltonian_vf(g);
			DifferentialForm eta = interior_product(X, canonical_omega(e));
			if (!exterior_derivative(eta).is_zero()) {
				ok = false;
				detail = "d(i_X omega) != 0 on " + e->str();
			}
			DifferentialForm f = hamiltonian_form_of(X, g);
			if (!(exterior_derivative(f) == eta)) {
				ok = false;
				detail = "df != i_X omega on " + e->str();
			}
			DifferentialForm f0vol(e, n - 1);
			for (const auto& [mu, p] : g.f0)
				f0vol += p * volume_contraction(e, mu);
			if (!(lie_derivative(X, canonical_theta(e)) == exterior_derivative(f0vol))) {
				ok = false;
				detail = "L_X theta != d(f0 vol) on " + e->str();
			}
			HamiltonianGenerators g0 = g;
			g0.f0.clear();
			VectorField X0 = construct_hamiltonian_vf(g0);
			if (!lie_derivative(X0, canonical_theta(e)).is_zero()) {
				ok = false;
				detail = "zero f0 but L_X theta != 0 on " + e->str();
			}
		}
	}
	std::ostringstream desc;
	desc << "constructed hamiltonian fields satisfy d(i_X omega) = 0, df = i_X omega and "
	     << "L_X theta = d(f0 vol) exactly for " << soundness_trials
	     << " random generator draws per pool chart, with L_X theta = 0 whenever f0 = 0";
	report(4, desc.str(), ok, detail);
}

/// One single-violation perturbation trial on an extended chart: start from a
/// constructed field, inject a monomial with a forbidden variable into the
/// chosen component, and demand a non-closed contraction with a witness plus
/// a not_hamiltonian verdict.
bool perturbation_trial(Rng& rng, const ChartPtr& chart, int component_index,
                        const std::vector<std::string>& forbidden, std::string& why) {
	HamiltonianGenerators g = random_generators(rng, chart, 3);
	VectorField X = construct_hamiltonian_vf(g);
	Monomial m = darboux::detail::violating_monomial(rng, chart, forbidden, 3);
	X.add_component(component_index, Polynomial::term(std::move(m), random_coefficient(rng)));
	DifferentialForm residual = exterior_derivative(interior_product(X, canonical_omega(chart)));
	if (residual.is_zero()) {
		why = "perturbed contraction stayed closed on " + chart->str();
		return false;
	}
	if (!first_term_witness(residual)) {
		why = "no witness extracted on " + chart->str();
		return false;
	}
	ClassificationVerdict v = classify(X);
	if (v.status != HamiltonianStatus::not_hamiltonian || !v.witness) {
		why = "classifier accepted a perturbed field on " + chart->str();
		return false;
	}
	return true;
}

/// Criterion 5: each single-violation family breaks closure with an explicit
/// witness monomial. Momentum/energy perturbations need n >= 2 and position
/// perturbations of X^mu need N >= 2 (they are genuinely hamiltonian below
/// those bounds), so each family draws from the matching pool.
void criterion_5() {
	Rng rng(child_seed(root_seed, 5));
	bool ok = true;
	std::string why;
	for (int t = 0; t < perturbation_trials; ++t) {
		ChartPtr c1 = darboux::detail::extended_chart_n2(rng);
		ok &= perturbation_trial(rng, c1, c1->position_index(rng.range(1, c1->position_count())),
		                         darboux::detail::momentum_energy_names(c1), why);
		ChartPtr c2 = darboux::detail::extended_chart_N2(rng);
		ok &= perturbation_trial(rng, c2, c2->base_index(rng.range(1, c2->base_count())),
		                         names_with_roles(c2, {CoordinateRole::position}), why);
		ChartPtr c3 = darboux::detail::extended_chart_n2(rng);
		ok &= perturbation_trial(rng, c3, c3->base_index(rng.range(1, c3->base_count())),
		                         darboux::detail::momentum_energy_names(c3), why);
	}
	std::ostringstream desc;
	desc << perturbation_trials
	     << " single-violation perturbations per family (momentum-dependent X^i, "
	     << "position-dependent X^mu with N = 2, momentum-dependent X^mu) each break "
	     << "d(i_X omega) = 0 with an explicit witness monomial";
	report(5, desc.str(), ok, why);
}

/// Criterion 6: the vertical analogues on ordinary charts: soundness of the
/// construction, d_V f = i_X omega-hat, the exactness clause in both
/// directions via L_X theta-hat = d_V f0, and momentum perturbations caught.
void criterion_6() {
	Rng rng(child_seed(root_seed, 6));
	bool ok = true;
	std::string why;
	for (auto [n, N] : chart_pool) {
		ChartPtr o = build_ordinary_chart(n, N);
		for (int t = 0; t < soundness_trials; ++t) {
			PolyHamiltonianGenerators g = random_poly_generators(rng, o, 3);
			VectorField X = construct_polyhamiltonian_vf(g);
			VectorValuedForm eta = interior_product(X, canonical_omega_hat(o));
			if (!vertical_derivative(eta).is_zero()) {
				ok = false;
				why = "d_V(i_X omega-hat) != 0 on " + o->str();
			}
			VectorValuedForm f = hamiltonian_section_of(X, g);
			if (!(vertical_derivative(f) == eta)) {
				ok = false;
				why = "d_V f != i_X omega-hat on " + o->str();
			}
			// Exactness in both directions: L_X theta-hat equals d_V f0
			// exactly, so it vanishes exactly when f0 is vertically trivial.
			VectorValuedForm f0v(o, 0, o->label_count());
			for (const auto& [a, p] : g.f0)
				f0v.set_component(a, DifferentialForm::scalar(o, p));
			VectorValuedForm lie = lie_derivative(X, canonical_theta_hat(o));
			if (!(lie == vertical_derivative(f0v))) {
				ok = false;
				why = "L_X theta-hat != d_V f0 on " + o->str();
			}
			PolyHamiltonianGenerators g0 = g;
			g0.f0.clear();
			if (!lie_derivative(construct_polyhamiltonian_vf(g0), canonical_theta_hat(o))
			         .is_zero()) {
				ok = false;
				why = "zero f0 but L_X theta-hat != 0 on " + o->str();
			}
			if (vertical_derivative(f0v).is_zero() && !lie.is_zero()) {
				ok = false;
				why = "gauge-trivial f0 but L_X theta-hat != 0 on " + o->str();
			}
		}
	}
	for (int t = 0; t < perturbation_trials; ++t) {
		ChartPtr o = darboux::detail::ordinary_chart_n2(rng);
		PolyHamiltonianGenerators g = random_poly_generators(rng, o, 3);
		VectorField X = construct_polyhamiltonian_vf(g);
		auto momenta = names_with_roles(o, {CoordinateRole::momentum});
		Monomial m = darboux::detail::violating_monomial(rng, o, momenta, 3);
		X.add_component(o->position_index(rng.range(1, o->position_count())),
		                Polynomial::term(std::move(m), random_coefficient(rng)));
		VectorValuedForm residual =
		    vertical_derivative(interior_product(X, canonical_omega_hat(o)));
		PolyClassificationVerdict v = classify_vertical(X);
		if (residual.is_zero() || v.status != HamiltonianStatus::not_hamiltonian ||
		    !v.witness) {
			ok = false;
			why = "perturbed vertical field not rejected on " + o->str();
		}
	}
	std::ostringstream desc;
	desc << "vertical analogues hold on ordinary charts: " << soundness_trials
	     << " random constructions per chart close the contraction with d_V f = i_X "
	     << "omega-hat and L_X theta-hat = d_V f0 (both exactness directions), and "
	     << perturbation_trials << " momentum perturbations are rejected with witnesses";
	report(6, desc.str(), ok, why);
}

/// Criterion 7: classification, solving and serialization round-trips.
void criterion_7() {
	Rng rng(child_seed(root_seed, 7));
	bool ok = true;
	std::string detail;
	for (int t = 0; t < roundtrip_trials; ++t) {
		// classify . construct recovers the generators exactly.
		ChartPtr e = random_extended_chart(rng);
		HamiltonianGenerators g = random_generators(rng, e, 3);
		VectorField X = construct_hamiltonian_vf(g);
		ClassificationVerdict v = classify(X);
		if (v.status == HamiltonianStatus::not_hamiltonian || !v.generators ||
		    v.generators->Xmu != g.Xmu || v.generators->Xi != g.Xi ||
		    !(construct_hamiltonian_vf(*v.generators) == X)) {
			ok = false;
			detail = "classify did not recover a construction on " + e->str();
		}
		// solve_inverse . d . hamiltonian_form_of is the identity.
		if (!(solve_inverse(exterior_derivative(hamiltonian_form_of(X, g))) == X)) {
			ok = false;
			detail = "solve_inverse missed the constructed field on " + e->str();
		}
		// The vertical analogues.
		ChartPtr o = random_ordinary_chart(rng);
		PolyHamiltonianGenerators pg = random_poly_generators(rng, o, 3);
		VectorField Y = construct_polyhamiltonian_vf(pg);
		PolyClassificationVerdict pv = classify_vertical(Y);
		if (pv.status == HamiltonianStatus::not_hamiltonian || !pv.generators ||
		    pv.generators->Xi != pg.Xi ||
		    !(construct_polyhamiltonian_vf(*pv.generators) == Y)) {
			ok = false;
			detail = "vertical classify did not recover a construction on " + o->str();
		}
		if (!(solve_inverse_poly(vertical_derivative(hamiltonian_section_of(Y, pg))) == Y)) {
			ok = false;
			detail = "solve_inverse_poly missed the constructed field on " + o->str();
		}
	}
	// Serialization round-trips, byte-exact after one pass, for every kind.
	auto byte_roundtrip = [&](const auto& value, const char* what) {
		using T = std::decay_t<decltype(value)>;
		std::string bytes = serialize(value);
		Document doc = parse_document(bytes);
		const T* back = std::get_if<T>(&doc.payload);
		if (back && *back == value && serialize(*back) == bytes)
			return;
		ok = false;
		detail = std::string("serialization roundtrip failed for a ") + what;
	};
	for (int t = 0; t < roundtrip_trials; ++t) {
		ChartPtr c = random_chart(rng);
		{
			std::string bytes = serialize(c);
			Document doc = parse_document(bytes);
			const ChartPtr* back = std::get_if<ChartPtr>(&doc.payload);
			if (!(back && *back && **back == *c && serialize(*back) == bytes)) {
				ok = false;
				detail = "serialization roundtrip failed for a chart";
			}
		}
		byte_roundtrip(random_vector_field(rng, c, 3), "vector field");
		byte_roundtrip(random_form(rng, c, rng.range(0, 3), 3), "form");
		VectorValuedForm vv(c, 1, rng.range(1, 3));
		for (int a = 1; a <= vv.labels(); ++a)
			vv.set_component(a, random_form(rng, c, 1, 3));
		byte_roundtrip(vv, "vector-valued form");
		ChartPtr e = random_extended_chart(rng);
		HamiltonianGenerators g = random_generators(rng, e, 3);
		byte_roundtrip(g, "generator set");
		byte_roundtrip(classify(construct_hamiltonian_vf(g)), "verdict");
		ChartPtr o = random_ordinary_chart(rng);
		PolyHamiltonianGenerators pg = random_poly_generators(rng, o, 3);
		byte_roundtrip(pg, "vertical generator set");
		byte_roundtrip(classify_vertical(construct_polyhamiltonian_vf(pg)),
		               "vertical verdict");
	}
	std::ostringstream desc;
	desc << "classify recovers constructed generators, the solvers invert the contraction, "
	     << "and serialization round-trips are byte-exact for every document kind ("
	     << roundtrip_trials << " trials each)";
	report(7, desc.str(), ok, detail);
}

/// Criterion 8: the vertical symbol of omega is omega-hat on every pool
/// chart, and the pullback of omega along a hamiltonian section is closed
/// with the expected pointwise kernel (empty for n >= 2, one-dimensional for
/// the presymplectic n = 1 case).
void criterion_8() {
	Rng rng(child_seed(root_seed, 8));
	bool ok = true;
	std::string detail;
	for (auto [n, N] : chart_pool) {
		ChartPtr e = build_extended_chart(n, N);
		auto [o, symbol] = symbol_projection(e);
		if (!(symbol == canonical_omega_hat(o))) {
			ok = false;
			detail = "symbol of omega is not omega-hat on " + e->str();
		}
	}
	for (int h = 0; h < hamiltonian_draws; ++h) {
		ChartPtr e = random_extended_chart(rng);
		auto vars = names_with_roles(
		    e, {CoordinateRole::base, CoordinateRole::position, CoordinateRole::momentum});
		Polynomial H = random_polynomial(rng, vars, 3);
		DifferentialForm omega_h = pullback_by_section(H, e);
		if (!exterior_derivative(omega_h).is_zero()) {
			ok = false;
			detail = "pulled-back form not closed on " + e->str();
		}
		std::size_t expected = e->base_count() == 1 ? 1 : 0;
		for (int t = 0; t < hamiltonian_points; ++t)
			if (kernel_at(omega_h, random_point(rng, omega_h.chart())).size() != expected) {
				ok = false;
				detail = "unexpected pointwise kernel on " + e->str();
			}
	}
	std::ostringstream desc;
	desc << "symbol projection of omega reproduces omega-hat on every pool chart, and the "
	     << "section pullback of omega is closed and non-degenerate at "
	     << hamiltonian_points << " random points for " << hamiltonian_draws
	     << " random hamiltonians (one-dimensional kernel pinned for n = 1)";
	report(8, desc.str(), ok, detail);
}

/// Criterion 9: the worked examples, frozen with exact expected outputs.
void criterion_9() {
	bool ok = true;
	std::string detail;
	auto expect = [&](bool cond, const char* what) {
		if (!cond) {
			ok = false;
			detail = what;
		}
	};

	// Mechanics chart (n = 1): theta and omega in closed form.
	ChartPtr m = build_extended_chart(1, 1);
	expect(canonical_theta(m).str() == "p dx1 + p1_1 dq1", "mechanics theta");
	expect(canonical_omega(m).str() == "dx1^dp + dq1^dp1_1", "mechanics omega");

	// Rotation field on (2,1): exact hamiltonian with its frozen form.
	ChartPtr c = build_extended_chart(2, 1);
	HamiltonianGenerators rot;
	rot.chart = c;
	rot.Xmu[1] = -var("x2");
	rot.Xmu[2] = var("x1");
	VectorField X = construct_hamiltonian_vf(rot);
	expect(X.str() == "-x2 d/dx1 + x1 d/dx2 + -p1_2 d/dp1_1 + p1_1 d/dp1_2",
	       "rotation field components");
	ClassificationVerdict rv = classify(X);
	expect(rv.status == HamiltonianStatus::exact_hamiltonian, "rotation status");
	expect(rv.generators && *rv.generators == rot, "rotation generators");
	expect(rv.hamiltonian_form &&
	           rv.hamiltonian_form->str() == "-p x1 dx1 - p x2 dx2 + (-p1_1 x1 - p1_2 x2) dq1",
	       "rotation hamiltonian form");
	expect(solve_inverse(exterior_derivative(*rv.hamiltonian_form)) == X, "rotation solve");

	// The q d/dp counterexample on (2,1): rejected with the exact witness.
	VectorField bad(c);
	bad.set_component("p", var("q1"));
	ClassificationVerdict bv = classify(bad);
	expect(bv.status == HamiltonianStatus::not_hamiltonian, "counterexample status");
	expect(bv.witness && bv.witness->index == MultiIndex{0, 1, 2} && bv.witness->coeff == -1 &&
	           bv.witness->powers.empty(),
	       "counterexample witness");

	// Its repaired companion q d/dp + x1 d/dp1_1: locally hamiltonian with
	// f0 = q1 x1 and the gauge identity L_X theta = d(f0 vol_1).
	VectorField repaired(c);
	repaired.set_component("p", var("q1"));
	repaired.set_component("p1_1", var("x1"));
	ClassificationVerdict cv = classify(repaired);
	expect(cv.status == HamiltonianStatus::locally_hamiltonian, "repaired status");
	expect(cv.generators && cv.generators->Xmu.empty() && cv.generators->Xi.empty() &&
	           cv.generators->f0.size() == 1 && cv.generators->f0.count(1) &&
	           cv.generators->f0.at(1) == var("q1") * var("x1"),
	       "repaired generators");
	expect(cv.generators && construct_hamiltonian_vf(*cv.generators) == repaired,
	       "repaired reconstruction");
	expect(lie_derivative(repaired, canonical_theta(c)) ==
	           exterior_derivative(var("q1") * var("x1") * volume_contraction(c, 1)),
	       "repaired gauge identity");

	// Vertical analogue on (1,1,1): the potential construction.
	ChartPtr o = build_ordinary_chart(1, 1, 1);
	expect(canonical_theta_hat(o).component(1).str() == "p1_1 dq1", "theta-hat");
	expect(canonical_omega_hat(o).component(1).str() == "dq1^dp1_1", "omega-hat");
	PolyHamiltonianGenerators pg;
	pg.chart = o;
	pg.f0[1] = Rational(1, 2) * var("q1").pow(2);
	VectorField V = construct_polyhamiltonian_vf(pg);
	expect(V.component("p1_1") == var("q1"), "potential field");
	PolyClassificationVerdict pv = classify_vertical(V);
	expect(pv.status == HamiltonianStatus::locally_hamiltonian, "potential status");
	expect(pv.generators && *pv.generators == pg, "potential generators");
	expect(pv.hamiltonian_section && pv.hamiltonian_section->component(1).str() == "-1/2 q1^2",
	       "potential section");

	report(9, "worked examples (mechanics chart, rotation field, q d/dp counterexample and "
	          "its repaired companion, vertical potential) reproduce their frozen outputs",
	       ok, detail);
}

} // namespace

int main() {
	try {
		criterion_1();
		criterion_2();
		criterion_3();
		criterion_4();
		criterion_5();
		criterion_6();
		criterion_7();
		criterion_8();
		criterion_9();
	} catch (const std::exception& e) {
		std::cout << "FAIL acceptance: unexpected exception: " << e.what() << "\n";
		return 1;
	}
	if (failures == 0) {
		std::cout << "acceptance: all 9 criteria passed\n";
		return 0;
	}
	std::cout << "acceptance: " << failures << " criterion(s) failed\n";
	return 1;
}
