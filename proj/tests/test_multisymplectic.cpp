#include <catch2/catch_amalgamated.hpp>

#include <darboux/multisymplectic.hpp>
#include <darboux/polysymplectic.hpp>
#include <darboux/random_gen.hpp>

#include <map>
#include <string>
#include <vector>

using namespace darboux;

namespace {

Polynomial var(const char* name) { return Polynomial::variable(name); }

const std::vector<std::pair<int, int>> chart_pool = {{1, 1}, {2, 1}, {2, 2}, {3, 2}};

} // namespace

TEST_CASE("canonical theta and omega on the (1,1) chart") {
	ChartPtr c = build_extended_chart(1, 1);
	CHECK(canonical_theta(c).str() == "p dx1 + p1_1 dq1");
	CHECK(canonical_omega(c).str() == "dx1^dp + dq1^dp1_1");
	CHECK(canonical_theta(c).degree() == 1);
	CHECK(canonical_omega(c).degree() == 2);
}

TEST_CASE("canonical omega on the (2,1) chart") {
	ChartPtr c = build_extended_chart(2, 1);
	CHECK(canonical_omega(c).str() == "-dx1^dx2^dp - dx1^dq1^dp1_2 + dx2^dq1^dp1_1");
	CHECK(canonical_theta(c).degree() == 2);
	CHECK(canonical_omega(c).degree() == 3);
	CHECK_THROWS_WITH(canonical_omega(build_ordinary_chart(2, 1)),
	                  "operation needs an extended multiphase chart");
}

TEST_CASE("omega equals minus d theta on every pool chart") {
	for (auto [n, N] : chart_pool) {
		ChartPtr c = build_extended_chart(n, N);
		INFO("chart " << c->str());
		CHECK(canonical_omega(c) == -exterior_derivative(canonical_theta(c)));
		CHECK(exterior_derivative(canonical_omega(c)).is_zero());
	}
}

TEST_CASE("omega has empty pointwise kernel on every pool chart") {
	Rng rng(20240816);
	for (auto [n, N] : chart_pool) {
		ChartPtr c = build_extended_chart(n, N);
		INFO("chart " << c->str());
		for (int rep = 0; rep < 5; ++rep)
			CHECK(kernel_at(canonical_omega(c), random_point(rng, c)).empty());
	}
}

TEST_CASE("closed-form contractions match the generic interior product") {
	// Explicit field exercising every coordinate block on (2,2).
	ChartPtr c = build_extended_chart(2, 2);
	VectorField X(c);
	X.set_component("x1", var("x2"));
	X.set_component("q2", var("q1") * var("x1"));
	X.set_component("p1_2", var("p") + var("p2_1"));
	X.set_component("p", var("q2").pow(2));
	CHECK(contraction_omega(X) == interior_product(X, canonical_omega(c)));
	CHECK(contraction_theta(X) == interior_product(X, canonical_theta(c)));
	// Random fields across the pool.
	Rng rng(7);
	for (int t = 0; t < 25; ++t) {
		ChartPtr chart = random_extended_chart(rng);
		VectorField Y = random_vector_field(rng, chart, 3);
		INFO("trial " << t << " chart " << chart->str());
		CHECK(contraction_omega(Y) == interior_product(Y, canonical_omega(chart)));
		CHECK(contraction_theta(Y) == interior_product(Y, canonical_theta(chart)));
	}
}

TEST_CASE("generator validation rejects forbidden dependencies") {
	ChartPtr c = build_extended_chart(2, 2);
	HamiltonianGenerators g;
	g.chart = c;
	g.Xmu[1] = var("q1"); // N = 2: X^mu must not depend on positions
	CHECK_THROWS_WITH(g.validate(), "X^mu may not depend on 'q1'");
	g.Xmu.clear();
	g.Xi[1] = var("p1_1");
	CHECK_THROWS_WITH(g.validate(), "X^i may not depend on 'p1_1'");
	g.Xi.clear();
	g.f0[1] = var("p");
	CHECK_THROWS_WITH(g.validate(), "f_0^mu may not depend on 'p'");
	g.f0.clear();
	g.f0[3] = var("x1"); // only mu in 1..n
	CHECK_THROWS_WITH(g.validate(), "f_0^mu index out of range");
	g.f0.clear();
	CHECK_NOTHROW(g.validate());
	// N = 1 charts allow position-dependent X^mu.
	HamiltonianGenerators h;
	h.chart = build_extended_chart(2, 1);
	h.Xmu[1] = var("q1");
	CHECK_NOTHROW(h.validate());
}

TEST_CASE("rotation generators on (2,1) reproduce the classified field") {
	ChartPtr c = build_extended_chart(2, 1);
	HamiltonianGenerators g;
	g.chart = c;
	g.Xmu[1] = -var("x2");
	g.Xmu[2] = var("x1");

	VectorField X = construct_hamiltonian_vf(g);
	CHECK(X.str() == "-x2 d/dx1 + x1 d/dx2 + -p1_2 d/dp1_1 + p1_1 d/dp1_2");
	CHECK(X.component("p1_1") == -var("p1_2"));
	CHECK(X.component("p1_2") == var("p1_1"));
	CHECK(X.component("p").is_zero());

	DifferentialForm f = hamiltonian_form_of(X, g);
	CHECK(f.str() == "-p x1 dx1 - p x2 dx2 + (-p1_1 x1 - p1_2 x2) dq1");
	CHECK(exterior_derivative(f) == interior_product(X, canonical_omega(c)));

	ClassificationVerdict v = classify(X);
	CHECK(v.status == HamiltonianStatus::exact_hamiltonian);
	REQUIRE(v.generators);
	CHECK(*v.generators == g);
	REQUIRE(v.hamiltonian_form);
	CHECK(*v.hamiltonian_form == f);
	CHECK_FALSE(v.witness);
	CHECK(lie_derivative(X, canonical_theta(c)).is_zero());

	CHECK(solve_inverse(exterior_derivative(f)) == X);
}

TEST_CASE("an energy-direction perturbation is caught with a witness") {
	ChartPtr c = build_extended_chart(2, 1);
	VectorField X(c);
	X.set_component("p", var("q1"));
	ClassificationVerdict v = classify(X);
	CHECK(v.status == HamiltonianStatus::not_hamiltonian);
	CHECK_FALSE(v.generators);
	CHECK_FALSE(v.hamiltonian_form);
	REQUIRE(v.witness);
	// d(i_X omega) = -dx1 ∧ dx2 ∧ dq1.
	CHECK(v.witness->index == MultiIndex{0, 1, 2});
	CHECK(v.witness->coeff == -1);
	CHECK(v.witness->powers.empty());
	CHECK(v.witness->label == 0);
}

TEST_CASE("repairing the energy perturbation yields a locally hamiltonian field") {
	ChartPtr c = build_extended_chart(2, 1);
	VectorField X(c);
	X.set_component("p", var("q1"));
	X.set_component("p1_1", var("x1"));
	ClassificationVerdict v = classify(X);
	CHECK(v.status == HamiltonianStatus::locally_hamiltonian);
	REQUIRE(v.generators);
	CHECK(v.generators->Xmu.empty());
	CHECK(v.generators->Xi.empty());
	REQUIRE(v.generators->f0.count(1));
	CHECK(v.generators->f0.at(1) == var("q1") * var("x1"));
	CHECK(v.generators->f0.count(2) == 0);
	CHECK(construct_hamiltonian_vf(*v.generators) == X);
	// The gauge identity: L_X theta = d(f_0^mu d^n x_mu).
	DifferentialForm f0vol = var("q1") * var("x1") * volume_contraction(c, 1);
	CHECK(lie_derivative(X, canonical_theta(c)) == exterior_derivative(f0vol));
}

TEST_CASE("n = 1 charts admit closed contractions outside the normal form") {
	ChartPtr c = build_extended_chart(1, 1);
	VectorField X(c);
	X.set_component("x1", var("p1_1"));
	X.set_component("q1", var("p"));
	ClassificationVerdict v = classify(X);
	CHECK(v.status == HamiltonianStatus::locally_hamiltonian);
	CHECK_FALSE(v.generators); // outside the generator profile
	REQUIRE(v.hamiltonian_form);
	CHECK(v.hamiltonian_form->str() == "p p1_1");
	CHECK(exterior_derivative(*v.hamiltonian_form) ==
	      interior_product(X, canonical_omega(c)));
}

TEST_CASE("classification round-trips random constructions") {
	Rng rng(99);
	for (int t = 0; t < 40; ++t) {
		ChartPtr chart = random_extended_chart(rng);
		HamiltonianGenerators g = random_generators(rng, chart, 3);
		VectorField X = construct_hamiltonian_vf(g);
		INFO("trial " << t << " chart " << chart->str());
		REQUIRE(exterior_derivative(interior_product(X, canonical_omega(chart))).is_zero());
		ClassificationVerdict v = classify(X);
		REQUIRE(v.status != HamiltonianStatus::not_hamiltonian);
		REQUIRE(v.generators);
		CHECK(v.generators->Xmu == g.Xmu);
		CHECK(v.generators->Xi == g.Xi);
		CHECK(construct_hamiltonian_vf(*v.generators) == X);
		REQUIRE(v.hamiltonian_form);
		CHECK(solve_inverse(exterior_derivative(*v.hamiltonian_form)) == X);
		// Exactness is equivalent to L_X theta = 0.
		CHECK((v.status == HamiltonianStatus::exact_hamiltonian) ==
		      lie_derivative(X, canonical_theta(chart)).is_zero());
	}
}

TEST_CASE("solve_inverse rejects forms outside the image") {
	ChartPtr c = build_extended_chart(2, 1);
	DifferentialForm f(c, 1);
	f.accumulate({0}, var("p1_1")); // p1_1 dx1
	CHECK_THROWS_AS(solve_inverse(exterior_derivative(f)), NotInImageError);
	CHECK_THROWS_WITH(solve_inverse(exterior_derivative(f)),
	                  Catch::Matchers::ContainsSubstring("not a contraction of omega"));
	CHECK_THROWS_WITH(solve_inverse(DifferentialForm(c, 1)),
	                  "contraction preimage needs an n-form");
	// Disagreeing dp_i^mu ∧ d^n x_mu coefficients across mu.
	DifferentialForm eta(c, 2);
	eta.accumulate_unsorted({c->momentum_index(1, 1), c->base_index(2)}, Polynomial::constant(1));
	CHECK_THROWS_WITH(solve_inverse(eta),
	                  Catch::Matchers::ContainsSubstring("coefficients disagree across mu"));
}

TEST_CASE("vertical generator data on an n = 1 chart can fail to lift") {
	// X_1^1 = x1 q1 is polysymplectically hamiltonian on the ordinary chart...
	ChartPtr ordinary = build_ordinary_chart(1, 1);
	VectorField Y(ordinary);
	Y.set_component("p1_1", var("x1") * var("q1"));
	PolyClassificationVerdict pv = classify_vertical(Y);
	CHECK(pv.status != HamiltonianStatus::not_hamiltonian);
	REQUIRE(pv.generators);
	REQUIRE(pv.generators->f0.count(1));
	CHECK(pv.generators->f0.at(1) == Rational(1, 2) * var("x1") * var("q1").pow(2));
	// ...but its lift to the extended chart is not: the extended closure
	// condition also constrains the energy component, which stays zero here.
	ChartPtr extended = build_extended_chart(1, 1);
	VectorField X(extended);
	X.set_component("p1_1", var("x1") * var("q1"));
	ClassificationVerdict v = classify(X);
	CHECK(v.status == HamiltonianStatus::not_hamiltonian);
	REQUIRE(v.witness);
}

TEST_CASE("x-free ordinary constructions lift to hamiltonian fields") {
	ChartPtr ordinary = build_ordinary_chart(2, 1);
	PolyHamiltonianGenerators pg;
	pg.chart = ordinary;
	pg.Xi[1] = var("q1");
	pg.f0[2] = var("q1").pow(2);
	VectorField Y = construct_polyhamiltonian_vf(pg);
	ChartPtr extended = build_extended_chart(2, 1);
	VectorField lift(extended);
	for (const auto& [idx, poly] : Y.components())
		lift.set_component(ordinary->name(idx), poly);
	ClassificationVerdict v = classify(lift);
	REQUIRE(v.status != HamiltonianStatus::not_hamiltonian);
	REQUIRE(v.generators);
	CHECK(v.generators->Xi == pg.Xi);
	CHECK(v.generators->Xmu.empty());
}

TEST_CASE("pullback of omega along an energy section") {
	ChartPtr c = build_extended_chart(2, 1);
	Polynomial H = Rational(1, 2) * var("p1_1").pow(2);
	DifferentialForm omega_h = pullback_by_section(H, c);
	CHECK(*omega_h.chart() == *build_ordinary_chart(2, 1));
	CHECK(omega_h.str() == "p1_1 dx1^dx2^dp1_1 - dx1^dq1^dp1_2 + dx2^dq1^dp1_1");
	CHECK(exterior_derivative(omega_h).is_zero());
	Point pt = Point::make(omega_h.chart(), {{"x1", Rational(1)},
	                                         {"x2", Rational(0)},
	                                         {"q1", Rational(2)},
	                                         {"p1_1", Rational(1, 3)},
	                                         {"p1_2", Rational(-2)}});
	CHECK(kernel_at(omega_h, pt).empty());

	// On an n = 1 base the pullback is presymplectic: kernel dimension one.
	ChartPtr line = build_extended_chart(1, 1);
	DifferentialForm omega_h1 = pullback_by_section(Rational(1, 2) * var("p1_1").pow(2), line);
	Point pt1 = Point::make(omega_h1.chart(),
	                        {{"x1", Rational(1)}, {"q1", Rational(2)}, {"p1_1", Rational(3)}});
	CHECK(kernel_at(omega_h1, pt1).size() == 1);
	CHECK(exterior_derivative(omega_h1).is_zero());
}

TEST_CASE("the symbol of omega projects onto the polysymplectic form") {
	for (auto [n, N] : chart_pool) {
		ChartPtr extended = build_extended_chart(n, N);
		INFO("chart " << extended->str());
		auto [ordinary, symbol] = symbol_projection(extended);
		CHECK(*ordinary == *build_ordinary_chart(n, N, n));
		CHECK(symbol == canonical_omega_hat(ordinary));
	}
}

TEST_CASE("hamiltonian form components follow the closed formulas") {
	ChartPtr c = build_extended_chart(2, 2);
	HamiltonianGenerators g;
	g.chart = c;
	g.Xmu[1] = var("x2");
	g.Xi[2] = var("q1");
	g.f0[1] = var("q2");
	auto comps = hamiltonian_form_components(g);
	// f^mu = p_i^mu X^i + p X^mu - f_0^mu
	CHECK(comps.f_mu.at(1) == var("p2_1") * var("q1") + var("p") * var("x2") - var("q2"));
	CHECK(comps.f_mu.at(2) == var("p2_2") * var("q1"));
	// f_i^{mu nu} = p_i^nu X^mu - p_i^mu X^nu
	CHECK(comps.f_imunu.at({1, 1, 2}) == var("p1_2") * var("x2"));
	CHECK(comps.f_imunu.at({2, 1, 2}) == var("p2_2") * var("x2"));
	VectorField X = construct_hamiltonian_vf(g);
	CHECK(exterior_derivative(hamiltonian_form_of(X, g)) ==
	      interior_product(X, canonical_omega(c)));
}

TEST_CASE("classify refuses fields on the wrong chart kind") {
	ChartPtr ordinary = build_ordinary_chart(1, 1);
	VectorField X(ordinary);
	CHECK_THROWS_WITH(classify(X), "operation needs an extended multiphase chart");
	HamiltonianGenerators g;
	g.chart = ordinary;
	CHECK_THROWS_AS(construct_hamiltonian_vf(g), InputError);
}
