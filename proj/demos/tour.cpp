// A short tour: canonical structures on a scalar-field chart, construction
// and classification of hamiltonian vector fields, and the inverse problem.

#include <iostream>

#include <darboux/darboux.hpp>

using namespace darboux;

int main() {
	// Extended multiphase chart for one scalar field over a 2d base.
	ChartPtr chart = build_extended_chart(2, 1);
	std::cout << "chart: " << chart->str() << "\n";
	std::cout << "theta = " << canonical_theta(chart).str() << "\n";
	std::cout << "omega = " << canonical_omega(chart).str() << "\n\n";

	// Base rotations lift to a hamiltonian field whose momentum components
	// are forced by the generators X^1 = -x2, X^2 = x1.
	HamiltonianGenerators g;
	g.chart = chart;
	g.Xmu[1] = -Polynomial::variable("x2");
	g.Xmu[2] = Polynomial::variable("x1");
	VectorField X = construct_hamiltonian_vf(g);
	ClassificationVerdict v = classify(X);
	std::cout << "rotation field: " << X.str() << "\n";
	std::cout << "status: " << status_name(v.status) << "\n";
	std::cout << "hamiltonian form: " << v.hamiltonian_form->str() << "\n";

	// The inverse problem: d f = i_X omega recovers the field.
	VectorField Y = solve_inverse(exterior_derivative(*v.hamiltonian_form));
	std::cout << "solve_inverse(d f) == X: " << (Y == X ? "yes" : "no") << "\n\n";

	// q d/dp is the classic non-example; x1 d/dp1_1 + q d/dp repairs it.
	VectorField W(chart);
	W.set_component("p", Polynomial::variable("q1"));
	std::cout << "q d/dp: " << status_name(classify(W).status) << "\n";
	W.set_component("p1_1", Polynomial::variable("x1"));
	std::cout << "x1 d/dp1_1 + q d/dp: " << status_name(classify(W).status) << "\n\n";

	// Vertical theory on the ordinary chart: a potential generates the
	// force field of point mechanics.
	ChartPtr ordinary = build_ordinary_chart(1, 1);
	PolyHamiltonianGenerators pg;
	pg.chart = ordinary;
	pg.f0[1] = Polynomial::variable("q1") * Polynomial::variable("q1") * Rational(1, 2);
	VectorField Z = construct_polyhamiltonian_vf(pg);
	PolyClassificationVerdict pv = classify_vertical(Z);
	std::cout << "potential q^2/2 gives: " << Z.str() << "\n";
	std::cout << "status: " << status_name(pv.status) << "\n";
	std::cout << "hamiltonian section:\n" << pv.hamiltonian_section->str() << "\n";
	return 0;
}
