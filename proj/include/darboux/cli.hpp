#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "calculus.hpp"
#include "chart.hpp"
#include "errors.hpp"
#include "forms.hpp"
#include "io.hpp"
#include "multisymplectic.hpp"
#include "polysymplectic.hpp"
#include "verify.hpp"

// Command line front end. Exit codes: 0 success (verdicts are data), 1
// mathematical negative (a form outside the image of the contraction, or a
// failing verify trial), 2 input or parse error, 3 internal invariant breach.

namespace darboux {

namespace detail {

inline std::string read_file(const std::string& path) {
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw InputError("cannot read file '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

inline void write_file(const std::string& path, const std::string& bytes) {
	std::ofstream out(path, std::ios::binary);
	out << bytes;
	if (!out)
		throw InputError("cannot write file '" + path + "'");
}

inline Document load_document(const std::string& path) {
	return parse_document(read_file(path));
}

inline ChartPtr load_chart(const std::string& path) {
	Document d = load_document(path);
	return expect_chart(d);
}

inline VectorField load_vector_field(const std::string& path, const ChartPtr& chart) {
	Document d = load_document(path);
	VectorField X = expect_vector_field(d);
	require_same_chart(X.chart(), chart);
	return X;
}

inline std::string generators_text(const HamiltonianGenerators& g) {
	std::string s;
	for (const auto& [mu, p] : g.Xmu)
		s += "  X[" + g.chart->name(g.chart->base_index(mu)) + "] = " + p.str() + "\n";
	for (const auto& [i, p] : g.Xi)
		s += "  X[" + g.chart->name(g.chart->position_index(i)) + "] = " + p.str() + "\n";
	for (const auto& [mu, p] : g.f0)
		s += "  f0[" + std::to_string(mu) + "] = " + p.str() + "\n";
	if (s.empty())
		s = "  (zero)\n";
	return s;
}

inline std::string generators_text(const PolyHamiltonianGenerators& g) {
	std::string s;
	for (const auto& [i, p] : g.Xi)
		s += "  X[" + g.chart->name(g.chart->position_index(i)) + "] = " + p.str() + "\n";
	for (const auto& [a, p] : g.f0)
		s += "  f0[" + std::to_string(a) + "] = " + p.str() + "\n";
	if (s.empty())
		s = "  (zero)\n";
	return s;
}

inline std::string verdict_text(const ClassificationVerdict& v) {
	std::string s = std::string("status: ") + status_name(v.status) + "\n";
	if (v.generators)
		s += "generators:\n" + generators_text(*v.generators);
	if (v.hamiltonian_form)
		s += "hamiltonian form: " + v.hamiltonian_form->str() + "\n";
	if (v.witness)
		s += "witness: " + witness_str(v.chart, *v.witness) + "\n";
	return s;
}

inline std::string verdict_text(const PolyClassificationVerdict& v) {
	std::string s = std::string("status: ") + status_name(v.status) + "\n";
	if (v.generators)
		s += "generators:\n" + generators_text(*v.generators);
	if (v.hamiltonian_section)
		s += "hamiltonian section:\n" + v.hamiltonian_section->str() + "\n";
	if (v.witness)
		s += "witness: " + witness_str(v.chart, *v.witness) + "\n";
	return s;
}

struct CliOptions {
	std::string chart_path, field_path, form_path, data_path, out_path;
	std::string format = "text";
	std::string suite = "all";
	std::string object;
	std::uint64_t trials = 100;
	std::uint64_t seed = 0;
	int max_degree = 3;
};

inline int cmd_classify(const CliOptions& opt, std::ostream& out) {
	ChartPtr chart = load_chart(opt.chart_path);
	VectorField X = load_vector_field(opt.field_path, chart);
	std::string doc, text;
	if (chart->kind() == Chart::Kind::extended) {
		ClassificationVerdict v = classify(X);
		doc = serialize(v);
		text = verdict_text(v);
	} else {
		PolyClassificationVerdict v = classify_vertical(X);
		doc = serialize(v);
		text = verdict_text(v);
	}
	if (!opt.out_path.empty())
		write_file(opt.out_path, doc);
	out << (opt.format == "json" ? doc : text);
	return 0;
}

inline int cmd_construct(const CliOptions& opt, std::ostream& out) {
	ChartPtr chart = load_chart(opt.chart_path);
	Document d = load_document(opt.data_path);
	std::string field_doc, form_doc, text;
	if (chart->kind() == Chart::Kind::extended) {
		auto* g = std::get_if<HamiltonianGenerators>(&d.payload);
		if (!g)
			throw InputError("generators document does not match the chart kind");
		require_same_chart(g->chart, chart);
		VectorField X = construct_hamiltonian_vf(*g);
		if (!exterior_derivative(interior_product(X, canonical_omega(chart))).is_zero())
			throw InternalError("constructed field fails d(i_X omega) = 0");
		DifferentialForm f = hamiltonian_form_of(X, *g);
		field_doc = serialize(X);
		form_doc = serialize(f);
		text = "field: " + X.str() + "\nhamiltonian form: " + f.str() + "\n";
	} else {
		auto* g = std::get_if<PolyHamiltonianGenerators>(&d.payload);
		if (!g)
			throw InputError("generators document does not match the chart kind");
		require_same_chart(g->chart, chart);
		VectorField X = construct_polyhamiltonian_vf(*g);
		if (!vertical_derivative(interior_product(X, canonical_omega_hat(chart))).is_zero())
			throw InternalError("constructed field fails d_V(i_X omega-hat) = 0");
		VectorValuedForm f = hamiltonian_section_of(X, *g);
		field_doc = serialize(X);
		form_doc = serialize(f);
		text = "field: " + X.str() + "\nhamiltonian section:\n" + f.str() + "\n";
	}
	if (!opt.out_path.empty())
		write_file(opt.out_path, field_doc);
	if (!opt.form_path.empty())
		write_file(opt.form_path, form_doc);
	out << (opt.format == "json" ? field_doc : text);
	return 0;
}

inline int cmd_solve(const CliOptions& opt, std::ostream& out) {
	ChartPtr chart = load_chart(opt.chart_path);
	Document d = load_document(opt.form_path);
	VectorField X(chart);
	if (chart->kind() == Chart::Kind::extended) {
		const DifferentialForm& f = expect_form(d);
		require_same_chart(f.chart(), chart);
		if (f.degree() != chart->base_count() - 1)
			throw InputError("expected an (n-1)-form on the extended chart");
		X = solve_inverse(exterior_derivative(f));
	} else {
		const VectorValuedForm& f = expect_vvform(d);
		require_same_chart(f.chart(), chart);
		if (f.degree() != 0)
			throw InputError("expected a degree-0 section on the ordinary chart");
		X = solve_inverse_poly(vertical_derivative(f));
	}
	std::string doc = serialize(X);
	if (!opt.out_path.empty())
		write_file(opt.out_path, doc);
	out << (opt.format == "json" ? doc : "field: " + X.str() + "\n");
	return 0;
}

inline int cmd_verify(const CliOptions& opt, std::ostream& out) {
	TrialReport r = run_suite(opt.suite, opt.trials, opt.seed, opt.max_degree);
	out << (opt.format == "json" ? r.to_json().dump(2) + "\n" : r.str());
	return r.ok() ? 0 : 1;
}

inline int cmd_show(const CliOptions& opt, std::ostream& out) {
	ChartPtr chart = load_chart(opt.chart_path);
	std::string doc, text;
	if (opt.object == "omega") {
		DifferentialForm f = canonical_omega(chart);
		doc = serialize(f);
		text = f.str();
	} else if (opt.object == "theta") {
		DifferentialForm f = canonical_theta(chart);
		doc = serialize(f);
		text = f.str();
	} else if (opt.object == "omega_hat") {
		VectorValuedForm f = canonical_omega_hat(chart);
		doc = serialize(f);
		text = f.str();
	} else if (opt.object == "theta_hat") {
		VectorValuedForm f = canonical_theta_hat(chart);
		doc = serialize(f);
		text = f.str();
	} else {
		throw InputError("unknown object '" + opt.object + "'");
	}
	if (!opt.out_path.empty())
		write_file(opt.out_path, doc);
	out << (opt.format == "json" ? doc : text + "\n");
	return 0;
}

} // namespace detail

/// Run the tool on an argument list (without the program name). Returns the
/// process exit code and writes to the given streams only.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
	CLI::App app{"exact hamiltonian vector fields on Darboux coordinate charts"};
	app.name("darboux");
	app.require_subcommand(1);
	detail::CliOptions opt;

	auto add_format = [&opt](CLI::App* cmd) {
		cmd->add_option("--format", opt.format, "output format (text|json)")
		    ->check(CLI::IsMember({"text", "json"}));
	};

	CLI::App* classify = app.add_subcommand("classify", "decide whether a field is hamiltonian");
	classify->add_option("--chart", opt.chart_path, "chart document")->required();
	classify->add_option("--field", opt.field_path, "vector field document")->required();
	classify->add_option("--out", opt.out_path, "write the verdict document to this path");
	add_format(classify);

	CLI::App* construct =
	    app.add_subcommand("construct", "build the hamiltonian field from generator data");
	construct->add_option("--chart", opt.chart_path, "chart document")->required();
	construct->add_option("--data", opt.data_path, "generators document")->required();
	construct->add_option("--out", opt.out_path, "write the vector field document to this path");
	construct->add_option("--form", opt.form_path,
	                      "write the hamiltonian form/section document to this path");
	add_format(construct);

	CLI::App* solve =
	    app.add_subcommand("solve", "solve i_X omega = d f (or the vertical analogue) for X");
	solve->add_option("--chart", opt.chart_path, "chart document")->required();
	solve->add_option("--form", opt.form_path,
	                  "hamiltonian form document (extended) or section document (ordinary)")
	    ->required();
	solve->add_option("--out", opt.out_path, "write the vector field document to this path");
	add_format(solve);

	CLI::App* verify = app.add_subcommand("verify", "run the randomized identity suites");
	verify->add_option("--suite", opt.suite, "kernel | multisymplectic | polysymplectic | all")
	    ->check(CLI::IsMember({"kernel", "multisymplectic", "polysymplectic", "all"}));
	verify->add_option("--trials", opt.trials, "trials per check (default 100)");
	verify->add_option("--seed", opt.seed, "root seed (default 0)");
	verify->add_option("--max-degree", opt.max_degree, "polynomial degree bound (default 3)")
	    ->check(CLI::Range(0, 6));
	add_format(verify);

	CLI::App* show = app.add_subcommand("show", "print a canonical structure form");
	show->add_option("object", opt.object, "omega | theta | omega_hat | theta_hat")
	    ->required()
	    ->check(CLI::IsMember({"omega", "theta", "omega_hat", "theta_hat"}));
	show->add_option("--chart", opt.chart_path, "chart document")->required();
	show->add_option("--out", opt.out_path, "write the form document to this path");
	add_format(show);

	std::reverse(args.begin(), args.end());
	try {
		app.parse(args);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e, out, err);
		return code == 0 ? 0 : 2;
	}

	try {
		if (app.got_subcommand(classify))
			return detail::cmd_classify(opt, out);
		if (app.got_subcommand(construct))
			return detail::cmd_construct(opt, out);
		if (app.got_subcommand(solve))
			return detail::cmd_solve(opt, out);
		if (app.got_subcommand(verify))
			return detail::cmd_verify(opt, out);
		if (app.got_subcommand(show))
			return detail::cmd_show(opt, out);
	} catch (const InternalError& e) {
		err << "internal error: " << e.what() << "\n";
		return 3;
	} catch (const NotInImageError& e) {
		err << "error: " << e.what() << "\n";
		return 1;
	} catch (const Error& e) {
		err << "error: " << e.what() << "\n";
		return 2;
	}
	return 2;
}

} // namespace darboux
