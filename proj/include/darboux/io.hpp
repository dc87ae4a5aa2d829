#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "chart.hpp"
#include "errors.hpp"
#include "forms.hpp"
#include "multisymplectic.hpp"
#include "polynomial.hpp"
#include "polysymplectic.hpp"
#include "rational.hpp"

// JSON document layer. Every object travels inside an envelope
//   { "schema_version": "1", "kind": ..., "payload": ... }
// with kind in {chart, vector_field, form, vvform, generators, verdict}.
// nlohmann::json stores objects in a sorted std::map, so serialize() is
// canonical and parse(serialize(v)) == v byte-for-byte after one roundtrip.

namespace darboux {

using Json = nlohmann::json;

/// A parsed document: the envelope kind plus one of the typed payloads.
struct Document {
	std::string kind;
	std::variant<ChartPtr, VectorField, DifferentialForm, VectorValuedForm,
	             HamiltonianGenerators, PolyHamiltonianGenerators, ClassificationVerdict,
	             PolyClassificationVerdict>
	    payload;
};

namespace detail {

inline const Json& get_field(const Json& j, const char* key) {
	auto it = j.find(key);
	if (it == j.end())
		throw ParseError(std::string("missing field '") + key + "'");
	return *it;
}

inline int get_int(const Json& j, const char* key) {
	const Json& v = get_field(j, key);
	if (!v.is_number_integer())
		throw ParseError(std::string("field '") + key + "' must be an integer");
	return v.get<int>();
}

inline std::string get_string(const Json& j, const char* key) {
	const Json& v = get_field(j, key);
	if (!v.is_string())
		throw ParseError(std::string("field '") + key + "' must be a string");
	return v.get<std::string>();
}

inline const Json& get_object(const Json& j, const char* key) {
	const Json& v = get_field(j, key);
	if (!v.is_object())
		throw ParseError(std::string("field '") + key + "' must be an object");
	return v;
}

inline const Json& get_array(const Json& j, const char* key) {
	const Json& v = get_field(j, key);
	if (!v.is_array())
		throw ParseError(std::string("field '") + key + "' must be an array");
	return v;
}

/// Monomial keys: "1" for the constant monomial, otherwise space-separated
/// "name" / "name^k" factors ("q1 x1^2"). Parsing accepts factors in any
/// order and merges repeats; serialization emits the sorted canonical key.
inline Monomial parse_monomial_key(const std::string& key) {
	Monomial m;
	if (key == "1")
		return m;
	if (key.empty())
		throw ParseError("empty monomial key");
	std::size_t pos = 0;
	while (pos <= key.size()) {
		std::size_t space = key.find(' ', pos);
		std::string tok =
		    key.substr(pos, space == std::string::npos ? std::string::npos : space - pos);
		pos = space == std::string::npos ? key.size() + 1 : space + 1;
		if (tok.empty())
			throw ParseError("malformed monomial '" + key + "'");
		std::size_t caret = tok.find('^');
		std::string name = tok.substr(0, caret);
		unsigned long exp = 1;
		if (caret != std::string::npos) {
			std::string digits = tok.substr(caret + 1);
			if (digits.empty() ||
			    !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
				throw ParseError("malformed exponent in monomial '" + key + "'");
			try {
				exp = std::stoul(digits);
			} catch (const std::out_of_range&) {
				throw ParseError("exponent overflow in monomial '" + key + "'");
			}
		}
		if (name.empty() || name == "1")
			throw ParseError("malformed monomial '" + key + "'");
		if (exp > 0)
			m[name] += static_cast<unsigned>(exp);
	}
	return m;
}

inline std::string monomial_key(const Monomial& m) {
	return m.empty() ? "1" : monomial_str(m);
}

inline Json encode_polynomial(const Polynomial& p) {
	Json j = Json::object();
	for (const auto& [m, c] : p.terms())
		j[monomial_key(m)] = rational_str(c);
	return j;
}

inline Polynomial decode_polynomial(const Json& j) {
	if (!j.is_object())
		throw ParseError("polynomial must be an object of monomial -> rational entries");
	Polynomial p;
	for (const auto& [key, value] : j.items()) {
		if (!value.is_string())
			throw ParseError("coefficient of '" + key + "' must be a rational string");
		p += Polynomial::term(parse_monomial_key(key), parse_rational(value.get<std::string>()));
	}
	return p;
}

inline Json encode_chart(const ChartPtr& chart) {
	Json j;
	j["kind"] = chart->kind() == Chart::Kind::extended ? "extended" : "ordinary";
	j["n"] = chart->base_count();
	j["N"] = chart->position_count();
	if (chart->kind() == Chart::Kind::ordinary)
		j["nhat"] = chart->label_count();
	return j;
}

inline ChartPtr decode_chart(const Json& j) {
	if (!j.is_object())
		throw ParseError("chart must be an object");
	std::string kind = get_string(j, "kind");
	int n = get_int(j, "n"), N = get_int(j, "N");
	if (kind == "extended")
		return build_extended_chart(n, N);
	if (kind == "ordinary")
		return build_ordinary_chart(n, N, j.contains("nhat") ? get_int(j, "nhat") : 0);
	throw ParseError("unknown chart kind '" + kind + "'");
}

inline Json encode_vector_field_body(const VectorField& X) {
	Json comps = Json::object();
	for (const auto& [idx, poly] : X.components())
		comps[X.chart()->name(idx)] = encode_polynomial(poly);
	return comps;
}

inline Json encode_form_body(const DifferentialForm& f) {
	Json j;
	j["degree"] = f.degree();
	Json terms = Json::array();
	for (const auto& [idx, poly] : f.terms()) {
		Json t;
		Json names = Json::array();
		for (int i : idx)
			names.push_back(f.chart()->name(i));
		t["index"] = std::move(names);
		t["coefficient"] = encode_polynomial(poly);
		terms.push_back(std::move(t));
	}
	j["terms"] = std::move(terms);
	return j;
}

inline DifferentialForm decode_form_body(const Json& j, const ChartPtr& chart) {
	DifferentialForm f(chart, get_int(j, "degree"));
	for (const Json& t : get_array(j, "terms")) {
		if (!t.is_object())
			throw ParseError("form term must be an object");
		const Json& names = get_array(t, "index");
		MultiIndex idx;
		for (const Json& name : names) {
			if (!name.is_string())
				throw ParseError("form index entries must be coordinate names");
			idx.push_back(chart->index_of(name.get<std::string>()));
		}
		MultiIndex sorted = idx;
		std::sort(sorted.begin(), sorted.end());
		auto dup = std::adjacent_find(sorted.begin(), sorted.end());
		if (dup != sorted.end())
			throw ParseError("repeated index entry '" + chart->name(*dup) +
			                 "' is not a strictly increasing multi-index");
		f.accumulate_unsorted(idx, decode_polynomial(get_object(t, "coefficient")));
	}
	return f;
}

inline Json encode_vvform_body(const VectorValuedForm& v) {
	Json j;
	j["degree"] = v.degree();
	j["labels"] = v.labels();
	Json comps = Json::array();
	for (int a = 1; a <= v.labels(); ++a)
		comps.push_back(encode_form_body(v.component(a))["terms"]);
	j["components"] = std::move(comps);
	return j;
}

inline VectorValuedForm decode_vvform_body(const Json& j, const ChartPtr& chart) {
	int degree = get_int(j, "degree"), labels = get_int(j, "labels");
	const Json& comps = get_array(j, "components");
	if (static_cast<int>(comps.size()) != labels)
		throw ParseError("'components' must hold one entry per label");
	if (labels < 1)
		throw ParseError("'labels' must be positive");
	VectorValuedForm v(chart, degree, labels);
	for (int a = 1; a <= labels; ++a) {
		Json body;
		body["degree"] = degree;
		body["terms"] = comps[a - 1];
		v.set_component(a, decode_form_body(body, chart));
	}
	return v;
}

/// Generators travel as {"X": {coordinate -> polynomial}, "f0": {index ->
/// polynomial}} next to their chart. X keys are base or position coordinate
/// names; f0 keys are 1-based μ (extended) or label (ordinary) indices.
inline Json encode_generators_body(const ChartPtr& chart, const std::map<int, Polynomial>& Xmu,
                                   const std::map<int, Polynomial>& Xi,
                                   const std::map<int, Polynomial>& f0) {
	Json X = Json::object();
	for (const auto& [mu, poly] : Xmu)
		if (!poly.is_zero())
			X[chart->name(chart->base_index(mu))] = encode_polynomial(poly);
	for (const auto& [i, poly] : Xi)
		if (!poly.is_zero())
			X[chart->name(chart->position_index(i))] = encode_polynomial(poly);
	Json f = Json::object();
	for (const auto& [k, poly] : f0)
		if (!poly.is_zero())
			f[std::to_string(k)] = encode_polynomial(poly);
	Json j;
	j["X"] = std::move(X);
	j["f0"] = std::move(f);
	return j;
}

inline int parse_index_key(const std::string& key, const char* what) {
	if (key.empty() ||
	    !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }))
		throw ParseError(std::string(what) + " key '" + key + "' must be a positive integer");
	try {
		return std::stoi(key);
	} catch (const std::out_of_range&) {
		throw ParseError(std::string(what) + " key '" + key + "' out of range");
	}
}

inline std::map<int, Polynomial> decode_f0_map(const Json& j) {
	std::map<int, Polynomial> f0;
	for (const auto& [key, value] : get_object(j, "f0").items()) {
		int k = parse_index_key(key, "f0");
		Polynomial p = decode_polynomial(value);
		if (!p.is_zero())
			f0[k] = std::move(p);
	}
	return f0;
}

inline HamiltonianGenerators decode_generators_body_extended(const Json& j,
                                                             const ChartPtr& chart) {
	HamiltonianGenerators g;
	g.chart = chart;
	const int n = chart->base_count();
	for (const auto& [name, value] : get_object(j, "X").items()) {
		int idx = chart->index_of(name);
		CoordinateRole role = chart->role(idx);
		if (role != CoordinateRole::base && role != CoordinateRole::position)
			throw InputError("generator component '" + name +
			                 "' must be a base or position coordinate");
		Polynomial p = decode_polynomial(value);
		if (p.is_zero())
			continue;
		if (role == CoordinateRole::base)
			g.Xmu[idx + 1] = std::move(p);
		else
			g.Xi[idx - n + 1] = std::move(p);
	}
	g.f0 = decode_f0_map(j);
	g.validate();
	return g;
}

inline PolyHamiltonianGenerators decode_generators_body_ordinary(const Json& j,
                                                                 const ChartPtr& chart) {
	PolyHamiltonianGenerators g;
	g.chart = chart;
	const int n = chart->base_count();
	for (const auto& [name, value] : get_object(j, "X").items()) {
		int idx = chart->index_of(name);
		if (chart->role(idx) != CoordinateRole::position)
			throw InputError("generator component '" + name + "' must be a position coordinate");
		Polynomial p = decode_polynomial(value);
		if (!p.is_zero())
			g.Xi[idx - n + 1] = std::move(p);
	}
	g.f0 = decode_f0_map(j);
	g.validate();
	return g;
}

inline Json encode_witness(const ChartPtr& chart, const TermWitness& w) {
	Json j;
	j["label"] = w.label;
	Json names = Json::array();
	for (int i : w.index)
		names.push_back(chart->name(i));
	j["index"] = std::move(names);
	j["monomial"] = monomial_key(w.powers);
	j["coefficient"] = rational_str(w.coeff);
	return j;
}

inline TermWitness decode_witness(const Json& j, const ChartPtr& chart) {
	TermWitness w;
	w.label = get_int(j, "label");
	for (const Json& name : get_array(j, "index")) {
		if (!name.is_string())
			throw ParseError("witness index entries must be coordinate names");
		w.index.push_back(chart->index_of(name.get<std::string>()));
	}
	w.powers = parse_monomial_key(get_string(j, "monomial"));
	w.coeff = parse_rational(get_string(j, "coefficient"));
	return w;
}

inline Json encode_verdict_body(const ClassificationVerdict& v) {
	Json j;
	j["space"] = "extended";
	j["chart"] = encode_chart(v.chart);
	j["status"] = status_name(v.status);
	j["generators"] = v.generators ? encode_generators_body(v.chart, v.generators->Xmu,
	                                                        v.generators->Xi, v.generators->f0)
	                               : Json();
	j["hamiltonian_form"] =
	    v.hamiltonian_form ? encode_form_body(*v.hamiltonian_form) : Json();
	j["witness"] = v.witness ? encode_witness(v.chart, *v.witness) : Json();
	return j;
}

inline Json encode_verdict_body(const PolyClassificationVerdict& v) {
	Json j;
	j["space"] = "ordinary";
	j["chart"] = encode_chart(v.chart);
	j["status"] = status_name(v.status);
	j["generators"] = v.generators ? encode_generators_body(v.chart, {}, v.generators->Xi,
	                                                        v.generators->f0)
	                               : Json();
	j["hamiltonian_section"] =
	    v.hamiltonian_section ? encode_vvform_body(*v.hamiltonian_section) : Json();
	j["witness"] = v.witness ? encode_witness(v.chart, *v.witness) : Json();
	return j;
}

inline HamiltonianStatus decode_status(const std::string& s) {
	if (s == "not_hamiltonian")
		return HamiltonianStatus::not_hamiltonian;
	if (s == "locally_hamiltonian")
		return HamiltonianStatus::locally_hamiltonian;
	if (s == "exact_hamiltonian")
		return HamiltonianStatus::exact_hamiltonian;
	throw ParseError("unknown status '" + s + "'");
}

inline ClassificationVerdict decode_verdict_body_extended(const Json& j, const ChartPtr& chart) {
	ClassificationVerdict v;
	v.chart = chart;
	v.status = decode_status(get_string(j, "status"));
	const Json& gens = get_field(j, "generators");
	if (!gens.is_null())
		v.generators = decode_generators_body_extended(gens, chart);
	const Json& form = get_field(j, "hamiltonian_form");
	if (!form.is_null())
		v.hamiltonian_form = decode_form_body(form, chart);
	const Json& witness = get_field(j, "witness");
	if (!witness.is_null())
		v.witness = decode_witness(witness, chart);
	return v;
}

inline PolyClassificationVerdict decode_verdict_body_ordinary(const Json& j,
                                                              const ChartPtr& chart) {
	PolyClassificationVerdict v;
	v.chart = chart;
	v.status = decode_status(get_string(j, "status"));
	const Json& gens = get_field(j, "generators");
	if (!gens.is_null())
		v.generators = decode_generators_body_ordinary(gens, chart);
	const Json& section = get_field(j, "hamiltonian_section");
	if (!section.is_null())
		v.hamiltonian_section = decode_vvform_body(section, chart);
	const Json& witness = get_field(j, "witness");
	if (!witness.is_null())
		v.witness = decode_witness(witness, chart);
	return v;
}

inline std::string dump_document(const char* kind, Json payload) {
	Json doc;
	doc["schema_version"] = "1";
	doc["kind"] = kind;
	doc["payload"] = std::move(payload);
	return doc.dump(2) + "\n";
}

} // namespace detail

inline std::string serialize(const ChartPtr& chart) {
	return detail::dump_document("chart", detail::encode_chart(chart));
}

inline std::string serialize(const VectorField& X) {
	Json j;
	j["chart"] = detail::encode_chart(X.chart());
	j["components"] = detail::encode_vector_field_body(X);
	return detail::dump_document("vector_field", std::move(j));
}

inline std::string serialize(const DifferentialForm& f) {
	Json j = detail::encode_form_body(f);
	j["chart"] = detail::encode_chart(f.chart());
	return detail::dump_document("form", std::move(j));
}

inline std::string serialize(const VectorValuedForm& v) {
	Json j = detail::encode_vvform_body(v);
	j["chart"] = detail::encode_chart(v.chart());
	return detail::dump_document("vvform", std::move(j));
}

inline std::string serialize(const HamiltonianGenerators& g) {
	Json j = detail::encode_generators_body(g.chart, g.Xmu, g.Xi, g.f0);
	j["chart"] = detail::encode_chart(g.chart);
	return detail::dump_document("generators", std::move(j));
}

inline std::string serialize(const PolyHamiltonianGenerators& g) {
	Json j = detail::encode_generators_body(g.chart, {}, g.Xi, g.f0);
	j["chart"] = detail::encode_chart(g.chart);
	return detail::dump_document("generators", std::move(j));
}

inline std::string serialize(const ClassificationVerdict& v) {
	return detail::dump_document("verdict", detail::encode_verdict_body(v));
}

inline std::string serialize(const PolyClassificationVerdict& v) {
	return detail::dump_document("verdict", detail::encode_verdict_body(v));
}

inline Document parse_document(const std::string& bytes) {
	Json doc;
	try {
		doc = Json::parse(bytes);
	} catch (const Json::exception& e) {
		throw ParseError(std::string("malformed JSON: ") + e.what());
	}
	if (!doc.is_object())
		throw ParseError("document must be a JSON object");
	std::string version = detail::get_string(doc, "schema_version");
	if (version != "1")
		throw ParseError("unsupported schema_version '" + version + "'");
	std::string kind = detail::get_string(doc, "kind");
	const Json& payload = detail::get_object(doc, "payload");

	Document out;
	out.kind = kind;
	if (kind == "chart") {
		out.payload = detail::decode_chart(payload);
	} else if (kind == "vector_field") {
		ChartPtr chart = detail::decode_chart(detail::get_object(payload, "chart"));
		VectorField X(chart);
		for (const auto& [name, value] : detail::get_object(payload, "components").items())
			X.set_component(name, detail::decode_polynomial(value));
		out.payload = std::move(X);
	} else if (kind == "form") {
		ChartPtr chart = detail::decode_chart(detail::get_object(payload, "chart"));
		out.payload = detail::decode_form_body(payload, chart);
	} else if (kind == "vvform") {
		ChartPtr chart = detail::decode_chart(detail::get_object(payload, "chart"));
		out.payload = detail::decode_vvform_body(payload, chart);
	} else if (kind == "generators") {
		ChartPtr chart = detail::decode_chart(detail::get_object(payload, "chart"));
		if (chart->kind() == Chart::Kind::extended)
			out.payload = detail::decode_generators_body_extended(payload, chart);
		else
			out.payload = detail::decode_generators_body_ordinary(payload, chart);
	} else if (kind == "verdict") {
		std::string space = detail::get_string(payload, "space");
		ChartPtr chart = detail::decode_chart(detail::get_object(payload, "chart"));
		if (space == "extended")
			out.payload = detail::decode_verdict_body_extended(payload, chart);
		else if (space == "ordinary")
			out.payload = detail::decode_verdict_body_ordinary(payload, chart);
		else
			throw ParseError("unknown verdict space '" + space + "'");
	} else {
		throw ParseError("unknown document kind '" + kind + "'");
	}
	return out;
}

template <class T>
inline const T& expect_payload(const Document& doc, const char* what) {
	if (const T* p = std::get_if<T>(&doc.payload))
		return *p;
	throw InputError(std::string("document is not a ") + what);
}

inline const ChartPtr& expect_chart(const Document& doc) {
	return expect_payload<ChartPtr>(doc, "chart");
}

inline const VectorField& expect_vector_field(const Document& doc) {
	return expect_payload<VectorField>(doc, "vector field");
}

inline const DifferentialForm& expect_form(const Document& doc) {
	return expect_payload<DifferentialForm>(doc, "form");
}

inline const VectorValuedForm& expect_vvform(const Document& doc) {
	return expect_payload<VectorValuedForm>(doc, "vector-valued form");
}

} // namespace darboux
