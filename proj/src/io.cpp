#include "ndstar/io.hpp"

#include <fstream>
#include <map>

namespace ndstar {

json readJsonFile(const std::filesystem::path& path) {
	std::ifstream in(path);
	if (!in)
		throw InputError("cannot open " + path.string());
	try {
		return json::parse(in);
	} catch (const json::parse_error& e) {
		throw InputError(path.string() + ": " + e.what());
	}
}

namespace {

template <class T>
T field(const json& j, const char* key, const std::string& where) {
	if (!j.contains(key))
		throw InputError(where + ": missing field '" + key + "'");
	try {
		return j.at(key).get<T>();
	} catch (const json::exception& e) {
		throw InputError(where + ": field '" + key + "': " + e.what());
	}
}

template <class T>
T fieldOr(const json& j, const char* key, T fallback, const std::string& where) {
	return j.contains(key) ? field<T>(j, key, where) : fallback;
}

Formula formulaField(const json& j, const char* key, const std::string& where) {
	auto text = field<std::string>(j, key, where);
	try {
		return parse(text);
	} catch (const ParseError& e) {
		throw InputError(where + ": cannot parse '" + text + "': " + e.what());
	}
}

} // namespace

LogicSpec specFromJson(const json& j) {
	LogicSpec spec;
	spec.name = fieldOr<std::string>(j, "name", "logic", "spec");
	spec.includesImplication = fieldOr<bool>(j, "implication", true, "spec");
	for (const auto& o : fieldOr<json>(j, "operators", json::array(), "spec")) {
		OperatorDecl d{field<std::string>(o, "name", "operator"), field<std::size_t>(o, "arity", "operator"), std::nullopt};
		if (o.contains("table"))
			d.table = field<std::vector<int>>(o, "table", "operator " + d.name);
		spec.operators.push_back(std::move(d));
	}
	std::map<std::string, int> perOp;
	const json intro = fieldOr<json>(j, "intro", json::array(), "spec");
	for (const auto& r : intro)
		++perOp[field<std::string>(r, "op", "intro rule")];
	std::map<std::string, int> seen;
	for (const auto& r : intro) {
		IntroRule rule;
		rule.op = field<std::string>(r, "op", "intro rule");
		int idx = ++seen[rule.op];
		rule.name = fieldOr<std::string>(r, "name", rule.op + "_i" + (perOp[rule.op] > 1 ? std::to_string(idx) : ""),
		                                 "intro rule");
		for (const auto& g : field<json>(r, "groups", "intro rule " + rule.name))
			rule.groups.push_back({field<std::size_t>(g, "premise", rule.name),
			                       fieldOr<std::vector<std::size_t>>(g, "discharges", {}, rule.name)});
		rule.sides = fieldOr<std::vector<std::size_t>>(r, "side", {}, rule.name);
		spec.introRules.push_back(std::move(rule));
	}
	for (const auto& e : fieldOr<json>(j, "elim", json::array(), "spec")) {
		ElimRule rule;
		rule.op = field<std::string>(e, "op", "elim rule");
		rule.simpleMinors = fieldOr<std::vector<std::size_t>>(e, "simpleMinors", {}, rule.name());
		rule.branches = fieldOr<std::vector<std::vector<std::size_t>>>(e, "branches", {}, rule.name());
		rule.derived = fieldOr<bool>(e, "derived", false, rule.name());
		spec.elimRules.push_back(std::move(rule));
	}
	return completeElims(std::move(spec));
}

json specToJson(const LogicSpec& spec) {
	json j;
	j["name"] = spec.name;
	j["implication"] = spec.includesImplication;
	j["operators"] = json::array();
	for (const auto& o : spec.operators) {
		json oj{{"name", o.name}, {"arity", o.arity}};
		if (o.table)
			oj["table"] = *o.table;
		j["operators"].push_back(oj);
	}
	j["intro"] = json::array();
	for (const auto& r : spec.introRules) {
		json groups = json::array();
		for (const auto& g : r.groups)
			groups.push_back({{"premise", g.premise}, {"discharges", g.discharges}});
		j["intro"].push_back({{"name", r.name}, {"op", r.op}, {"groups", groups}, {"side", r.sides}});
	}
	j["elim"] = json::array();
	for (const auto& e : spec.elimRules)
		j["elim"].push_back({{"op", e.op}, {"simpleMinors", e.simpleMinors}, {"branches", e.branches}, {"derived", e.derived}});
	return j;
}

LogicSpec loadSpec(const std::filesystem::path& path) {
	try {
		return specFromJson(readJsonFile(path));
	} catch (const InputError& e) {
		throw InputError(path.string() + ": " + e.what());
	}
}

MVLogic mvFromJson(const json& j) {
	MVLogic L;
	L.name = fieldOr<std::string>(j, "name", "mv-logic", "mv logic");
	L.k = field<int>(j, "k", "mv logic");
	L.values = fieldOr<std::vector<std::string>>(j, "values", {}, "mv logic");
	auto value = [&](const json& v, const std::string& where) {
		if (v.is_number_integer())
			return v.get<int>();
		if (v.is_string())
			if (auto x = L.valueOf(v.get<std::string>()))
				return *x;
		throw InputError(where + ": unknown truth value " + v.dump());
	};
	for (const auto& d : field<json>(j, "designated", "mv logic"))
		L.designated.push_back(value(d, "designated"));
	for (const auto& c : field<json>(j, "connectives", "mv logic")) {
		Connective con{field<std::string>(c, "name", "connective"), field<std::size_t>(c, "arity", "connective"), {}};
		for (const auto& v : field<json>(c, "table", con.name))
			con.table.push_back(value(v, "connective " + con.name));
		L.connectives.push_back(std::move(con));
	}
	for (const auto& s : fieldOr<std::vector<std::string>>(j, "separating", {}, "mv logic")) {
		try {
			L.separating.push_back(parse(s));
		} catch (const ParseError& e) {
			throw InputError("separating formula '" + s + "': " + e.what());
		}
	}
	return L;
}

json mvToJson(const MVLogic& L) {
	json j{{"name", L.name}, {"k", L.k}, {"values", L.values}, {"designated", L.designated}};
	j["connectives"] = json::array();
	for (const auto& c : L.connectives)
		j["connectives"].push_back({{"name", c.name}, {"arity", c.arity}, {"table", c.table}});
	j["separating"] = json::array();
	for (const auto& s : L.separating)
		j["separating"].push_back(print(s));
	return j;
}

MVLogic loadMV(const std::filesystem::path& path) {
	try {
		return mvFromJson(readJsonFile(path));
	} catch (const InputError& e) {
		throw InputError(path.string() + ": " + e.what());
	}
}

Derivation derivationFromJson(const json& j) {
	auto rule = field<std::string>(j, "rule", "derivation node");
	std::optional<int> label;
	if (j.contains("label"))
		label = field<int>(j, "label", "derivation node");
	auto children = [&](const char* key) {
		std::vector<Derivation> out;
		for (const auto& c : fieldOr<json>(j, key, json::array(), rule))
			out.push_back(derivationFromJson(c));
		return out;
	};
	if (rule == "hyp")
		return Derivation::hypothesis(formulaField(j, "formula", "hyp"), label);
	if (rule == "intro")
		return Derivation::intro(field<std::string>(j, "name", "intro"), formulaField(j, "formula", "intro"),
		                         children("premises"), label);
	if (rule == "elim")
		return Derivation::elim(field<std::string>(j, "op", "elim"), formulaField(j, "formula", "elim"),
		                        derivationFromJson(field<json>(j, "major", "elim")), children("minors"),
		                        children("branches"), label);
	if (rule == "imp_intro")
		return Derivation::impIntro(formulaField(j, "formula", "imp_intro"),
		                            derivationFromJson(field<json>(j, "body", "imp_intro")), label);
	if (rule == "imp_elim")
		return Derivation::impElim(derivationFromJson(field<json>(j, "major", "imp_elim")),
		                           derivationFromJson(field<json>(j, "minor", "imp_elim")));
	throw InputError("unknown derivation rule '" + rule + "'");
}

json derivationToJson(const Derivation& d) {
	json j;
	switch (d.kind()) {
	case RuleKind::Hypothesis: j["rule"] = "hyp"; break;
	case RuleKind::Intro:
		j["rule"] = "intro";
		j["name"] = d.rule();
		j["premises"] = json::array();
		for (const auto& p : d.premises())
			j["premises"].push_back(derivationToJson(p));
		break;
	case RuleKind::Elim:
		j["rule"] = "elim";
		j["op"] = d.rule();
		j["major"] = derivationToJson(d.major());
		j["minors"] = json::array();
		for (const auto& m : d.minors())
			j["minors"].push_back(derivationToJson(m));
		j["branches"] = json::array();
		for (const auto& b : d.branches())
			j["branches"].push_back(derivationToJson(b));
		break;
	case RuleKind::ImpIntro:
		j["rule"] = "imp_intro";
		j["body"] = derivationToJson(d.premises()[0]);
		break;
	case RuleKind::ImpElim:
		j["rule"] = "imp_elim";
		j["major"] = derivationToJson(d.premises()[0]);
		j["minor"] = derivationToJson(d.premises()[1]);
		break;
	}
	j["formula"] = print(d.conclusion());
	if (d.label())
		j["label"] = *d.label();
	return j;
}

DerivationFile derivationFileFromJson(const json& j) {
	if (!j.contains("derivation")) {
		Derivation d = derivationFromJson(j);
		return {d, openHypotheses(d), d.conclusion(), false};
	}
	Derivation d = derivationFromJson(j.at("derivation"));
	DerivationFile f{d, openHypotheses(d), d.conclusion(), false};
	if (j.contains("hypotheses")) {
		f.hypotheses.clear();
		f.hasHypotheses = true;
		for (const auto& h : field<std::vector<std::string>>(j, "hypotheses", "derivation file")) {
			try {
				f.hypotheses.push_back(parse(h));
			} catch (const ParseError& e) {
				throw InputError("hypothesis '" + h + "': " + e.what());
			}
		}
	}
	if (j.contains("goal"))
		f.goal = formulaField(j, "goal", "derivation file");
	return f;
}

DerivationFile loadDerivation(const std::filesystem::path& path) {
	try {
		return derivationFileFromJson(readJsonFile(path));
	} catch (const InputError& e) {
		throw InputError(path.string() + ": " + e.what());
	}
}

} // namespace ndstar
