// ndstar: command-line front end.
// Exit status: 0 success, 1 logical failure, 2 usage or input error.
// The last line of standard output is a one-line JSON summary.

#include "ndstar/corpus.hpp"
#include "ndstar/io.hpp"
#include "ndstar/manyvalued.hpp"
#include "ndstar/mimp_prover.hpp"
#include "ndstar/translator.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace ndstar;

namespace {

struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct Options {
	std::string specFile, mvFile, formula, file, expectedFile, connective;
	std::string atoms = "p,q";
	std::size_t maxSize = 5;
	std::size_t depthBudget = 0;
	unsigned threads = 0;
	bool emitDerivation = false;
	std::string mutate, mutationMode = "drop";
	std::vector<std::string> sequents;
};

void summary(json j) { std::cout << j.dump() << std::endl; }

Formula parseArg(const std::string& text) {
	try {
		return parse(text);
	} catch (const ParseError& e) {
		throw InputError("cannot parse '" + text + "': " + e.what());
	}
}

LogicSpec requireSpec(const Options& o) {
	if (o.specFile.empty())
		throw UsageError("--spec is required");
	auto spec = loadSpec(o.specFile);
	auto problems = validateSpec(spec);
	if (!problems.empty())
		throw InputError(o.specFile + ": " + problems.front().rule + ": " + problems.front().message);
	return spec;
}

MVLogic requireMV(const Options& o) {
	if (o.mvFile.empty())
		throw UsageError("--mv is required");
	auto L = loadMV(o.mvFile);
	auto problems = validateMVLogic(L);
	if (!problems.empty())
		throw InputError(o.mvFile + ": " + problems.front());
	return L;
}

std::optional<Mutation> mutation(const Options& o) {
	if (o.mutate.empty())
		return std::nullopt;
	Mutation m{o.mutate, Mutation::Mode::Drop};
	if (o.mutationMode == "strengthen")
		m.mode = Mutation::Mode::Strengthen;
	else if (o.mutationMode != "drop")
		throw UsageError("--mutation-mode must be drop or strengthen");
	return m;
}

std::vector<std::string> splitAtoms(const std::string& list) {
	std::vector<std::string> out;
	std::stringstream in(list);
	for (std::string a; std::getline(in, a, ',');) {
		if (!isUserAtomName(a))
			throw UsageError("bad atom name '" + a + "'");
		out.push_back(a);
	}
	if (out.empty())
		throw UsageError("--atoms needs at least one atom");
	return out;
}

int cmdParse(const Options& o) {
	Formula f = parseArg(o.formula);
	std::cout << print(f) << "\n";
	auto subs = subformulas(f);
	for (const auto& s : subs)
		std::cout << "  " << print(s) << "\n";
	summary({{"command", "parse"}, {"formula", print(f)}, {"size", symbolLength(f)}, {"subformulas", subs.size()}});
	return 0;
}

int cmdTranslate(const Options& o) {
	auto spec = requireSpec(o);
	auto r = starTranslate(spec, parseArg(o.formula), mutation(o));
	for (const auto& a : r.axioms.axioms)
		std::cout << print(a.formula) << "\n";
	std::cout << print(r.image) << "\n";
	summary({{"command", "translate"},
	         {"axioms", r.axioms.size()},
	         {"m", r.size.m},
	         {"n", r.size.n},
	         {"K", r.size.k},
	         {"within_bound", r.size.withinBound()}});
	return r.size.withinBound() ? 0 : 1;
}

int cmdProve(const Options& o) {
	auto spec = requireSpec(o);
	auto r = starTranslate(spec, parseArg(o.formula), mutation(o));
	auto d = decide({{}, r.image}, {o.emitDerivation, 0});
	std::cout << (d.provable ? "provable" : "unprovable") << "\n";
	if (d.derivation)
		std::cout << derivationToJson(*d.derivation).dump() << "\n";
	summary({{"command", "prove"}, {"formula", print(r.source)}, {"provable", d.provable}, {"contexts", d.stats.contexts}});
	return d.provable ? 0 : 1;
}

int cmdProveMimp(const Options& o) {
	std::vector<std::string> lines = o.sequents;
	if (lines.empty())
		for (std::string line; std::getline(std::cin, line);)
			if (line.find_first_not_of(" \t\r") != std::string::npos)
				lines.push_back(line);
	std::size_t provable = 0, unprovable = 0, exceeded = 0;
	for (const auto& line : lines) {
		Sequent s = [&] {
			try {
				return parseSequent(line);
			} catch (const ParseError& e) {
				throw InputError("cannot parse sequent '" + line + "': " + e.what());
			} catch (const std::invalid_argument& e) {
				throw InputError(e.what());
			}
		}();
		if (o.depthBudget > 0) {
			auto v = naiveDecide(s, o.depthBudget);
			std::cout << toString(v) << "\n";
			provable += v == NaiveVerdict::Provable;
			unprovable += v == NaiveVerdict::Unprovable;
			exceeded += v == NaiveVerdict::BudgetExceeded;
			continue;
		}
		auto d = decide(s, {o.emitDerivation, 0});
		std::cout << (d.provable ? "provable" : "unprovable") << "\n";
		if (d.derivation)
			std::cout << derivationToJson(*d.derivation).dump() << "\n";
		(d.provable ? provable : unprovable)++;
	}
	summary({{"command", "prove-mimp"},
	         {"sequents", lines.size()},
	         {"provable", provable},
	         {"unprovable", unprovable},
	         {"budget_exceeded", exceeded}});
	if (exceeded)
		return 1;
	return unprovable ? 1 : 0;
}

DerivationFile loadChecked(const LogicSpec& spec, const std::string& path, bool& ok) {
	auto file = loadDerivation(path);
	if (!file.hasHypotheses)
		file.hypotheses = openHypotheses(file.derivation);
	auto report = checkDerivation(spec, file.derivation, file.hypotheses);
	ok = report.ok();
	if (!ok)
		std::cout << "derivation does not check:\n" << report.describe() << "\n";
	return file;
}

int cmdCheckSfp(const Options& o) {
	auto spec = requireSpec(o);
	bool ok = false;
	auto file = loadChecked(spec, o.file, ok);
	if (!ok) {
		summary({{"command", "check-sfp"}, {"checked", false}, {"sfp", false}});
		return 1;
	}
	auto r = satisfiesSFP(spec, file.derivation, file.goal, file.hypotheses);
	std::cout << (r.holds ? "sfp holds" : "sfp fails: " + r.reason) << "\n";
	if (r.witness)
		std::cout << "witness: " << describe(*r.witness) << "\n";
	json s{{"command", "check-sfp"}, {"checked", true}, {"sfp", r.holds}};
	if (r.witness) {
		json w = json::array();
		for (const auto& step : r.witness->steps)
			w.push_back(print(step.formula));
		s["witness"] = w;
	}
	summary(s);
	return r.holds ? 0 : 1;
}

int cmdTranslateDerivation(const Options& o) {
	auto spec = requireSpec(o);
	bool ok = false;
	auto file = loadChecked(spec, o.file, ok);
	if (!ok) {
		summary({{"command", "translate-derivation"}, {"checked", false}});
		return 1;
	}
	std::optional<Derivation> translated;
	try {
		translated = translateDerivation(spec, file.derivation);
	} catch (const NotSfp& e) {
		std::cout << e.what() << "\n";
		summary({{"command", "translate-derivation"}, {"checked", true}, {"sfp", false}});
		return 1;
	}
	const Derivation& t = *translated;
	auto allowed = lemma1Set(spec, file.derivation.conclusion(), openHypotheses(file.derivation));
	auto report = checkMimpDerivation(t, allowed);
	std::cout << derivationToJson(t).dump(1) << "\n";
	if (!report.ok())
		std::cout << report.describe() << "\n";
	summary({{"command", "translate-derivation"},
	         {"conclusion", print(t.conclusion())},
	         {"nodes", t.size()},
	         {"open_hypotheses", openHypotheses(t).size()},
	         {"mimp_checked", report.ok()}});
	return report.ok() ? 0 : 1;
}

int cmdSpecValidate(const Options& o) {
	auto spec = loadSpec(o.file);
	auto problems = validateSpec(spec);
	for (const auto& p : problems)
		std::cout << p.rule << ": " << p.message << "\n";
	if (problems.empty()) {
		for (const auto& e : spec.elimRules) {
			std::cout << e.name() << (e.derived ? " (derived)" : "") << ": simple minors [";
			for (std::size_t i = 0; i < e.simpleMinors.size(); ++i)
				std::cout << (i ? "," : "") << e.simpleMinors[i];
			std::cout << "], " << e.branches.size() << " branches\n";
		}
		std::cout << "K = " << sizeConstant(spec) << "\n";
	}
	summary({{"command", "spec validate"}, {"spec", spec.name}, {"valid", problems.empty()}, {"violations", problems.size()}});
	return problems.empty() ? 0 : 1;
}

int cmdMvProve(const Options& o) {
	auto L = requireMV(o);
	Formula f = parseArg(o.formula);
	bool valid = mvDecide(L, f, mutation(o));
	std::cout << (valid ? "valid" : "invalid") << "\n";
	summary({{"command", "mv prove"}, {"formula", print(f)}, {"valid", valid}});
	return valid ? 0 : 1;
}

int cmdMvCheck(const Options& o) {
	auto L = requireMV(o);
	Formula f = parseArg(o.formula);
	bool viaProver = mvDecide(L, f, mutation(o));
	bool oracle = bruteForceValid(L, f);
	std::cout << "prover: " << (viaProver ? "valid" : "invalid") << "\n"
	          << "truth tables: " << (oracle ? "valid" : "invalid") << "\n";
	summary({{"command", "mv check"}, {"formula", print(f)}, {"agree", viaProver == oracle}, {"valid", oracle}});
	return viaProver == oracle ? 0 : 1;
}

int cmdMvBitprints(const Options& o) {
	auto L = requireMV(o);
	auto prints = computeBitprints(L);
	json j = json::object();
	for (int v = 0; v < L.k; ++v) {
		std::cout << L.label(v) << " " << toString(prints[v]) << "\n";
		j[L.label(v)] = toString(prints[v]);
	}
	summary({{"command", "mv show-bitprints"}, {"bitprints", j}});
	return 0;
}

int cmdMvClauses(const Options& o) {
	auto L = requireMV(o);
	std::vector<std::string> names;
	if (!o.connective.empty())
		names.push_back(o.connective == "value" ? "" : o.connective);
	else {
		names.push_back("");
		for (const auto& c : L.connectives)
			names.push_back(c.name);
	}
	std::size_t total = 0;
	for (const auto& n : names) {
		auto rel = localRelation(L, n);
		std::vector<Formula> subjects{Formula::atom(n.empty() ? "x" : "r")};
		for (std::size_t i = 0; i < rel.arity; ++i)
			subjects.push_back(Formula::atom("y" + std::to_string(i + 1)));
		std::vector<Formula> lits;
		std::vector<std::string> labels;
		for (const auto& s : subjects)
			for (std::size_t i = 0; i < L.bitWidth(); ++i) {
				lits.push_back(i == 0 ? s : Formula::atom("p[phi" + std::to_string(i) + "," + s.name() + "]"));
				labels.push_back(i == 0 ? s.name() : "phi" + std::to_string(i) + "(" + s.name() + ")");
			}
		auto clauses = relationClauses(L, rel);
		std::cout << (n.empty() ? "value" : n) << ": " << clauses.size() << " clauses\n";
		for (const auto& c : clauses)
			std::cout << "  " << describeClause(c, labels) << "    " << print(renderClause(c, lits, Formula::atom("chi")))
			          << "\n";
		total += clauses.size();
	}
	summary({{"command", "mv show-clauses"}, {"relations", names.size()}, {"clauses", total}});
	return 0;
}

std::vector<ExpectedVerdict> loadExpected(const std::string& path) {
	std::vector<ExpectedVerdict> out;
	json j = readJsonFile(path);
	if (!j.is_array())
		throw InputError(path + ": expected a list of {formula, valid}");
	for (const auto& e : j) {
		if (!e.contains("formula") || !e.contains("valid"))
			throw InputError(path + ": entries need formula and valid");
		out.push_back({parseArg(e.at("formula").get<std::string>()), e.at("valid").get<bool>()});
	}
	return out;
}

int cmdEquiv(const Options& o) {
	CorpusOptions c;
	c.atoms = splitAtoms(o.atoms);
	c.maxSize = o.maxSize;
	c.mutation = mutation(o);
	c.threads = o.threads;
	EquivReport r;
	if (!o.mvFile.empty())
		r = runEquivCorpus(requireMV(o), c);
	else {
		auto spec = requireSpec(o);
		if (!o.expectedFile.empty())
			r = runEquivList(spec, loadExpected(o.expectedFile), c);
		else if (hasTableOracle(spec))
			r = runEquivCorpus(spec, c);
		else
			throw UsageError("logic " + spec.name + " has no truth-table oracle; pass --expected FILE");
	}
	std::cout << r.descriptor << "\n";
	json exhibits = json::array();
	for (const auto& d : r.disagreements) {
		std::cout << "disagreement: " << print(d.formula) << " oracle=" << (d.oracle ? "valid" : "invalid")
		          << " prover=" << (d.prover ? "valid" : "invalid") << "\n";
		exhibits.push_back({{"formula", print(d.formula)}, {"oracle", d.oracle}, {"prover", d.prover}});
	}
	summary({{"command", "equiv-test"},
	         {"corpus", r.descriptor},
	         {"total", r.total},
	         {"agreements", r.agreements},
	         {"disagreements", r.disagreements.size()},
	         {"exhibits", exhibits}});
	return r.ok() ? 0 : 1;
}

void addMutationFlags(CLI::App* sub, Options& o) {
	sub->add_option("--mutate", o.mutate, "Corrupt one axiom or clause family (fault injection)");
	sub->add_option("--mutation-mode", o.mutationMode, "drop or strengthen")->check(CLI::IsMember({"drop", "strengthen"}));
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Reduce natural-deduction logics to implicational minimal logic"};
	app.require_subcommand(1);
	Options o;
	std::function<int()> run;

	auto* parseCmd = app.add_subcommand("parse", "Parse and pretty-print a formula");
	parseCmd->add_option("formula", o.formula)->required();
	parseCmd->callback([&] { run = [&] { return cmdParse(o); }; });

	auto* translate = app.add_subcommand("translate", "Print the axioms and the star image of a formula");
	translate->add_option("--spec", o.specFile)->required();
	translate->add_option("formula", o.formula)->required();
	addMutationFlags(translate, o);
	translate->callback([&] { run = [&] { return cmdTranslate(o); }; });

	auto* prove = app.add_subcommand("prove", "Decide a formula of a logic through its star image");
	prove->add_option("--spec", o.specFile)->required();
	prove->add_option("formula", o.formula)->required();
	prove->add_flag("--emit-derivation", o.emitDerivation);
	addMutationFlags(prove, o);
	prove->callback([&] { run = [&] { return cmdProve(o); }; });

	auto* mimp = app.add_subcommand("prove-mimp", "Decide implicational sequents 'h1 ; h2 |- goal' (arguments or stdin)");
	mimp->add_option("sequents", o.sequents);
	mimp->add_flag("--emit-derivation", o.emitDerivation);
	mimp->add_option("--depth-budget", o.depthBudget, "Use the naive search with this depth budget");
	mimp->callback([&] { run = [&] { return cmdProveMimp(o); }; });

	auto* sfp = app.add_subcommand("check-sfp", "Check a derivation file and its sub-formula property");
	sfp->add_option("--spec", o.specFile)->required();
	sfp->add_option("derivation", o.file)->required();
	sfp->callback([&] { run = [&] { return cmdCheckSfp(o); }; });

	auto* td = app.add_subcommand("translate-derivation", "Translate a derivation into implicational logic");
	td->add_option("--spec", o.specFile)->required();
	td->add_option("derivation", o.file)->required();
	td->callback([&] { run = [&] { return cmdTranslateDerivation(o); }; });

	auto* spec = app.add_subcommand("spec", "Logic specification tools");
	spec->require_subcommand(1);
	auto* validate = spec->add_subcommand("validate", "Validate a logic specification");
	validate->add_option("file", o.file)->required();
	validate->callback([&] { run = [&] { return cmdSpecValidate(o); }; });

	auto* mv = app.add_subcommand("mv", "Many-valued logic tools");
	mv->require_subcommand(1);
	auto* mvProve = mv->add_subcommand("prove", "Decide validity through the clause compilation");
	auto* mvCheck = mv->add_subcommand("check", "Compare the clause compilation with truth tables");
	for (auto* sub : {mvProve, mvCheck}) {
		sub->add_option("--mv", o.mvFile)->required();
		sub->add_option("formula", o.formula)->required();
		addMutationFlags(sub, o);
	}
	mvProve->callback([&] { run = [&] { return cmdMvProve(o); }; });
	mvCheck->callback([&] { run = [&] { return cmdMvCheck(o); }; });
	auto* bits = mv->add_subcommand("show-bitprints", "Print the bitprint of every truth value");
	bits->add_option("--mv", o.mvFile)->required();
	bits->callback([&] { run = [&] { return cmdMvBitprints(o); }; });
	auto* clauses = mv->add_subcommand("show-clauses", "Print the clauses of each local relation");
	clauses->add_option("--mv", o.mvFile)->required();
	clauses->add_option("--connective", o.connective, "One connective, or 'value'");
	clauses->callback([&] { run = [&] { return cmdMvClauses(o); }; });

	auto* equiv = app.add_subcommand("equiv-test", "Compare the reduction with an oracle on an exhaustive corpus");
	equiv->add_option("--spec", o.specFile);
	equiv->add_option("--mv", o.mvFile);
	equiv->add_option("--atoms", o.atoms, "Comma-separated atoms")->capture_default_str();
	equiv->add_option("--max-size", o.maxSize)->capture_default_str();
	equiv->add_option("--expected", o.expectedFile, "JSON list of {formula, valid} verdicts");
	equiv->add_option("--threads", o.threads);
	addMutationFlags(equiv, o);
	equiv->callback([&] { run = [&] { return cmdEquiv(o); }; });

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		summary({{"status", "usage error"}, {"message", e.what()}});
		return 2;
	}
	try {
		return run();
	} catch (const UsageError& e) {
		std::cerr << "usage error: " << e.what() << "\n";
		summary({{"status", "usage error"}, {"message", e.what()}});
	} catch (const InputError& e) {
		std::cerr << "input error: " << e.what() << "\n";
		summary({{"status", "input error"}, {"message", e.what()}});
	} catch (const ParseError& e) {
		std::cerr << "input error: " << e.what() << "\n";
		summary({{"status", "input error"}, {"message", e.what()}});
	} catch (const std::invalid_argument& e) {
		std::cerr << "input error: " << e.what() << "\n";
		summary({{"status", "input error"}, {"message", e.what()}});
	}
	return 2;
}
