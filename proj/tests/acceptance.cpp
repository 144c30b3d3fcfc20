// One line per acceptance criterion; exit status 1 if any fails.

#include "ndstar/corpus.hpp"
#include "ndstar/io.hpp"
#include "ndstar/manyvalued.hpp"
#include "ndstar/mimp_prover.hpp"
#include "ndstar/translator.hpp"
#include "support/generators.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

using namespace ndstar;

namespace {

struct Outcome {
	bool pass = false;
	std::string detail;
};

Formula F(const std::string& s) { return parse(s); }

std::string replaceAll(std::string s, const std::string& from, const std::string& to) {
	for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size()))
		s.replace(at, from.size(), to);
	return s;
}

const LogicSpec& intSpec() {
	static const LogicSpec s = loadSpec(gen::dataPath("intuitionistic.json"));
	return s;
}

const LogicSpec& classical() {
	static const LogicSpec s = loadSpec(gen::dataPath("classical2.json"));
	return s;
}

const MVLogic& L3() {
	static const MVLogic L = loadMV(gen::dataPath("lukasiewicz3.json"));
	return L;
}

std::string seconds(std::chrono::steady_clock::time_point start) {
	auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
	std::ostringstream o;
	o << ms / 1000 << "." << (ms % 1000) / 100 << "s";
	return o.str();
}

std::string firstExhibits(const EquivReport& r) {
	std::string out;
	for (std::size_t i = 0; i < r.disagreements.size() && i < 3; ++i)
		out += " [" + print(r.disagreements[i].formula) + "]";
	return out;
}

Outcome disjunctionAxioms() {
	const IntroRule& i1 = *intSpec().findIntro("or_i1");
	const IntroRule& i2 = *intSpec().findIntro("or_i2");
	const ElimRule& e = *intSpec().elimFor("or");
	Formula o = F("or(b1,b2)");
	std::string got1 = print(iotaAxiom(i1, instantiateRule(i1, o)));
	std::string got2 = print(iotaAxiom(i2, instantiateRule(i2, o)));
	std::string got3 = print(epsilonAxiom(e, instantiateRule(e, o), F("chi")));
	bool ok = got1 == "b1 -> p[or(b1,b2)]" && got2 == "b2 -> p[or(b1,b2)]" &&
	          got3 == "(b1 -> chi) -> (b2 -> chi) -> p[or(b1,b2)] -> chi";
	return {ok, got1 + " | " + got2 + " | " + got3};
}

Outcome bitprints() {
	auto b = computeBitprints(L3());
	auto v = [](const char* l) { return *L3().valueOf(l); };
	std::string one = toString(b[v("1")]), mid = toString(b[v("i")]), zero = toString(b[v("0")]);
	bool excluded = true;
	for (const auto& p : b)
		excluded = excluded && toString(p) != "<1,0>";
	auto value = localRelation(L3(), "");
	excluded = excluded && !value.relation.admits(0b01);
	bool ok = one == "<1,1>" && mid == "<0,1>" && zero == "<0,0>" && excluded;
	return {ok, "1=" + one + " i=" + mid + " 0=" + zero + (excluded ? ", <1,0> excluded" : ", <1,0> admitted")};
}

Outcome clauseExhibits() {
	// Displayed schemata with P, Q, C and the canonical atoms for P>Q and phi(P), phi(Q).
	std::string row4 = "(p_(P>Q) -> C) -> ((P -> C) -> (p_phi(P) -> (Q -> (p_phi(Q) -> C))))";
	std::string exclusion = "P -> ((p_phi(P) -> C) -> C)";
	auto rename = [](std::string s) {
		s = replaceAll(s, "p_(P>Q)", "p[imp3(a,b)]");
		s = replaceAll(s, "p_phi(P)", "p[phi1,a]");
		s = replaceAll(s, "p_phi(Q)", "p[phi1,b]");
		s = replaceAll(s, "P", "a");
		s = replaceAll(s, "Q", "b");
		return replaceAll(s, "C", "c");
	};
	std::string wantRow4 = print(F(rename(row4)));
	std::string wantExcl = print(F(rename(exclusion)));
	Formula chi = F("c");
	auto found = [&](const std::string& conn, const std::vector<Formula>& subjects, const std::string& want) {
		std::vector<Formula> lits;
		for (const auto& s : subjects)
			for (std::size_t i = 0; i < L3().bitWidth(); ++i)
				lits.push_back(literal(s, i));
		for (const auto& c : relationClauses(L3(), localRelation(L3(), conn)))
			if (print(renderClause(c, lits, chi)) == want)
				return true;
		return false;
	};
	bool a = found("imp3", {F("imp3(a,b)"), F("a"), F("b")}, wantRow4);
	bool b = found("", {F("a")}, wantExcl);
	return {a && b, std::string("row-4 clause ") + (a ? "found" : "missing") + ", exclusion clause " +
	                    (b ? "found" : "missing")};
}

Outcome classicalEquivalence() {
	auto start = std::chrono::steady_clock::now();
	CorpusOptions o;
	o.atoms = {"p", "q"};
	o.maxSize = 7;
	auto r = runEquivCorpus(classical(), o);
	return {r.ok() && r.total > 0, std::to_string(r.total) + " formulas, " + std::to_string(r.disagreements.size()) +
	                                   " disagreements, " + seconds(start) + firstExhibits(r)};
}

Outcome mvEquivalence() {
	auto start = std::chrono::steady_clock::now();
	CorpusOptions o;
	o.atoms = {"a", "b"};
	o.maxSize = 6;
	auto r = runEquivCorpus(L3(), o);
	return {r.ok() && r.total > 0, std::to_string(r.total) + " formulas, " + std::to_string(r.disagreements.size()) +
	                                   " disagreements, " + seconds(start) + firstExhibits(r)};
}

Outcome proverCrossValidation() {
	auto start = std::chrono::steady_clock::now();
	auto corpus = enumerateFormulas({"a", "b"}, {}, true, 8);
	std::size_t disagreements = 0, budget = 0, provable = 0;
	std::string first;
	for (const auto& f : corpus) {
		Sequent s{{}, f};
		auto naive = naiveDecide(s, 4096);
		bool fast = decide(s).provable;
		provable += fast;
		if (naive == NaiveVerdict::BudgetExceeded) {
			++budget;
			continue;
		}
		if ((naive == NaiveVerdict::Provable) != fast) {
			++disagreements;
			if (first.empty())
				first = " [" + print(f) + "]";
		}
	}
	return {disagreements == 0 && budget == 0,
	        std::to_string(corpus.size()) + " formulas, " + std::to_string(provable) + " provable, " +
	            std::to_string(disagreements) + " disagreements, " + std::to_string(budget) + " budget-exceeded, " +
	            seconds(start) + first};
}

Outcome sizeBound() {
	std::mt19937 rng(1009);
	std::size_t violations = 0, total = 0;
	std::string ks;
	for (const char* name : {"intuitionistic.json", "classical2.json", "implication_op.json"}) {
		auto spec = loadSpec(gen::dataPath(name));
		gen::Vocabulary v;
		v.implication = spec.includesImplication;
		for (const auto& op : spec.operators)
			v.ops.push_back({op.name, op.arity});
		std::size_t worst = 0;
		for (int i = 0; i < 10000; ++i) {
			auto r = starTranslate(spec, gen::formulaUpTo(rng, v, 24));
			++total;
			violations += !r.size.withinBound();
			worst = std::max(worst, (r.size.n + r.size.m * r.size.m * r.size.m - 1) / (r.size.m * r.size.m * r.size.m));
		}
		ks += " " + spec.name + ":K=" + std::to_string(sizeConstant(spec)) + ",max n/m^3<=" + std::to_string(worst);
	}
	return {violations == 0, std::to_string(total) + " formulas, " + std::to_string(violations) + " violations," + ks};
}

Outcome subformulaCount() {
	std::mt19937 rng(2003);
	gen::Vocabulary v;
	v.atoms = {"a", "b", "c"};
	v.ops = {{"and", 2}, {"or", 2}, {"not", 1}, {"bot", 0}, {"maj", 3}};
	std::size_t violations = 0;
	for (int i = 0; i < 10000; ++i) {
		Formula f = gen::formulaUpTo(rng, v, 40);
		violations += subformulas(f).size() > symbolLength(f);
	}
	return {violations == 0, "10000 formulas, " + std::to_string(violations) + " violations"};
}

Outcome sfpMachinery() {
	auto comm = loadDerivation(gen::dataPath("derivations/or_comm.json"));
	auto detour = loadDerivation(gen::dataPath("derivations/detour.json"));
	bool commChecks = checkDerivation(intSpec(), comm.derivation, comm.hypotheses).ok();
	bool detourChecks = checkDerivation(intSpec(), detour.derivation, detour.hypotheses).ok();
	auto a = satisfiesSFP(intSpec(), comm.derivation, comm.goal, comm.hypotheses);
	auto b = satisfiesSFP(intSpec(), detour.derivation, detour.goal, detour.hypotheses);
	bool foreign = false;
	if (b.witness)
		for (const auto& o : b.witness->steps)
			foreign = foreign || o.formula == F("or(a,c)");
	bool ok = commChecks && detourChecks && a.holds && !b.holds && foreign;
	return {ok, std::string("or-commutation ") + (a.holds ? "holds" : "fails") + ", detour " +
	                (b.holds ? "holds" : "fails") + (b.witness ? " with witness " + describe(*b.witness) : "")};
}

Outcome lemma1Pipeline() {
	std::size_t files = 0, failures = 0;
	std::string failed;
	std::vector<std::filesystem::path> paths;
	for (const auto& entry : std::filesystem::directory_iterator(gen::dataPath("derivations/lemma1")))
		paths.push_back(entry.path());
	std::sort(paths.begin(), paths.end());
	for (const auto& p : paths) {
		++files;
		bool ok = false;
		try {
			auto d = loadDerivation(p).derivation;
			Derivation t = translateDerivation(intSpec(), d);
			ok = t.conclusion() == atomize(d.conclusion()) &&
			     checkMimpDerivation(t, lemma1Set(intSpec(), d.conclusion(), openHypotheses(d))).ok();
		} catch (const std::exception& e) {
			failed += " (" + std::string(e.what()) + ")";
		}
		if (!ok) {
			++failures;
			failed += " " + p.stem().string();
		}
	}
	return {files >= 10 && failures == 0,
	        std::to_string(files) + " derivations, " + std::to_string(failures) + " failures" + failed};
}

Outcome mutationSensitivity(std::vector<std::string>& notes) {
	std::size_t families = 0, caught = 0;
	std::string missed;
	auto run = [&](const std::string& family, const std::function<EquivReport(const Mutation&)>& corpus) {
		for (auto mode : {Mutation::Mode::Strengthen, Mutation::Mode::Drop}) {
			auto r = corpus(Mutation{family, mode});
			std::string line = family + "/" + toString(mode) + ": " +
			                   (r.ok() ? "no disagreement in " + std::to_string(r.total)
			                           : "caught by [" + print(r.disagreements.front().formula) + "]");
			notes.push_back(line);
			if (mode == Mutation::Mode::Strengthen) {
				++families;
				if (r.ok())
					missed += " " + family;
				else
					++caught;
			}
		}
	};
	for (const auto& family : axiomFamilies(classical()))
		run(family, [](const Mutation& m) {
			CorpusOptions o;
			o.maxSize = 7;
			o.stopAfter = 1;
			o.mutation = m;
			return runEquivCorpus(classical(), o);
		});
	for (const auto& family : clauseFamilies(L3()))
		run(family, [](const Mutation& m) {
			CorpusOptions o;
			o.atoms = {"a", "b"};
			o.maxSize = 6;
			o.stopAfter = 1;
			o.mutation = m;
			return runEquivCorpus(L3(), o);
		});
	return {caught == families && families > 0,
	        std::to_string(caught) + "/" + std::to_string(families) + " families caught when strengthened" + missed};
}

} // namespace

int main() {
	std::vector<std::string> notes;
	std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
		{"disjunction iota/epsilon exhibits", disjunctionAxioms},
		{"L3 bitprints", bitprints},
		{"L3 clause exhibits", clauseExhibits},
		{"classical ND equivalence", classicalEquivalence},
		{"L3 many-valued equivalence", mvEquivalence},
		{"prover cross-validation", proverCrossValidation},
		{"star size bound", sizeBound},
		{"sub-formula count", subformulaCount},
		{"sub-formula property checks", sfpMachinery},
		{"derivation translation", lemma1Pipeline},
		{"mutation sensitivity", [&] { return mutationSensitivity(notes); }},
	};
	int failed = 0;
	for (std::size_t i = 0; i < criteria.size(); ++i) {
		Outcome o;
		try {
			o = criteria[i].second();
		} catch (const std::exception& e) {
			o = {false, std::string("exception: ") + e.what()};
		}
		failed += !o.pass;
		std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
		          << "): " << o.detail << std::endl;
	}
	for (const auto& n : notes)
		std::cout << "  mutation " << n << "\n";
	std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
	return failed ? 1 : 0;
}
