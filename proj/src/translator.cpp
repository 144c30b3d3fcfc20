#include "ndstar/translator.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace ndstar {

Formula atomize(const Formula& f) {
	switch (f.kind()) {
	case Formula::Kind::Atom: return f;
	case Formula::Kind::Implies: return Formula::implies(atomize(f.lhs()), atomize(f.rhs()));
	case Formula::Kind::OpApp: return canonicalAtom(f);
	}
	return f;
}

Formula iotaAxiom(const IntroRule& rule, const IntroInstance& inst) {
	if (inst.premises.size() != rule.groups.size() || inst.discharges.size() != rule.groups.size())
		throw RuleMismatch("iota axiom: instance does not fit rule " + rule.name);
	std::vector<Formula> groups;
	for (std::size_t i = 0; i < inst.premises.size(); ++i) {
		std::vector<Formula> phis;
		for (const auto& phi : inst.discharges[i])
			phis.push_back(atomize(phi));
		groups.push_back(nestImplications(phis, atomize(inst.premises[i])));
	}
	return nestImplications(groups, canonicalAtom(inst.conclusion));
}

Formula epsilonAxiom(const ElimRule& rule, const ElimInstance& inst, const Formula& chi) {
	if (inst.simpleMinors.size() != rule.simpleMinors.size() || inst.branches.size() != rule.branches.size())
		throw RuleMismatch("epsilon axiom: instance does not fit rule " + rule.name());
	Formula mchi = atomize(chi);
	std::vector<Formula> ants;
	for (const auto& phi : inst.simpleMinors)
		ants.push_back(atomize(phi));
	for (const auto& branch : inst.branches) {
		std::vector<Formula> betas;
		for (const auto& b : branch)
			betas.push_back(atomize(b));
		ants.push_back(nestImplications(betas, mchi));
	}
	ants.push_back(canonicalAtom(inst.major));
	return nestImplications(ants, mchi);
}

std::string toString(Mutation::Mode m) {
	return m == Mutation::Mode::Drop ? "drop" : "strengthen";
}

std::vector<Formula> AxiomSet::formulas() const {
	std::vector<Formula> out;
	out.reserve(axioms.size());
	for (const auto& a : axioms)
		out.push_back(a.formula);
	return out;
}

std::vector<std::string> axiomFamilies(const LogicSpec& spec) {
	std::vector<std::string> out;
	LogicSpec full = completeElims(spec);
	for (const auto& r : full.introRules)
		out.push_back("iota:" + r.name);
	for (const auto& e : full.elimRules)
		out.push_back("eps:" + e.op);
	for (const auto& op : full.operators)
		if (full.isTableBacked(op.name))
			out.push_back("table:" + op.name);
	return out;
}

std::vector<BoolClause> tableClauses(const OperatorDecl& op) {
	if (!op.table)
		throw std::invalid_argument("operator '" + op.name + "' has no truth table");
	BoolRelation rel;
	rel.width = op.arity + 1;
	for (std::size_t row = 0; row < (std::size_t{1} << op.arity); ++row) {
		std::uint32_t a = op.table->at(row) ? 1u : 0u;
		for (std::size_t i = 0; i < op.arity; ++i)
			if (row >> (op.arity - 1 - i) & 1)
				a |= 1u << (i + 1);
		rel.rows.push_back(a);
	}
	return mergeClauses(primeImplicates(rel), rowClauses(rel, 1u));
}

void checkWellFormed(const LogicSpec& spec, const Formula& alpha) {
	for (const auto& s : subformulas(alpha)) {
		if (s.isImplies() && !spec.includesImplication)
			throw UndeclaredOperator("logic " + spec.name + " has no built-in implication: " + print(s));
		if (!s.isOpApp())
			continue;
		const OperatorDecl* decl = spec.findOperator(s.name());
		if (!decl)
			throw UndeclaredOperator("undeclared operator '" + s.name() + "' in " + print(s));
		if (decl->arity != s.args().size())
			throw UndeclaredOperator("operator '" + s.name() + "' has arity " + std::to_string(decl->arity) + ", used with " +
			                         std::to_string(s.args().size()) + " arguments");
	}
}

namespace {

class AxiomBuilder {
public:
	AxiomBuilder(const LogicSpec& spec, const std::optional<Mutation>& mutation)
		: spec_(completeElims(spec)), mutation_(mutation) {}

	void add(const Formula& f, const std::string& family, std::string origin) {
		Formula g = f;
		if (mutation_ && mutation_->family == family) {
			if (mutation_->mode == Mutation::Mode::Drop)
				return;
			if (g.isImplies())
				g = g.rhs();
		}
		std::string key = print(g);
		if (seen_.contains(key))
			return;
		seen_.emplace(key, set_.axioms.size());
		set_.axioms.push_back({g, family, std::move(origin)});
	}

	void operatorAxioms(const Formula& sigma, const std::vector<Formula>& chis) {
		const OperatorDecl* decl = spec_.findOperator(sigma.name());
		if (!decl)
			throw UndeclaredOperator("undeclared operator '" + sigma.name() + "' in " + print(sigma));
		if (decl->arity != sigma.args().size())
			throw UndeclaredOperator("arity mismatch for " + print(sigma));
		std::string at = " at " + print(sigma);
		if (spec_.isTableBacked(decl->name)) {
			auto it = tables_.find(decl->name);
			if (it == tables_.end())
				it = tables_.emplace(decl->name, tableClauses(*decl)).first;
			std::vector<Formula> lits{atomize(sigma)};
			for (const auto& a : sigma.args())
				lits.push_back(atomize(a));
			std::vector<std::string> names{"X"};
			for (std::size_t i = 0; i < sigma.args().size(); ++i)
				names.push_back("Y" + std::to_string(i));
			for (const auto& c : it->second)
				for (const auto& chi : chis)
					add(renderClause(c, lits, atomize(chi)), "table:" + decl->name,
					    "clause " + describeClause(c, names) + at + " chi=" + print(chi));
			return;
		}
		for (const IntroRule* r : spec_.introRulesFor(decl->name))
			add(iotaAxiom(*r, instantiateRule(*r, sigma)), "iota:" + r->name, "iota " + r->name + at);
		if (const ElimRule* e = spec_.elimFor(decl->name)) {
			auto inst = instantiateRule(*e, sigma);
			for (const auto& chi : chis)
				add(epsilonAxiom(*e, inst, chi), "eps:" + e->op, "eps " + e->name() + at + " chi=" + print(chi));
		}
	}

	AxiomSet finish() {
		std::sort(set_.axioms.begin(), set_.axioms.end(),
		          [](const Axiom& a, const Axiom& b) { return print(a.formula) < print(b.formula); });
		return std::move(set_);
	}

	const LogicSpec& spec() const { return spec_; }

private:
	LogicSpec spec_;
	std::optional<Mutation> mutation_;
	AxiomSet set_;
	std::unordered_map<std::string, std::size_t> seen_;
	std::map<std::string, std::vector<BoolClause>> tables_;
};

std::vector<Formula> closure(const Formula& target, const std::vector<Formula>& context) {
	std::vector<Formula> out;
	std::unordered_set<Formula> seen;
	auto take = [&](const Formula& f) {
		for (const auto& s : subformulas(f))
			if (seen.insert(s).second)
				out.push_back(s);
	};
	take(target);
	for (const auto& c : context)
		take(c);
	return out;
}

} // namespace

AxiomSet axiomatize(const LogicSpec& spec, const Formula& target, const std::vector<Formula>& context,
                    const std::optional<Mutation>& mutation) {
	AxiomBuilder b(spec, mutation);
	auto chis = subformulas(target);
	for (const auto& sigma : closure(target, context))
		if (sigma.isOpApp())
			b.operatorAxioms(sigma, chis);
	return b.finish();
}

std::size_t sizeConstant(const LogicSpec& spec) {
	LogicSpec full = completeElims(spec);
	std::size_t best = 0;
	for (const auto& op : full.operators) {
		std::size_t a = op.arity;
		std::size_t intros = full.introRulesFor(op.name).size();
		std::size_t kc = intros * (2 * a + 2);
		if (const ElimRule* e = full.elimFor(op.name)) {
			std::size_t r = e->branches.size();
			kc += 2 * a + 2 * r * a + 2 * r + 4;
		}
		if (full.isTableBacked(op.name)) {
			std::size_t lits = a + 1;
			kc += tableClauses(op).size() * (4 * lits + 2);
		}
		best = std::max(best, kc);
	}
	return best + 1;
}

StarResult starTranslate(const LogicSpec& spec, const Formula& alpha, const std::optional<Mutation>& mutation) {
	checkWellFormed(spec, alpha);
	AxiomSet axioms = axiomatize(spec, alpha, {}, mutation);
	Formula image = nestImplications(axioms.formulas(), atomize(alpha));
	SizeReport size{alpha.symbolLength(), image.symbolLength(), sizeConstant(spec)};
	return {alpha, image, std::move(axioms), size};
}

std::vector<Formula> lemma1Set(const LogicSpec& spec, const Formula& conclusion, const std::vector<Formula>& gamma) {
	std::vector<Formula> context = gamma;
	context.push_back(conclusion);
	std::vector<Formula> out;
	std::unordered_set<Formula> seen;
	auto take = [&](const Formula& f) {
		if (seen.insert(f).second)
			out.push_back(f);
	};
	for (const auto& g : gamma)
		take(atomize(g));
	for (const auto& x : context)
		for (const auto& ax : axiomatize(spec, x, context).axioms)
			take(ax.formula);
	return out;
}

namespace {

class DerivationTranslator {
public:
	explicit DerivationTranslator(const LogicSpec& spec) : spec_(spec) {}

	using Env = std::map<int, std::vector<std::pair<Formula, int>>>;

	Derivation run(const Derivation& d, const Env& env) {
		switch (d.kind()) {
		case RuleKind::Hypothesis: return hypothesis(d, env);
		case RuleKind::Intro: return intro(d, env);
		case RuleKind::Elim: return elim(d, env);
		case RuleKind::ImpIntro: {
			Env inner = env;
			std::optional<int> label;
			if (d.label()) {
				label = fresh_++;
				inner[*d.label()] = {{d.conclusion().lhs(), *label}};
			}
			return Derivation::impIntro(atomize(d.conclusion()), run(d.premises()[0], inner), label);
		}
		case RuleKind::ImpElim: return Derivation::impElim(run(d.premises()[0], env), run(d.premises()[1], env));
		}
		throw std::logic_error("unknown rule kind");
	}

private:
	Derivation hypothesis(const Derivation& d, const Env& env) {
		if (!d.label())
			return Derivation::hypothesis(atomize(d.conclusion()));
		auto it = env.find(*d.label());
		if (it != env.end())
			for (auto e = it->second.rbegin(); e != it->second.rend(); ++e)
				if (e->first == d.conclusion())
					return Derivation::hypothesis(atomize(d.conclusion()), e->second);
		throw std::logic_error("translateDerivation: undischarged label " + std::to_string(*d.label()));
	}

	// Sub-derivation of formulas -> target: discharges each formula of the
	// list with a fresh ->-introduction.
	Derivation discharging(const Derivation& body, const std::vector<Formula>& formulas, const Formula& target,
	                       const std::optional<int>& label, const Env& env) {
		std::vector<int> labels;
		Env inner = env;
		for (const auto& f : formulas) {
			labels.push_back(fresh_++);
			if (label)
				inner[*label].push_back({f, labels.back()});
		}
		Derivation out = run(body, inner);
		std::vector<Formula> ms;
		for (const auto& f : formulas)
			ms.push_back(atomize(f));
		for (std::size_t j = formulas.size(); j-- > 0;) {
			std::span<const Formula> tail(ms.data() + j, ms.size() - j);
			out = Derivation::impIntro(nestImplications(tail, atomize(target)), std::move(out), labels[j]);
		}
		return out;
	}

	Derivation intro(const Derivation& d, const Env& env) {
		const IntroRule* rule = spec_.findIntro(d.rule());
		auto inst = instantiateRule(*rule, d.conclusion());
		Derivation cur = Derivation::hypothesis(iotaAxiom(*rule, inst));
		for (std::size_t i = 0; i < inst.premises.size(); ++i)
			cur = Derivation::impElim(std::move(cur),
			                          discharging(d.premises()[i], inst.discharges[i], inst.premises[i], d.label(), env));
		return cur;
	}

	Derivation elim(const Derivation& d, const Env& env) {
		const ElimRule* rule = spec_.elimFor(d.rule());
		auto inst = instantiateRule(*rule, d.major().conclusion());
		Derivation cur = Derivation::hypothesis(epsilonAxiom(*rule, inst, d.conclusion()));
		for (const auto& m : d.minors())
			cur = Derivation::impElim(std::move(cur), run(m, env));
		for (std::size_t t = 0; t < inst.branches.size(); ++t)
			cur = Derivation::impElim(std::move(cur),
			                          discharging(d.branches()[t], inst.branches[t], d.conclusion(), d.label(), env));
		return Derivation::impElim(std::move(cur), run(d.major(), env));
	}

	const LogicSpec& spec_;
	int fresh_ = 1;
};

} // namespace

Derivation translateDerivation(const LogicSpec& spec, const Derivation& d) {
	LogicSpec full = completeElims(spec);
	auto report = checkDerivation(full, d, openHypotheses(d));
	if (!report.ok())
		throw UncheckedDerivation("derivation does not check: " + report.describe());
	auto sfp = satisfiesSFP(full, d);
	if (!sfp.holds)
		throw NotSfp("derivation lacks the sub-formula property: " + sfp.reason);
	DerivationTranslator t(full);
	return t.run(d, {});
}

} // namespace ndstar
