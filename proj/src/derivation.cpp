#include "ndstar/derivation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

namespace ndstar {

Derivation Derivation::hypothesis(Formula f, std::optional<int> label) {
	return Derivation(std::make_shared<const Node>(Node{RuleKind::Hypothesis, std::move(f), label, {}, {}, {}, {}}));
}

Derivation Derivation::intro(std::string rule, Formula conclusion, std::vector<Derivation> premises,
                             std::optional<int> label) {
	return Derivation(std::make_shared<const Node>(
		Node{RuleKind::Intro, std::move(conclusion), label, std::move(rule), std::move(premises), {}, {}}));
}

Derivation Derivation::elim(std::string op, Formula conclusion, Derivation major, std::vector<Derivation> minors,
                            std::vector<Derivation> branches, std::optional<int> label) {
	return Derivation(std::make_shared<const Node>(Node{RuleKind::Elim, std::move(conclusion), label, std::move(op),
	                                                    {std::move(major)}, std::move(minors), std::move(branches)}));
}

Derivation Derivation::impIntro(Formula conclusion, Derivation body, std::optional<int> label) {
	return Derivation(std::make_shared<const Node>(
		Node{RuleKind::ImpIntro, std::move(conclusion), label, {}, {std::move(body)}, {}, {}}));
}

Derivation Derivation::impElim(Derivation major, Derivation minor) {
	Formula conclusion = major.conclusion().isImplies() ? major.conclusion().rhs() : major.conclusion();
	return Derivation(std::make_shared<const Node>(
		Node{RuleKind::ImpElim, std::move(conclusion), std::nullopt, {}, {std::move(major), std::move(minor)}, {}, {}}));
}

std::size_t Derivation::size() const {
	std::size_t n = 1;
	for (const auto* v : {&premises(), &minors(), &branches()})
		for (const auto& c : *v)
			n += c.size();
	return n;
}

std::string CheckReport::describe() const {
	if (issues.empty())
		return "ok";
	std::string s;
	for (const auto& i : issues)
		s += (i.path.empty() ? std::string("/") : i.path) + ": " + i.message + "\n";
	return s;
}

namespace {

struct Scope {
	int label;
	const std::vector<Formula>* allowed;
	std::string owner;
};

class Checker {
public:
	Checker(const LogicSpec& spec, const std::vector<Formula>& hyps) : spec_(spec), hyps_(hyps.begin(), hyps.end()) {}

	void run(const Derivation& d, const std::string& path) { visit(d, path); }
	CheckReport report;

private:
	void issue(const std::string& path, std::string msg) { report.issues.push_back({path, std::move(msg)}); }

	void claimLabel(const Derivation& d, const std::string& path) {
		if (d.label() && !labels_.insert(*d.label()).second)
			issue(path, "discharge label " + std::to_string(*d.label()) + " introduced by more than one rule application");
	}

	void withScope(const Derivation& d, const std::vector<Formula>& allowed, const std::string& owner,
	               const Derivation& child, const std::string& childPath) {
		if (d.label()) {
			scopes_.push_back({*d.label(), &allowed, owner});
			visit(child, childPath);
			scopes_.pop_back();
		} else
			visit(child, childPath);
	}

	void visit(const Derivation& d, const std::string& path) {
		switch (d.kind()) {
		case RuleKind::Hypothesis: return visitHyp(d, path);
		case RuleKind::Intro: return visitIntro(d, path);
		case RuleKind::Elim: return visitElim(d, path);
		case RuleKind::ImpIntro: return visitImpIntro(d, path);
		case RuleKind::ImpElim: return visitImpElim(d, path);
		}
	}

	void visitHyp(const Derivation& d, const std::string& path) {
		if (!d.label()) {
			if (!hyps_.contains(d.conclusion()))
				issue(path, "open hypothesis " + print(d.conclusion()) + " is not among the allowed hypotheses");
			return;
		}
		for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
			if (it->label != *d.label())
				continue;
			if (std::find(it->allowed->begin(), it->allowed->end(), d.conclusion()) == it->allowed->end())
				issue(path, "hypothesis " + print(d.conclusion()) + " cannot be discharged by " + it->owner);
			return;
		}
		issue(path, "hypothesis label " + std::to_string(*d.label()) + " is not discharged by an enclosing rule");
	}

	void visitIntro(const Derivation& d, const std::string& path) {
		claimLabel(d, path);
		const IntroRule* rule = spec_.findIntro(d.rule());
		if (!rule) {
			issue(path, "unknown introduction rule '" + d.rule() + "'");
			return;
		}
		const OperatorDecl* decl = spec_.findOperator(rule->op);
		if (decl && d.conclusion().isOpApp() && d.conclusion().args().size() != decl->arity) {
			issue(path, "arity mismatch for " + print(d.conclusion()));
			return;
		}
		IntroInstance inst{d.conclusion(), {}, {}, {}};
		try {
			inst = instantiateRule(*rule, d.conclusion());
		} catch (const RuleMismatch& e) {
			issue(path, e.what());
			return;
		}
		if (d.premises().size() != inst.premises.size()) {
			issue(path, rule->name + " expects " + std::to_string(inst.premises.size()) + " premises, got " +
			                std::to_string(d.premises().size()));
			return;
		}
		for (std::size_t i = 0; i < inst.premises.size(); ++i) {
			std::string cp = path + "/p" + std::to_string(i);
			if (d.premises()[i].conclusion() != inst.premises[i])
				issue(cp, "premise concludes " + print(d.premises()[i].conclusion()) + ", rule requires " +
				              print(inst.premises[i]));
			withScope(d, inst.discharges[i], rule->name + " at " + (path.empty() ? "/" : path), d.premises()[i], cp);
		}
	}

	void visitElim(const Derivation& d, const std::string& path) {
		claimLabel(d, path);
		const ElimRule* rule = spec_.elimFor(d.rule());
		if (!rule) {
			issue(path, "no elimination rule for operator '" + d.rule() + "'");
			return;
		}
		if (d.premises().size() != 1) {
			issue(path, "elimination needs exactly one major premise");
			return;
		}
		const Derivation& major = d.major();
		const OperatorDecl* decl = spec_.findOperator(rule->op);
		if (decl && major.conclusion().isOpApp() && major.conclusion().args().size() != decl->arity) {
			issue(path + "/p0", "arity mismatch for " + print(major.conclusion()));
			return;
		}
		ElimInstance inst{major.conclusion(), {}, {}};
		try {
			inst = instantiateRule(*rule, major.conclusion());
		} catch (const RuleMismatch& e) {
			issue(path + "/p0", e.what());
			return;
		}
		visit(major, path + "/p0");
		if (d.minors().size() != inst.simpleMinors.size())
			issue(path, "expected " + std::to_string(inst.simpleMinors.size()) + " simple minor premises, got " +
			                std::to_string(d.minors().size()));
		for (std::size_t i = 0; i < d.minors().size(); ++i) {
			std::string cp = path + "/m" + std::to_string(i);
			if (i < inst.simpleMinors.size() && d.minors()[i].conclusion() != inst.simpleMinors[i])
				issue(cp, "simple minor concludes " + print(d.minors()[i].conclusion()) + ", rule requires " +
				              print(inst.simpleMinors[i]));
			visit(d.minors()[i], cp);
		}
		if (d.branches().size() != inst.branches.size()) {
			issue(path, "expected " + std::to_string(inst.branches.size()) + " discharging minor premises, got " +
			                std::to_string(d.branches().size()));
			return;
		}
		for (std::size_t t = 0; t < inst.branches.size(); ++t) {
			std::string cp = path + "/b" + std::to_string(t);
			if (d.branches()[t].conclusion() != d.conclusion())
				issue(cp, "branch conclusion mismatch: " + print(d.branches()[t].conclusion()) + " vs " +
				              print(d.conclusion()));
			withScope(d, inst.branches[t], rule->name() + " at " + (path.empty() ? "/" : path), d.branches()[t], cp);
		}
	}

	void visitImpIntro(const Derivation& d, const std::string& path) {
		claimLabel(d, path);
		if (!spec_.includesImplication)
			issue(path, "logic has no built-in implication");
		if (d.premises().size() != 1) {
			issue(path, "->-introduction needs exactly one premise");
			return;
		}
		if (!d.conclusion().isImplies()) {
			issue(path, "->-introduction concludes a non-implication " + print(d.conclusion()));
			visit(d.premises()[0], path + "/p0");
			return;
		}
		if (d.premises()[0].conclusion() != d.conclusion().rhs())
			issue(path + "/p0", "body concludes " + print(d.premises()[0].conclusion()) + ", expected " +
			                        print(d.conclusion().rhs()));
		std::vector<Formula> allowed{d.conclusion().lhs()};
		withScope(d, allowed, "->-introduction at " + (path.empty() ? std::string("/") : path), d.premises()[0],
		          path + "/p0");
	}

	void visitImpElim(const Derivation& d, const std::string& path) {
		if (!spec_.includesImplication)
			issue(path, "logic has no built-in implication");
		if (d.label())
			issue(path, "->-elimination discharges nothing");
		if (d.premises().size() != 2) {
			issue(path, "->-elimination needs a major and a minor premise");
			return;
		}
		const Formula& major = d.premises()[0].conclusion();
		const Formula& minor = d.premises()[1].conclusion();
		if (!major.isImplies())
			issue(path + "/p0", "major premise " + print(major) + " is not an implication");
		else if (major.lhs() != minor)
			issue(path + "/p1", "minor premise " + print(minor) + " does not match antecedent " + print(major.lhs()));
		else if (major.rhs() != d.conclusion())
			issue(path, "conclusion " + print(d.conclusion()) + " does not match consequent " + print(major.rhs()));
		visit(d.premises()[0], path + "/p0");
		visit(d.premises()[1], path + "/p1");
	}

	const LogicSpec& spec_;
	std::unordered_set<Formula> hyps_;
	std::vector<Scope> scopes_;
	std::set<int> labels_;
};

// Flattened occurrence graph for linking-sequences.
struct Occ {
	std::string path;
	Formula formula;
	std::vector<std::size_t> next;
	bool hasIncoming = false;
};

class LinkGraph {
public:
	explicit LinkGraph(const Derivation& root) { add(root, "", {}); }

	std::vector<Occ> occs;

private:
	// Returns the index of d's occurrence. pendingMajor collects, per elim
	// label, the occurrence of the major premise waiting for its hypotheses.
	std::size_t add(const Derivation& d, const std::string& path, std::map<int, std::size_t> elimMajors) {
		std::size_t self = occs.size();
		occs.push_back({path, d.conclusion(), {}, false});
		auto link = [&](std::size_t from, std::size_t to) {
			occs[from].next.push_back(to);
			occs[to].hasIncoming = true;
		};
		switch (d.kind()) {
		case RuleKind::Hypothesis:
			if (d.label()) {
				auto it = elimMajors.find(*d.label());
				if (it != elimMajors.end())
					link(it->second, self);
			}
			break;
		case RuleKind::Intro:
		case RuleKind::ImpIntro:
			for (std::size_t i = 0; i < d.premises().size(); ++i) {
				auto c = add(d.premises()[i], path + "/p" + std::to_string(i), elimMajors);
				link(c, self);
			}
			break;
		case RuleKind::ImpElim: {
			auto maj = add(d.premises()[0], path + "/p0", elimMajors);
			link(maj, self);
			add(d.premises()[1], path + "/p1", elimMajors);
			break;
		}
		case RuleKind::Elim: {
			auto maj = add(d.major(), path + "/p0", elimMajors);
			for (std::size_t i = 0; i < d.minors().size(); ++i)
				add(d.minors()[i], path + "/m" + std::to_string(i), elimMajors);
			auto inner = elimMajors;
			if (d.label())
				inner[*d.label()] = maj;
			for (std::size_t t = 0; t < d.branches().size(); ++t) {
				auto c = add(d.branches()[t], path + "/b" + std::to_string(t), inner);
				link(c, self);
			}
			break;
		}
		}
		return self;
	}
};

void extend(const std::vector<Occ>& occs, std::size_t at, std::vector<std::size_t>& stack,
            std::vector<LinkingSequence>& out) {
	stack.push_back(at);
	if (occs[at].next.empty()) {
		LinkingSequence s;
		for (auto i : stack)
			s.steps.push_back({occs[i].path, occs[i].formula});
		out.push_back(std::move(s));
	} else {
		for (auto n : occs[at].next)
			extend(occs, n, stack, out);
	}
	stack.pop_back();
}

} // namespace

CheckReport checkDerivation(const LogicSpec& spec, const Derivation& d, const std::vector<Formula>& hypotheses) {
	Checker c(spec, hypotheses);
	c.run(d, "");
	return std::move(c.report);
}

namespace {
void collectOpen(const Derivation& d, std::vector<Formula>& out, std::unordered_set<Formula>& seen) {
	if (d.kind() == RuleKind::Hypothesis) {
		if (!d.label() && seen.insert(d.conclusion()).second)
			out.push_back(d.conclusion());
		return;
	}
	for (const auto* v : {&d.premises(), &d.minors(), &d.branches()})
		for (const auto& c : *v)
			collectOpen(c, out, seen);
}
} // namespace

namespace {
void collectSubs(const Derivation& d, const std::string& path, std::vector<std::pair<std::string, Derivation>>& out) {
	out.emplace_back(path, d);
	for (std::size_t i = 0; i < d.premises().size(); ++i)
		collectSubs(d.premises()[i], path + "/p" + std::to_string(i), out);
	for (std::size_t i = 0; i < d.minors().size(); ++i)
		collectSubs(d.minors()[i], path + "/m" + std::to_string(i), out);
	for (std::size_t i = 0; i < d.branches().size(); ++i)
		collectSubs(d.branches()[i], path + "/b" + std::to_string(i), out);
}

Derivation detach(const Derivation& d, std::set<int>& bound) {
	if (d.kind() == RuleKind::Hypothesis) {
		if (d.label() && !bound.contains(*d.label()))
			return Derivation::hypothesis(d.conclusion());
		return d;
	}
	bool added = d.label() && bound.insert(*d.label()).second;
	auto all = [&](const std::vector<Derivation>& v) {
		std::vector<Derivation> out;
		for (const auto& c : v)
			out.push_back(detach(c, bound));
		return out;
	};
	Derivation out = d;
	switch (d.kind()) {
	case RuleKind::Intro: out = Derivation::intro(d.rule(), d.conclusion(), all(d.premises()), d.label()); break;
	case RuleKind::Elim: {
		// The label does not bind inside the major premise or simple minors.
		if (added)
			bound.erase(*d.label());
		Derivation major = detach(d.major(), bound);
		auto minors = all(d.minors());
		if (added)
			bound.insert(*d.label());
		out = Derivation::elim(d.rule(), d.conclusion(), major, minors, all(d.branches()), d.label());
		break;
	}
	case RuleKind::ImpIntro: out = Derivation::impIntro(d.conclusion(), detach(d.premises()[0], bound), d.label()); break;
	case RuleKind::ImpElim:
		out = Derivation::impElim(detach(d.premises()[0], bound), detach(d.premises()[1], bound));
		break;
	case RuleKind::Hypothesis: break;
	}
	if (added)
		bound.erase(*d.label());
	return out;
}
} // namespace

std::vector<std::pair<std::string, Derivation>> subDerivations(const Derivation& d) {
	std::vector<std::pair<std::string, Derivation>> out;
	collectSubs(d, "", out);
	return out;
}

Derivation standalone(const Derivation& d) {
	std::set<int> bound;
	return detach(d, bound);
}

std::vector<Formula> openHypotheses(const Derivation& d) {
	std::vector<Formula> out;
	std::unordered_set<Formula> seen;
	collectOpen(d, out, seen);
	return out;
}

std::vector<LinkingSequence> linkingSequences(const LogicSpec& spec, const Derivation& d) {
	auto report = checkDerivation(spec, d, openHypotheses(d));
	if (!report.ok())
		throw UncheckedDerivation("derivation does not check: " + report.describe());
	LinkGraph g(d);
	std::vector<LinkingSequence> out;
	std::vector<std::size_t> stack;
	for (std::size_t i = 0; i < g.occs.size(); ++i)
		if (!g.occs[i].hasIncoming)
			extend(g.occs, i, stack, out);
	return out;
}

bool isSubformulaLinking(const LinkingSequence& s) {
	for (std::size_t i = 0; i + 1 < s.steps.size(); ++i) {
		const Formula& a = s.steps[i].formula;
		const Formula& b = s.steps[i + 1].formula;
		if (!isSubformulaOf(a, b) && !isSubformulaOf(b, a))
			return false;
	}
	return true;
}

SfpResult satisfiesSFP(const LogicSpec& spec, const Derivation& d, const Formula& goal,
                       const std::vector<Formula>& hypotheses) {
	if (d.conclusion() != goal)
		return {false, std::nullopt, "derivation concludes " + print(d.conclusion()) + ", not " + print(goal)};
	auto open = openHypotheses(d);
	for (const auto& h : open)
		if (std::find(hypotheses.begin(), hypotheses.end(), h) == hypotheses.end())
			return {false, std::nullopt, "open hypothesis " + print(h) + " is not among the hypotheses"};
	std::unordered_set<Formula> allowed;
	for (const auto& s : subformulas(goal))
		allowed.insert(s);
	for (const auto& h : open)
		for (const auto& s : subformulas(h))
			allowed.insert(s);
	for (auto& seq : linkingSequences(spec, d)) {
		if (!isSubformulaLinking(seq))
			return {false, std::move(seq), "linking-sequence is not a sub-formula linking-sequence"};
		for (const auto& step : seq.steps)
			if (!allowed.contains(step.formula)) {
				std::string why = print(step.formula) + " at " + (step.path.empty() ? "/" : step.path) +
				                  " is not a sub-formula of the goal or of an open hypothesis";
				return {false, std::move(seq), why};
			}
	}
	return {true, std::nullopt, {}};
}

SfpResult satisfiesSFP(const LogicSpec& spec, const Derivation& d) {
	return satisfiesSFP(spec, d, d.conclusion(), openHypotheses(d));
}

std::string describe(const LinkingSequence& s) {
	std::string out;
	for (std::size_t i = 0; i < s.steps.size(); ++i) {
		if (i)
			out += " ~> ";
		out += print(s.steps[i].formula) + " @" + (s.steps[i].path.empty() ? "/" : s.steps[i].path);
	}
	return out;
}

} // namespace ndstar
