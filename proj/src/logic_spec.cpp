#include "ndstar/logic_spec.hpp"

#include <algorithm>
#include <set>

namespace ndstar {

std::vector<std::size_t> IntroRule::premisePositions() const {
	std::vector<std::size_t> out;
	out.reserve(groups.size());
	for (const auto& g : groups)
		out.push_back(g.premise);
	return out;
}

const OperatorDecl* LogicSpec::findOperator(const std::string& op) const {
	for (const auto& o : operators)
		if (o.name == op)
			return &o;
	return nullptr;
}

const IntroRule* LogicSpec::findIntro(const std::string& ruleName) const {
	for (const auto& r : introRules)
		if (r.name == ruleName)
			return &r;
	return nullptr;
}

std::vector<const IntroRule*> LogicSpec::introRulesFor(const std::string& op) const {
	std::vector<const IntroRule*> out;
	for (const auto& r : introRules)
		if (r.op == op)
			out.push_back(&r);
	return out;
}

const ElimRule* LogicSpec::elimFor(const std::string& op) const {
	for (const auto& r : elimRules)
		if (r.op == op)
			return &r;
	return nullptr;
}

bool LogicSpec::isTableBacked(const std::string& op) const {
	const OperatorDecl* decl = findOperator(op);
	return decl && decl->table && introRulesFor(op).empty() && !elimFor(op);
}

namespace {

std::string positionsText(const std::vector<std::size_t>& ps) {
	std::string s = "[";
	for (std::size_t i = 0; i < ps.size(); ++i)
		s += (i ? "," : "") + std::to_string(ps[i]);
	return s + "]";
}

void checkIntro(const LogicSpec& spec, const IntroRule& r, std::vector<Violation>& out) {
	const OperatorDecl* decl = spec.findOperator(r.op);
	if (!decl) {
		out.push_back({r.name, "undeclared operator '" + r.op + "'"});
		return;
	}
	if (r.groups.empty())
		out.push_back({r.name, "introduction rule has no premise group"});
	std::vector<int> seen(decl->arity, 0);
	auto mark = [&](std::size_t p) {
		if (p >= decl->arity)
			out.push_back({r.name, "position " + std::to_string(p) + " out of range for arity " + std::to_string(decl->arity)});
		else
			++seen[p];
	};
	for (const auto& g : r.groups) {
		mark(g.premise);
		for (auto d : g.discharges)
			mark(d);
	}
	for (auto s : r.sides)
		mark(s);
	for (std::size_t p = 0; p < seen.size(); ++p) {
		if (seen[p] == 0)
			out.push_back({r.name, "argument position " + std::to_string(p) + " has no role"});
		else if (seen[p] > 1)
			out.push_back({r.name, "argument position " + std::to_string(p) + " has more than one role"});
	}
}

void checkElim(const LogicSpec& spec, const ElimRule& e, std::vector<Violation>& out) {
	const std::string id = e.name();
	const OperatorDecl* decl = spec.findOperator(e.op);
	if (!decl) {
		out.push_back({id, "undeclared operator '" + e.op + "'"});
		return;
	}
	auto intros = spec.introRulesFor(e.op);
	if (e.branches.size() != intros.size()) {
		out.push_back({id, "branch count " + std::to_string(e.branches.size()) + " differs from introduction rule count " +
		                       std::to_string(intros.size())});
	} else {
		for (std::size_t t = 0; t < intros.size(); ++t)
			if (e.branches[t] != intros[t]->premisePositions())
				out.push_back({id, "branch " + std::to_string(t) + " discharges " + positionsText(e.branches[t]) +
				                       " but rule " + intros[t]->name + " has premises " +
				                       positionsText(intros[t]->premisePositions())});
	}
	std::set<std::size_t> minors;
	for (auto p : e.simpleMinors) {
		if (p >= decl->arity)
			out.push_back({id, "simple minor position " + std::to_string(p) + " out of range"});
		if (!minors.insert(p).second)
			out.push_back({id, "simple minor position " + std::to_string(p) + " repeated"});
	}
	for (std::size_t t = 0; t < e.branches.size(); ++t) {
		std::set<std::size_t> inBranch;
		for (auto p : e.branches[t]) {
			if (p >= decl->arity)
				out.push_back({id, "branch position " + std::to_string(p) + " out of range"});
			if (minors.contains(p))
				out.push_back({id, "position " + std::to_string(p) + " is both a simple minor and discharged in branch " +
				                       std::to_string(t)});
			if (!inBranch.insert(p).second)
				out.push_back({id, "branch " + std::to_string(t) + " repeats position " + std::to_string(p)});
		}
	}
}

} // namespace

std::vector<Violation> validateSpec(const LogicSpec& spec) {
	std::vector<Violation> out;
	std::set<std::string> names;
	for (const auto& op : spec.operators) {
		if (op.name == "->")
			out.push_back({op.name, "operator name '->' is reserved for the built-in implication"});
		else if (!isUserAtomName(op.name))
			out.push_back({op.name, "operator name is not an identifier"});
		if (!names.insert(op.name).second)
			out.push_back({op.name, "duplicate operator"});
		if (op.table) {
			std::size_t rows = std::size_t{1} << op.arity;
			if (op.table->size() != rows)
				out.push_back({op.name, "truth table has " + std::to_string(op.table->size()) + " entries, expected " +
				                            std::to_string(rows)});
			for (int v : *op.table)
				if (v != 0 && v != 1) {
					out.push_back({op.name, "truth table entries must be 0 or 1"});
					break;
				}
		}
	}
	std::set<std::string> ruleNames;
	for (const auto& r : spec.introRules) {
		if (!ruleNames.insert(r.name).second)
			out.push_back({r.name, "duplicate introduction rule name"});
		checkIntro(spec, r, out);
	}
	std::set<std::string> withElim;
	for (const auto& e : spec.elimRules) {
		if (!withElim.insert(e.op).second)
			out.push_back({e.name(), "multiple elimination rules for operator '" + e.op + "'"});
		checkElim(spec, e, out);
	}
	return out;
}

ElimRule deriveElim(const LogicSpec& spec, const std::string& op) {
	if (spec.elimFor(op))
		throw std::invalid_argument("operator '" + op + "' already has an elimination rule");
	auto intros = spec.introRulesFor(op);
	if (intros.empty())
		throw std::invalid_argument("operator '" + op + "' has no introduction rule to derive an elimination from");
	ElimRule e;
	e.op = op;
	e.derived = true;
	for (const IntroRule* r : intros) {
		for (const auto& g : r->groups)
			for (auto d : g.discharges)
				if (std::find(e.simpleMinors.begin(), e.simpleMinors.end(), d) == e.simpleMinors.end())
					e.simpleMinors.push_back(d);
		e.branches.push_back(r->premisePositions());
	}
	return e;
}

LogicSpec completeElims(LogicSpec spec) {
	for (const auto& op : spec.operators)
		if (!spec.elimFor(op.name) && !spec.introRulesFor(op.name).empty())
			spec.elimRules.push_back(deriveElim(spec, op.name));
	return spec;
}

namespace {

void expectApp(const std::string& op, std::size_t arity, const Formula& f, const std::string& ruleName) {
	if (!f.isOpApp() || f.name() != op)
		throw RuleMismatch("rule " + ruleName + " expects an application of '" + op + "', got '" + print(f) + "'");
	if (f.args().size() != arity)
		throw RuleMismatch("rule " + ruleName + ": arity mismatch for '" + print(f) + "'");
}

std::size_t ruleArity(const IntroRule& r) {
	std::size_t n = r.sides.size();
	for (const auto& g : r.groups)
		n += 1 + g.discharges.size();
	return n;
}

} // namespace

IntroInstance instantiateRule(const IntroRule& rule, const Formula& f) {
	expectApp(rule.op, ruleArity(rule), f, rule.name);
	IntroInstance inst{f, {}, {}, {}};
	auto args = f.args();
	for (const auto& g : rule.groups) {
		inst.premises.push_back(args[g.premise]);
		std::vector<Formula> ds;
		for (auto d : g.discharges)
			ds.push_back(args[d]);
		inst.discharges.push_back(std::move(ds));
	}
	for (auto s : rule.sides)
		inst.sides.push_back(args[s]);
	return inst;
}

ElimInstance instantiateRule(const ElimRule& rule, const Formula& f) {
	if (!f.isOpApp() || f.name() != rule.op)
		throw RuleMismatch("rule " + rule.name() + " expects an application of '" + rule.op + "', got '" + print(f) + "'");
	auto args = f.args();
	auto at = [&](std::size_t p) {
		if (p >= args.size())
			throw RuleMismatch("rule " + rule.name() + ": arity mismatch for '" + print(f) + "'");
		return args[p];
	};
	ElimInstance inst{f, {}, {}};
	for (auto p : rule.simpleMinors)
		inst.simpleMinors.push_back(at(p));
	for (const auto& b : rule.branches) {
		std::vector<Formula> bs;
		for (auto p : b)
			bs.push_back(at(p));
		inst.branches.push_back(std::move(bs));
	}
	return inst;
}

bool evalTable(const OperatorDecl& op, std::span<const bool> args) {
	if (!op.table)
		throw std::invalid_argument("operator '" + op.name + "' has no truth table");
	std::size_t row = 0;
	for (bool a : args)
		row = row * 2 + (a ? 1 : 0);
	return op.table->at(row) != 0;
}

} // namespace ndstar
