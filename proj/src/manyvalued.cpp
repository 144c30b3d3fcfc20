#include "ndstar/manyvalued.hpp"

#include "ndstar/mimp_prover.hpp"

#include <algorithm>
#include <unordered_set>

namespace ndstar {

const Connective* MVLogic::find(const std::string& n) const {
	for (const auto& c : connectives)
		if (c.name == n)
			return &c;
	return nullptr;
}

bool MVLogic::isDesignated(int v) const {
	return std::find(designated.begin(), designated.end(), v) != designated.end();
}

std::string MVLogic::label(int v) const {
	if (v >= 0 && static_cast<std::size_t>(v) < values.size())
		return values[v];
	return std::to_string(v);
}

std::optional<int> MVLogic::valueOf(const std::string& l) const {
	for (std::size_t i = 0; i < values.size(); ++i)
		if (values[i] == l)
			return static_cast<int>(i);
	if (!l.empty() && std::all_of(l.begin(), l.end(), [](char c) { return c >= '0' && c <= '9'; })) {
		int v = std::stoi(l);
		if (v < k)
			return v;
	}
	return std::nullopt;
}

namespace {

std::size_t power(std::size_t base, std::size_t e) {
	std::size_t r = 1;
	while (e--)
		r *= base;
	return r;
}

std::size_t ceilLog2(int k) {
	std::size_t b = 0;
	while ((1 << b) < k)
		++b;
	return b;
}

std::string onlyAtom(const Formula& f) {
	std::string name;
	for (const auto& s : subformulas(f))
		if (s.isAtom()) {
			if (!name.empty() && name != s.name())
				throw MVError("separating formula " + print(f) + " has more than one variable");
			name = s.name();
		}
	if (name.empty())
		throw MVError("separating formula " + print(f) + " has no variable");
	return name;
}

} // namespace

std::vector<std::string> validateMVLogic(const MVLogic& L) {
	std::vector<std::string> out;
	if (L.k < 2)
		out.push_back("k must be at least 2");
	if (!L.values.empty() && L.values.size() != static_cast<std::size_t>(L.k))
		out.push_back("expected " + std::to_string(L.k) + " value labels, got " + std::to_string(L.values.size()));
	if (L.designated.empty())
		out.push_back("no designated value");
	for (int d : L.designated)
		if (d < 0 || d >= L.k)
			out.push_back("designated value " + std::to_string(d) + " out of range");
	std::unordered_set<std::string> names;
	for (const auto& c : L.connectives) {
		if (!names.insert(c.name).second)
			out.push_back("duplicate connective '" + c.name + "'");
		if (!isUserAtomName(c.name))
			out.push_back("connective name '" + c.name + "' is not an identifier");
		std::size_t rows = power(static_cast<std::size_t>(L.k), c.arity);
		if (c.table.size() != rows)
			out.push_back("connective '" + c.name + "' has " + std::to_string(c.table.size()) + " table entries, expected " +
			              std::to_string(rows));
		for (int v : c.table)
			if (v < 0 || v >= L.k) {
				out.push_back("connective '" + c.name + "' has a table entry out of range");
				break;
			}
	}
	std::size_t want = L.k >= 2 ? ceilLog2(L.k) - 1 : 0;
	if (L.separating.size() != want)
		out.push_back("expected " + std::to_string(want) + " separating formulas, got " +
		              std::to_string(L.separating.size()));
	for (const auto& s : L.separating) {
		try {
			onlyAtom(s);
		} catch (const MVError& e) {
			out.push_back(e.what());
		}
	}
	return out;
}

int evalFormula(const MVLogic& L, const Formula& f, const Assignment& assignment) {
	switch (f.kind()) {
	case Formula::Kind::Atom: {
		auto it = assignment.find(f.name());
		if (it == assignment.end())
			throw MVError("unassigned atom '" + f.name() + "'");
		return it->second;
	}
	case Formula::Kind::Implies:
		throw MVError("many-valued formulas use connectives only, found " + print(f));
	case Formula::Kind::OpApp: {
		const Connective* c = L.find(f.name());
		if (!c)
			throw MVError("unknown connective '" + f.name() + "'");
		if (c->arity != f.args().size())
			throw MVError("connective '" + f.name() + "' has arity " + std::to_string(c->arity));
		std::size_t row = 0;
		for (const auto& a : f.args())
			row = row * L.k + static_cast<std::size_t>(evalFormula(L, a, assignment));
		return c->table.at(row);
	}
	}
	return 0;
}

bool bruteForceValid(const MVLogic& L, const Formula& f) {
	std::vector<std::string> atoms;
	for (const auto& s : subformulas(f))
		if (s.isAtom())
			atoms.push_back(s.name());
	Assignment a;
	for (const auto& n : atoms)
		a[n] = 0;
	std::size_t total = power(static_cast<std::size_t>(L.k), atoms.size());
	for (std::size_t code = 0; code < total; ++code) {
		std::size_t x = code;
		for (const auto& n : atoms) {
			a[n] = static_cast<int>(x % L.k);
			x /= L.k;
		}
		if (!L.isDesignated(evalFormula(L, f, a)))
			return false;
	}
	return true;
}

std::vector<Bitprint> computeBitprints(const MVLogic& L) {
	std::vector<Bitprint> out;
	for (int v = 0; v < L.k; ++v) {
		Bitprint b{L.isDesignated(v)};
		for (const auto& s : L.separating)
			b.push_back(L.isDesignated(evalFormula(L, s, {{onlyAtom(s), v}})));
		out.push_back(std::move(b));
	}
	for (int v = 0; v < L.k; ++v)
		for (int w = v + 1; w < L.k; ++w)
			if (out[v] == out[w])
				throw MVError("bitprints of values " + L.label(v) + " and " + L.label(w) + " coincide: " + toString(out[v]));
	return out;
}

std::string toString(const Bitprint& b) {
	std::string s = "<";
	for (std::size_t i = 0; i < b.size(); ++i)
		s += (i ? "," : "") + std::string(b[i] ? "1" : "0");
	return s + ">";
}

namespace {

std::uint32_t pack(const Bitprint& b, std::size_t shift) {
	std::uint32_t m = 0;
	for (std::size_t i = 0; i < b.size(); ++i)
		if (b[i])
			m |= 1u << (shift + i);
	return m;
}

} // namespace

LocalRelation localRelation(const MVLogic& L, const std::string& connective) {
	auto prints = computeBitprints(L);
	LocalRelation out;
	out.connective = connective;
	out.bits = L.bitWidth();
	if (connective.empty()) {
		out.relation.width = out.bits;
		for (const auto& b : prints)
			out.relation.rows.push_back(pack(b, 0));
		return out;
	}
	const Connective* c = L.find(connective);
	if (!c)
		throw MVError("unknown connective '" + connective + "'");
	out.arity = c->arity;
	out.relation.width = out.bits * (c->arity + 1);
	if (out.relation.width > 12)
		throw MVError("connective '" + connective + "' is too wide for clause compilation");
	std::size_t rows = power(static_cast<std::size_t>(L.k), c->arity);
	for (std::size_t row = 0; row < rows; ++row) {
		std::uint32_t m = pack(prints.at(c->table.at(row)), 0);
		std::size_t x = row;
		for (std::size_t i = c->arity; i-- > 0;) {
			m |= pack(prints[x % L.k], out.bits * (i + 1));
			x /= L.k;
		}
		out.relation.rows.push_back(m);
	}
	return out;
}

std::vector<BoolClause> relationClauses(const MVLogic& L, const LocalRelation& rel) {
	auto clauses = primeImplicates(rel.relation);
	std::uint32_t subjectMask = (1u << rel.bits) - 1;
	if (!rel.connective.empty())
		clauses = mergeClauses(std::move(clauses), rowClauses(rel.relation, subjectMask));
	BoolRelation prints;
	prints.width = rel.bits;
	for (const auto& b : computeBitprints(L))
		prints.rows.push_back(pack(b, 0));
	auto excl = exclusionClauses(prints, subjectMask);
	for (std::size_t s = 0; s <= rel.arity; ++s) {
		std::size_t shift = s * rel.bits;
		std::vector<BoolClause> shifted;
		for (const auto& c : excl)
			shifted.push_back({c.positives << shift, c.negatives << shift});
		clauses = mergeClauses(std::move(clauses), shifted);
	}
	return clauses;
}

Formula literal(const Formula& subject, std::size_t index) {
	if (index == 0)
		return atomize(subject);
	return Formula::atom("p[phi" + std::to_string(index) + "," + canonicalWord(subject) + "]");
}

std::vector<Formula> targets(const MVLogic& L, const Formula& alpha) {
	std::vector<Formula> out;
	for (const auto& s : subformulas(alpha))
		for (std::size_t i = 0; i < L.bitWidth(); ++i)
			out.push_back(literal(s, i));
	return out;
}

std::vector<std::string> clauseFamilies(const MVLogic& L) {
	std::vector<std::string> out{"mv:value"};
	for (const auto& c : L.connectives)
		out.push_back("mv:" + c.name);
	return out;
}

AxiomSet compileClauses(const MVLogic& L, const Formula& alpha, const std::optional<Mutation>& mutation) {
	std::map<std::string, std::vector<BoolClause>> cache;
	auto clausesFor = [&](const std::string& name) -> const std::vector<BoolClause>& {
		auto it = cache.find(name);
		if (it == cache.end())
			it = cache.emplace(name, relationClauses(L, localRelation(L, name))).first;
		return it->second;
	};
	auto chis = targets(L, alpha);
	std::vector<Axiom> axioms;
	std::unordered_set<std::string> seen;
	auto add = [&](Formula f, const std::string& family, const std::string& origin) {
		if (mutation && mutation->family == family) {
			if (mutation->mode == Mutation::Mode::Drop)
				return;
			if (f.isImplies())
				f = f.rhs();
		}
		if (seen.insert(print(f)).second)
			axioms.push_back({f, family, origin});
	};
	auto instantiate = [&](const std::vector<BoolClause>& cs, const std::vector<Formula>& subjects,
	                       const std::string& family, const std::string& where) {
		std::vector<Formula> lits;
		for (const auto& s : subjects)
			for (std::size_t i = 0; i < L.bitWidth(); ++i)
				lits.push_back(literal(s, i));
		for (const auto& c : cs)
			for (const auto& chi : chis)
				add(renderClause(c, lits, chi), family, where);
	};
	for (const auto& x : subformulas(alpha)) {
		if (x.isImplies())
			throw MVError("many-valued formulas use connectives only, found " + print(x));
		instantiate(clausesFor(""), {x}, "mv:value", "value at " + print(x));
		if (!x.isOpApp())
			continue;
		const Connective* c = L.find(x.name());
		if (!c)
			throw MVError("unknown connective '" + x.name() + "'");
		if (c->arity != x.args().size())
			throw MVError("connective '" + x.name() + "' has arity " + std::to_string(c->arity));
		std::vector<Formula> subjects{x};
		subjects.insert(subjects.end(), x.args().begin(), x.args().end());
		instantiate(clausesFor(x.name()), subjects, "mv:" + x.name(), x.name() + " at " + print(x));
	}
	std::sort(axioms.begin(), axioms.end(),
	          [](const Axiom& a, const Axiom& b) { return print(a.formula) < print(b.formula); });
	return {std::move(axioms)};
}

bool mvDecide(const MVLogic& L, const Formula& alpha, const std::optional<Mutation>& mutation) {
	Sequent s{compileClauses(L, alpha, mutation).formulas(), atomize(alpha)};
	return decide(s).provable;
}

bool mvDecideChecked(const MVLogic& L, const Formula& alpha) {
	bool viaProver = mvDecide(L, alpha);
	bool oracle = bruteForceValid(L, alpha);
	if (viaProver != oracle)
		throw OracleDisagreement("mvDecide says " + std::string(viaProver ? "valid" : "invalid") +
		                         " but truth tables say " + (oracle ? "valid" : "invalid") + " for " + print(alpha));
	return viaProver;
}

} // namespace ndstar
