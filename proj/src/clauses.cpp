#include "ndstar/clauses.hpp"

#include <algorithm>
#include <stdexcept>

namespace ndstar {

bool BoolRelation::admits(std::uint32_t assignment) const {
	return std::find(rows.begin(), rows.end(), assignment) != rows.end();
}

bool BoolClause::satisfiedBy(std::uint32_t assignment) const {
	return (assignment & negatives) != 0 || (~assignment & positives) != 0;
}

bool validOver(const BoolClause& c, const BoolRelation& rel) {
	return std::all_of(rel.rows.begin(), rel.rows.end(), [&](std::uint32_t r) { return c.satisfiedBy(r); });
}

std::vector<BoolClause> primeImplicates(const BoolRelation& rel) {
	if (rel.width > 12)
		throw std::invalid_argument("primeImplicates: relation too wide for exhaustive enumeration");
	std::size_t total = 1;
	for (std::size_t i = 0; i < rel.width; ++i)
		total *= 3;
	std::vector<BoolClause> out;
	for (std::size_t code = 1; code < total; ++code) {
		BoolClause c;
		std::size_t x = code;
		for (std::size_t j = 0; j < rel.width; ++j, x /= 3) {
			if (x % 3 == 1)
				c.positives |= 1u << j;
			else if (x % 3 == 2)
				c.negatives |= 1u << j;
		}
		if (!validOver(c, rel))
			continue;
		bool prime = true;
		for (std::size_t j = 0; j < rel.width && prime; ++j) {
			std::uint32_t bit = 1u << j;
			if (!((c.positives | c.negatives) & bit))
				continue;
			BoolClause smaller{c.positives & ~bit, c.negatives & ~bit};
			if ((smaller.positives | smaller.negatives) && validOver(smaller, rel))
				prime = false;
		}
		if (prime)
			out.push_back(c);
	}
	std::sort(out.begin(), out.end());
	return out;
}

std::vector<BoolClause> rowClauses(const BoolRelation& rel, std::uint32_t outputMask) {
	std::uint32_t all = rel.width >= 32 ? ~0u : ((1u << rel.width) - 1);
	std::uint32_t inputMask = all & ~outputMask;
	std::vector<BoolClause> out;
	for (std::uint32_t row : rel.rows) {
		BoolClause base;
		base.positives = row & inputMask;
		base.negatives = ~row & inputMask;
		for (std::size_t j = 0; j < rel.width; ++j) {
			std::uint32_t bit = 1u << j;
			if (!(outputMask & bit))
				continue;
			BoolClause c = base;
			if (row & bit)
				c.negatives |= bit;
			else
				c.positives |= bit;
			if (!validOver(c, rel))
				throw std::invalid_argument("rowClauses: relation is not functional in its inputs");
			out.push_back(c);
		}
	}
	std::sort(out.begin(), out.end());
	out.erase(std::unique(out.begin(), out.end()), out.end());
	return out;
}

std::vector<BoolClause> exclusionClauses(const BoolRelation& rel, std::uint32_t mask) {
	std::vector<std::uint32_t> seen;
	for (std::uint32_t r : rel.rows)
		seen.push_back(r & mask);
	std::vector<BoolClause> out;
	// Enumerate sub-masks of mask.
	std::uint32_t p = 0;
	do {
		if (std::find(seen.begin(), seen.end(), p) == seen.end())
			out.push_back({p, mask & ~p});
		p = (p - mask) & mask;
	} while (p != 0);
	std::sort(out.begin(), out.end());
	return out;
}

std::vector<BoolClause> mergeClauses(std::vector<BoolClause> a, const std::vector<BoolClause>& b) {
	a.insert(a.end(), b.begin(), b.end());
	std::sort(a.begin(), a.end());
	a.erase(std::unique(a.begin(), a.end()), a.end());
	return a;
}

Formula renderClause(const BoolClause& c, const std::vector<Formula>& literals, const Formula& chi) {
	std::vector<Formula> ants;
	for (std::size_t j = 0; j < literals.size(); ++j) {
		std::uint32_t bit = 1u << j;
		if (c.positives & bit)
			ants.push_back(literals[j]);
		else if (c.negatives & bit)
			ants.push_back(Formula::implies(literals[j], chi));
	}
	return nestImplications(ants, chi);
}

std::string describeClause(const BoolClause& c, const std::vector<std::string>& names) {
	std::string s;
	for (std::size_t j = 0; j < names.size(); ++j) {
		std::uint32_t bit = 1u << j;
		if (!((c.positives | c.negatives) & bit))
			continue;
		if (!s.empty())
			s += " | ";
		s += (c.positives & bit ? "~" : "") + names[j];
	}
	return s;
}

} // namespace ndstar
