#pragma once

#include "ndstar/formula.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ndstar {

// Admissible assignments to `width` boolean positions, one bitmask per row
// (bit j = position j).
struct BoolRelation {
	std::size_t width = 0;
	std::vector<std::uint32_t> rows;

	bool admits(std::uint32_t assignment) const;
};

// Disjunction of the literals in `negatives` and the complements of those in
// `positives`. Rendered as an implication: positives become plain antecedents,
// negatives become antecedents L -> chi, and chi is the consequent.
struct BoolClause {
	std::uint32_t positives = 0;
	std::uint32_t negatives = 0;

	bool satisfiedBy(std::uint32_t assignment) const;
	friend bool operator==(const BoolClause&, const BoolClause&) = default;
	friend auto operator<=>(const BoolClause&, const BoolClause&) = default;
};

bool validOver(const BoolClause& c, const BoolRelation& rel);

// Every clause valid over rel with no valid proper sub-clause, by exhaustive
// enumeration of the 3^width candidates.
std::vector<BoolClause> primeImplicates(const BoolRelation& rel);

// For a functional relation whose rows are keyed by the input positions:
// one clause per row and output position, stating that the inputs of that
// row force the row's value at the output position.
std::vector<BoolClause> rowClauses(const BoolRelation& rel, std::uint32_t outputMask);

// Clauses forbidding each pattern over `mask` that no row of rel exhibits
// on those positions.
std::vector<BoolClause> exclusionClauses(const BoolRelation& rel, std::uint32_t mask);

// Sorted union without duplicates.
std::vector<BoolClause> mergeClauses(std::vector<BoolClause> a, const std::vector<BoolClause>& b);

// literals[j] renders position j.
Formula renderClause(const BoolClause& c, const std::vector<Formula>& literals, const Formula& chi);

// Human-readable disjunction, e.g. "~L0 | L2".
std::string describeClause(const BoolClause& c, const std::vector<std::string>& names);

} // namespace ndstar
