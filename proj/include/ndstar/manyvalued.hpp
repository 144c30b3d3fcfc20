#pragma once

#include "ndstar/clauses.hpp"
#include "ndstar/formula.hpp"
#include "ndstar/translator.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndstar {

struct Connective {
	std::string name;
	std::size_t arity = 0;
	// Row-major over value^arity, first argument most significant.
	std::vector<int> table;
};

// Finitely many-valued logic with values 0..k-1.
struct MVLogic {
	std::string name;
	int k = 2;
	std::vector<std::string> values; // labels, one per value
	std::vector<int> designated;
	std::vector<Connective> connectives;
	// One-variable formulas over the connectives.
	std::vector<Formula> separating;

	const Connective* find(const std::string& name) const;
	bool isDesignated(int v) const;
	std::string label(int v) const;
	// Value for a label, or for a decimal numeral.
	std::optional<int> valueOf(const std::string& label) const;
	std::size_t bitWidth() const { return separating.size() + 1; }
};

class MVError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

// Empty iff tables are total and functional, designated values are in
// range, and the number of separating formulas is ceil(log2 k) - 1.
std::vector<std::string> validateMVLogic(const MVLogic& L);

using Assignment = std::map<std::string, int>;

int evalFormula(const MVLogic& L, const Formula& f, const Assignment& assignment);
bool bruteForceValid(const MVLogic& L, const Formula& f);

using Bitprint = std::vector<bool>;

// Throws MVError naming the colliding values when bitprints are not
// injective.
std::vector<Bitprint> computeBitprints(const MVLogic& L);
std::string toString(const Bitprint& b);

// Positions: the result's bits first, then each argument's bits in order.
// For the empty connective name, the one-subject relation {bitprint(v)}.
struct LocalRelation {
	std::string connective;
	std::size_t arity = 0;
	std::size_t bits = 1;
	BoolRelation relation;
};

LocalRelation localRelation(const MVLogic& L, const std::string& connective);

// Prime implicates together with one clause per row and output bit and the
// exclusions of non-bitprint patterns on each subject.
std::vector<BoolClause> relationClauses(const MVLogic& L, const LocalRelation& rel);

// Literal of X at bit index i: M(X) for i = 0, else p[phi<i>,<word of X>].
Formula literal(const Formula& subject, std::size_t index);

// Every literal of every sub-formula of alpha.
std::vector<Formula> targets(const MVLogic& L, const Formula& alpha);

// Mutation families: "mv:value" and "mv:<connective>".
std::vector<std::string> clauseFamilies(const MVLogic& L);

AxiomSet compileClauses(const MVLogic& L, const Formula& alpha,
                        const std::optional<Mutation>& mutation = std::nullopt);

bool mvDecide(const MVLogic& L, const Formula& alpha, const std::optional<Mutation>& mutation = std::nullopt);

class OracleDisagreement : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

// mvDecide, throwing OracleDisagreement when it differs from brute force.
bool mvDecideChecked(const MVLogic& L, const Formula& alpha);

} // namespace ndstar
