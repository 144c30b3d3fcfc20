#pragma once

#include "ndstar/clauses.hpp"
#include "ndstar/derivation.hpp"
#include "ndstar/formula.hpp"
#include "ndstar/logic_spec.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndstar {

class UndeclaredOperator : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

// M: atoms and implications are kept, operator applications become their
// canonical atoms.
Formula atomize(const Formula& f);

Formula iotaAxiom(const IntroRule& rule, const IntroInstance& inst);
Formula epsilonAxiom(const ElimRule& rule, const ElimInstance& inst, const Formula& chi);

// Fault injection for sensitivity tests. A family is "iota:<rule>",
// "eps:<op>" or "table:<op>".
struct Mutation {
	enum class Mode { Drop, Strengthen };
	std::string family;
	Mode mode = Mode::Drop;
};

std::string toString(Mutation::Mode m);

struct Axiom {
	Formula formula;
	std::string family;
	std::string origin; // rule, instance and chi
};

// Ordered by printed form, duplicate-free.
struct AxiomSet {
	std::vector<Axiom> axioms;

	std::vector<Formula> formulas() const;
	std::size_t size() const { return axioms.size(); }
};

// Every mutation family the spec can produce.
std::vector<std::string> axiomFamilies(const LogicSpec& spec);

// Clauses describing a two-valued operator table over positions
// [result, arg0, ..., arg(a-1)].
std::vector<BoolClause> tableClauses(const OperatorDecl& op);

// A over target with the given context formulas. Elimination rules missing
// from spec are derived.
AxiomSet axiomatize(const LogicSpec& spec, const Formula& target, const std::vector<Formula>& context = {},
                    const std::optional<Mutation>& mutation = std::nullopt);

struct SizeReport {
	std::size_t m = 0; // symbolLength(source)
	std::size_t n = 0; // symbolLength(image)
	std::size_t k = 0; // spec constant
	bool withinBound() const { return n <= k * m * m * m; }
};

struct StarResult {
	Formula source;
	Formula image;
	AxiomSet axioms;
	SizeReport size;
};

// Constant K with symbolLength(star) <= K * m^3 for every formula of spec.
std::size_t sizeConstant(const LogicSpec& spec);

StarResult starTranslate(const LogicSpec& spec, const Formula& alpha,
                         const std::optional<Mutation>& mutation = std::nullopt);

// Throws if alpha uses an operator spec does not declare, or with the wrong
// arity, or uses -> when spec has no implication.
void checkWellFormed(const LogicSpec& spec, const Formula& alpha);

// M(gamma) for the open hypotheses gamma, together with the axioms over each
// of them and over the conclusion, in the context of all of them.
std::vector<Formula> lemma1Set(const LogicSpec& spec, const Formula& conclusion, const std::vector<Formula>& gamma);

class NotSfp : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

// Translates a checked derivation with the sub-formula property into a
// derivation of M(conclusion) using only ->-rules, with axioms as open
// hypotheses. Throws UncheckedDerivation or NotSfp.
Derivation translateDerivation(const LogicSpec& spec, const Derivation& d);

} // namespace ndstar
