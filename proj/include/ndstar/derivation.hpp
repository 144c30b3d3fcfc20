#pragma once

#include "ndstar/formula.hpp"
#include "ndstar/logic_spec.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ndstar {

enum class RuleKind { Hypothesis, Intro, Elim, ImpIntro, ImpElim };

// Natural-deduction derivation tree. Immutable; subtrees may be shared.
//
// Child layout by kind:
//   Intro     premises = one sub-derivation per rule group
//   Elim      premises = {major}, minors = simple minors, branches = d-minors
//   ImpIntro  premises = {body}
//   ImpElim   premises = {major A -> B, minor A}
// A discharge label on a rule application closes the hypotheses below it
// carrying the same label.
class Derivation {
public:
	static Derivation hypothesis(Formula f, std::optional<int> label = std::nullopt);
	static Derivation intro(std::string rule, Formula conclusion, std::vector<Derivation> premises,
	                        std::optional<int> label = std::nullopt);
	static Derivation elim(std::string op, Formula conclusion, Derivation major, std::vector<Derivation> minors,
	                       std::vector<Derivation> branches, std::optional<int> label = std::nullopt);
	static Derivation impIntro(Formula conclusion, Derivation body, std::optional<int> label = std::nullopt);
	static Derivation impElim(Derivation major, Derivation minor);

	RuleKind kind() const noexcept { return node_->kind; }
	const Formula& conclusion() const noexcept { return node_->conclusion; }
	const std::optional<int>& label() const noexcept { return node_->label; }
	// Intro rule name, or operator name for Elim.
	const std::string& rule() const noexcept { return node_->rule; }
	const std::vector<Derivation>& premises() const noexcept { return node_->premises; }
	const std::vector<Derivation>& minors() const noexcept { return node_->minors; }
	const std::vector<Derivation>& branches() const noexcept { return node_->branches; }
	const Derivation& major() const { return node_->premises.at(0); }

	const void* identity() const noexcept { return node_.get(); }
	// Number of nodes counted as a tree.
	std::size_t size() const;

private:
	struct Node {
		RuleKind kind;
		Formula conclusion;
		std::optional<int> label;
		std::string rule;
		std::vector<Derivation> premises;
		std::vector<Derivation> minors;
		std::vector<Derivation> branches;
	};
	explicit Derivation(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
	std::shared_ptr<const Node> node_;
};

// Node paths: "" is the root; each step is "/p<i>", "/m<i>" or "/b<i>".
struct CheckIssue {
	std::string path;
	std::string message;
};

struct CheckReport {
	std::vector<CheckIssue> issues;
	bool ok() const noexcept { return issues.empty(); }
	std::string describe() const;
};

// Checks rule applications against spec and discharge bookkeeping (liberal:
// multiple and vacuous discharges allowed). Open hypotheses must be in
// hypotheses.
CheckReport checkDerivation(const LogicSpec& spec, const Derivation& d, const std::vector<Formula>& hypotheses);

// Every node with its path, pre-order.
std::vector<std::pair<std::string, Derivation>> subDerivations(const Derivation& d);

// d with hypotheses whose discharging rule lies outside d turned into open
// hypotheses.
Derivation standalone(const Derivation& d);

// Undischarged hypothesis formulas, deduplicated, in first-occurrence order.
std::vector<Formula> openHypotheses(const Derivation& d);

struct Occurrence {
	std::string path;
	Formula formula;
};

struct LinkingSequence {
	std::vector<Occurrence> steps;
};

class UncheckedDerivation : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

// All maximal linking-sequences, depth-first from the root's left. Throws
// UncheckedDerivation if d fails checkDerivation against its own open
// hypotheses.
std::vector<LinkingSequence> linkingSequences(const LogicSpec& spec, const Derivation& d);

bool isSubformulaLinking(const LinkingSequence& s);

struct SfpResult {
	bool holds = true;
	std::optional<LinkingSequence> witness;
	std::string reason;
};

// Sub-formula property for d as a derivation of goal from hypotheses.
// Membership is judged against goal and the hypotheses actually left open in
// d, which must be among hypotheses.
SfpResult satisfiesSFP(const LogicSpec& spec, const Derivation& d, const Formula& goal,
                       const std::vector<Formula>& hypotheses);
SfpResult satisfiesSFP(const LogicSpec& spec, const Derivation& d);

std::string describe(const LinkingSequence& s);

} // namespace ndstar
