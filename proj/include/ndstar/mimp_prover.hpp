#pragma once

#include "ndstar/derivation.hpp"
#include "ndstar/formula.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ndstar {

// Gamma |- goal over purely implicational formulas.
struct Sequent {
	std::vector<Formula> antecedents;
	Formula goal;
};

class NonImplicationalInput : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

// "h1 ; h2 |- goal"; an empty antecedent list is written "|- goal".
Sequent parseSequent(std::string_view text);
std::string print(const Sequent& s);

struct DecideOptions {
	bool wantDerivation = false;
	// Upper bound on proof contexts explored; 0 means unbounded.
	std::size_t fuel = 0;
};

struct DecideStats {
	std::size_t contexts = 0;
	bool fuelExhausted = false;
};

struct Decision {
	bool provable = false;
	std::optional<Derivation> derivation;
	DecideStats stats;
};

// Decides provability in implicational intuitionistic (= minimal) logic.
// Throws NonImplicationalInput on formulas containing operators, and
// std::runtime_error if a nonzero fuel bound is exhausted.
Decision decide(const Sequent& s, const DecideOptions& options = {});

enum class NaiveVerdict { Provable, Unprovable, BudgetExceeded };

std::string_view toString(NaiveVerdict v);

// Goal-directed backward search with loop checking; the budget bounds the
// depth of the search tree. Shares no code with decide().
NaiveVerdict naiveDecide(const Sequent& s, std::size_t depthBudget);

// Accepts iff d uses only ->-introduction and ->-elimination correctly over
// implicational formulas, with open hypotheses among hypotheses.
CheckReport checkMimpDerivation(const Derivation& d, const std::vector<Formula>& hypotheses);

} // namespace ndstar
