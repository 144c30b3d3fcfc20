#pragma once

#include "ndstar/formula.hpp"
#include "ndstar/logic_spec.hpp"
#include "ndstar/manyvalued.hpp"
#include "ndstar/translator.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ndstar {

struct OperatorSig {
	std::string name;
	std::size_t arity = 0;
};

// All formulas over atoms and ops up to maxSize symbols, ordered by size and
// then by printed form.
std::vector<Formula> enumerateFormulas(const std::vector<std::string>& atoms, const std::vector<OperatorSig>& ops,
                                       bool withImplication, std::size_t maxSize);

struct Exhibit {
	Formula formula;
	bool oracle = false;
	bool prover = false;
};

struct EquivReport {
	std::string descriptor;
	std::size_t total = 0;
	std::size_t agreements = 0;
	std::vector<Exhibit> disagreements;

	bool ok() const { return disagreements.empty(); }
};

struct CorpusOptions {
	std::vector<std::string> atoms{"p", "q"};
	std::size_t maxSize = 5;
	std::optional<Mutation> mutation;
	// Stop after this many disagreements; 0 means check everything.
	std::size_t stopAfter = 0;
	// Worker threads; 0 picks the hardware concurrency.
	unsigned threads = 0;
};

// Truth tables serve as the oracle when every operator has one and there is
// no built-in implication.
bool hasTableOracle(const LogicSpec& spec);
bool tableValid(const LogicSpec& spec, const Formula& f);

// Oracle verdicts supplied explicitly, for logics without a table oracle.
struct ExpectedVerdict {
	Formula formula;
	bool valid = false;
};

EquivReport runEquivCorpus(const LogicSpec& spec, const CorpusOptions& options);
EquivReport runEquivList(const LogicSpec& spec, const std::vector<ExpectedVerdict>& expected,
                         const CorpusOptions& options);
EquivReport runEquivCorpus(const MVLogic& L, const CorpusOptions& options);

} // namespace ndstar
