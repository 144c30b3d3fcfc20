#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ndstar/corpus.hpp"
#include "ndstar/io.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <map>

using namespace ndstar;

namespace {

// Number of formulas with exactly n symbols.
std::vector<std::size_t> countBySize(std::size_t atoms, const std::vector<OperatorSig>& ops, bool imp, std::size_t max) {
	std::vector<std::size_t> c(max + 1, 0);
	for (std::size_t n = 1; n <= max; ++n) {
		if (n == 1) {
			c[1] = atoms;
			for (const auto& op : ops)
				c[1] += op.arity == 0;
			continue;
		}
		if (imp)
			for (std::size_t l = 1; l + 1 < n; ++l)
				c[n] += c[l] * c[n - 1 - l];
		for (const auto& op : ops) {
			if (op.arity == 0)
				continue;
			// ways to split n - 1 symbols over op.arity arguments
			std::vector<std::size_t> ways(n, 0);
			ways[0] = 1;
			for (std::size_t k = 0; k < op.arity; ++k) {
				std::vector<std::size_t> next(n, 0);
				for (std::size_t used = 0; used < n; ++used)
					for (std::size_t s = 1; used + s < n; ++s)
						next[used + s] += ways[used] * c[s];
				ways = next;
			}
			c[n] += ways[n - 1];
		}
	}
	return c;
}

const LogicSpec& classical() {
	static const LogicSpec s = loadSpec(gen::dataPath("classical2.json"));
	return s;
}

} // namespace

TEST_CASE("enumeration counts") {
	std::vector<OperatorSig> ops{{"and", 2}, {"not", 1}, {"bot", 0}};
	auto all = enumerateFormulas({"p", "q"}, ops, true, 6);
	auto expect = countBySize(2, ops, true, 6);
	std::map<std::size_t, std::size_t> got;
	for (const auto& f : all)
		++got[symbolLength(f)];
	for (std::size_t n = 1; n <= 6; ++n)
		CHECK(got[n] == expect[n]);
}

TEST_CASE("enumeration order is size then print") {
	auto all = enumerateFormulas({"a", "b"}, {{"neg3", 1}}, false, 5);
	for (std::size_t i = 1; i < all.size(); ++i) {
		auto m = symbolLength(all[i - 1]), n = symbolLength(all[i]);
		CHECK((m < n || (m == n && print(all[i - 1]) < print(all[i]))));
	}
}

TEST_CASE("truth-table oracle availability") {
	CHECK(hasTableOracle(classical()));
	CHECK_FALSE(hasTableOracle(loadSpec(gen::dataPath("intuitionistic.json"))));
	CHECK(tableValid(classical(), parse("or(p,not(p))")));
	CHECK_FALSE(tableValid(classical(), parse("imp(p,q)")));
	CHECK_THROWS(runEquivCorpus(loadSpec(gen::dataPath("intuitionistic.json")), CorpusOptions{}));
}

TEST_CASE("classical corpus agrees") {
	CorpusOptions o;
	o.maxSize = 5;
	auto r = runEquivCorpus(classical(), o);
	CHECK(r.ok());
	CHECK(r.total == r.agreements);
	CHECK(r.total == enumerateFormulas({"p", "q"}, {{"and", 2}, {"or", 2}, {"imp", 2}, {"not", 1}}, false, 5).size());
	CHECK_FALSE(r.descriptor.empty());
}

TEST_CASE("reports do not depend on the thread count") {
	CorpusOptions o;
	o.maxSize = 5;
	o.threads = 1;
	o.mutation = Mutation{"table:imp", Mutation::Mode::Strengthen};
	auto one = runEquivCorpus(classical(), o);
	o.threads = 4;
	auto four = runEquivCorpus(classical(), o);
	CHECK(one.total == four.total);
	REQUIRE(one.disagreements.size() == four.disagreements.size());
	CHECK(one.disagreements.size() > 0);
	for (std::size_t i = 0; i < one.disagreements.size(); ++i)
		CHECK(one.disagreements[i].formula == four.disagreements[i].formula);
}

TEST_CASE("classical mutations are caught") {
	CorpusOptions o;
	o.maxSize = 7;
	o.stopAfter = 1;
	for (const auto& family : axiomFamilies(classical())) {
		CAPTURE(family);
		o.mutation = Mutation{family, Mutation::Mode::Strengthen};
		CHECK_FALSE(runEquivCorpus(classical(), o).ok());
	}
}

TEST_CASE("expected-verdict lists for the intuitionistic spec") {
	auto spec = loadSpec(gen::dataPath("intuitionistic.json"));
	std::vector<ExpectedVerdict> expected;
	for (const auto& f : enumerateFormulas({"p", "q"}, {{"and", 2}, {"or", 2}, {"bot", 0}}, true, 5))
		expected.push_back({f, oracle::intuitionisticValid(f)});
	CorpusOptions o;
	auto r = runEquivList(spec, expected, o);
	CHECK(r.ok());
	CHECK(r.total == expected.size());
	o.stopAfter = 1;
	for (const auto& family : axiomFamilies(spec)) {
		CAPTURE(family);
		o.mutation = Mutation{family, Mutation::Mode::Drop};
		CHECK_FALSE(runEquivList(spec, expected, o).ok());
	}
}

TEST_CASE("many-valued corpus agrees") {
	auto L = loadMV(gen::dataPath("lukasiewicz3.json"));
	CorpusOptions o;
	o.atoms = {"a", "b"};
	o.maxSize = 4;
	auto r = runEquivCorpus(L, o);
	CHECK(r.ok());
	CHECK(r.total > 20);
	auto C = loadMV(gen::dataPath("classical_mv.json"));
	o.maxSize = 5;
	CHECK(runEquivCorpus(C, o).ok());
}

TEST_CASE("sub-formula count") {
	std::mt19937 rng(61);
	gen::Vocabulary v;
	v.atoms = {"a", "b", "c"};
	v.ops = {{"f", 3}, {"g", 1}, {"k", 0}};
	for (int i = 0; i < 2000; ++i) {
		Formula f = gen::formulaUpTo(rng, v, 30);
		CHECK(subformulas(f).size() <= symbolLength(f));
	}
}
