#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ndstar/corpus.hpp"
#include "ndstar/formula.hpp"
#include "support/generators.hpp"

#include <set>

using namespace ndstar;

namespace {
Formula A(const char* n) { return Formula::atom(n); }
} // namespace

TEST_CASE("implication is right associative") {
	CHECK(parse("a -> b -> c") == Formula::implies(A("a"), Formula::implies(A("b"), A("c"))));
	CHECK(parse("(a -> b) -> c") == Formula::implies(Formula::implies(A("a"), A("b")), A("c")));
}

TEST_CASE("operator applications parse with their arguments") {
	CHECK(parse("or(a,b) -> a") == Formula::implies(Formula::app("or", {A("a"), A("b")}), A("a")));
	CHECK(parse("  and( a , b->c )") == Formula::app("and", {A("a"), Formula::implies(A("b"), A("c"))}));
	CHECK(parse("bot()") == Formula::app("bot", {}));
}

TEST_CASE("syntax errors report byte offsets") {
	try {
		parse("a ->");
		FAIL("expected a parse error");
	} catch (const ParseError& e) {
		CHECK(e.reason() == ParseError::Reason::Syntax);
		CHECK(e.offset() == 4);
	}
	CHECK_THROWS_AS(parse("or(a,"), ParseError);
	CHECK_THROWS_AS(parse("a b"), ParseError);
	CHECK_THROWS_AS(parse(""), ParseError);
	CHECK_THROWS_AS(parse("p[or(a, b)]"), ParseError);
}

TEST_CASE("unknown tokens are distinguished") {
	try {
		parse("a & b");
		FAIL("expected a parse error");
	} catch (const ParseError& e) {
		CHECK(e.reason() == ParseError::Reason::UnknownToken);
		CHECK(e.offset() == 2);
	}
	CHECK_THROWS_AS(parse("A -> b"), ParseError);
}

TEST_CASE("printing") {
	CHECK(print(Formula::implies(A("a"), A("b"))) == "a -> b");
	CHECK(print(Formula::app("or", {A("a"), A("b")})) == "or(a,b)");
	CHECK(print(Formula::implies(Formula::implies(A("a"), A("b")), A("c"))) == "(a -> b) -> c");
	CHECK(print(parse("a -> (b -> c)")) == "a -> b -> c");
}

TEST_CASE("reserved atoms survive a round trip as atoms") {
	Formula f = canonicalAtom(parse("or(a,b->c)"));
	CHECK(f.isAtom());
	CHECK(f.name() == "p[or(a,(b->c))]");
	Formula g = parse(print(Formula::implies(f, A("a"))));
	CHECK(g.lhs() == f);
}

TEST_CASE("round trip over random formulas") {
	std::mt19937 rng(11);
	gen::Vocabulary v;
	v.ops = {{"or", 2}, {"and", 2}, {"not", 1}, {"bot", 0}, {"maj", 3}};
	for (int i = 0; i < 3000; ++i) {
		Formula f = gen::formulaUpTo(rng, v, 25);
		REQUIRE(parse(print(f)) == f);
		REQUIRE(parse(canonicalWord(f)) == f);
	}
}

TEST_CASE("sub-formulas in post-order of first occurrence") {
	auto s = subformulas(parse("a -> b"));
	REQUIRE(s.size() == 3);
	CHECK(s[0] == A("a"));
	CHECK(s[1] == A("b"));
	CHECK(s[2] == parse("a -> b"));
	CHECK(subformulas(A("p")) == std::vector<Formula>{A("p")});
	auto t = subformulas(parse("or(a,b) -> a"));
	REQUIRE(t.size() == 4);
	CHECK(t[2] == parse("or(a,b)"));
	CHECK(t.size() <= symbolLength(parse("or(a,b) -> a")));
}

TEST_CASE("symbol length") {
	CHECK(symbolLength(A("a")) == 1);
	CHECK(symbolLength(parse("a -> b")) == 3);
	CHECK(symbolLength(parse("or(a,b) -> a")) == 5);
	CHECK(symbolLength(parse("bot()")) == 1);
}

TEST_CASE("canonical atoms") {
	CHECK(canonicalAtom(parse("or(a,b)")) == A("p[or(a,b)]"));
	CHECK(canonicalAtom(parse("or(a,b)")) != canonicalAtom(parse("or(b,a)")));
	CHECK_THROWS_AS(canonicalAtom(parse("a -> b")), std::invalid_argument);
	CHECK_THROWS_AS(canonicalAtom(A("a")), std::invalid_argument);
}

TEST_CASE("canonical atoms are injective over an exhaustive corpus") {
	auto all = enumerateFormulas({"a", "b"}, {{"f", 2}, {"g", 1}, {"c", 0}}, true, 6);
	std::set<std::string> names;
	std::size_t apps = 0;
	for (const auto& f : all)
		if (f.isOpApp()) {
			++apps;
			names.insert(canonicalAtom(f).name());
		}
	CHECK(apps == names.size());
}

TEST_CASE("equality is structural") {
	CHECK(parse("or(a,b)") == parse("or( a,b )"));
	CHECK(parse("or(a,b)") != parse("and(a,b)"));
	CHECK(A("a") != parse("a()"));
}

TEST_CASE("sub-formula relation") {
	CHECK(isSubformulaOf(A("b"), parse("a -> b")));
	CHECK(isSubformulaOf(parse("a -> b"), parse("a -> b")));
	CHECK_FALSE(isSubformulaOf(A("c"), parse("a -> b")));
}
