#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ndstar {

// Immutable propositional formula: an atom, the built-in implication, or an
// application of a named operator. Copies share structure.
class Formula {
public:
	enum class Kind { Atom, Implies, OpApp };

	static Formula atom(std::string name);
	static Formula implies(Formula lhs, Formula rhs);
	static Formula app(std::string op, std::vector<Formula> args);

	Kind kind() const noexcept { return node_->kind; }
	bool isAtom() const noexcept { return kind() == Kind::Atom; }
	bool isImplies() const noexcept { return kind() == Kind::Implies; }
	bool isOpApp() const noexcept { return kind() == Kind::OpApp; }

	// Atom name or operator name; empty for implications.
	const std::string& name() const noexcept { return node_->name; }
	const Formula& lhs() const;
	const Formula& rhs() const;
	// Operator arguments; for implications, {lhs, rhs}.
	std::span<const Formula> args() const noexcept { return node_->children; }
	std::span<const Formula> children() const noexcept { return node_->children; }

	std::size_t hash() const noexcept { return node_->hash; }
	// Atom occurrences plus connective occurrences.
	std::size_t symbolLength() const noexcept { return node_->length; }
	// True when built from atoms and -> only.
	bool isImplicational() const noexcept { return node_->implicational; }

	friend bool operator==(const Formula& a, const Formula& b) noexcept;
	friend bool operator!=(const Formula& a, const Formula& b) noexcept { return !(a == b); }

private:
	struct Node {
		Kind kind;
		std::string name;
		std::vector<Formula> children;
		std::size_t hash = 0;
		std::size_t length = 0;
		bool implicational = false;
	};
	explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
	std::shared_ptr<const Node> node_;
};

struct FormulaHash {
	std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

// Parse failure; offset is the byte position in the input.
class ParseError : public std::runtime_error {
public:
	enum class Reason { Syntax, UnknownToken };
	ParseError(Reason reason, std::size_t offset, const std::string& what);
	Reason reason() const noexcept { return reason_; }
	std::size_t offset() const noexcept { return offset_; }

private:
	Reason reason_;
	std::size_t offset_;
};

Formula parse(std::string_view text);
std::string print(const Formula& f);

// Fully parenthesized, whitespace-free serialization. Injective.
std::string canonicalWord(const Formula& f);

// The reserved atom p[<canonical word>] naming an operator application.
// Throws std::invalid_argument for atoms and implications.
Formula canonicalAtom(const Formula& f);

// Distinct sub-formulas in post-order of first occurrence, f last.
std::vector<Formula> subformulas(const Formula& f);

inline std::size_t symbolLength(const Formula& f) { return f.symbolLength(); }

bool isSubformulaOf(const Formula& sub, const Formula& f);

// a1 -> (a2 -> (... -> head))
Formula nestImplications(std::span<const Formula> antecedents, Formula head);

bool isUserAtomName(std::string_view name);

} // namespace ndstar

template <>
struct std::hash<ndstar::Formula> {
	std::size_t operator()(const ndstar::Formula& f) const noexcept { return f.hash(); }
};
