#include "ndstar/formula.hpp"

#include <cctype>
#include <unordered_set>

namespace ndstar {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
	return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool isIdentStart(char c) { return c >= 'a' && c <= 'z'; }
bool isIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

} // namespace

Formula Formula::atom(std::string name) {
	Node n{Kind::Atom, std::move(name), {}};
	n.hash = mix(std::hash<std::string>{}(n.name), 1);
	n.length = 1;
	n.implicational = true;
	return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
	Node n{Kind::Implies, {}, {std::move(lhs), std::move(rhs)}};
	n.hash = mix(mix(2, n.children[0].hash()), n.children[1].hash());
	n.length = 1 + n.children[0].symbolLength() + n.children[1].symbolLength();
	n.implicational = n.children[0].isImplicational() && n.children[1].isImplicational();
	return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::app(std::string op, std::vector<Formula> args) {
	Node n{Kind::OpApp, std::move(op), std::move(args)};
	n.hash = mix(3, std::hash<std::string>{}(n.name));
	n.length = 1;
	for (const auto& a : n.children) {
		n.hash = mix(n.hash, a.hash());
		n.length += a.symbolLength();
	}
	n.implicational = false;
	return Formula(std::make_shared<const Node>(std::move(n)));
}

const Formula& Formula::lhs() const {
	if (!isImplies())
		throw std::logic_error("lhs() on a non-implication");
	return node_->children[0];
}

const Formula& Formula::rhs() const {
	if (!isImplies())
		throw std::logic_error("rhs() on a non-implication");
	return node_->children[1];
}

bool operator==(const Formula& a, const Formula& b) noexcept {
	if (a.node_ == b.node_)
		return true;
	if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind || a.node_->length != b.node_->length)
		return false;
	if (a.node_->name != b.node_->name || a.node_->children.size() != b.node_->children.size())
		return false;
	for (std::size_t i = 0; i < a.node_->children.size(); ++i)
		if (a.node_->children[i] != b.node_->children[i])
			return false;
	return true;
}

ParseError::ParseError(Reason reason, std::size_t offset, const std::string& what)
	: std::runtime_error(what + " at offset " + std::to_string(offset)), reason_(reason), offset_(offset) {}

namespace {

class Parser {
public:
	explicit Parser(std::string_view text) : text_(text) {}

	Formula parseAll() {
		Formula f = parseImpl();
		skipSpace();
		if (pos_ != text_.size()) {
			char c = text_[pos_];
			if (!isIdentStart(c) && c != '(' && c != ')' && c != ',' && c != '-' && c != '[' && c != ']')
				throw ParseError(ParseError::Reason::UnknownToken, pos_, std::string("unknown token '") + c + "'");
			fail("unexpected input");
		}
		return f;
	}

private:
	[[noreturn]] void fail(const std::string& msg) const {
		throw ParseError(ParseError::Reason::Syntax, pos_, "syntax error: " + msg);
	}

	void skipSpace() {
		while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
			++pos_;
	}

	bool consume(std::string_view tok) {
		skipSpace();
		if (text_.substr(pos_, tok.size()) == tok) {
			pos_ += tok.size();
			return true;
		}
		return false;
	}

	Formula parseImpl() {
		Formula lhs = parseApp();
		if (consume("->"))
			return Formula::implies(std::move(lhs), parseImpl());
		return lhs;
	}

	Formula parseApp() {
		skipSpace();
		if (pos_ >= text_.size())
			fail("expected formula");
		char c = text_[pos_];
		if (c == '(') {
			++pos_;
			Formula inner = parseImpl();
			if (!consume(")"))
				fail("expected ')'");
			return inner;
		}
		if (!isIdentStart(c)) {
			if (c == ')' || c == ',' || c == '-')
				fail("expected formula");
			throw ParseError(ParseError::Reason::UnknownToken, pos_, std::string("unknown token '") + c + "'");
		}
		std::size_t start = pos_;
		while (pos_ < text_.size() && isIdentChar(text_[pos_]))
			++pos_;
		std::string ident(text_.substr(start, pos_ - start));
		if (ident == "p" && pos_ < text_.size() && text_[pos_] == '[')
			return parseBracketAtom(start);
		skipSpace();
		if (pos_ < text_.size() && text_[pos_] == '(') {
			++pos_;
			std::vector<Formula> args;
			if (!consume(")")) {
				args.push_back(parseImpl());
				while (consume(","))
					args.push_back(parseImpl());
				if (!consume(")"))
					fail("expected ',' or ')'");
			}
			return Formula::app(std::move(ident), std::move(args));
		}
		return Formula::atom(std::move(ident));
	}

	Formula parseBracketAtom(std::size_t start) {
		// pos_ is at '['
		int depth = 0;
		for (; pos_ < text_.size(); ++pos_) {
			char c = text_[pos_];
			if (c == '[')
				++depth;
			else if (c == ']' && --depth == 0)
				break;
			else if (std::isspace(static_cast<unsigned char>(c)))
				fail("whitespace inside reserved atom name");
		}
		if (pos_ >= text_.size())
			fail("unterminated '['");
		++pos_;
		if (pos_ - start <= 3)
			fail("empty reserved atom name");
		return Formula::atom(std::string(text_.substr(start, pos_ - start)));
	}

	std::string_view text_;
	std::size_t pos_ = 0;
};

void printTo(const Formula& f, std::string& out) {
	switch (f.kind()) {
	case Formula::Kind::Atom:
		out += f.name();
		return;
	case Formula::Kind::Implies:
		if (f.lhs().isImplies()) {
			out += '(';
			printTo(f.lhs(), out);
			out += ')';
		} else
			printTo(f.lhs(), out);
		out += " -> ";
		printTo(f.rhs(), out);
		return;
	case Formula::Kind::OpApp:
		out += f.name();
		out += '(';
		for (std::size_t i = 0; i < f.args().size(); ++i) {
			if (i)
				out += ',';
			printTo(f.args()[i], out);
		}
		out += ')';
		return;
	}
}

void canonicalTo(const Formula& f, std::string& out) {
	switch (f.kind()) {
	case Formula::Kind::Atom:
		out += f.name();
		return;
	case Formula::Kind::Implies:
		out += '(';
		canonicalTo(f.lhs(), out);
		out += "->";
		canonicalTo(f.rhs(), out);
		out += ')';
		return;
	case Formula::Kind::OpApp:
		out += f.name();
		out += '(';
		for (std::size_t i = 0; i < f.args().size(); ++i) {
			if (i)
				out += ',';
			canonicalTo(f.args()[i], out);
		}
		out += ')';
		return;
	}
}

void collect(const Formula& f, std::unordered_set<Formula>& seen, std::vector<Formula>& out) {
	if (seen.contains(f))
		return;
	for (const auto& c : f.args())
		collect(c, seen, out);
	if (seen.insert(f).second)
		out.push_back(f);
}

} // namespace

Formula parse(std::string_view text) { return Parser(text).parseAll(); }

std::string print(const Formula& f) {
	std::string out;
	printTo(f, out);
	return out;
}

std::string canonicalWord(const Formula& f) {
	std::string out;
	canonicalTo(f, out);
	return out;
}

Formula canonicalAtom(const Formula& f) {
	if (!f.isOpApp())
		throw std::invalid_argument("canonicalAtom: only operator applications are atomized, got '" + print(f) + "'");
	return Formula::atom("p[" + canonicalWord(f) + "]");
}

std::vector<Formula> subformulas(const Formula& f) {
	std::unordered_set<Formula> seen;
	std::vector<Formula> out;
	collect(f, seen, out);
	return out;
}

bool isSubformulaOf(const Formula& sub, const Formula& f) {
	if (sub.symbolLength() > f.symbolLength())
		return false;
	if (sub == f)
		return true;
	for (const auto& c : f.args())
		if (isSubformulaOf(sub, c))
			return true;
	return false;
}

Formula nestImplications(std::span<const Formula> antecedents, Formula head) {
	for (auto it = antecedents.rbegin(); it != antecedents.rend(); ++it)
		head = Formula::implies(*it, std::move(head));
	return head;
}

bool isUserAtomName(std::string_view name) {
	if (name.empty() || !isIdentStart(name[0]))
		return false;
	for (char c : name)
		if (!isIdentChar(c))
			return false;
	return true;
}

} // namespace ndstar
