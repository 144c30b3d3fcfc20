#include "ndstar/mimp_prover.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <memory>
#include <unordered_map>

namespace ndstar {

namespace {

using Id = std::uint32_t;
constexpr Id kNone = UINT32_MAX;
constexpr int kSelf = -2;
constexpr int kAtomic = -1;

// Interned implicational formulas. Every formula is kept in the shape
// A1 -> ... -> An -> q with q an atom.
class Arena {
public:
	Id intern(const Formula& f) {
		if (auto it = index_.find(f); it != index_.end())
			return it->second;
		if (!f.isImplicational())
			throw NonImplicationalInput("not an implicational formula: " + print(f));
		Entry e{f, f.isAtom(), kNone, kNone, {}, kNone};
		if (!e.atom) {
			e.lhs = intern(f.lhs());
			e.rhs = intern(f.rhs());
		}
		Id id = static_cast<Id>(entries_.size());
		entries_.push_back(std::move(e));
		index_.emplace(f, id);
		Entry& ref = entries_.back();
		if (ref.atom)
			ref.head = id;
		else {
			ref.ants.push_back(ref.lhs);
			const Entry& r = entries_[ref.rhs];
			ref.ants.insert(ref.ants.end(), r.ants.begin(), r.ants.end());
			ref.head = r.head;
		}
		return id;
	}

	std::size_t size() const { return entries_.size(); }
	bool atom(Id id) const { return entries_[id].atom; }
	const Formula& formula(Id id) const { return entries_[id].f; }
	const std::vector<Id>& ants(Id id) const { return entries_[id].ants; }
	Id head(Id id) const { return entries_[id].head; }
	Id rhs(Id id) const { return entries_[id].rhs; }

private:
	struct Entry {
		Formula f;
		bool atom;
		Id lhs, rhs;
		std::vector<Id> ants;
		Id head;
	};
	std::deque<Entry> entries_;
	std::unordered_map<Formula, Id> index_;
};

struct VecHash {
	std::size_t operator()(const std::vector<Id>& v) const noexcept {
		std::size_t h = v.size();
		for (Id x : v)
			h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
		return h;
	}
};

struct Justification {
	Id clause = kNone; // kNone: the atom is a hypothesis of the context
	std::vector<int> how; // per antecedent: kAtomic, kSelf or a child context
};

struct Context {
	std::vector<Id> extra; // hypotheses beyond the base, sorted
	std::vector<std::uint8_t> known;
	std::unordered_map<Id, Justification> why;
};

class Prover {
public:
	Prover(const Sequent& s, const DecideOptions& opt) : opt_(opt) {
		for (const auto& a : s.antecedents)
			base_.push_back(arena_.intern(a));
		goal_ = arena_.intern(s.goal);
		n_ = arena_.size();
		isBase_.assign(n_, 0);
		for (Id b : base_)
			isBase_[b] = 1;
		std::sort(base_.begin(), base_.end());
		base_.erase(std::unique(base_.begin(), base_.end()), base_.end());
		baseWatch_.resize(n_);
		for (Id b : base_) {
			if (arena_.atom(b))
				continue;
			std::size_t ci = baseClauses_.size();
			baseClauses_.push_back(b);
			for (Id a : arena_.ants(b))
				if (arena_.atom(a))
					baseWatch_[a].push_back(static_cast<std::uint32_t>(ci));
		}
	}

	Decision run() {
		Decision d;
		std::vector<Id> key = arena_.ants(goal_);
		std::sort(key.begin(), key.end());
		key.erase(std::unique(key.begin(), key.end()), key.end());
		int root = contextFor(key);
		Id target = arena_.head(goal_);
		d.provable = contexts_[root]->known[target] != 0;
		d.stats.contexts = contexts_.size();
		if (d.provable && opt_.wantDerivation)
			d.derivation = buildRoot(root);
		return d;
	}

private:
	bool present(const Context& c, Id id) const {
		if (arena_.atom(id))
			return c.known[id] != 0;
		return isBase_[id] || std::binary_search(c.extra.begin(), c.extra.end(), id);
	}

	int contextFor(const std::vector<Id>& key) {
		if (auto it = memo_.find(key); it != memo_.end())
			return it->second;
		if (opt_.fuel && created_ >= opt_.fuel)
			throw std::runtime_error("decide: fuel exhausted after " + std::to_string(created_) + " contexts");
		++created_;
		auto owned = std::make_unique<Context>();
		Context& c = *owned;
		c.extra = key;
		c.known.assign(n_, 0);

		std::vector<Id> clauses = baseClauses_;
		std::vector<std::vector<std::uint32_t>> extraWatch;
		std::unordered_map<Id, std::size_t> extraWatchIdx;
		for (Id e : key)
			if (!arena_.atom(e) && !isBase_[e])
				clauses.push_back(e);
		std::vector<int> count(clauses.size(), 0);
		std::vector<std::uint8_t> done(clauses.size(), 0);
		for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
			for (Id a : arena_.ants(clauses[ci]))
				if (arena_.atom(a)) {
					++count[ci];
					if (ci >= baseClauses_.size()) {
						auto [it, inserted] = extraWatchIdx.try_emplace(a, extraWatch.size());
						if (inserted)
							extraWatch.emplace_back();
						extraWatch[it->second].push_back(static_cast<std::uint32_t>(ci));
					}
				}
		}

		std::vector<Id> queue, derived;
		std::vector<std::size_t> pending;
		auto derive = [&](Id a, Justification j) {
			if (c.known[a])
				return false;
			c.known[a] = 1;
			c.why.emplace(a, std::move(j));
			queue.push_back(a);
			derived.push_back(a);
			return true;
		};
		auto ready = [&](std::size_t ci) {
			Id cl = clauses[ci];
			bool simple = true;
			for (Id a : arena_.ants(cl))
				if (!arena_.atom(a))
					simple = false;
			if (simple) {
				done[ci] = 1;
				Justification j{cl, std::vector<int>(arena_.ants(cl).size(), kAtomic)};
				derive(arena_.head(cl), std::move(j));
			} else
				pending.push_back(ci);
		};

		for (Id b : base_)
			if (arena_.atom(b))
				derive(b, {});
		for (Id e : key)
			if (arena_.atom(e))
				derive(e, {});
		for (std::size_t ci = 0; ci < clauses.size(); ++ci)
			if (count[ci] == 0)
				ready(ci);

		for (;;) {
			while (!queue.empty()) {
				Id a = queue.back();
				queue.pop_back();
				for (auto ci : baseWatch_[a])
					if (--count[ci] == 0)
						ready(ci);
				if (auto it = extraWatchIdx.find(a); it != extraWatchIdx.end())
					for (auto ci : extraWatch[it->second])
						if (--count[ci] == 0)
							ready(ci);
			}
			bool progress = false;
			for (std::size_t pi = 0; pi < pending.size(); ++pi) {
				std::size_t ci = pending[pi];
				if (done[ci])
					continue;
				Id cl = clauses[ci];
				if (c.known[arena_.head(cl)]) {
					done[ci] = 1;
					continue;
				}
				Justification j{cl, {}};
				bool ok = true;
				for (Id a : arena_.ants(cl)) {
					if (arena_.atom(a)) {
						j.how.push_back(kAtomic);
						continue;
					}
					Id r = arena_.head(a);
					if (c.known[r]) {
						j.how.push_back(kSelf);
						continue;
					}
					const auto& bs = arena_.ants(a);
					bool allPresent = std::all_of(bs.begin(), bs.end(), [&](Id b) { return present(c, b); });
					if (allPresent) {
						ok = false;
						break;
					}
					std::vector<Id> childKey;
					for (Id k : derived)
						if (!isBase_[k])
							childKey.push_back(k);
					for (Id k : c.extra)
						if (!arena_.atom(k))
							childKey.push_back(k);
					for (Id b : bs)
						if (!isBase_[b])
							childKey.push_back(b);
					std::sort(childKey.begin(), childKey.end());
					childKey.erase(std::unique(childKey.begin(), childKey.end()), childKey.end());
					int child = contextFor(childKey);
					if (!contexts_[child]->known[r]) {
						ok = false;
						break;
					}
					j.how.push_back(child);
				}
				if (ok) {
					done[ci] = 1;
					derive(arena_.head(cl), std::move(j));
					progress = true;
					break; // propagate before trying further pending clauses
				}
			}
			if (!progress && queue.empty())
				break;
		}

		int idx = static_cast<int>(contexts_.size());
		contexts_.push_back(std::move(owned));
		memo_.emplace(key, idx);
		return idx;
	}

	// Derivation reconstruction. An Env mirrors one context along a path of
	// nested ->-introductions.
	struct Env {
		const Env* parent;
		int ctx;
		std::unordered_map<Id, int> labels;
		std::unordered_map<Id, Derivation> memo;
	};

	Derivation lookup(Env& env, Id id) {
		if (auto it = env.labels.find(id); it != env.labels.end())
			return Derivation::hypothesis(arena_.formula(id), it->second);
		if (isBase_[id])
			return Derivation::hypothesis(arena_.formula(id));
		if (!env.parent)
			throw std::logic_error("decide: hypothesis without a source during reconstruction");
		Env& parent = const_cast<Env&>(*env.parent);
		if (arena_.atom(id))
			return atomProof(parent, id);
		return lookup(parent, id);
	}

	// Copy of d with every label bound inside d renamed, so that a reused
	// sub-proof never repeats a discharge label.
	Derivation freshen(const Derivation& d, std::unordered_map<int, int>& renamed) {
		switch (d.kind()) {
		case RuleKind::Hypothesis:
			if (d.label())
				if (auto it = renamed.find(*d.label()); it != renamed.end())
					return Derivation::hypothesis(d.conclusion(), it->second);
			return d;
		case RuleKind::ImpIntro: {
			int l = nextLabel_++;
			renamed[*d.label()] = l;
			return Derivation::impIntro(d.conclusion(), freshen(d.premises()[0], renamed), l);
		}
		case RuleKind::ImpElim:
			return Derivation::impElim(freshen(d.premises()[0], renamed), freshen(d.premises()[1], renamed));
		default: return d;
		}
	}

	Derivation atomProof(Env& env, Id a) {
		if (auto it = env.memo.find(a); it != env.memo.end()) {
			std::unordered_map<int, int> renamed;
			return freshen(it->second, renamed);
		}
		const Context& c = *contexts_[env.ctx];
		const Justification& j = c.why.at(a);
		Derivation out = [&] {
			if (j.clause == kNone)
				return lookup(env, a);
			Derivation cur = lookup(env, j.clause);
			const auto& ants = arena_.ants(j.clause);
			for (std::size_t i = 0; i < ants.size(); ++i) {
				Derivation minor = j.how[i] == kAtomic ? atomProof(env, ants[i]) : impProof(env, ants[i], j.how[i]);
				cur = Derivation::impElim(std::move(cur), std::move(minor));
			}
			return cur;
		}();
		env.memo.emplace(a, out);
		return out;
	}

	Derivation wrapIntros(Id f, const std::vector<int>& labels, Derivation body) {
		std::vector<Id> tails{f};
		for (std::size_t i = 0; i < labels.size(); ++i)
			tails.push_back(arena_.rhs(tails.back()));
		for (std::size_t i = labels.size(); i-- > 0;)
			body = Derivation::impIntro(arena_.formula(tails[i]), std::move(body), labels[i]);
		return body;
	}

	Derivation impProof(Env& env, Id f, int how) {
		const auto& bs = arena_.ants(f);
		std::vector<int> labels;
		for (std::size_t i = 0; i < bs.size(); ++i)
			labels.push_back(nextLabel_++);
		Id r = arena_.head(f);
		if (how == kSelf)
			return wrapIntros(f, labels, atomProof(env, r));
		Env child{&env, how, {}, {}};
		for (std::size_t i = 0; i < bs.size(); ++i)
			child.labels[bs[i]] = labels[i];
		return wrapIntros(f, labels, atomProof(child, r));
	}

	Derivation buildRoot(int root) {
		const auto& bs = arena_.ants(goal_);
		std::vector<int> labels;
		Env env{nullptr, root, {}, {}};
		for (std::size_t i = 0; i < bs.size(); ++i) {
			labels.push_back(nextLabel_++);
			env.labels[bs[i]] = labels.back();
		}
		return wrapIntros(goal_, labels, atomProof(env, arena_.head(goal_)));
	}

	DecideOptions opt_;
	Arena arena_;
	std::vector<Id> base_;
	Id goal_ = kNone;
	std::size_t n_ = 0;
	std::vector<std::uint8_t> isBase_;
	std::vector<Id> baseClauses_;
	std::vector<std::vector<std::uint32_t>> baseWatch_;
	std::vector<std::unique_ptr<Context>> contexts_;
	std::unordered_map<std::vector<Id>, int, VecHash> memo_;
	std::size_t created_ = 0;
	int nextLabel_ = 1;
};

} // namespace

Decision decide(const Sequent& s, const DecideOptions& options) {
	Prover p(s, options);
	return p.run();
}

Sequent parseSequent(std::string_view text) {
	auto turnstile = text.find("|-");
	if (turnstile == std::string_view::npos)
		throw ParseError(ParseError::Reason::Syntax, text.size(), "syntax error: expected '|-'");
	Sequent s{{}, parse(text.substr(turnstile + 2))};
	std::string_view lhs = text.substr(0, turnstile);
	std::size_t start = 0;
	while (start <= lhs.size()) {
		auto semi = lhs.find(';', start);
		auto piece = lhs.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
		bool blank = std::all_of(piece.begin(), piece.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
		if (!blank)
			s.antecedents.push_back(parse(piece));
		else if (semi != std::string_view::npos)
			throw ParseError(ParseError::Reason::Syntax, start, "syntax error: empty hypothesis");
		if (semi == std::string_view::npos)
			break;
		start = semi + 1;
	}
	return s;
}

std::string print(const Sequent& s) {
	std::string out;
	for (std::size_t i = 0; i < s.antecedents.size(); ++i)
		out += (i ? " ; " : "") + print(s.antecedents[i]);
	if (!out.empty())
		out += ' ';
	return out + "|- " + print(s.goal);
}

namespace {
void checkImplicational(const Derivation& d, const std::string& path, CheckReport& r) {
	if (!d.conclusion().isImplicational())
		r.issues.push_back({path, "formula " + print(d.conclusion()) + " is not implicational"});
	if (d.kind() == RuleKind::Intro || d.kind() == RuleKind::Elim)
		r.issues.push_back({path, "only ->-introduction and ->-elimination are allowed"});
	for (std::size_t i = 0; i < d.premises().size(); ++i)
		checkImplicational(d.premises()[i], path + "/p" + std::to_string(i), r);
}
} // namespace

CheckReport checkMimpDerivation(const Derivation& d, const std::vector<Formula>& hypotheses) {
	LogicSpec bare;
	bare.name = "M->";
	bare.includesImplication = true;
	CheckReport r;
	checkImplicational(d, "", r);
	if (!r.ok())
		return r;
	return checkDerivation(bare, d, hypotheses);
}

} // namespace ndstar
