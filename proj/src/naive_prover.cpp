#include "ndstar/mimp_prover.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ndstar {

std::string_view toString(NaiveVerdict v) {
	switch (v) {
	case NaiveVerdict::Provable: return "provable";
	case NaiveVerdict::Unprovable: return "unprovable";
	case NaiveVerdict::BudgetExceeded: return "budget-exceeded";
	}
	return "?";
}

namespace {

// Contexts are sets of canonical words; formulas are looked up by word.
using Context = std::set<std::string>;

struct Frame {
	const Context* ctx;
	std::string goal;
};

class Naive {
public:
	explicit Naive(std::size_t budget) : budget_(budget) {}

	bool prove(Context ctx, const Formula& goal, std::size_t depth) {
		if (depth > budget_) {
			exceeded_ = true;
			return false;
		}
		if (goal.isImplies()) {
			add(ctx, goal.lhs());
			return prove(std::move(ctx), goal.rhs(), depth + 1);
		}
		std::string g = canonicalWord(goal);
		if (ctx.contains(g))
			return true;
		for (const Frame& f : branch_)
			if (f.goal == g && std::includes(f.ctx->begin(), f.ctx->end(), ctx.begin(), ctx.end()))
				return false;
		branch_.push_back({&ctx, g});
		bool found = false;
		for (const auto& w : ctx) {
			const Formula& h = byWord_.at(w);
			std::vector<Formula> ants;
			Formula cur = h;
			while (cur.isImplies()) {
				ants.push_back(cur.lhs());
				cur = cur.rhs();
			}
			if (ants.empty() || cur != goal)
				continue;
			bool all = true;
			for (const auto& a : ants)
				if (!prove(ctx, a, depth + 1)) {
					all = false;
					break;
				}
			if (all) {
				found = true;
				break;
			}
		}
		branch_.pop_back();
		return found;
	}

	void add(Context& ctx, const Formula& f) {
		std::string w = canonicalWord(f);
		byWord_.try_emplace(w, f);
		ctx.insert(std::move(w));
	}

	bool exceeded() const { return exceeded_; }

private:
	std::size_t budget_;
	bool exceeded_ = false;
	std::vector<Frame> branch_;
	std::map<std::string, Formula> byWord_;
};

} // namespace

NaiveVerdict naiveDecide(const Sequent& s, std::size_t depthBudget) {
	auto implicational = [](const Formula& f) { return f.isImplicational(); };
	if (!implicational(s.goal) || !std::all_of(s.antecedents.begin(), s.antecedents.end(), implicational))
		throw NonImplicationalInput("naiveDecide: non-implicational input");
	Naive n(depthBudget);
	Context ctx;
	for (const auto& a : s.antecedents)
		n.add(ctx, a);
	if (n.prove(std::move(ctx), s.goal, 0))
		return NaiveVerdict::Provable;
	return n.exceeded() ? NaiveVerdict::BudgetExceeded : NaiveVerdict::Unprovable;
}

} // namespace ndstar
