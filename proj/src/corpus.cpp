#include "ndstar/corpus.hpp"

#include "ndstar/mimp_prover.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace ndstar {

namespace {

void compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
	if (parts == 0) {
		if (total == 0)
			out.push_back(cur);
		return;
	}
	for (std::size_t first = 1; first + (parts - 1) <= total; ++first) {
		cur.push_back(first);
		compositions(total - first, parts - 1, cur, out);
		cur.pop_back();
	}
}

void product(const std::vector<const std::vector<Formula>*>& pools, std::size_t i, std::vector<Formula>& cur,
             const std::function<void(const std::vector<Formula>&)>& emit) {
	if (i == pools.size()) {
		emit(cur);
		return;
	}
	for (const auto& f : *pools[i]) {
		cur.push_back(f);
		product(pools, i + 1, cur, emit);
		cur.pop_back();
	}
}

} // namespace

std::vector<Formula> enumerateFormulas(const std::vector<std::string>& atoms, const std::vector<OperatorSig>& ops,
                                       bool withImplication, std::size_t maxSize) {
	std::vector<std::vector<Formula>> bySize(maxSize + 1);
	for (std::size_t n = 1; n <= maxSize; ++n) {
		auto& bucket = bySize[n];
		if (n == 1) {
			for (const auto& a : atoms)
				bucket.push_back(Formula::atom(a));
			for (const auto& op : ops)
				if (op.arity == 0)
					bucket.push_back(Formula::app(op.name, {}));
		}
		if (withImplication)
			for (std::size_t l = 1; l + 2 <= n; ++l)
				for (const auto& a : bySize[l])
					for (const auto& b : bySize[n - 1 - l])
						bucket.push_back(Formula::implies(a, b));
		for (const auto& op : ops) {
			if (op.arity == 0 || n < op.arity + 1)
				continue;
			std::vector<std::vector<std::size_t>> splits;
			std::vector<std::size_t> cur;
			compositions(n - 1, op.arity, cur, splits);
			for (const auto& split : splits) {
				std::vector<const std::vector<Formula>*> pools;
				for (auto s : split)
					pools.push_back(&bySize[s]);
				std::vector<Formula> args;
				product(pools, 0, args, [&](const std::vector<Formula>& xs) { bucket.push_back(Formula::app(op.name, xs)); });
			}
		}
		std::vector<std::pair<std::string, Formula>> keyed;
		for (auto& f : bucket)
			keyed.emplace_back(print(f), f);
		std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
		bucket.clear();
		for (auto& [k, f] : keyed)
			bucket.push_back(f);
	}
	std::vector<Formula> out;
	for (auto& b : bySize)
		out.insert(out.end(), b.begin(), b.end());
	return out;
}

bool hasTableOracle(const LogicSpec& spec) {
	if (spec.includesImplication)
		return false;
	return std::all_of(spec.operators.begin(), spec.operators.end(), [](const OperatorDecl& o) { return o.table.has_value(); });
}

namespace {

bool evalTables(const LogicSpec& spec, const Formula& f, const std::map<std::string, bool>& v) {
	if (f.isAtom())
		return v.at(f.name());
	if (f.isImplies())
		throw std::invalid_argument("truth-table oracle: built-in implication has no table");
	const OperatorDecl* d = spec.findOperator(f.name());
	if (!d || !d->table)
		throw std::invalid_argument("truth-table oracle: no table for '" + f.name() + "'");
	auto args = std::make_unique<bool[]>(f.args().size());
	for (std::size_t i = 0; i < f.args().size(); ++i)
		args[i] = evalTables(spec, f.args()[i], v);
	return evalTable(*d, std::span<const bool>(args.get(), f.args().size()));
}

} // namespace

bool tableValid(const LogicSpec& spec, const Formula& f) {
	std::vector<std::string> atoms;
	for (const auto& s : subformulas(f))
		if (s.isAtom())
			atoms.push_back(s.name());
	std::map<std::string, bool> v;
	for (std::size_t code = 0; code < (std::size_t{1} << atoms.size()); ++code) {
		for (std::size_t i = 0; i < atoms.size(); ++i)
			v[atoms[i]] = (code >> i) & 1;
		if (!evalTables(spec, f, v))
			return false;
	}
	return true;
}

namespace {

EquivReport runParallel(std::string descriptor, const std::vector<Formula>& items,
                        const std::function<bool(const Formula&)>& oracle,
                        const std::function<bool(const Formula&)>& prover, const CorpusOptions& options) {
	std::vector<signed char> oracleV(items.size(), -1), proverV(items.size(), -1);
	std::atomic<std::size_t> next{0}, bad{0};
	std::exception_ptr failure;
	std::mutex failureLock;
	auto work = [&] {
		for (;;) {
			if (options.stopAfter && bad.load() >= options.stopAfter)
				return;
			std::size_t i = next.fetch_add(1);
			if (i >= items.size())
				return;
			try {
				bool o = oracle(items[i]);
				bool p = prover(items[i]);
				oracleV[i] = o;
				proverV[i] = p;
				if (o != p)
					++bad;
			} catch (...) {
				std::lock_guard g(failureLock);
				if (!failure)
					failure = std::current_exception();
				next.store(items.size());
			}
		}
	};
	unsigned n = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
	std::vector<std::thread> pool;
	for (unsigned t = 1; t < n; ++t)
		pool.emplace_back(work);
	work();
	for (auto& t : pool)
		t.join();
	if (failure)
		std::rethrow_exception(failure);
	EquivReport r;
	r.descriptor = std::move(descriptor);
	for (std::size_t i = 0; i < items.size(); ++i) {
		if (oracleV[i] < 0)
			continue;
		++r.total;
		if (oracleV[i] == proverV[i])
			++r.agreements;
		else
			r.disagreements.push_back({items[i], oracleV[i] != 0, proverV[i] != 0});
	}
	return r;
}

std::string describeCorpus(const std::string& logic, const CorpusOptions& o, const std::vector<std::string>& ops) {
	std::string s = logic + " atoms={";
	for (std::size_t i = 0; i < o.atoms.size(); ++i)
		s += (i ? "," : "") + o.atoms[i];
	s += "} connectives={";
	for (std::size_t i = 0; i < ops.size(); ++i)
		s += (i ? "," : "") + ops[i];
	s += "} max-size=" + std::to_string(o.maxSize);
	if (o.mutation)
		s += " mutation=" + o.mutation->family + "/" + toString(o.mutation->mode);
	return s;
}

bool starProvable(const LogicSpec& spec, const Formula& f, const std::optional<Mutation>& m) {
	auto star = starTranslate(spec, f, m);
	return decide({{}, star.image}).provable;
}

} // namespace

EquivReport runEquivCorpus(const LogicSpec& spec, const CorpusOptions& options) {
	if (!hasTableOracle(spec))
		throw std::invalid_argument("logic " + spec.name +
		                            " has no truth-table oracle; supply an expected-verdict list instead");
	std::vector<OperatorSig> ops;
	std::vector<std::string> names;
	for (const auto& o : spec.operators) {
		ops.push_back({o.name, o.arity});
		names.push_back(o.name);
	}
	auto items = enumerateFormulas(options.atoms, ops, spec.includesImplication, options.maxSize);
	return runParallel(
		describeCorpus(spec.name, options, names), items, [&](const Formula& f) { return tableValid(spec, f); },
		[&](const Formula& f) { return starProvable(spec, f, options.mutation); }, options);
}

EquivReport runEquivList(const LogicSpec& spec, const std::vector<ExpectedVerdict>& expected,
                         const CorpusOptions& options) {
	std::vector<Formula> items;
	std::unordered_map<Formula, bool> verdicts;
	for (const auto& e : expected) {
		items.push_back(e.formula);
		verdicts[e.formula] = e.valid;
	}
	return runParallel(
		spec.name + " expected-verdicts=" + std::to_string(items.size()), items,
		[&](const Formula& f) { return verdicts.at(f); },
		[&](const Formula& f) { return starProvable(spec, f, options.mutation); }, options);
}

EquivReport runEquivCorpus(const MVLogic& L, const CorpusOptions& options) {
	std::vector<OperatorSig> ops;
	std::vector<std::string> names;
	for (const auto& c : L.connectives) {
		ops.push_back({c.name, c.arity});
		names.push_back(c.name);
	}
	auto items = enumerateFormulas(options.atoms, ops, false, options.maxSize);
	return runParallel(
		describeCorpus(L.name, options, names), items, [&](const Formula& f) { return bruteForceValid(L, f); },
		[&](const Formula& f) { return mvDecide(L, f, options.mutation); }, options);
}

} // namespace ndstar
