#pragma once

#include "ndstar/derivation.hpp"
#include "ndstar/logic_spec.hpp"
#include "ndstar/manyvalued.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndstar {

using json = nlohmann::json;

class InputError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

json readJsonFile(const std::filesystem::path& path);

// Missing elimination rules are derived. Intro rules without a name are
// called <op>_i, or <op>_i1, <op>_i2, ... when an operator has several.
LogicSpec specFromJson(const json& j);
json specToJson(const LogicSpec& spec);
LogicSpec loadSpec(const std::filesystem::path& path);

MVLogic mvFromJson(const json& j);
json mvToJson(const MVLogic& L);
MVLogic loadMV(const std::filesystem::path& path);

// Node kinds: "hyp", "intro", "elim", "imp_intro", "imp_elim".
Derivation derivationFromJson(const json& j);
json derivationToJson(const Derivation& d);

// A derivation file: either a bare node or
// {"derivation": node, "hypotheses": [...], "goal": "..."}.
struct DerivationFile {
	Derivation derivation;
	std::vector<Formula> hypotheses;
	Formula goal;
	bool hasHypotheses = false;
};

DerivationFile derivationFileFromJson(const json& j);
DerivationFile loadDerivation(const std::filesystem::path& path);

} // namespace ndstar
