#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "cubeavg/averages.hpp"
#include "cubeavg/lattice.hpp"
#include "cubeavg/system.hpp"

namespace cubeavg {

using Json = nlohmann::ordered_json;

/// Loads a system config, JSON or TOML (sniffed from content). Schema:
/// points, weights ("p/q" strings or integers), transformations (name +
/// image given as point labels), require_commuting.
System load_system(const std::string& path);

System system_from_json(const Json& j);
System system_from_toml(const std::string& text);

/// { "values": ["1/2", ...] }; length must match the space.
Observable load_observable(const std::string& path, const ProbabilitySpace& space);

/// { "moduli": [10,10], "members": [[0,0],[2,3],...] }
LatticeSubset load_subset(const std::string& path);

/// CubeSpec file; vertex keys are bit strings like "10" (digit j is eps_{j+1}).
/// Function values may be given inline or as a file path relative to the spec.
struct LoadedCubeSpec {
  System system;
  std::map<EpsilonMask, Observable> functions;
  std::vector<std::array<long long, 2>> box;
  std::optional<int> rank_cap;
};
LoadedCubeSpec load_cube_spec(const std::string& path);

Json observable_to_json(const ProbabilitySpace& space, const Observable& f);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cubeavg
