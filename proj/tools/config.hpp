#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trihopf/agvub.hpp"
#include "trihopf/invariants.hpp"

namespace trihopf::cli {

/// Everything a run needs, validated before any computation.
struct RunConfig {
    std::string command;
    std::vector<int> group;
    std::vector<long> u;  // exponent vector of the central involution
    std::vector<std::vector<long>> weights;
    std::vector<CycMatrix> matrices;  // generator images, used when weights is empty
    std::optional<CycMatrix> b;
    std::vector<ModuliPoint> lambdas;
    std::optional<Family> family;
    int max_degree = 2;
    std::size_t capacity = kDefaultCohomologyCapacity;
    std::optional<std::string> out;
    bool json = false;

    Representation representation() const;
    /// B from the "B" entry, else from the single lambda, else zero.
    FamilyDatum datum() const;
};

/// Reads a JSON config. Keys: group, u, weights | matrices, B | lambda,
/// lambdas, family, max_degree, capacity. Scalars are strings such as "1/2"
/// or "z8^3", or JSON integers. Throws ParseError naming the key path.
void merge_config_text(RunConfig& cfg, const std::string& text, const std::string& source);

/// Fills group, weights, u and family from a named preset.
void apply_preset(RunConfig& cfg, const std::string& name);

/// "l1,l2,l3" with scalar literals.
ModuliPoint parse_lambda(const std::string& text);

}  // namespace trihopf::cli
