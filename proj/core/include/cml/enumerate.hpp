#pragma once

#include <functional>
#include <optional>

#include "cml/model.hpp"

namespace cml {

struct EnumGuard {
    long long max_states = 64;       // |B_sigma| cap
    long long max_components = 200000; // |F_sigma| cap
};

enum class LawMode { NoLaws, FixedLaws, AllLaws };

// Every function component of the signature: per endogenous-set choice, every
// assignment of non-constant total tables with an acyclic parent graph.
// Deterministic order. Throws GuardError past the guard.
std::vector<FunctionComponent> enumerate_function_components(const Signature& sig,
                                                             const EnumGuard& guard = {});

// States compatible with the laws, ascending.
std::vector<long long> compatible_states(const Signature& sig, const FunctionComponent& laws);

// Streams every valid causal multiteam with |T| <= max_size whose laws match
// the mode, in a fixed deterministic order (laws outer, then size, then
// lexicographic multisets). The callback returns false to stop early.
void enumerate_models(const Signature& sig, long long max_size, LawMode mode,
                      const std::optional<FunctionComponent>& laws, const EnumGuard& guard,
                      const std::function<bool(const CausalMultiteam&)>& yield);

std::vector<CausalMultiteam> collect_models(const Signature& sig, long long max_size, LawMode mode,
                                            const std::optional<FunctionComponent>& laws = {},
                                            const EnumGuard& guard = {});

// All count vectors over n states with total in [1, max_size], lexicographic;
// realizes exactly the simplex points with denominator <= max_size.
void enumerate_count_vectors(long long n, long long max_size,
                             const std::function<bool(const std::vector<long long>&)>& yield);

} // namespace cml
