#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "cml/rational.hpp"
#include "cml/signature.hpp"

namespace cml {

// Structural equation for one endogenous variable V, stored as its maximal
// representative: a total table over W_V, the tuple of all other variables in
// signature order. Arguments that never affect the output are dummies; the
// non-dummy ones are V's parents.
struct FunctionTable {
    int var = -1;
    std::vector<int> outputs; // value indices of Ran(var), indexed by the W_V code

    bool operator==(const FunctionTable& o) const { return var == o.var && outputs == o.outputs; }
};

// Mixed-radix code of an assignment restricted to W_V (all variables but v).
long long wv_code(const Signature& sig, int v, const Assignment& a);
long long wv_domain_size(const Signature& sig, int v);
// Inverse of wv_code: fills every variable except v; a.vals[v] is left as-is.
void wv_decode(const Signature& sig, int v, long long code, Assignment& a);

struct FunctionComponent {
    std::vector<FunctionTable> tables; // sorted by var

    bool empty() const { return tables.empty(); }
    bool has(int v) const { return find(v) != nullptr; }
    const FunctionTable* find(int v) const;
    void add(FunctionTable t); // keeps tables sorted, rejects duplicates
    std::vector<int> endogenous() const;

    bool operator==(const FunctionComponent& o) const { return tables == o.tables; }
    bool operator!=(const FunctionComponent& o) const { return !(*this == o); }
};

int apply_table(const Signature& sig, const FunctionTable& t, const Assignment& a);

// PA_v: the non-dummy arguments of v's table, found by exhaustive search over
// Ran(W_v). Throws InputError when v is not endogenous.
std::vector<int> parents(const Signature& sig, const FunctionComponent& laws, int v);

// Topological order of the endogenous variables along the parent graph;
// nullopt when the graph has a cycle.
std::optional<std::vector<int>> topo_order(const Signature& sig, const FunctionComponent& laws);

// Multiset of assignments, keyed by canonical state index. Absent key means
// count zero; stored counts are always >= 1.
struct Multiteam {
    std::map<long long, long long> counts;

    long long size() const;
    bool empty() const { return counts.empty(); }
    void add(long long state, long long count);

    bool operator==(const Multiteam& o) const { return counts == o.counts; }
};

struct CausalMultiteam {
    std::shared_ptr<const Signature> sig;
    FunctionComponent laws;
    Multiteam team;

    bool empty() const { return team.empty(); }
    long long size() const { return team.size(); }
    std::vector<long long> support() const;
};

CausalMultiteam make_model(std::shared_ptr<const Signature> sig, FunctionComponent laws,
                           Multiteam team);

// Every violated invariant as a human-readable line; empty means valid.
std::vector<std::string> validate(const CausalMultiteam& m);

struct Intervention {
    int var = -1;
    int val = -1;

    bool operator==(const Intervention& o) const { return var == o.var && val == o.val; }
};

bool consistent(const std::vector<Intervention>& ivs);

// do(X=x): overwrite X, drop the laws of X, recompute the remaining
// endogenous variables row by row in topological order. Multiplicities of
// coinciding images add up; total size is preserved. Throws InputError on an
// inconsistent list.
CausalMultiteam intervene(const CausalMultiteam& m, const std::vector<Intervention>& ivs);

// Row-level intervention: the unique assignment compatible with the
// restricted laws.
Assignment intervene_row(const Signature& sig, const FunctionComponent& laws, const Assignment& s,
                         const std::vector<Intervention>& ivs);

// (eps_{s_1},...,eps_{s_n}); throws InputError on the empty multiteam.
std::vector<Rational> probability_vector(const CausalMultiteam& m);

// Same laws and either both empty or identical probability vectors.
bool is_rescaling(const CausalMultiteam& a, const CausalMultiteam& b);

CausalMultiteam scale_counts(const CausalMultiteam& m, long long k);

// Stable fingerprint of laws + counts, used as a memoization key.
std::string model_key(const CausalMultiteam& m);

} // namespace cml
