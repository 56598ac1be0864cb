#include "cml/enumerate.hpp"

#include <algorithm>

#include "cml/errors.hpp"

namespace cml {

namespace {

bool table_constant(const FunctionTable& t) {
    for (int o : t.outputs)
        if (o != t.outputs[0]) return false;
    return true;
}

// all non-constant total tables Ran(W_v) -> Ran(v), lexicographic by output row
std::vector<FunctionTable> candidate_tables(const Signature& sig, int v, const EnumGuard& guard) {
    long long dom = wv_domain_size(sig, v);
    long long rs = sig.range_size(v);
    double total = 1;
    for (long long i = 0; i < dom; ++i) {
        total *= static_cast<double>(rs);
        if (total > static_cast<double>(guard.max_components) * 64.0)
            throw GuardError("too many candidate structural functions for " + sig.var_name(v));
    }
    std::vector<FunctionTable> out;
    FunctionTable t;
    t.var = v;
    t.outputs.assign(static_cast<size_t>(dom), 0);
    for (;;) {
        if (!table_constant(t)) out.push_back(t);
        long long i = dom - 1;
        while (i >= 0 && t.outputs[i] == rs - 1) t.outputs[i--] = 0;
        if (i < 0) break;
        ++t.outputs[i];
    }
    return out;
}

} // namespace

std::vector<FunctionComponent> enumerate_function_components(const Signature& sig,
                                                             const EnumGuard& guard) {
    size_t m = sig.var_count();
    if (m > 16) throw GuardError("too many variables for law enumeration");
    std::vector<FunctionComponent> out;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> endo;
        for (size_t v = 0; v < m; ++v)
            if (mask & (1u << v)) endo.push_back(static_cast<int>(v));

        std::vector<std::vector<FunctionTable>> cands;
        bool feasible = true;
        long long combos = 1;
        for (int v : endo) {
            cands.push_back(candidate_tables(sig, v, guard));
            if (cands.back().empty()) {
                feasible = false;
                break;
            }
            combos *= static_cast<long long>(cands.back().size());
            if (combos > guard.max_components)
                throw GuardError("law enumeration guard exceeded");
        }
        if (!feasible) continue;

        std::vector<size_t> pick(endo.size(), 0);
        for (;;) {
            FunctionComponent fc;
            for (size_t i = 0; i < endo.size(); ++i) fc.tables.push_back(cands[i][pick[i]]);
            if (topo_order(sig, fc)) {
                out.push_back(std::move(fc));
                if (static_cast<long long>(out.size()) > guard.max_components)
                    throw GuardError("law enumeration guard exceeded");
            }
            if (endo.empty()) break;
            size_t i = endo.size();
            while (i > 0 && pick[i - 1] == cands[i - 1].size() - 1) pick[--i] = 0;
            if (i == 0) break;
            ++pick[i - 1];
        }
    }
    return out;
}

std::vector<long long> compatible_states(const Signature& sig, const FunctionComponent& laws) {
    long long n = sig.state_count();
    std::vector<long long> out;
    for (long long s = 0; s < n; ++s) {
        Assignment a = assignment_at(sig, s);
        bool ok = true;
        for (const auto& t : laws.tables)
            if (apply_table(sig, t, a) != a.vals[t.var]) {
                ok = false;
                break;
            }
        if (ok) out.push_back(s);
    }
    return out;
}

namespace {

// nondecreasing index tuples of the given length over states[]
bool emit_multisets(const std::shared_ptr<const Signature>& sig, const FunctionComponent& laws,
                    const std::vector<long long>& states, long long size,
                    const std::function<bool(const CausalMultiteam&)>& yield) {
    std::vector<long long> chosen;
    std::function<bool(size_t, long long)> rec = [&](size_t from, long long left) -> bool {
        if (left == 0) {
            CausalMultiteam m;
            m.sig = sig;
            m.laws = laws;
            for (long long s : chosen) m.team.counts[s]++;
            return yield(m);
        }
        for (size_t i = from; i < states.size(); ++i) {
            chosen.push_back(states[i]);
            bool keep = rec(i, left - 1);
            chosen.pop_back();
            if (!keep) return false;
        }
        return true;
    };
    return rec(0, size);
}

} // namespace

void enumerate_models(const Signature& sig, long long max_size, LawMode mode,
                      const std::optional<FunctionComponent>& laws, const EnumGuard& guard,
                      const std::function<bool(const CausalMultiteam&)>& yield) {
    if (sig.state_count() > guard.max_states)
        throw GuardError("state-space guard exceeded (" + std::to_string(sig.state_count()) +
                         " states)");
    auto shared_sig = std::make_shared<const Signature>(sig);

    std::vector<FunctionComponent> lawset;
    switch (mode) {
        case LawMode::NoLaws: lawset.push_back(FunctionComponent{}); break;
        case LawMode::FixedLaws:
            if (!laws) throw InputError("fixed-laws mode without laws");
            lawset.push_back(*laws);
            break;
        case LawMode::AllLaws: lawset = enumerate_function_components(sig, guard); break;
    }

    for (const auto& fc : lawset) {
        std::vector<long long> states = compatible_states(sig, fc);
        for (long long size = 0; size <= max_size; ++size)
            if (!emit_multisets(shared_sig, fc, states, size, yield)) return;
    }
}

std::vector<CausalMultiteam> collect_models(const Signature& sig, long long max_size, LawMode mode,
                                            const std::optional<FunctionComponent>& laws,
                                            const EnumGuard& guard) {
    std::vector<CausalMultiteam> out;
    enumerate_models(sig, max_size, mode, laws, guard, [&](const CausalMultiteam& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

void enumerate_count_vectors(long long n, long long max_size,
                             const std::function<bool(const std::vector<long long>&)>& yield) {
    std::vector<long long> counts(static_cast<size_t>(n), 0);
    std::function<bool(size_t, long long)> rec = [&](size_t i, long long left) -> bool {
        if (i == counts.size() - 1) {
            counts[i] = left;
            return yield(counts);
        }
        for (long long c = 0; c <= left; ++c) {
            counts[i] = c;
            if (!rec(i + 1, left - c)) return false;
        }
        return true;
    };
    for (long long size = 1; size <= max_size; ++size)
        if (!rec(0, size)) return;
}

} // namespace cml
