#include "cml/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "cml/errors.hpp"

namespace cml {

long long wv_domain_size(const Signature& sig, int v) {
    long long n = 1;
    for (size_t u = 0; u < sig.var_count(); ++u)
        if (static_cast<int>(u) != v) n *= sig.range_size(static_cast<int>(u));
    return n;
}

long long wv_code(const Signature& sig, int v, const Assignment& a) {
    long long code = 0;
    for (size_t u = 0; u < sig.var_count(); ++u) {
        if (static_cast<int>(u) == v) continue;
        code = code * sig.range_size(static_cast<int>(u)) + a.vals[u];
    }
    return code;
}

void wv_decode(const Signature& sig, int v, long long code, Assignment& a) {
    a.vals.resize(sig.var_count());
    for (size_t u = sig.var_count(); u-- > 0;) {
        if (static_cast<int>(u) == v) continue;
        int rs = sig.range_size(static_cast<int>(u));
        a.vals[u] = static_cast<int>(code % rs);
        code /= rs;
    }
}

const FunctionTable* FunctionComponent::find(int v) const {
    for (const auto& t : tables)
        if (t.var == v) return &t;
    return nullptr;
}

void FunctionComponent::add(FunctionTable t) {
    if (has(t.var)) throw InputError("duplicate function table for one variable");
    tables.push_back(std::move(t));
    std::sort(tables.begin(), tables.end(),
              [](const FunctionTable& a, const FunctionTable& b) { return a.var < b.var; });
}

std::vector<int> FunctionComponent::endogenous() const {
    std::vector<int> out;
    for (const auto& t : tables) out.push_back(t.var);
    return out;
}

int apply_table(const Signature& sig, const FunctionTable& t, const Assignment& a) {
    return t.outputs[wv_code(sig, t.var, a)];
}

std::vector<int> parents(const Signature& sig, const FunctionComponent& laws, int v) {
    const FunctionTable* t = laws.find(v);
    if (!t) throw InputError("parents: variable is not endogenous: " + sig.var_name(v));
    std::vector<int> out;
    long long dom = wv_domain_size(sig, v);
    Assignment a;
    a.vals.assign(sig.var_count(), 0);
    for (size_t u = 0; u < sig.var_count(); ++u) {
        int uu = static_cast<int>(u);
        if (uu == v) continue;
        bool matters = false;
        for (long long code = 0; code < dom && !matters; ++code) {
            wv_decode(sig, v, code, a);
            int base = t->outputs[code];
            int orig = a.vals[u];
            for (int w = 0; w < sig.range_size(uu); ++w) {
                if (w == orig) continue;
                a.vals[u] = w;
                if (t->outputs[wv_code(sig, v, a)] != base) {
                    matters = true;
                    break;
                }
            }
            a.vals[u] = orig;
        }
        if (matters) out.push_back(uu);
    }
    return out;
}

std::optional<std::vector<int>> topo_order(const Signature& sig, const FunctionComponent& laws) {
    std::vector<int> endo = laws.endogenous();
    std::map<int, std::vector<int>> pa;
    for (int v : endo) pa[v] = parents(sig, laws, v);
    // Kahn over the endogenous subgraph
    std::map<int, int> indeg;
    for (int v : endo) {
        indeg[v] = 0;
        for (int p : pa[v])
            if (laws.has(p)) ++indeg[v];
    }
    std::vector<int> order;
    std::set<int> ready;
    for (auto& [v, d] : indeg)
        if (d == 0) ready.insert(v);
    while (!ready.empty()) {
        int v = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(v);
        for (int u : endo) {
            if (u == v) continue;
            for (int p : pa[u])
                if (p == v && --indeg[u] == 0) ready.insert(u);
        }
    }
    if (order.size() != endo.size()) return std::nullopt;
    return order;
}

long long Multiteam::size() const {
    long long n = 0;
    for (const auto& [s, c] : counts) n += c;
    return n;
}

void Multiteam::add(long long state, long long count) {
    if (count <= 0) throw InputError("multiteam counts must be positive");
    counts[state] += count;
}

std::vector<long long> CausalMultiteam::support() const {
    std::vector<long long> out;
    for (const auto& [s, c] : team.counts) out.push_back(s);
    return out;
}

CausalMultiteam make_model(std::shared_ptr<const Signature> sig, FunctionComponent laws,
                           Multiteam team) {
    CausalMultiteam m;
    m.sig = std::move(sig);
    m.laws = std::move(laws);
    m.team = std::move(team);
    return m;
}

std::vector<std::string> validate(const CausalMultiteam& m) {
    std::vector<std::string> out;
    const Signature& sig = *m.sig;
    long long n = sig.state_count();

    for (const auto& [s, c] : m.team.counts) {
        if (s < 0 || s >= n) out.push_back("row state index out of range");
        if (c <= 0) out.push_back("nonpositive row count");
    }

    for (const auto& t : m.laws.tables) {
        if (t.var < 0 || t.var >= static_cast<int>(sig.var_count())) {
            out.push_back("function table for unknown variable");
            continue;
        }
        const std::string& name = sig.var_name(t.var);
        if (static_cast<long long>(t.outputs.size()) != wv_domain_size(sig, t.var)) {
            out.push_back("function table for " + name + " is not total");
            continue;
        }
        bool range_ok = true;
        for (int o : t.outputs)
            if (o < 0 || o >= sig.range_size(t.var)) range_ok = false;
        if (!range_ok) {
            out.push_back("function table for " + name + " leaves its range");
            continue;
        }
        bool constant = true;
        for (int o : t.outputs)
            if (o != t.outputs[0]) constant = false;
        if (constant) out.push_back("constant structural function for " + name);
    }
    if (!out.empty()) return out;

    if (!topo_order(sig, m.laws)) out.push_back("parent graph has a cycle");

    for (const auto& [s, c] : m.team.counts) {
        Assignment a = assignment_at(sig, s);
        for (const auto& t : m.laws.tables) {
            int expect = apply_table(sig, t, a);
            if (expect != a.vals[t.var])
                out.push_back("compatibility violation at " + sig.var_name(t.var) + " in row " +
                              assignment_str(sig, a));
        }
    }
    return out;
}

bool consistent(const std::vector<Intervention>& ivs) {
    for (size_t i = 0; i < ivs.size(); ++i)
        for (size_t j = i + 1; j < ivs.size(); ++j)
            if (ivs[i].var == ivs[j].var && ivs[i].val != ivs[j].val) return false;
    return true;
}

Assignment intervene_row(const Signature& sig, const FunctionComponent& laws, const Assignment& s,
                         const std::vector<Intervention>& ivs) {
    std::vector<bool> fixed(sig.var_count(), false);
    Assignment a = s;
    for (const auto& iv : ivs) {
        a.vals[iv.var] = iv.val;
        fixed[iv.var] = true;
    }
    FunctionComponent rest;
    for (const auto& t : laws.tables)
        if (!fixed[t.var]) rest.tables.push_back(t);
    auto order = topo_order(sig, rest);
    if (!order) throw InputError("intervene: restricted parent graph has a cycle");
    for (int v : *order) a.vals[v] = apply_table(sig, *rest.find(v), a);
    return a;
}

CausalMultiteam intervene(const CausalMultiteam& m, const std::vector<Intervention>& ivs) {
    if (!consistent(ivs)) throw InputError("inconsistent intervention list");
    const Signature& sig = *m.sig;
    std::vector<bool> fixed(sig.var_count(), false);
    for (const auto& iv : ivs) fixed[iv.var] = true;

    CausalMultiteam out;
    out.sig = m.sig;
    for (const auto& t : m.laws.tables)
        if (!fixed[t.var]) out.laws.tables.push_back(t);
    for (const auto& [s, c] : m.team.counts) {
        Assignment img = intervene_row(sig, m.laws, assignment_at(sig, s), ivs);
        out.team.add(state_index(sig, img), c);
    }
    return out;
}

std::vector<Rational> probability_vector(const CausalMultiteam& m) {
    if (m.empty()) throw InputError("probability vector of an empty multiteam");
    long long n = m.sig->state_count();
    long long total = m.size();
    std::vector<Rational> out(static_cast<size_t>(n), Rational(0));
    for (const auto& [s, c] : m.team.counts) out[static_cast<size_t>(s)] = Rational(c, total);
    return out;
}

bool is_rescaling(const CausalMultiteam& a, const CausalMultiteam& b) {
    if (*a.sig != *b.sig) throw InputError("is_rescaling: signature mismatch");
    if (a.laws != b.laws) return false;
    if (a.empty() || b.empty()) return a.empty() && b.empty();
    return probability_vector(a) == probability_vector(b);
}

CausalMultiteam scale_counts(const CausalMultiteam& m, long long k) {
    if (k <= 0) throw InputError("scale factor must be positive");
    CausalMultiteam out = m;
    for (auto& [s, c] : out.team.counts) c *= k;
    return out;
}

std::string model_key(const CausalMultiteam& m) {
    std::ostringstream os;
    for (const auto& t : m.laws.tables) {
        os << 'F' << t.var << ':';
        for (int o : t.outputs) os << o << ',';
    }
    os << '|';
    for (const auto& [s, c] : m.team.counts) os << s << 'x' << c << ';';
    return os.str();
}

} // namespace cml
