#include "cml/eval.hpp"

#include <algorithm>
#include <iostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "cml/errors.hpp"
#include "cml/printer.hpp"

namespace cml {

bool singleton_sat(const Signature& sig, const FunctionComponent& laws, const Assignment& s,
                   const FPtr& alpha) {
    switch (alpha->kind) {
        case FKind::Lit: {
            bool eq = s.vals[alpha->var] == alpha->val;
            return alpha->neq ? !eq : eq;
        }
        case FKind::And:
            return singleton_sat(sig, laws, s, alpha->a) && singleton_sat(sig, laws, s, alpha->b);
        case FKind::Or:
            return singleton_sat(sig, laws, s, alpha->a) || singleton_sat(sig, laws, s, alpha->b);
        case FKind::Imp:
            return !singleton_sat(sig, laws, s, alpha->a) ||
                   singleton_sat(sig, laws, s, alpha->b);
        case FKind::Cf: {
            if (!consistent(alpha->ivs)) return true;
            Assignment img = intervene_row(sig, laws, s, alpha->ivs);
            std::vector<bool> fixed(sig.var_count(), false);
            for (const auto& iv : alpha->ivs) fixed[iv.var] = true;
            FunctionComponent rest;
            for (const auto& t : laws.tables)
                if (!fixed[t.var]) rest.tables.push_back(t);
            return singleton_sat(sig, rest, img, alpha->a);
        }
        default: throw InputError("probabilistic construct in a flat formula");
    }
}

CausalMultiteam observe(const CausalMultiteam& m, const FPtr& alpha) {
    CausalMultiteam out;
    out.sig = m.sig;
    out.laws = m.laws;
    for (const auto& [s, c] : m.team.counts)
        if (singleton_sat(*m.sig, m.laws, assignment_at(*m.sig, s), alpha))
            out.team.counts.emplace(s, c);
    return out;
}

Rational probability(const CausalMultiteam& m, const FPtr& alpha) {
    if (m.empty()) throw InputError("probability on an empty multiteam");
    return Rational(observe(m, alpha).size(), m.size());
}

namespace {

// --- rowwise CO ---

bool co_rowwise(const CausalMultiteam& m, const FPtr& alpha) {
    for (const auto& [s, c] : m.team.counts)
        if (!singleton_sat(*m.sig, m.laws, assignment_at(*m.sig, s), alpha)) return false;
    return true;
}

// --- literal split-search CO ---

bool co_split(const CausalMultiteam& m, const FPtr& alpha);

bool co_split_or(const CausalMultiteam& m, const FPtr& alpha) {
    std::vector<std::pair<long long, long long>> rows(m.team.counts.begin(), m.team.counts.end());
    size_t k = rows.size();
    std::vector<long long> left(k, 0); // count that goes to the first disjunct
    for (;;) {
        CausalMultiteam m1, m2;
        m1.sig = m2.sig = m.sig;
        m1.laws = m2.laws = m.laws;
        for (size_t i = 0; i < k; ++i) {
            if (left[i] > 0) m1.team.counts.emplace(rows[i].first, left[i]);
            long long rest = rows[i].second - left[i];
            if (rest > 0) m2.team.counts.emplace(rows[i].first, rest);
        }
        if (co_split(m1, alpha->a) && co_split(m2, alpha->b)) return true;
        size_t i = 0;
        while (i < k && left[i] == rows[i].second) left[i++] = 0;
        if (i == k) return false;
        ++left[i];
    }
}

bool co_split(const CausalMultiteam& m, const FPtr& alpha) {
    switch (alpha->kind) {
        case FKind::Lit: return co_rowwise(m, alpha);
        case FKind::And: return co_split(m, alpha->a) && co_split(m, alpha->b);
        case FKind::Or: return co_split_or(m, alpha);
        case FKind::Imp: return co_split(observe(m, alpha->a), alpha->b);
        case FKind::Cf:
            if (!consistent(alpha->ivs)) return true;
            return co_split(intervene(m, alpha->ivs), alpha->a);
        default: throw InputError("probabilistic construct in a flat formula");
    }
}

// --- causal-team semantics on the support, lax tensor ---

struct CausalTeam {
    const Signature* sig;
    FunctionComponent laws;
    std::vector<long long> states; // sorted, unique
};

bool ct_sat(const CausalTeam& t, const FPtr& alpha);

bool ct_or(const CausalTeam& t, const FPtr& alpha) {
    size_t k = t.states.size();
    // each state goes to the first subteam, the second, or both
    std::vector<int> where(k, 0);
    for (;;) {
        CausalTeam t1{t.sig, t.laws, {}};
        CausalTeam t2{t.sig, t.laws, {}};
        for (size_t i = 0; i < k; ++i) {
            if (where[i] != 1) t1.states.push_back(t.states[i]);
            if (where[i] != 0) t2.states.push_back(t.states[i]);
        }
        if (ct_sat(t1, alpha->a) && ct_sat(t2, alpha->b)) return true;
        size_t i = 0;
        while (i < k && where[i] == 2) where[i++] = 0;
        if (i == k) return false;
        ++where[i];
    }
}

bool ct_sat(const CausalTeam& t, const FPtr& alpha) {
    switch (alpha->kind) {
        case FKind::Lit: {
            for (long long s : t.states) {
                Assignment a = assignment_at(*t.sig, s);
                bool eq = a.vals[alpha->var] == alpha->val;
                if ((alpha->neq ? !eq : eq) == false) return false;
            }
            return true;
        }
        case FKind::And: return ct_sat(t, alpha->a) && ct_sat(t, alpha->b);
        case FKind::Or: return ct_or(t, alpha);
        case FKind::Imp: {
            CausalTeam t2{t.sig, t.laws, {}};
            for (long long s : t.states)
                if (singleton_sat(*t.sig, t.laws, assignment_at(*t.sig, s), alpha->a))
                    t2.states.push_back(s);
            return ct_sat(t2, alpha->b);
        }
        case FKind::Cf: {
            if (!consistent(alpha->ivs)) return true;
            std::vector<bool> fixed(t.sig->var_count(), false);
            for (const auto& iv : alpha->ivs) fixed[iv.var] = true;
            CausalTeam t2{t.sig, {}, {}};
            for (const auto& tab : t.laws.tables)
                if (!fixed[tab.var]) t2.laws.tables.push_back(tab);
            std::set<long long> img;
            for (long long s : t.states)
                img.insert(
                    state_index(*t.sig, intervene_row(*t.sig, t.laws, assignment_at(*t.sig, s),
                                                      alpha->ivs)));
            t2.states.assign(img.begin(), img.end());
            return ct_sat(t2, alpha->a);
        }
        default: throw InputError("probabilistic construct in a flat formula");
    }
}

// --- PCO ---

struct PcoEvaluator {
    const EvalConfig& cfg;
    std::unordered_map<std::string, CausalMultiteam> observe_memo;
    std::unordered_map<std::string, CausalMultiteam> intervene_memo;

    const CausalMultiteam& observed(const CausalMultiteam& m, const FPtr& alpha) {
        std::ostringstream key;
        key << model_key(m) << '@' << alpha.get();
        auto it = observe_memo.find(key.str());
        if (it == observe_memo.end())
            it = observe_memo.emplace(key.str(), observe(m, alpha)).first;
        return it->second;
    }

    const CausalMultiteam& intervened(const CausalMultiteam& m,
                                      const std::vector<Intervention>& ivs) {
        std::ostringstream key;
        key << model_key(m) << '@';
        for (const auto& iv : ivs) key << iv.var << ':' << iv.val << ',';
        auto it = intervene_memo.find(key.str());
        if (it == intervene_memo.end())
            it = intervene_memo.emplace(key.str(), intervene(m, ivs)).first;
        return it->second;
    }

    Rational pr(const CausalMultiteam& m, const FPtr& alpha) {
        return Rational(observed(m, alpha).size(), m.size());
    }

    bool run(const CausalMultiteam& m, const FPtr& f) {
        switch (f->kind) {
            case FKind::Lit: return co_rowwise(m, f);
            case FKind::And: return run(m, f->a) && run(m, f->b);
            case FKind::Gor: return run(m, f->a) || run(m, f->b);
            case FKind::Or:
                throw InputError("tensor disjunction at the probabilistic level");
            case FKind::Imp: return run(observed(m, f->a), f->b);
            case FKind::Cf:
                if (!consistent(f->ivs)) return true;
                return run(intervened(m, f->ivs), f->a);
            case FKind::PrEval: {
                bool v = m.empty() || cmp_holds(pr(m, f->a), f->cmp, f->bound);
                if (cfg.trace)
                    std::cerr << "[eval] atom " << print(f, *m.sig) << " -> " << v << "\n";
                return v;
            }
            case FKind::PrCmp:
                return m.empty() || cmp_holds(pr(m, f->a), f->cmp, pr(m, f->b));
            case FKind::CondEval: {
                const CausalMultiteam& mg = observed(m, f->cond);
                return mg.empty() || cmp_holds(pr(mg, f->a), f->cmp, f->bound);
            }
            case FKind::CondCmp: {
                const CausalMultiteam& mg = f->cond ? observed(m, f->cond) : m;
                const CausalMultiteam& md = f->cond2 ? observed(m, f->cond2) : m;
                if (mg.empty() || md.empty()) return true;
                const CausalMultiteam& rhs_model =
                    cfg.extended_rhs_under_first_condition ? mg : md;
                return cmp_holds(pr(mg, f->a), f->cmp, pr(rhs_model, f->b));
            }
        }
        throw InputError("bad formula");
    }
};

} // namespace

bool eval_co(const CausalMultiteam& m, const FPtr& alpha, const EvalConfig& cfg) {
    if (!is_co(alpha)) throw InputError("eval_co on a probabilistic formula");
    if (cfg.co_strategy == EvalConfig::CoStrategy::SplitSearch) {
        if (m.size() > cfg.split_bound) throw GuardError("split search bound exceeded");
        return co_split(m, alpha);
    }
    return co_rowwise(m, alpha);
}

bool eval_ct(const CausalMultiteam& m, const FPtr& alpha, const EvalConfig& cfg) {
    if (!is_co(alpha)) throw InputError("eval_ct on a probabilistic formula");
    CausalTeam t{m.sig.get(), m.laws, m.support()};
    if (static_cast<long long>(t.states.size()) > cfg.split_bound)
        throw GuardError("causal-team split bound exceeded");
    return ct_sat(t, alpha);
}

bool eval_pco(const CausalMultiteam& m, const FPtr& phi, const EvalConfig& cfg) {
    PcoEvaluator ev{cfg, {}, {}};
    return ev.run(m, phi);
}

bool eval(const CausalMultiteam& m, const FPtr& f, const EvalConfig& cfg) {
    if (is_co(f)) return eval_co(m, f, cfg);
    return eval_pco(m, f, cfg);
}

} // namespace cml
