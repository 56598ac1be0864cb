#include "cml/rewrite.hpp"

#include <algorithm>

#include "cml/errors.hpp"
#include "cml/eval.hpp"
#include "cml/fragment.hpp"

namespace cml {

namespace {

void require_core(const FPtr& f) {
    if (has_abbreviation(f))
        throw InputError("rewrite passes require core syntax; run expand_abbreviations first");
}

void require_fragment(const FPtr& f, FragmentLabel bound, const char* pass) {
    FragmentLabel got = classify_fragment(f);
    if (got != bound && !fragment_le(got, bound))
        throw InputError(std::string(pass) + ": formula is " + fragment_str(got) +
                         ", expected at most " + fragment_str(bound));
}

// A tree with no tensor disjunction at a probabilistic-level position can be
// read as a PCO formula; the normal-form passes rewrite that reading. A flat
// formula with an exposed tensor stays in the flat layer and is untouched.
bool pco_readable(const FPtr& f) {
    switch (f->kind) {
        case FKind::Or: return false;
        case FKind::And:
        case FKind::Gor: return pco_readable(f->a) && pco_readable(f->b);
        case FKind::Imp: return pco_readable(f->b);
        case FKind::Cf: return pco_readable(f->a);
        default: return true;
    }
}

// ---- supset normal form ----

FPtr snf(const FPtr& f, const Signature& sig);

FPtr snf_push(const FPtr& alpha, const FPtr& psi, const Signature& sig) {
    switch (psi->kind) {
        case FKind::Lit:
            return f_imp(alpha, f_pr(psi, Cmp::Ge, Rational(1)));
        case FKind::PrEval:
        case FKind::PrCmp:
            return f_imp(alpha, psi);
        case FKind::And:
            return f_and(snf_push(alpha, psi->a, sig), snf_push(alpha, psi->b, sig));
        case FKind::Gor:
            return f_gor(snf_push(alpha, psi->a, sig), snf_push(alpha, psi->b, sig));
        case FKind::Imp:
            return snf_push(f_and(alpha, psi->a), psi->b, sig);
        default:
            throw InputError("supset normal form: unexpected consequent");
    }
}

FPtr snf(const FPtr& f, const Signature& sig) {
    switch (f->kind) {
        case FKind::Lit:
        case FKind::PrEval:
        case FKind::PrCmp: return f;
        case FKind::And: return f_and(snf(f->a, sig), snf(f->b, sig));
        case FKind::Gor: return f_gor(snf(f->a, sig), snf(f->b, sig));
        case FKind::Imp: return snf_push(f->a, snf(f->b, sig), sig);
        default: throw InputError("supset normal form: unexpected connective");
    }
}

// ---- push boxright ----

// [xs]([ys]body) == [(xs minus vars(ys)), ys] body, recursively
FPtr wrap_cf(std::vector<Intervention> xs, FPtr co) {
    while (co->kind == FKind::Cf) {
        std::vector<Intervention> merged;
        for (const auto& iv : xs) {
            bool overridden = false;
            for (const auto& jv : co->ivs)
                if (jv.var == iv.var) overridden = true;
            if (!overridden) merged.push_back(iv);
        }
        merged.insert(merged.end(), co->ivs.begin(), co->ivs.end());
        xs = std::move(merged);
        co = co->a;
    }
    return f_cf(std::move(xs), std::move(co));
}

FPtr pb(const FPtr& f, const Signature& sig);

FPtr pb_push(const std::vector<Intervention>& xs, const FPtr& psi, const Signature& sig) {
    if (!consistent(xs)) return pco_top(sig);
    switch (psi->kind) {
        case FKind::Lit:
            return f_pr(wrap_cf(xs, psi), Cmp::Ge, Rational(1));
        case FKind::PrEval:
            return f_pr(wrap_cf(xs, psi->a), psi->cmp, psi->bound);
        case FKind::PrCmp:
            return f_prcmp(wrap_cf(xs, psi->a), psi->cmp, wrap_cf(xs, psi->b));
        case FKind::And:
            return f_and(pb_push(xs, psi->a, sig), pb_push(xs, psi->b, sig));
        case FKind::Gor:
            return f_gor(pb_push(xs, psi->a, sig), pb_push(xs, psi->b, sig));
        default:
            throw InputError("push boxright: unexpected consequent");
    }
}

FPtr pb(const FPtr& f, const Signature& sig) {
    switch (f->kind) {
        case FKind::Lit:
        case FKind::PrEval:
        case FKind::PrCmp: return f;
        case FKind::And: return f_and(pb(f->a, sig), pb(f->b, sig));
        case FKind::Gor: return f_gor(pb(f->a, sig), pb(f->b, sig));
        case FKind::Cf: return pb_push(f->ivs, pb(f->a, sig), sig);
        default: throw InputError("push boxright: unexpected connective");
    }
}

// ---- relativization ----

struct Relativizer {
    const FunctionComponent& laws;
    const Signature& sig;

    std::vector<long long> sat_states(const FPtr& co) const {
        std::vector<long long> out;
        long long n = sig.state_count();
        for (long long s = 0; s < n; ++s)
            if (singleton_sat(sig, laws, assignment_at(sig, s), co)) out.push_back(s);
        return out;
    }

    FPtr states_of(const FPtr& co) const { return states_disjunction(sig, sat_states(co)); }

    FPtr rel(const FPtr& f) const {
        switch (f->kind) {
            case FKind::Lit: return f;
            case FKind::PrEval: return f_pr(states_of(f->a), f->cmp, f->bound);
            case FKind::PrCmp: return f_prcmp(states_of(f->a), f->cmp, states_of(f->b));
            case FKind::And: return f_and(rel(f->a), rel(f->b));
            case FKind::Gor: return f_gor(rel(f->a), rel(f->b));
            case FKind::Imp: {
                FPtr ante = has_boxright(f->a) ? states_of(f->a) : f->a;
                return f_imp(ante, rel(f->b));
            }
            case FKind::Cf:
                if (!consistent(f->ivs)) return pco_top(sig);
                return push(f->ivs, f->a);
            default: throw InputError("relativize: unexpected connective");
        }
    }

    // [xs]psi with the intervention folded into each atom under the laws
    FPtr push(const std::vector<Intervention>& xs, const FPtr& psi) const {
        switch (psi->kind) {
            case FKind::Lit: return f_pr(states_of(wrap_cf(xs, psi)), Cmp::Ge, Rational(1));
            case FKind::PrEval: return f_pr(states_of(wrap_cf(xs, psi->a)), psi->cmp, psi->bound);
            case FKind::PrCmp:
                return f_prcmp(states_of(wrap_cf(xs, psi->a)), psi->cmp,
                               states_of(wrap_cf(xs, psi->b)));
            case FKind::And: return f_and(push(xs, psi->a), push(xs, psi->b));
            case FKind::Gor: return f_gor(push(xs, psi->a), push(xs, psi->b));
            case FKind::Imp:
                // [xs](a => c) == states{[xs]a} => [xs]c on models with these laws
                return f_imp(states_of(wrap_cf(xs, psi->a)), push(xs, psi->b));
            case FKind::Cf: {
                if (!consistent(psi->ivs)) return pco_top(sig);
                std::vector<Intervention> merged;
                for (const auto& iv : xs) {
                    bool overridden = false;
                    for (const auto& jv : psi->ivs)
                        if (jv.var == iv.var) overridden = true;
                    if (!overridden) merged.push_back(iv);
                }
                merged.insert(merged.end(), psi->ivs.begin(), psi->ivs.end());
                return push(merged, psi->a);
            }
            default: throw InputError("relativize: unexpected connective");
        }
    }
};

void require_valid_laws(const FunctionComponent& laws, const Signature& sig) {
    CausalMultiteam probe;
    probe.sig = std::make_shared<const Signature>(sig);
    probe.laws = laws;
    auto violations = validate(probe);
    if (!violations.empty()) throw InputError("relativize: invalid laws: " + violations.front());
}

} // namespace

FPtr supset_normal_form(const FPtr& f, const Signature& sig) {
    require_core(f);
    require_fragment(f, FragmentLabel::PSup, "supset_normal_form");
    if (!pco_readable(f)) return f;
    return snf(f, sig);
}

FPtr push_boxright(const FPtr& f, const Signature& sig) {
    require_core(f);
    require_fragment(f, FragmentLabel::PBox, "push_boxright");
    if (!pco_readable(f)) return f;
    return pb(f, sig);
}

FPtr relativize(const FPtr& f, const FunctionComponent& laws, const Signature& sig) {
    require_core(f);
    require_fragment(f, FragmentLabel::PCO, "relativize");
    require_valid_laws(laws, sig);
    Relativizer r{laws, sig};
    if (is_co(f)) return r.rel(f_pr(f, Cmp::Ge, Rational(1)));
    return r.rel(f);
}

FPtr characteristic_formula(CharKind kind, const FunctionComponent& laws, const Signature& sig) {
    if (kind == CharKind::Theta)
        throw InputError("theta takes a multiteam, use theta_formula");
    require_valid_laws(laws, sig);

    std::vector<FPtr> parts;
    for (size_t vv = 0; vv < sig.var_count(); ++vv) {
        int v = static_cast<int>(vv);
        const FunctionTable* table = laws.find(v);
        long long dom = wv_domain_size(sig, v);
        if (table) {
            // eta(V): every setting of the other variables forces F_V's output
            std::vector<FPtr> conj;
            for (long long code = 0; code < dom; ++code) {
                Assignment a;
                a.vals.assign(sig.var_count(), 0);
                wv_decode(sig, v, code, a);
                std::vector<Intervention> ivs;
                for (size_t u = 0; u < sig.var_count(); ++u)
                    if (static_cast<int>(u) != v)
                        ivs.push_back({static_cast<int>(u), a.vals[u]});
                FPtr out_lit = f_lit(v, table->outputs[code], false);
                conj.push_back(ivs.empty() ? out_lit : f_cf(ivs, out_lit));
            }
            parts.push_back(f_and_all(conj));
        } else {
            // xi(V): V's value survives any intervention on the other variables
            std::vector<FPtr> conj;
            for (long long code = 0; code < dom; ++code) {
                Assignment a;
                a.vals.assign(sig.var_count(), 0);
                wv_decode(sig, v, code, a);
                std::vector<Intervention> ivs;
                for (size_t u = 0; u < sig.var_count(); ++u)
                    if (static_cast<int>(u) != v)
                        ivs.push_back({static_cast<int>(u), a.vals[u]});
                for (int val = 0; val < sig.range_size(v); ++val) {
                    FPtr inner = f_lit(v, val, false);
                    FPtr body = ivs.empty() ? inner : f_cf(ivs, inner);
                    if (kind == CharKind::Phi)
                        conj.push_back(f_imp(f_lit(v, val, false), body));
                    else
                        // Pr(V!=v or body) >= 1; the <=1 half of "=1" is vacuous
                        conj.push_back(
                            f_pr(f_or(f_lit(v, val, true), body), Cmp::Ge, Rational(1)));
                }
            }
            parts.push_back(f_and_all(conj));
        }
    }
    return f_and_all(parts);
}

FPtr theta_formula(const Multiteam& team, const Signature& sig) {
    if (team.empty()) throw InputError("theta of an empty multiteam");
    long long total = team.size();
    std::vector<FPtr> parts;
    std::vector<long long> supp;
    for (const auto& [s, c] : team.counts) {
        parts.push_back(f_pr(state_formula(sig, s), Cmp::Eq, Rational(c, total)));
        supp.push_back(s);
    }
    parts.push_back(f_pr(states_disjunction(sig, supp), Cmp::Eq, Rational(1)));
    return f_and_all(parts);
}

std::vector<std::pair<FunctionComponent, FPtr>> pco_decompose(const FPtr& phi,
                                                              const Signature& sig,
                                                              const EnumGuard& guard) {
    std::vector<std::pair<FunctionComponent, FPtr>> out;
    for (const auto& fc : enumerate_function_components(sig, guard))
        out.emplace_back(fc, relativize(phi, fc, sig));
    return out;
}

} // namespace cml
