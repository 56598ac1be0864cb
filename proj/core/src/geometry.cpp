#include "cml/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cml/enumerate.hpp"
#include "cml/errors.hpp"
#include "cml/eval.hpp"
#include "cml/fragment.hpp"
#include "cml/rewrite.hpp"

namespace cml {

LinIneq canonical(const LinIneq& e) {
    if (e.cmp == Cmp::Eq || e.cmp == Cmp::Ne) throw InputError("inequality comparator expected");
    LinIneq out = e;
    long long l = out.bound.den();
    for (const auto& c : out.coeffs) l = std::lcm(l, c.den());
    Rational scale(l);
    for (auto& c : out.coeffs) c *= scale;
    out.bound *= scale;
    long long g = 0;
    for (const auto& c : out.coeffs) g = std::gcd(g, c.num());
    if (g > 1) {
        Rational div(1, g);
        for (auto& c : out.coeffs) c *= div;
        out.bound *= div;
    }
    return out;
}

const char* ineq_class_str(IneqClass c) {
    switch (c) {
        case IneqClass::Monic: return "MONIC";
        case IneqClass::SignedMonic: return "SIGNED_MONIC";
        case IneqClass::SignedBinary: return "SIGNED_BINARY";
        case IneqClass::General: return "GENERAL";
    }
    return "?";
}

bool ineq_class_le(IneqClass a, IneqClass b) {
    return static_cast<int>(a) <= static_cast<int>(b);
}

IneqClass classify_ineq(const LinIneq& e) {
    LinIneq c = canonical(e);
    long long pos = 0, neg = 0; // the single positive / negative value, 0 if absent
    bool monic = true, signed_monic = true, signed_binary = true;
    for (const auto& co : c.coeffs) {
        long long v = co.num(); // canonical coefficients are integers
        if (v == 0) continue;
        if (v < 0) {
            monic = false;
            if (v != -1) signed_monic = false;
            if (neg == 0) neg = v;
            else if (neg != v) signed_binary = false;
        } else {
            if (v != 1) { monic = false; signed_monic = false; }
            if (pos == 0) pos = v;
            else if (pos != v) signed_binary = false;
        }
    }
    if (monic) return IneqClass::Monic;
    if (signed_monic) return IneqClass::SignedMonic;
    if (signed_binary) return IneqClass::SignedBinary;
    return IneqClass::General;
}

IneqClass classify_set(const ProbabilitySet& s) {
    IneqClass worst = IneqClass::Monic;
    for (const auto& sys : s.systems)
        for (const auto& e : sys.ineqs) {
            IneqClass c = classify_ineq(e);
            if (!ineq_class_le(c, worst)) worst = c;
        }
    return worst;
}

ProbabilitySet whole_simplex(long long n) {
    ProbabilitySet s;
    s.n = n;
    s.systems.push_back(IneqSystem{});
    return s;
}

ProbabilitySet empty_set(long long n) {
    ProbabilitySet s;
    s.n = n;
    return s;
}

namespace {

Cmp flip_cmp(Cmp c) {
    switch (c) {
        case Cmp::Ge: return Cmp::Lt;
        case Cmp::Le: return Cmp::Gt;
        case Cmp::Gt: return Cmp::Le;
        case Cmp::Lt: return Cmp::Ge;
        default: throw InputError("inequality comparator expected");
    }
}

void require_same_n(const ProbabilitySet& a, const ProbabilitySet& b) {
    if (a.n != b.n) throw InputError("probability set dimension mismatch");
}

} // namespace

ProbabilitySet complement(const ProbabilitySet& s) {
    // complement of a union is the intersection of the per-system complements;
    // a single system's complement flips each inequality into its own branch
    ProbabilitySet acc = whole_simplex(s.n);
    for (const auto& sys : s.systems) {
        ProbabilitySet comp = empty_set(s.n);
        for (const auto& e : sys.ineqs) {
            IneqSystem one;
            LinIneq flipped = e;
            flipped.cmp = flip_cmp(e.cmp);
            one.ineqs.push_back(flipped);
            comp.systems.push_back(std::move(one));
        }
        acc = set_intersect(acc, comp);
    }
    return acc;
}

ProbabilitySet set_union(const ProbabilitySet& a, const ProbabilitySet& b) {
    require_same_n(a, b);
    ProbabilitySet out = a;
    out.systems.insert(out.systems.end(), b.systems.begin(), b.systems.end());
    return out;
}

ProbabilitySet set_intersect(const ProbabilitySet& a, const ProbabilitySet& b) {
    require_same_n(a, b);
    ProbabilitySet out = empty_set(a.n);
    for (const auto& sa : a.systems)
        for (const auto& sb : b.systems) {
            IneqSystem sys = sa;
            sys.ineqs.insert(sys.ineqs.end(), sb.ineqs.begin(), sb.ineqs.end());
            out.systems.push_back(std::move(sys));
        }
    return out;
}

bool ineq_sat(const std::vector<Rational>& p, const LinIneq& e) {
    if (p.size() != e.coeffs.size()) throw InputError("point dimension mismatch");
    Rational dot(0);
    for (size_t i = 0; i < p.size(); ++i) dot += e.coeffs[i] * p[i];
    return cmp_holds(dot, e.cmp, e.bound);
}

bool member(const std::vector<Rational>& p, const ProbabilitySet& s) {
    if (static_cast<long long>(p.size()) != s.n) throw InputError("point dimension mismatch");
    Rational sum(0);
    for (const auto& x : p) {
        if (x < Rational(0)) throw InputError("not a simplex point: negative entry");
        sum += x;
    }
    if (sum != Rational(1)) throw InputError("not a simplex point: entries do not sum to 1");
    for (const auto& sys : s.systems) {
        bool all = true;
        for (const auto& e : sys.ineqs)
            if (!ineq_sat(p, e)) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

LinIneq eliminate_variable(const LinIneq& e, size_t idx) {
    if (idx >= e.coeffs.size()) throw InputError("eliminate_variable: index out of range");
    if (e.coeffs[idx].is_zero()) throw InputError("eliminate_variable: zero coefficient");
    LinIneq out = e;
    Rational a = e.coeffs[idx];
    for (size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] = (i == idx) ? Rational(0) : e.coeffs[i] - a;
    out.bound = e.bound - a;
    return canonical(out);
}

// ---- extraction ----

namespace {

std::vector<bool> sat_mask(const FPtr& co, const Signature& sig) {
    long long n = sig.state_count();
    std::vector<bool> mask(static_cast<size_t>(n), false);
    FunctionComponent no_laws;
    for (long long s = 0; s < n; ++s)
        mask[static_cast<size_t>(s)] = singleton_sat(sig, no_laws, assignment_at(sig, s), co);
    return mask;
}

ProbabilitySet single(const LinIneq& e, long long n) {
    ProbabilitySet s = empty_set(n);
    IneqSystem sys;
    sys.ineqs.push_back(canonical(e));
    s.systems.push_back(std::move(sys));
    return s;
}

LinIneq indicator_ineq(const std::vector<bool>& mask, Cmp cmp, const Rational& b) {
    LinIneq e;
    e.coeffs.assign(mask.size(), Rational(0));
    for (size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) e.coeffs[i] = Rational(1);
    e.cmp = cmp;
    e.bound = b;
    return e;
}

struct Extractor {
    const Signature& sig;
    long long n;

    ProbabilitySet ex(const FPtr& f) {
        switch (f->kind) {
            case FKind::Lit:
                return single(indicator_ineq(sat_mask(f, sig), Cmp::Ge, Rational(1)), n);
            case FKind::PrEval:
                return single(indicator_ineq(sat_mask(f->a, sig), f->cmp, f->bound), n);
            case FKind::PrCmp: {
                auto ma = sat_mask(f->a, sig);
                auto mb = sat_mask(f->b, sig);
                LinIneq e;
                e.coeffs.assign(ma.size(), Rational(0));
                for (size_t i = 0; i < ma.size(); ++i)
                    e.coeffs[i] = Rational((ma[i] ? 1 : 0) - (mb[i] ? 1 : 0));
                e.cmp = f->cmp;
                e.bound = Rational(0);
                return single(e, n);
            }
            case FKind::And: return set_intersect(ex(f->a), ex(f->b));
            case FKind::Gor: return set_union(ex(f->a), ex(f->b));
            case FKind::Imp: return ex_imp(f->a, f->b);
            default: throw InputError("extract: unexpected connective");
        }
    }

    ProbabilitySet ex_imp(const FPtr& alpha, const FPtr& atom) {
        auto ma = sat_mask(alpha, sig);
        // vacuous branch: no row satisfies the antecedent
        ProbabilitySet vac = single(indicator_ineq(ma, Cmp::Le, Rational(0)), n);
        LinIneq e;
        e.coeffs.assign(ma.size(), Rational(0));
        if (atom->kind == FKind::PrEval) {
            const Rational& b = atom->bound;
            auto mb = sat_mask(atom->a, sig);
            for (size_t i = 0; i < ma.size(); ++i)
                if (ma[i]) e.coeffs[i] = mb[i] ? Rational(1) - b : -b;
        } else if (atom->kind == FKind::PrCmp) {
            auto mb = sat_mask(atom->a, sig);
            auto mc = sat_mask(atom->b, sig);
            for (size_t i = 0; i < ma.size(); ++i)
                if (ma[i]) e.coeffs[i] = Rational((mb[i] ? 1 : 0) - (mc[i] ? 1 : 0));
        } else {
            throw InputError("extract: implication consequent is not a probabilistic atom");
        }
        e.cmp = atom->cmp;
        e.bound = Rational(0);
        return set_union(vac, single(e, n));
    }
};

} // namespace

ProbabilitySet extract(const FPtr& f, const Signature& sig,
                       const std::optional<FunctionComponent>& laws) {
    FPtr g = is_co(f) ? f_pr(f, Cmp::Ge, Rational(1)) : f;
    if (has_abbreviation(g))
        throw InputError("extract requires core syntax; run expand_abbreviations first");
    if (has_extended(g))
        throw InputError("extract: mixed-condition comparisons have no linear extraction");
    FragmentLabel frag = classify_fragment(g);
    if (!fragment_le(frag, FragmentLabel::PSup)) {
        if (!laws)
            throw InputError(std::string("extract: fragment ") + fragment_str(frag) +
                             " requires laws");
        g = relativize(g, *laws, sig);
    }
    if (has_supset(g)) g = supset_normal_form(g, sig);
    Extractor ex{sig, sig.state_count()};
    return ex.ex(g);
}

// ---- synthesis ----

namespace {

struct Synth {
    const Signature& sig;

    FPtr top() const { return pco_top(sig); }
    FPtr bot() const { return pco_bot(sig); }

    FPtr disj(const std::vector<size_t>& idxs) const {
        std::vector<long long> states(idxs.begin(), idxs.end());
        return states_disjunction(sig, states);
    }

    static bool strict(Cmp c) { return c == Cmp::Gt || c == Cmp::Lt; }

    FPtr monic_atom(const std::vector<size_t>& supp, Cmp cmp, const Rational& b) const {
        if (b < Rational(0)) return (cmp == Cmp::Ge || cmp == Cmp::Gt) ? top() : bot();
        if (b > Rational(1)) return (cmp == Cmp::Le || cmp == Cmp::Lt) ? top() : bot();
        if (supp.empty()) return cmp_holds(Rational(0), cmp, b) ? top() : bot();
        return f_pr(disj(supp), cmp, b);
    }

    FPtr ineq(const LinIneq& raw) const {
        LinIneq e = canonical(raw);
        std::vector<size_t> pos_supp, neg_supp;
        long long cpos = 0, cneg = 0;
        for (size_t i = 0; i < e.coeffs.size(); ++i) {
            long long v = e.coeffs[i].num();
            if (v > 0) { pos_supp.push_back(i); cpos = v; }
            if (v < 0) { neg_supp.push_back(i); cneg = v; }
        }

        if (pos_supp.empty() && neg_supp.empty())
            return cmp_holds(Rational(0), e.cmp, e.bound) ? top() : bot();

        if (neg_supp.empty()) // canonical gcd makes the positive value 1
            return monic_atom(pos_supp, e.cmp, e.bound);

        if (pos_supp.empty()) { // multiply by -1
            LinIneq neg = e;
            for (auto& c : neg.coeffs) c = -c;
            neg.bound = -e.bound;
            neg.cmp = cmp_swap(e.cmp);
            return ineq(neg);
        }

        if (e.bound.is_zero()) {
            if (cpos == 1 && cneg == -1) // comparison atom: sum_I - sum_J cmp 0
                return f_prcmp(disj(pos_supp), e.cmp, disj(neg_supp));
            // (union of states) => Pr(positive states) cmp -c^- / (c^+ - c^-)
            Rational d(cpos - cneg);
            std::vector<size_t> both = neg_supp;
            both.insert(both.end(), pos_supp.begin(), pos_supp.end());
            std::sort(both.begin(), both.end());
            FPtr impl = f_imp(disj(both), f_pr(disj(pos_supp), e.cmp, Rational(-cneg) / d));
            // strict comparisons fail on the all-zero boundary that the vacuous
            // implication branch would admit
            if (strict(e.cmp)) return f_and(f_pr(disj(both), Cmp::Gt, Rational(0)), impl);
            return impl;
        }

        // nonzero bound, mixed signs
        if (pos_supp.size() + neg_supp.size() == e.coeffs.size())
            return ineq(eliminate_variable(e, neg_supp.front()));
        throw InputError(
            "synth: a mixed-sign inequality with nonzero bound and a zero coefficient is not "
            "definable in the monic/signed-monic/signed-binary fragments");
    }
};

} // namespace

FPtr synth(const ProbabilitySet& s, IneqClass target, const Signature& sig) {
    if (target == IneqClass::General) throw InputError("synth: target must be a proper class");
    if (sig.state_count() != s.n)
        throw InputError("synth: signature has " + std::to_string(sig.state_count()) +
                         " states, set expects " + std::to_string(s.n));
    for (const auto& sys : s.systems)
        for (const auto& e : sys.ineqs) {
            IneqClass c = classify_ineq(e);
            if (!ineq_class_le(c, target))
                throw InputError(std::string("synth: inequality classifies ") + ineq_class_str(c) +
                                 ", exceeding target " + ineq_class_str(target));
        }

    Synth sy{sig};
    if (s.systems.empty()) return sy.bot();
    std::vector<FPtr> branches;
    for (const auto& sys : s.systems) {
        if (sys.ineqs.empty()) {
            branches.push_back(sy.top());
            continue;
        }
        std::vector<FPtr> conj;
        for (const auto& e : sys.ineqs) conj.push_back(sy.ineq(e));
        branches.push_back(f_and_all(conj));
    }
    return f_gor_all(branches);
}

Rational conic_discriminant(const Rational& delta) {
    if (delta <= Rational(0) || delta >= Rational(1))
        throw InputError("discriminant: delta must lie strictly between 0 and 1");
    const Rational d = delta;
    Rational m[3][3] = {
        {Rational(0), Rational(1), d},
        {Rational(1), Rational(0), d - Rational(1)},
        {d, d - Rational(1), Rational(2) * d * d},
    };
    Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return det;
}

ProbabilitySet simplify_on_grid(const ProbabilitySet& s, long long max_den) {
    std::vector<std::vector<Rational>> points;
    enumerate_count_vectors(s.n, max_den, [&](const std::vector<long long>& counts) {
        long long total = 0;
        for (long long c : counts) total += c;
        std::vector<Rational> p;
        for (long long c : counts) p.emplace_back(c, total);
        points.push_back(std::move(p));
        return true;
    });

    auto system_hits = [&](const IneqSystem& sys) {
        std::vector<bool> hits(points.size(), false);
        for (size_t i = 0; i < points.size(); ++i) {
            bool all = true;
            for (const auto& e : sys.ineqs)
                if (!ineq_sat(points[i], e)) {
                    all = false;
                    break;
                }
            hits[i] = all;
        }
        return hits;
    };

    std::vector<std::vector<bool>> hit(s.systems.size());
    for (size_t i = 0; i < s.systems.size(); ++i) hit[i] = system_hits(s.systems[i]);

    std::vector<bool> keep(s.systems.size(), true);
    for (size_t i = 0; i < s.systems.size(); ++i) {
        bool covered = true;
        for (size_t p = 0; p < points.size() && covered; ++p) {
            if (!hit[i][p]) continue;
            bool other = false;
            for (size_t j = 0; j < s.systems.size(); ++j)
                if (j != i && keep[j] && hit[j][p]) {
                    other = true;
                    break;
                }
            if (!other) covered = false;
        }
        if (covered) keep[i] = false;
    }
    // never drop everything: an all-covered union means one branch suffices
    if (std::none_of(keep.begin(), keep.end(), [](bool b) { return b; }) && !s.systems.empty())
        keep[0] = true;

    ProbabilitySet out = empty_set(s.n);
    for (size_t i = 0; i < s.systems.size(); ++i)
        if (keep[i]) out.systems.push_back(s.systems[i]);
    return out;
}

} // namespace cml
