#include "cml/abbrev.hpp"

#include "cml/errors.hpp"

namespace cml {

namespace {

bool co_has_conditional(const FPtr& f) {
    bool found = false;
    walk(f, [&](const Formula& n) {
        if (n.kind == FKind::Imp || n.kind == FKind::Cf) found = true;
    });
    return found;
}

} // namespace

FPtr dual(const FPtr& alpha, const Signature& sig) {
    if (co_has_conditional(alpha)) return f_imp(alpha, co_bot(sig));
    switch (alpha->kind) {
        case FKind::Lit: return f_lit(alpha->var, alpha->val, !alpha->neq);
        case FKind::And: return f_or(dual(alpha->a, sig), dual(alpha->b, sig));
        case FKind::Or: return f_and(dual(alpha->a, sig), dual(alpha->b, sig));
        default: throw InputError("dual negation of a non-flat formula");
    }
}

namespace {

FPtr expand_eval(const FPtr& arg, Cmp cmp, const Rational& b, const Signature& sig) {
    switch (cmp) {
        case Cmp::Ge:
        case Cmp::Gt: return f_pr(arg, cmp, b);
        case Cmp::Le: return f_pr(dual(arg, sig), Cmp::Ge, Rational(1) - b);
        case Cmp::Lt: return f_pr(dual(arg, sig), Cmp::Gt, Rational(1) - b);
        case Cmp::Eq:
            return f_and(expand_eval(arg, Cmp::Ge, b, sig), expand_eval(arg, Cmp::Le, b, sig));
        case Cmp::Ne:
            return f_gor(expand_eval(arg, Cmp::Gt, b, sig), expand_eval(arg, Cmp::Lt, b, sig));
    }
    throw InputError("bad comparator");
}

FPtr expand_cmp(const FPtr& a, Cmp cmp, const FPtr& b) {
    switch (cmp) {
        case Cmp::Ge:
        case Cmp::Gt: return f_prcmp(a, cmp, b);
        case Cmp::Le: return f_prcmp(b, Cmp::Ge, a);
        case Cmp::Lt: return f_prcmp(b, Cmp::Gt, a);
        case Cmp::Eq: return f_and(f_prcmp(a, Cmp::Ge, b), f_prcmp(b, Cmp::Ge, a));
        case Cmp::Ne: return f_gor(f_prcmp(a, Cmp::Gt, b), f_prcmp(b, Cmp::Gt, a));
    }
    throw InputError("bad comparator");
}

FPtr expand_extended(const FPtr& a, const FPtr& ca, Cmp cmp, const FPtr& b, const FPtr& cb) {
    switch (cmp) {
        case Cmp::Ge:
        case Cmp::Gt: return f_condcmp(a, ca, cmp, b, cb);
        case Cmp::Le: return f_condcmp(b, cb, Cmp::Ge, a, ca);
        case Cmp::Lt: return f_condcmp(b, cb, Cmp::Gt, a, ca);
        case Cmp::Eq:
            return f_and(f_condcmp(a, ca, Cmp::Ge, b, cb), f_condcmp(b, cb, Cmp::Ge, a, ca));
        case Cmp::Ne:
            return f_gor(f_condcmp(a, ca, Cmp::Gt, b, cb), f_condcmp(b, cb, Cmp::Gt, a, ca));
    }
    throw InputError("bad comparator");
}

} // namespace

FPtr expand_abbreviations(const FPtr& f, const Signature& sig) {
    switch (f->kind) {
        case FKind::Lit: return f;
        case FKind::And:
            if (is_co(f)) return f;
            return f_and(expand_abbreviations(f->a, sig), expand_abbreviations(f->b, sig));
        case FKind::Or: return f; // flat subtree, nothing to expand
        case FKind::Gor:
            return f_gor(expand_abbreviations(f->a, sig), expand_abbreviations(f->b, sig));
        case FKind::Imp:
            if (is_co(f)) return f;
            return f_imp(f->a, expand_abbreviations(f->b, sig));
        case FKind::Cf:
            if (is_co(f)) return f;
            return f_cf(f->ivs, expand_abbreviations(f->a, sig));
        case FKind::PrEval: return expand_eval(f->a, f->cmp, f->bound, sig);
        case FKind::PrCmp: return expand_cmp(f->a, f->cmp, f->b);
        case FKind::CondEval:
            // Pr(a|c) cmp eps  ==  c => Pr(a) cmp eps
            return f_imp(f->cond, expand_eval(f->a, f->cmp, f->bound, sig));
        case FKind::CondCmp:
            if (cond_expandable(*f)) {
                if (!f->cond) return expand_cmp(f->a, f->cmp, f->b);
                return f_imp(f->cond, expand_cmp(f->a, f->cmp, f->b));
            }
            return expand_extended(f->a, f->cond, f->cmp, f->b, f->cond2);
    }
    throw InputError("bad formula");
}

} // namespace cml
