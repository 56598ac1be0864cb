#include "cml/formula.hpp"

#include "cml/errors.hpp"

namespace cml {

const char* cmp_str(Cmp c) {
    switch (c) {
        case Cmp::Ge: return ">=";
        case Cmp::Gt: return ">";
        case Cmp::Le: return "<=";
        case Cmp::Lt: return "<";
        case Cmp::Eq: return "==";
        case Cmp::Ne: return "!=";
    }
    return "?";
}

bool cmp_holds(const Rational& l, Cmp c, const Rational& r) {
    switch (c) {
        case Cmp::Ge: return l >= r;
        case Cmp::Gt: return l > r;
        case Cmp::Le: return l <= r;
        case Cmp::Lt: return l < r;
        case Cmp::Eq: return l == r;
        case Cmp::Ne: return l != r;
    }
    return false;
}

Cmp cmp_swap(Cmp c) {
    switch (c) {
        case Cmp::Ge: return Cmp::Le;
        case Cmp::Gt: return Cmp::Lt;
        case Cmp::Le: return Cmp::Ge;
        case Cmp::Lt: return Cmp::Gt;
        case Cmp::Eq: return Cmp::Eq;
        case Cmp::Ne: return Cmp::Ne;
    }
    return c;
}

namespace {

std::shared_ptr<Formula> node(FKind k) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    return f;
}

} // namespace

FPtr f_lit(int var, int val, bool neq) {
    auto f = node(FKind::Lit);
    f->var = var;
    f->val = val;
    f->neq = neq;
    return f;
}

FPtr f_and(FPtr a, FPtr b) {
    auto f = node(FKind::And);
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

FPtr f_or(FPtr a, FPtr b) {
    auto f = node(FKind::Or);
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

FPtr f_gor(FPtr a, FPtr b) {
    auto f = node(FKind::Gor);
    f->a = std::move(a);
    f->b = std::move(b);
    return f;
}

FPtr f_imp(FPtr antecedent, FPtr consequent) {
    auto f = node(FKind::Imp);
    f->a = std::move(antecedent);
    f->b = std::move(consequent);
    return f;
}

FPtr f_cf(std::vector<Intervention> ivs, FPtr body) {
    if (ivs.empty()) throw InputError("empty intervention list");
    auto f = node(FKind::Cf);
    f->ivs = std::move(ivs);
    f->a = std::move(body);
    return f;
}

FPtr f_pr(FPtr arg, Cmp c, Rational bound) {
    auto f = node(FKind::PrEval);
    f->a = std::move(arg);
    f->cmp = c;
    f->bound = bound;
    return f;
}

FPtr f_prcmp(FPtr a, Cmp c, FPtr b) {
    auto f = node(FKind::PrCmp);
    f->a = std::move(a);
    f->cmp = c;
    f->b = std::move(b);
    return f;
}

FPtr f_cond(FPtr arg, FPtr cond, Cmp c, Rational bound) {
    auto f = node(FKind::CondEval);
    f->a = std::move(arg);
    f->cond = std::move(cond);
    f->cmp = c;
    f->bound = bound;
    return f;
}

FPtr f_condcmp(FPtr a, FPtr cond, Cmp c, FPtr b, FPtr cond2) {
    auto f = node(FKind::CondCmp);
    f->a = std::move(a);
    f->cond = std::move(cond);
    f->cmp = c;
    f->b = std::move(b);
    f->cond2 = std::move(cond2);
    return f;
}

namespace {

FPtr fold(const std::vector<FPtr>& fs, FPtr (*join)(FPtr, FPtr)) {
    if (fs.empty()) throw InputError("empty connective fold");
    FPtr acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = join(acc, fs[i]);
    return acc;
}

} // namespace

FPtr f_and_all(const std::vector<FPtr>& fs) { return fold(fs, f_and); }
FPtr f_or_all(const std::vector<FPtr>& fs) { return fold(fs, f_or); }
FPtr f_gor_all(const std::vector<FPtr>& fs) { return fold(fs, f_gor); }

FPtr co_top(const Signature& sig) {
    (void)sig;
    return f_or(f_lit(0, 0, false), f_lit(0, 0, true));
}

FPtr co_bot(const Signature& sig) {
    (void)sig;
    return f_and(f_lit(0, 0, false), f_lit(0, 0, true));
}

FPtr pco_top(const Signature& sig) { return f_pr(co_top(sig), Cmp::Ge, Rational(0)); }

FPtr pco_bot(const Signature& sig) {
    (void)sig;
    return f_and(f_lit(0, 0, false), f_lit(0, 0, true));
}

FPtr state_formula(const Signature& sig, const Assignment& s) {
    std::vector<FPtr> lits;
    for (size_t v = 0; v < sig.var_count(); ++v)
        lits.push_back(f_lit(static_cast<int>(v), s.vals[v], false));
    return f_and_all(lits);
}

FPtr state_formula(const Signature& sig, long long state) {
    return state_formula(sig, assignment_at(sig, state));
}

FPtr states_disjunction(const Signature& sig, const std::vector<long long>& states) {
    if (states.empty()) return co_bot(sig);
    std::vector<FPtr> parts;
    for (long long s : states) parts.push_back(state_formula(sig, s));
    return f_or_all(parts);
}

bool equal(const FPtr& a, const FPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case FKind::Lit:
            return a->var == b->var && a->val == b->val && a->neq == b->neq;
        case FKind::And:
        case FKind::Or:
        case FKind::Gor:
        case FKind::Imp:
            return equal(a->a, b->a) && equal(a->b, b->b);
        case FKind::Cf:
            return a->ivs == b->ivs && equal(a->a, b->a);
        case FKind::PrEval:
            return a->cmp == b->cmp && a->bound == b->bound && equal(a->a, b->a);
        case FKind::PrCmp:
            return a->cmp == b->cmp && equal(a->a, b->a) && equal(a->b, b->b);
        case FKind::CondEval:
            return a->cmp == b->cmp && a->bound == b->bound && equal(a->a, b->a) &&
                   equal(a->cond, b->cond);
        case FKind::CondCmp:
            return a->cmp == b->cmp && equal(a->a, b->a) && equal(a->b, b->b) &&
                   equal(a->cond, b->cond) && equal(a->cond2, b->cond2);
    }
    return false;
}

void walk(const FPtr& f, const std::function<void(const Formula&)>& fn) {
    if (!f) return;
    fn(*f);
    walk(f->a, fn);
    walk(f->b, fn);
    walk(f->cond, fn);
    walk(f->cond2, fn);
}

bool is_co(const FPtr& f) {
    bool co = true;
    walk(f, [&](const Formula& n) {
        switch (n.kind) {
            case FKind::Gor:
            case FKind::PrEval:
            case FKind::PrCmp:
            case FKind::CondEval:
            case FKind::CondCmp: co = false; break;
            default: break;
        }
    });
    return co;
}

bool has_boxright(const FPtr& f) {
    bool found = false;
    walk(f, [&](const Formula& n) {
        if (n.kind == FKind::Cf) found = true;
    });
    return found;
}

bool cond_expandable(const Formula& f) {
    if (f.kind == FKind::CondEval) return true;
    if (f.kind != FKind::CondCmp) return false;
    if (!f.cond && !f.cond2) return true;
    return f.cond && f.cond2 && equal(f.cond, f.cond2);
}

bool has_supset(const FPtr& f) {
    bool found = false;
    walk(f, [&](const Formula& n) {
        if (n.kind == FKind::Imp) found = true;
        if ((n.kind == FKind::CondEval || n.kind == FKind::CondCmp) && cond_expandable(n))
            found = true;
    });
    return found;
}

bool has_comparison(const FPtr& f) {
    bool found = false;
    walk(f, [&](const Formula& n) {
        if (n.kind == FKind::PrCmp || n.kind == FKind::CondCmp) found = true;
    });
    return found;
}

bool has_extended(const FPtr& f) {
    bool found = false;
    walk(f, [&](const Formula& n) {
        if (n.kind == FKind::CondCmp && !cond_expandable(n)) found = true;
    });
    return found;
}

bool has_abbreviation(const FPtr& f) {
    bool found = false;
    walk(f, [&](const Formula& n) {
        switch (n.kind) {
            case FKind::CondEval:
            case FKind::CondCmp: found = true; break;
            case FKind::PrEval:
            case FKind::PrCmp:
                if (n.cmp != Cmp::Ge && n.cmp != Cmp::Gt) found = true;
                break;
            default: break;
        }
    });
    return found;
}

namespace {

void check_co(const FPtr& f, const Signature& sig);

void check_lit(const Formula& f, const Signature& sig) {
    if (f.var < 0 || f.var >= static_cast<int>(sig.var_count()))
        throw InputError("literal references unknown variable");
    if (f.val < 0 || f.val >= sig.range_size(f.var))
        throw InputError("literal value outside the range of " + sig.var_name(f.var));
}

void check_ivs(const std::vector<Intervention>& ivs, const Signature& sig) {
    if (ivs.empty()) throw InputError("empty intervention list");
    for (const auto& iv : ivs) {
        if (iv.var < 0 || iv.var >= static_cast<int>(sig.var_count()))
            throw InputError("intervention on unknown variable");
        if (iv.val < 0 || iv.val >= sig.range_size(iv.var))
            throw InputError("intervention value outside the range of " + sig.var_name(iv.var));
    }
}

void check_bound(const Rational& b) {
    if (b < Rational(0) || b > Rational(1))
        throw InputError("probability bound outside [0,1]: " + b.str());
}

void check_co(const FPtr& f, const Signature& sig) {
    if (!f) throw InputError("missing subformula");
    switch (f->kind) {
        case FKind::Lit: check_lit(*f, sig); return;
        case FKind::And:
        case FKind::Or:
        case FKind::Imp:
            check_co(f->a, sig);
            check_co(f->b, sig);
            return;
        case FKind::Cf:
            check_ivs(f->ivs, sig);
            check_co(f->a, sig);
            return;
        default:
            throw InputError("two-level violation: probabilistic construct inside a flat argument");
    }
}

void check_pco(const FPtr& f, const Signature& sig) {
    if (!f) throw InputError("missing subformula");
    switch (f->kind) {
        case FKind::Lit: check_lit(*f, sig); return;
        case FKind::And:
        case FKind::Gor:
            check_pco(f->a, sig);
            check_pco(f->b, sig);
            return;
        case FKind::Or:
            throw InputError(
                "two-level violation: tensor disjunction at the probabilistic level (use gor)");
        case FKind::Imp:
            check_co(f->a, sig);
            check_pco(f->b, sig);
            return;
        case FKind::Cf:
            check_ivs(f->ivs, sig);
            check_pco(f->a, sig);
            return;
        case FKind::PrEval:
            check_co(f->a, sig);
            check_bound(f->bound);
            return;
        case FKind::PrCmp:
            check_co(f->a, sig);
            check_co(f->b, sig);
            return;
        case FKind::CondEval:
            check_co(f->a, sig);
            check_co(f->cond, sig);
            check_bound(f->bound);
            return;
        case FKind::CondCmp:
            check_co(f->a, sig);
            check_co(f->b, sig);
            if (f->cond) check_co(f->cond, sig);
            if (f->cond2) check_co(f->cond2, sig);
            return;
    }
}

} // namespace

void check_wellformed(const FPtr& f, const Signature& sig) {
    if (is_co(f))
        check_co(f, sig);
    else
        check_pco(f, sig);
}

} // namespace cml
