#include "cml/printer.hpp"

#include <sstream>

#include "cml/errors.hpp"

namespace cml {

namespace {

void emit(std::ostream& os, const FPtr& f, const Signature& sig);

void emit_binary(std::ostream& os, const FPtr& f, const Signature& sig, const char* op) {
    os << "(";
    emit(os, f->a, sig);
    os << " " << op << " ";
    emit(os, f->b, sig);
    os << ")";
}

void emit_pr(std::ostream& os, const FPtr& arg, const FPtr& cond, const Signature& sig) {
    os << "Pr(";
    emit(os, arg, sig);
    if (cond) {
        os << " | ";
        emit(os, cond, sig);
    }
    os << ")";
}

void emit(std::ostream& os, const FPtr& f, const Signature& sig) {
    if (!f) throw InputError("print: missing subformula");
    switch (f->kind) {
        case FKind::Lit:
            os << sig.var_name(f->var) << (f->neq ? "!=" : "=")
               << value_str(sig.range(f->var)[f->val]);
            return;
        case FKind::And: emit_binary(os, f, sig, "and"); return;
        case FKind::Or: emit_binary(os, f, sig, "or"); return;
        case FKind::Gor: emit_binary(os, f, sig, "gor"); return;
        case FKind::Imp: emit_binary(os, f, sig, "=>"); return;
        case FKind::Cf: {
            os << "[";
            for (size_t i = 0; i < f->ivs.size(); ++i) {
                if (i) os << ",";
                os << sig.var_name(f->ivs[i].var) << ":="
                   << value_str(sig.range(f->ivs[i].var)[f->ivs[i].val]);
            }
            os << "] ";
            bool paren = f->a->kind == FKind::Cf;
            if (paren) os << "(";
            emit(os, f->a, sig);
            if (paren) os << ")";
            return;
        }
        case FKind::PrEval:
            emit_pr(os, f->a, nullptr, sig);
            os << " " << cmp_str(f->cmp) << " " << f->bound.str();
            return;
        case FKind::PrCmp:
            emit_pr(os, f->a, nullptr, sig);
            os << " " << cmp_str(f->cmp) << " ";
            emit_pr(os, f->b, nullptr, sig);
            return;
        case FKind::CondEval:
            emit_pr(os, f->a, f->cond, sig);
            os << " " << cmp_str(f->cmp) << " " << f->bound.str();
            return;
        case FKind::CondCmp:
            emit_pr(os, f->a, f->cond, sig);
            os << " " << cmp_str(f->cmp) << " ";
            emit_pr(os, f->b, f->cond2, sig);
            return;
    }
}

} // namespace

std::string print(const FPtr& f, const Signature& sig) {
    std::ostringstream os;
    emit(os, f, sig);
    return os.str();
}

} // namespace cml
